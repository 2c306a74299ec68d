"""
Generic N-round semi-random OT from pure-state rounds.

Registers are laid out as (A, R_A, R_B): the message register A travels
between the parties, R_A stays with Alice and R_B with Bob. Alice prepares
|psi> on A R_A, Bob's R_B starts in |0>. Round l is Bob's U_((x0,x1),l) on
A R_B followed by Alice's V_l on A R_A. Alice then measures {N_(i,x_hat)} on
A R_A and both parties run their accept/abort projections.
"""

import itertools
import logging
from dataclasses import dataclass, field
from typing import Dict, NamedTuple, Optional, Tuple

import numpy as np

import config
from otproto.base import SEMI_RANDOM, OtOutcome, SemiRandomOt, Verdict, check_bit
from otproto.transcript import Transcript
from qhe.base import SOT_KEYS
from quantum import matcore
from quantum.exceptions import DimensionError, InvalidInstanceError
from quantum.matcore import RegisterShape, dagger
from quantum.qstate import DensityState, Povm, PureState, fidelity, measure

log = logging.getLogger(__name__)

OUTCOMES = [(0, 0), (0, 1), (1, 0), (1, 1)]


def _check_unitary(name, u, dim):
    u = matcore.as_matrix(u)
    if u.shape != (dim, dim):
        raise DimensionError(f"{name} has shape {u.shape}, expected ({dim}, {dim})")
    if matcore.max_abs(u @ dagger(u) - np.eye(dim)) > config.CPTP_TOL:
        raise InvalidInstanceError(f"{name} is not unitary")
    return u


def _check_projector(name, p, dim):
    if p is None:
        return None
    p = matcore.as_matrix(p)
    if p.shape != (dim, dim):
        raise DimensionError(f"{name} has shape {p.shape}, expected ({dim}, {dim})")
    if not matcore.is_hermitian(p) or matcore.max_abs(p @ p - p) > config.CPTP_TOL:
        raise InvalidInstanceError(f"{name} is not an orthogonal projector")
    return p


@dataclass(frozen=True)
class ProtocolOneInstance:
    """
    A concrete Protocol-1 scheme.

    ``bob_unitaries`` maps each (x0, x1) to its per-round unitaries on A R_B,
    ``alice_unitaries`` holds V_1..V_N on A R_A, ``final_povm`` is keyed by
    (i, x_hat) on A R_A. Accept projectors act on A R_A (Alice) and R_B (Bob);
    None means the identity, so Abort is never declared.
    """
    name: str
    message_dims: Tuple[int, ...]
    alice_ref_dims: Tuple[int, ...]
    bob_ref_dims: Tuple[int, ...]
    alice_init: PureState
    bob_unitaries: Dict[Tuple[int, int], Tuple[np.ndarray, ...]]
    alice_unitaries: Tuple[np.ndarray, ...]
    final_povm: Povm
    alice_accept: Optional[np.ndarray] = None
    bob_accept: Optional[np.ndarray] = None
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        for dims in (self.message_dims, self.alice_ref_dims, self.bob_ref_dims):
            if not dims:
                raise DimensionError(f"{self.name}: every register group needs at least one register")
        if self.alice_init.shape.dims != tuple(self.message_dims) + tuple(self.alice_ref_dims):
            raise DimensionError(
                f"{self.name}: initial state lives on {self.alice_init.shape.dims}, "
                f"expected A R_A = {tuple(self.message_dims) + tuple(self.alice_ref_dims)}")
        rounds = len(self.alice_unitaries)
        if rounds < 1:
            raise InvalidInstanceError(f"{self.name}: needs at least one round")
        if set(self.bob_unitaries) != set(SOT_KEYS):
            raise InvalidInstanceError(f"{self.name}: Bob needs unitaries for every (x0, x1)")

        d_a = int(np.prod(self.message_dims))
        d_alice = d_a * int(np.prod(self.alice_ref_dims))
        d_bob = d_a * int(np.prod(self.bob_ref_dims))
        bob = {}
        for key, ops in self.bob_unitaries.items():
            if len(ops) != rounds:
                raise DimensionError(f"{self.name}: Bob has {len(ops)} rounds for {key}, Alice has {rounds}")
            bob[key] = tuple(_check_unitary(f"U_{key},{n + 1}", u, d_bob) for n, u in enumerate(ops))
        alice = tuple(_check_unitary(f"V_{n + 1}", v, d_alice) for n, v in enumerate(self.alice_unitaries))
        if set(self.final_povm.keys) != set(OUTCOMES):
            raise InvalidInstanceError(f"{self.name}: final POVM must be keyed by (i, x_hat)")
        if self.final_povm.dim != d_alice:
            raise DimensionError(f"{self.name}: final POVM acts on dimension {self.final_povm.dim}, expected {d_alice}")

        object.__setattr__(self, 'bob_unitaries', bob)
        object.__setattr__(self, 'alice_unitaries', alice)
        object.__setattr__(self, 'alice_accept', _check_projector('alice accept', self.alice_accept, d_alice))
        object.__setattr__(self, 'bob_accept',
                           _check_projector('bob accept', self.bob_accept, int(np.prod(self.bob_ref_dims))))

    @property
    def rounds(self):
        return len(self.alice_unitaries)

    @property
    def shape(self) -> RegisterShape:
        return RegisterShape(tuple(self.message_dims) + tuple(self.alice_ref_dims) + tuple(self.bob_ref_dims))

    @property
    def message_regs(self):
        return list(range(len(self.message_dims)))

    @property
    def alice_ref_regs(self):
        start = len(self.message_dims)
        return list(range(start, start + len(self.alice_ref_dims)))

    @property
    def bob_ref_regs(self):
        start = len(self.message_dims) + len(self.alice_ref_dims)
        return list(range(start, start + len(self.bob_ref_dims)))

    @property
    def alice_regs(self):
        return self.message_regs + self.alice_ref_regs

    @property
    def bob_regs(self):
        return self.message_regs + self.bob_ref_regs

    def initial_state(self) -> PureState:
        ref = PureState.basis((0,) * len(self.bob_ref_dims), self.bob_ref_dims)
        return self.alice_init.tensor(ref)

    def describe(self):
        return {'name': self.name, 'rounds': self.rounds, 'registers': self.shape.to_dict(), 'params': dict(self.params)}


class ProtocolOneRun(NamedTuple):
    state: PureState
    distribution: Dict[Tuple[int, int], float]
    sigma: DensityState


def run_protocol1_honest(inst: ProtocolOneInstance, x0, x1, transcript: Transcript = None) -> ProtocolOneRun:
    """
    Honest run for Bob's bits (x0, x1).

    returns (final joint state on A R_A R_B, distribution of (i, x_hat), sigma = Tr_R_B)
    """
    key = (check_bit('x0', x0), check_bit('x1', x1))
    psi = inst.initial_state()
    for n in range(inst.rounds):
        if transcript is not None:
            transcript.record(n + 1, 'alice', inst.message_dims, psi.density().reduce(inst.message_regs).mat)
        psi = psi.evolve(inst.bob_unitaries[key][n], inst.bob_regs)
        if transcript is not None:
            transcript.record(n + 1, 'bob', inst.message_dims, psi.density().reduce(inst.message_regs).mat)
        psi = psi.evolve(inst.alice_unitaries[n], inst.alice_regs)

    sigma = psi.density().reduce(inst.alice_regs)
    distribution = measure(inst.final_povm, sigma)
    return ProtocolOneRun(psi, distribution, sigma)


def final_states(inst: ProtocolOneInstance):
    """sigma_(x0,x1) for all four inputs."""
    return {key: run_protocol1_honest(inst, *key).sigma for key in SOT_KEYS}


def max_pairwise_fidelity(sigmas):
    """
    f = max over distinct pairs of F(sigma, sigma').

    returns (f, pair) with the first maximizing pair in lexicographic order
    """
    best, pair = -1.0, None
    for a, b in itertools.combinations(SOT_KEYS, 2):
        value = fidelity(sigmas[a], sigmas[b])
        if value > best + 1e-12:
            best, pair = value, (a, b)
    return best, pair


def error_profile(inst: ProtocolOneInstance):
    """
    Per-input honest statistics in the required-measurement form.

    Alice's outcome (i, x_hat) has probability (1 - theta_i)/2 when x_hat = x_i
    and theta_i/2 otherwise.
    """
    profile = {}
    for key in SOT_KEYS:
        dist = run_protocol1_honest(inst, *key).distribution
        marginal = [dist[(i, 0)] + dist[(i, 1)] for i in (0, 1)]
        worst = max(abs(p - 0.5) for p in marginal)
        if worst > config.THEOREM_TOL:
            raise InvalidInstanceError(
                f"{inst.name}: index marginal {marginal} for {key} is not uniform")
        if worst > config.CPTP_TOL:
            log.warning(f"{inst.name}: index marginal for {key} off by {worst:.3e}")
        thetas = [2.0 * dist[(i, 1 - key[i])] for i in (0, 1)]
        profile[key] = {'theta': thetas, 'i_marginal': marginal, 'error': sum(thetas) / 2.0}
    return profile


def completeness_delta(inst: ProtocolOneInstance) -> float:
    """delta = max over (x0, x1) of Pr[x_hat != x_i]."""
    delta = max(entry['error'] for entry in error_profile(inst).values())
    log.debug(f"{inst.name}: delta = {delta:.12g}")
    return min(1.0, max(0.0, delta))


def honest_acceptance(inst: ProtocolOneInstance, x0, x1) -> float:
    """Probability that both parties' accept projectors absorb the honest final state."""
    vec = run_protocol1_honest(inst, x0, x1).state.vec
    if inst.alice_accept is not None:
        vec = matcore.apply_to_vector(inst.alice_accept, vec, inst.shape, inst.alice_regs)
    if inst.bob_accept is not None:
        vec = matcore.apply_to_vector(inst.bob_accept, vec, inst.shape, inst.bob_ref_regs)
    return float(np.vdot(vec, vec).real)


class ProtocolOneRunner(SemiRandomOt):
    """Samples honest Protocol-1 runs of an instance."""

    name = 'protocol-one'

    def __init__(self, instance: ProtocolOneInstance):
        self.instance = instance

    def run(self, x0, x1, rng, transcript: Transcript = None):
        result = run_protocol1_honest(self.instance, x0, x1, transcript)
        probs = np.array([result.distribution[o] for o in OUTCOMES])
        i, x_hat = OUTCOMES[int(rng.choice(len(OUTCOMES), p=probs / probs.sum()))]
        if rng.random() >= honest_acceptance(self.instance, x0, x1):
            return OtOutcome.abort(SEMI_RANDOM)
        return OtOutcome(SEMI_RANDOM, (i, x_hat), Verdict.ACCEPT)
