"""
Cheating-Bob attacks.

bob_superposition_attack runs Protocol 1 with Bob's input bits held in a
control qubit B prepared in |+>. Branch 0 plays (x0, x1), branch 1 plays
(x0', x1'), the pair achieving the maximal fidelity f. Before the final round
ends Bob rotates R_B in branch 0 by the Uhlmann unitary so the two branches
overlap by exactly f. After Alice's measurement Bob holds B R_B and
discriminates the index i.

bob_helstrom_attack_on_protocol4 discriminates the key-averaged ciphertexts of
|0,0> and |1,0>.
"""

import itertools
import logging
import math

import numpy as np

from attacks.report import CEILING, FLOOR, AttackReport
from otproto.protocol_one import (
    ProtocolOneInstance, completeness_delta, final_states, max_pairwise_fidelity, run_protocol1_honest,
)
from qhe.base import SOT_KEYS, QheScheme
from qhe.metrics import data_privacy_eps
from quantum import matcore
from quantum.exceptions import PreconditionError
from quantum.matcore import RegisterShape
from quantum.qstate import DensityState, fidelity, helstrom, uhlmann_unitary

log = logging.getLogger(__name__)


def _branch_superposition(phi0, phi1, inst: ProtocolOneInstance):
    vec = (np.kron([1.0, 0.0], phi0) + np.kron([0.0, 1.0], phi1)) / math.sqrt(2)
    return vec, RegisterShape((2,) + inst.shape.dims)


def _bob_states(inst: ProtocolOneInstance, psi0, psi1):
    """rho-tilde_i on B R_B, unnormalized, after Alice's measurement with Kraus E = N^(1/2)."""
    shape = inst.shape
    alice_regs = inst.alice_regs
    keep = [0] + [r + 1 for r in inst.bob_ref_regs]
    rho = {0: 0, 1: 0}
    for (i, _), n in inst.final_povm.elements.items():
        e = matcore.sqrt_psd(n)
        phi0 = matcore.apply_to_vector(e, psi0.vec, shape, alice_regs)
        phi1 = matcore.apply_to_vector(e, psi1.vec, shape, alice_regs)
        vec, joint = _branch_superposition(phi0, phi1, inst)
        rho[i] = rho[i] + matcore.partial_trace(np.outer(vec, vec.conj()), joint, keep)
    return rho


def _differing_bits(x, x_prime):
    return sum(a != b for a, b in zip(x, x_prime))


def _closest_one_bit_pair(sigmas):
    pairs = [(a, b) for a, b in itertools.combinations(SOT_KEYS, 2) if _differing_bits(a, b) == 1]
    return max(pairs, key=lambda p: fidelity(sigmas[p[0]], sigmas[p[1]]))


def _cauchy_schwarz_slack(inst: ProtocolOneInstance, psi0, psi1):
    # |<phi'|N|phi>| <= sqrt(<phi|N|phi> <phi'|N|phi'>) for every outcome of index 1
    worst = math.inf
    for (i, _), n in inst.final_povm.elements.items():
        if i != 1:
            continue
        big = matcore.embed_operator(n, inst.shape, inst.alice_regs)
        cross = abs(np.vdot(psi1.vec, big @ psi0.vec))
        diag = np.vdot(psi0.vec, big @ psi0.vec).real * np.vdot(psi1.vec, big @ psi1.vec).real
        worst = min(worst, math.sqrt(max(0.0, diag)) - cross)
    return worst


def bob_superposition_attack(inst: ProtocolOneInstance, pair=None) -> AttackReport:
    """
    Superposition attack against a Protocol-1 instance.

    ``pair`` must differ in exactly one bit. It defaults to the first pair
    achieving f, or to the closest one-bit pair when that pair differs in both
    bits. Pairs that differ only in the first bit are handled by swapping the
    roles of the index values; the Helstrom success is symmetric in those labels.
    """
    sigmas = final_states(inst)
    f, f_pair = max_pairwise_fidelity(sigmas)
    if pair is None:
        pair = f_pair if _differing_bits(*f_pair) == 1 else _closest_one_bit_pair(sigmas)
    x, x_prime = (tuple(int(b) for b in p) for p in pair)
    if x not in sigmas or x_prime not in sigmas:
        raise PreconditionError(f"pair {x}, {x_prime} is not a pair of input bit strings")
    if _differing_bits(x, x_prime) != 1:
        raise PreconditionError(f"pair {x}, {x_prime} must differ in exactly one bit")
    relabeled = x[0] != x_prime[0]
    if relabeled:
        log.debug(f"{inst.name}: pair {x}, {x_prime} differs only in the first bit, swapping index roles")

    psi0 = run_protocol1_honest(inst, *x).state
    psi1 = run_protocol1_honest(inst, *x_prime).state
    w, overlap = uhlmann_unitary(psi0, psi1, inst.bob_ref_regs)
    psi0 = psi0.evolve(w, inst.bob_ref_regs)

    rho = _bob_states(inst, psi0, psi1)
    distance = matcore.trace_norm(rho[0] - rho[1])
    success = 0.5 * (1.0 + distance)

    delta = completeness_delta(inst)
    correction = 2.0 * math.sqrt(2.0 * delta)
    pair_f = fidelity(sigmas[x], sigmas[x_prime])
    floor = 0.5 * (1.0 + pair_f - correction)
    report = AttackReport(
        attack='bob-superposition',
        success=success,
        bound=floor,
        kind=FLOOR,
        witness={
            'instance': inst.name,
            'pair': [list(x), list(x_prime)],
            'relabeled': relabeled,
            'f': f,
            'uhlmann_overlap': overlap,
            'delta': delta,
            'trace_distance': distance,
            'trace_floor': pair_f - correction,
            'cauchy_schwarz_slack': _cauchy_schwarz_slack(inst, psi0, psi1),
        },
    )
    log.debug(f"{inst.name}: bob superposition success {success:.12g}, floor {floor:.12g}")
    return report


def bob_helstrom_attack_on_protocol4(s: QheScheme, eps_d=None) -> AttackReport:
    """
    Bob sees E_k Enc_k(|i,0><i,0|) and runs Helstrom between i = 0 and i = 1.

    The ceiling is 1/2 (1 + eps_d); ``eps_d`` defaults to the evaluated data-privacy value.
    """
    if eps_d is None:
        eps_d = data_privacy_eps(s).value
    a = s.averaged_ciphertext(DensityState.basis((0, 0)))
    b = s.averaged_ciphertext(DensityState.basis((1, 0)))
    _, success = helstrom(a, b)
    return AttackReport(
        attack='bob-helstrom-protocol4',
        success=success,
        bound=0.5 * (1.0 + eps_d),
        kind=CEILING,
        witness={'scheme': s.name, 'states': ['E_k Enc_k(|0,0>)', 'E_k Enc_k(|1,0>)'], 'eps_d': eps_d},
    )
