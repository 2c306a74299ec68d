"""
Cheating-Alice attacks.

- alice_pgm_attack: Protocol 1, pretty good measurement on the final states
  sigma_(x0,x1) instead of the required measurement
- alice_ideal_vs_actual_attack: Protocol 4, guess (x0, x1) from the decrypted
  evaluation output with a per-key PGM
"""

import itertools
import logging
import math

import numpy as np

from attacks.report import CEILING, FLOOR, AttackReport
from otproto.protocol_one import ProtocolOneInstance, completeness_delta, final_states, max_pairwise_fidelity
from qhe.base import SOT_KEYS, QheScheme
from qhe.privacy import circuit_privacy_ub_certified
from quantum.qstate import DensityState, PureState, fidelity, pgm

log = logging.getLogger(__name__)


def pgm_fidelity_floor(sigmas):
    """1 - 1/8 sum over ordered distinct pairs of F(sigma, sigma')."""
    total = sum(fidelity(sigmas[a], sigmas[b]) for a, b in itertools.permutations(SOT_KEYS, 2))
    return 1.0 - total / 8.0


def alice_pgm_attack(inst: ProtocolOneInstance) -> AttackReport:
    """
    Alice follows the protocol up to her final measurement, then runs the PGM over
    the four sigma_(x0,x1) and guesses both of Bob's bits.
    """
    sigmas = final_states(inst)
    _, success = pgm(sigmas)
    f, pair = max_pairwise_fidelity(sigmas)
    delta = completeness_delta(inst)
    floor = 1.0 - f - math.sqrt(max(0.0, delta * (1.0 - delta)))
    report = AttackReport(
        attack='alice-pgm',
        success=success,
        bound=floor,
        kind=FLOOR,
        witness={
            'instance': inst.name,
            'f': f,
            'f_pair': [list(pair[0]), list(pair[1])],
            'delta': delta,
            'pgm_fidelity_floor': pgm_fidelity_floor(sigmas),
        },
    )
    log.debug(f"{inst.name}: alice pgm success {success:.12g}, floor {floor:.12g}")
    return report


def _protocol4_probes():
    for i in (0, 1):
        yield f"|{i},0>", PureState.basis((i, 0))
    yield 'max-entangled A:R', PureState(np.eye(4).reshape(-1) / 2, (2, 2, 2, 2))


def _keyed_pgm_success(s: QheScheme, rho: DensityState):
    # Alice knows her key, so the PGM is tuned per key
    per_key = []
    for key in s.keys():
        outputs = {fkey: s.evaluate_protocol(key, fkey, rho) for fkey in SOT_KEYS}
        per_key.append(pgm(outputs)[1])
    return sum(per_key) / len(per_key)


def alice_ideal_vs_actual_attack(s: QheScheme, eps_c_ub=None) -> AttackReport:
    """
    Protocol-4 Alice: encrypt a probe, let Bob evaluate, decrypt and guess (x0, x1).

    The ceiling is 1/2 + eps_c^UB; ``eps_c_ub`` defaults to the certified upper bound.
    """
    if eps_c_ub is None:
        eps_c_ub = circuit_privacy_ub_certified(s).value
    best, best_label, table = -1.0, None, {}
    for label, psi in _protocol4_probes():
        success = _keyed_pgm_success(s, psi.density())
        table[label] = success
        if success > best + 1e-12:
            best, best_label = success, label
    return AttackReport(
        attack='alice-ideal-vs-actual',
        success=best,
        bound=0.5 + eps_c_ub,
        kind=CEILING,
        witness={'scheme': s.name, 'probe': best_label, 'per_probe': table, 'eps_c_ub': eps_c_ub},
    )
