"""
Certification harness.

certify_theorem2 checks P_A + 2 P_B + 4 sqrt(delta) >= 2 on a Protocol-1
instance with the measured attack successes. certify_corollary1 runs the QHE
to OT construction for a scheme and checks that the induced OT stays inside
the limits set by the scheme's eps, eps_d and eps_c.
"""

import logging
import math

import numpy as np

import config
from attacks.alice import alice_ideal_vs_actual_attack, alice_pgm_attack
from attacks.bob import bob_helstrom_attack_on_protocol4, bob_superposition_attack
from otproto.from_qhe import protocol4_completeness, protocol4_monte_carlo
from otproto.protocol_one import ProtocolOneInstance, completeness_delta, final_states
from qhe.base import QheScheme
from qhe.metrics import metrics
from quantum.exceptions import CertificationError
from quantum.qstate import fidelity

log = logging.getLogger(__name__)


def fidelity_complement_check(inst: ProtocolOneInstance):
    """
    F(sigma_(x0,x1), sigma_(1-x0,1-x1)) <= 2 sqrt(delta (1 - delta)) for every input.

    The bound comes from the required-measurement form and only says something
    when delta <= 1/2; otherwise the report is marked not applicable.
    """
    delta = completeness_delta(inst)
    bound = 2.0 * math.sqrt(max(0.0, delta * (1.0 - delta)))
    sigmas = final_states(inst)
    worst = max(fidelity(sigmas[(x0, x1)], sigmas[(1 - x0, 1 - x1)]) for x0, x1 in sigmas)
    applicable = delta <= 0.5
    if not applicable:
        log.warning(f"{inst.name}: delta = {delta:.6g} > 1/2, fidelity complement bound is vacuous")
    holds = (not applicable) or worst <= bound + config.THEOREM_TOL
    return {'applicable': applicable, 'delta': delta, 'max_fidelity': worst, 'bound': bound, 'holds': holds}


def certify_theorem2(inst: ProtocolOneInstance):
    """
    Assemble delta, P_A and P_B for an instance and check the trade-off.

    raises:
        CertificationError when the inequality, an attack floor or the
        fidelity complement bound fails
    """
    delta = completeness_delta(inst)
    alice = alice_pgm_attack(inst)
    bob = bob_superposition_attack(inst)
    complement = fidelity_complement_check(inst)
    lhs = alice.success + 2.0 * bob.success + 4.0 * math.sqrt(delta)
    slack = lhs - 2.0

    failures = []
    if slack < -config.THEOREM_TOL:
        failures.append(f"P_A + 2 P_B + 4 sqrt(delta) = {lhs:.12g} < 2")
    for report in (alice, bob):
        if not report.holds:
            failures.append(f"{report.attack} success {report.success:.12g} below floor {report.bound:.12g}")
    if not complement['holds']:
        failures.append(f"complement fidelity {complement['max_fidelity']:.12g} above {complement['bound']:.12g}")
    if bob.witness['cauchy_schwarz_slack'] < -config.THEOREM_TOL:
        failures.append("Cauchy-Schwarz step violated")
    if failures:
        for failure in failures:
            log.error(f"{inst.name}: {failure}")
        raise CertificationError(f"{inst.name}: " + "; ".join(failures))

    log.info(f"{inst.name}: theorem holds, lhs {lhs:.12g}, slack {slack:.3e}")
    return {
        'instance': inst.name,
        'params': dict(inst.params),
        'delta': delta,
        'p_a': alice.success,
        'p_b': bob.success,
        'lhs': lhs,
        'slack': slack,
        'holds': True,
        'attacks': {'alice': alice.to_dict(), 'bob': bob.to_dict()},
        'fidelity_complement': complement,
    }


def certify_corollary1(s: QheScheme, seed=None, n_random=None, trials=None):
    """
    Run the QHE to OT construction for ``s`` and check the consistency chain
    delta <= eps, P_A <= 1/2 + eps_c^UB, P_B <= 1/2 (1 + eps_d).

    ``trials`` adds a seeded Monte-Carlo run of the honest protocol to the report.
    """
    m = metrics(s, seed, n_random)
    completeness = protocol4_completeness(s)
    alice = alice_ideal_vs_actual_attack(s, m.eps_c_ub)
    bob = bob_helstrom_attack_on_protocol4(s, m.eps_d)

    checks = {
        'delta<=eps': {'lhs': completeness['delta'], 'rhs': m.eps},
        'p_a<=1/2+eps_c_ub': {'lhs': alice.success, 'rhs': alice.bound},
        'p_b<=(1+eps_d)/2': {'lhs': bob.success, 'rhs': bob.bound},
    }
    failures = []
    for name, check in checks.items():
        check['holds'] = check['lhs'] <= check['rhs'] + config.THEOREM_TOL
        if not check['holds']:
            failures.append(f"{name} fails ({check['lhs']:.12g} > {check['rhs']:.12g})")
    if failures:
        raise CertificationError(f"{s.name}: " + "; ".join(failures))

    report = {
        'scheme': s.name,
        'metrics': m.to_dict(),
        'completeness': completeness,
        'attacks': {'alice': alice.to_dict(), 'bob': bob.to_dict()},
        'checks': checks,
        'bound_lhs': m.bound_lhs,
        'holds': m.holds,
    }
    if trials:
        rng = np.random.default_rng(config.get_default_seed() if seed is None else seed)
        report['monte_carlo'] = protocol4_monte_carlo(s, trials, rng)
    log.info(f"{s.name}: consistency chain holds, eps_d + eps_c_ub + 4 sqrt(eps) = {m.bound_lhs:.12g}")
    return report
