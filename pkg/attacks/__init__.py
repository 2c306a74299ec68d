from attacks.alice import alice_ideal_vs_actual_attack, alice_pgm_attack
from attacks.bob import bob_helstrom_attack_on_protocol4, bob_superposition_attack
from attacks.certify import certify_corollary1, certify_theorem2, fidelity_complement_check
from attacks.report import AttackReport

__all__ = [
    'AttackReport',
    'alice_pgm_attack',
    'alice_ideal_vs_actual_attack',
    'bob_superposition_attack',
    'bob_helstrom_attack_on_protocol4',
    'fidelity_complement_check',
    'certify_theorem2',
    'certify_corollary1',
]
