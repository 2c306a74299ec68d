"""
Documented candidate inputs for the supremum-type metrics.

Joint inputs live on A R_A = (A1, A2, R1, R2). Every set is deterministic for a
given seed, so metric values are byte-stable across runs.
"""

import itertools

import numpy as np

import config
from quantum.qstate import DensityState, PureState, random_pure

JOINT_DIMS = (2, 2, 2, 2)
MESSAGE_DIMS = (2, 2)

# |00> first, then |10>, so index-bit pairs are compared before parity pairs
BASIS_ORDER = [(0, 0), (1, 0), (0, 1), (1, 1)]

_S = 1 / np.sqrt(2)
BELL = {
    'phi+': np.array([_S, 0, 0, _S]),
    'phi-': np.array([_S, 0, 0, -_S]),
    'psi+': np.array([0, _S, _S, 0]),
    'psi-': np.array([0, _S, -_S, 0]),
}


def _label(bits):
    return '|' + ','.join(str(b) for b in bits) + '>'


def joint_inputs(seed=None, n_random=None):
    """
    Labeled pure states on A R_A: basis purifications |i,i'>|0,0>, the four Bell
    states on A with reference |0,0>, the maximally entangled A-R_A state, and
    ``n_random`` seeded Haar-random states.
    """
    seed = config.DEFAULT_SEED if seed is None else seed
    n_random = config.RANDOM_INPUTS if n_random is None else n_random
    ref0 = np.array([1, 0, 0, 0], dtype=np.complex128)
    out = []
    for bits in BASIS_ORDER:
        out.append((f"basis{_label(bits)}", PureState.basis(bits + (0, 0), JOINT_DIMS)))
    for name, vec in BELL.items():
        out.append((f"bell-{name}", PureState(np.kron(vec, ref0), JOINT_DIMS)))
    out.append(('max-entangled-A:R', PureState(np.eye(4).reshape(-1) / 2, JOINT_DIMS)))
    rng = np.random.default_rng(seed)
    for n in range(n_random):
        out.append((f"random#{n}", random_pure(JOINT_DIMS, rng)))
    return out


def message_pairs(seed=None, n_random=None):
    """Labeled pairs of states on A for the data-privacy supremum."""
    seed = config.DEFAULT_SEED if seed is None else seed
    n_random = config.RANDOM_INPUTS if n_random is None else n_random
    basis = [(_label(b), DensityState.basis(b)) for b in BASIS_ORDER]
    bell = [(f"bell-{name}", DensityState.from_vector(vec, MESSAGE_DIMS)) for name, vec in BELL.items()]
    pairs = list(itertools.combinations(basis, 2)) + list(itertools.combinations(bell, 2))
    rng = np.random.default_rng(seed + 1)
    for n in range(n_random):
        a = random_pure(MESSAGE_DIMS, rng).density()
        b = random_pure(MESSAGE_DIMS, rng).density()
        pairs.append(((f"random#{n}a", a), (f"random#{n}b", b)))
    return pairs
