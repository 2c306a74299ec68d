"""
Channel Zoo
===========

Gates and channels on qubit registers: Paulis, CNOTs, dephasing, depolarizing,
the strong oblivious-transfer (SOT) channels F_(x0,x1) in compact and circuit
form, Pauli pads, and Choi states for channel equality tests.

SOT circuit, qubit 1 = register 0:

    input 1 --Z^r3--[CNOT pair iff x0 != x1]--X^r1 Z^r2--  (discarded, depolarized)
    input 2 --------[                      ]--X^x0--Z^r0-- (consumed, dephased)

The CNOT pair is CNOT(2->1) followed by CNOT(1->2), moving the index bit i onto
qubit 2. Averaging the 16 settings of r yields the compact channel exactly.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from quantum import matcore
from quantum.exceptions import PreconditionError
from quantum.matcore import RegisterShape, dagger
from quantum.qstate import DensityState, KrausChannel, apply_channel, trace_distance

log = logging.getLogger(__name__)

I2 = np.eye(2, dtype=np.complex128)
X = np.array([[0, 1], [1, 0]], dtype=np.complex128)
Y = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
Z = np.array([[1, 0], [0, -1]], dtype=np.complex128)
P0 = np.array([[1, 0], [0, 0]], dtype=np.complex128)
P1 = np.array([[0, 0], [0, 1]], dtype=np.complex128)

CNOT_12 = matcore.kron(P0, I2) + matcore.kron(P1, X)
CNOT_21 = matcore.kron(I2, P0) + matcore.kron(X, P1)

QUBIT = RegisterShape((2,))
TWO_QUBITS = RegisterShape((2, 2))


def _bit(name, value):
    if value not in (0, 1):
        raise PreconditionError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class SotParams:
    """Bob's data bits plus the four randomization bits of the SOT Clifford."""
    x0: int
    x1: int
    r0: int = 0
    r1: int = 0
    r2: int = 0
    r3: int = 0

    def __post_init__(self):
        for name in ('x0', 'x1', 'r0', 'r1', 'r2', 'r3'):
            _bit(name, getattr(self, name))


def pauli(a, b):
    """X^a Z^b."""
    return np.linalg.matrix_power(X, _bit('a', a)) @ np.linalg.matrix_power(Z, _bit('b', b))


def basis_ket(bits):
    v = np.zeros(2 ** len(bits), dtype=np.complex128)
    v[int(''.join(str(b) for b in bits), 2) if bits else 0] = 1.0
    return v.reshape(-1, 1)


def identity_channel(shape):
    shape = RegisterShape(tuple(shape)) if not isinstance(shape, RegisterShape) else shape
    return KrausChannel((np.eye(shape.total, dtype=np.complex128),), shape, shape)


def unitary_channel(u, shape=None):
    u = matcore.as_matrix(u)
    if matcore.max_abs(dagger(u) @ u - np.eye(u.shape[0])) > 1e-9:
        raise PreconditionError("operator is not unitary")
    shape = shape or RegisterShape.qubits(int(round(np.log2(u.shape[0]))))
    return KrausChannel((u,), shape, shape)


def dephasing_channel():
    """Completely dephasing qubit channel: I and Z uniformly at random."""
    return KrausChannel((I2 / np.sqrt(2), Z / np.sqrt(2)), QUBIT, QUBIT)


def depolarizing_channel():
    """Completely depolarizing qubit channel: I, Z, X and XZ uniformly at random."""
    return KrausChannel(tuple(pauli(a, b) / 2 for a, b in itertools.product((0, 1), repeat=2)), QUBIT, QUBIT)


def compose(outer: KrausChannel, inner: KrausChannel) -> KrausChannel:
    """outer after inner."""
    ops = tuple(a @ b for a in outer.kraus_ops for b in inner.kraus_ops)
    return KrausChannel(ops, inner.in_shape, outer.out_shape)


def tensor(a: KrausChannel, b: KrausChannel) -> KrausChannel:
    ops = tuple(np.kron(ka, kb) for ka in a.kraus_ops for kb in b.kraus_ops)
    return KrausChannel(ops, a.in_shape.concat(b.in_shape), a.out_shape.concat(b.out_shape))


def mix(channels: Sequence[KrausChannel], weights: Optional[Sequence[float]] = None) -> KrausChannel:
    """Convex mixture; uniform when ``weights`` is omitted."""
    channels = list(channels)
    if weights is None:
        weights = [1.0 / len(channels)] * len(channels)
    ops = tuple(np.sqrt(w) * k for ch, w in zip(channels, weights) if w > 0 for k in ch.kraus_ops)
    return KrausChannel(ops, channels[0].in_shape, channels[0].out_shape)


def sot_output_bit(i, i_prime, x0, x1):
    """Classical output of F_(x0,x1) on basis input |i, i'>: x_{i xor i'} xor i'."""
    x = (x0, x1)
    return x[i ^ i_prime] ^ i_prime


def sot_channel_compact(x0, x1) -> KrausChannel:
    """
    F_(x0,x1): measure both qubits, emit I/2 on qubit 1 and |x_{i+i'} + i'> on qubit 2.

    Canonical 16-operator form: for each basis input and each Pauli P,
    K = 1/2 (P x I)|0, b><i, i'|.
    """
    x0, x1 = _bit('x0', x0), _bit('x1', x1)
    ops = []
    for i, ip in itertools.product((0, 1), repeat=2):
        out = basis_ket((0, sot_output_bit(i, ip, x0, x1)))
        bra = dagger(basis_ket((i, ip)))
        for a, b in itertools.product((0, 1), repeat=2):
            ops.append(0.5 * np.kron(pauli(a, b), I2) @ out @ bra)
    return KrausChannel(tuple(ops), TWO_QUBITS, TWO_QUBITS)


def sot_circuit(x0, x1):
    """Bare conditional circuit: CNOT pair iff x0 != x1, then X on qubit 2 iff x0 = 1."""
    x0, x1 = _bit('x0', x0), _bit('x1', x1)
    u = np.eye(4, dtype=np.complex128)
    if x0 != x1:
        u = CNOT_12 @ CNOT_21 @ u
    if x0:
        u = np.kron(I2, X) @ u
    return u


def sot_clifford_unitary(p: SotParams, circuit=sot_circuit):
    """Unitary of F^(r0,r1,r2,r3)_(x0,x1); ``circuit`` swaps in another bare circuit."""
    randomize_in = np.kron(np.linalg.matrix_power(Z, p.r3), I2)
    randomize_out = np.kron(pauli(p.r1, p.r2), np.linalg.matrix_power(Z, p.r0))
    return randomize_out @ circuit(p.x0, p.x1) @ randomize_in


def sot_clifford(p: SotParams, circuit=sot_circuit) -> KrausChannel:
    return KrausChannel((sot_clifford_unitary(p, circuit),), TWO_QUBITS, TWO_QUBITS)


def sot_clifford_average(x0, x1, circuit=sot_circuit) -> KrausChannel:
    """Uniform mixture of the 16 Clifford randomizations of F_(x0,x1)."""
    return mix([sot_clifford(SotParams(x0, x1, *r), circuit) for r in itertools.product((0, 1), repeat=4)])


def pauli_pad(a1, b1, a2, b2) -> KrausChannel:
    """X^a1 Z^b1 (x) X^a2 Z^b2."""
    return KrausChannel((np.kron(pauli(a1, b1), pauli(a2, b2)),), TWO_QUBITS, TWO_QUBITS)


def choi(ch: KrausChannel) -> DensityState:
    """(ch (x) id) on the normalized maximally entangled state; output registers first."""
    d = ch.in_shape.total
    omega = np.eye(d, dtype=np.complex128).reshape(-1) / np.sqrt(d)
    state = DensityState.from_vector(omega, ch.in_shape.concat(ch.in_shape))
    return apply_channel(ch, state, on=list(range(len(ch.in_shape))))


def choi_distance(a: KrausChannel, b: KrausChannel):
    return trace_distance(choi(a), choi(b))


def is_block_diagonal_in_input(ch: KrausChannel, tol=1e-9):
    """True when the Choi state has no coherence between distinct computational input basis states."""
    c = choi(ch)
    d_in, d_out = ch.in_shape.total, ch.out_shape.total
    t = c.mat.reshape(d_out, d_in, d_out, d_in)
    off = t.copy()
    for j in range(d_in):
        off[:, j, :, j] = 0
    log.debug(f"choi off-block mass {matcore.max_abs(off):.3e}")
    return matcore.max_abs(off) <= tol


def max_sot_choi_deviation(circuit=sot_circuit):
    """Largest Choi distance between compact F_(x0,x1) and its 16-term Clifford average."""
    devs = {}
    for x0, x1 in itertools.product((0, 1), repeat=2):
        devs[(x0, x1)] = choi_distance(sot_channel_compact(x0, x1), sot_clifford_average(x0, x1, circuit))
    return max(devs.values()), devs
