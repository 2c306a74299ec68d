"""
Matrix Core
===========

Dense complex-matrix numerics for registers of total dimension <= 64.

Matrices are plain ``numpy`` arrays of dtype complex128. Register bookkeeping
lives in :class:`RegisterShape`; register index 0 is the leftmost tensor factor.

Functions:
- kron() - Kronecker product, factor order = argument order
- partial_trace() - trace out every register not in ``keep``
- embed_operator() - lift an operator on some registers to the full space
- apply_on_registers() - K rho K^dagger for K acting on a register subset
- eig_hermitian() - descending eigendecomposition (LAPACK or cyclic Jacobi)
- svd() - singular value decomposition
- trace_norm(), sqrt_psd(), inv_sqrt_psd(), psd_power()
"""

import logging
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Sequence, Tuple

import numpy as np
from numpy.typing import NDArray

import config
from quantum.exceptions import ConvergenceError, DimensionError, PreconditionError

log = logging.getLogger(__name__)

ComplexMatrix = NDArray[np.complex128]


@dataclass(frozen=True)
class RegisterShape:
    """Ordered register dimensions annotating a matrix or vector."""
    dims: Tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionError(f"register dims must be positive, got {self.dims}")
        object.__setattr__(self, 'dims', dims)

    @classmethod
    def qubits(cls, n):
        return cls((2,) * n)

    @property
    def total(self):
        return int(np.prod(self.dims))

    def __len__(self):
        return len(self.dims)

    def keep(self, registers):
        return RegisterShape(tuple(self.dims[r] for r in sorted(registers)))

    def sub(self, registers):
        """Dims of ``registers`` in the given (not sorted) order."""
        return tuple(self.dims[r] for r in registers)

    def replace(self, on, new_dims):
        dims = list(self.dims)
        for r, d in zip(on, new_dims):
            dims[r] = d
        return RegisterShape(tuple(dims))

    def concat(self, other):
        return RegisterShape(self.dims + other.dims)

    def check(self, m):
        if m.shape[0] != self.total:
            raise DimensionError(f"matrix of dimension {m.shape[0]} does not match registers {self.dims}")

    def to_dict(self):
        return {'dims': list(self.dims)}


def as_matrix(m) -> ComplexMatrix:
    """Coerce to a finite complex128 2-D array."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise DimensionError(f"expected a matrix, got array with {arr.ndim} axes")
    if not np.all(np.isfinite(arr)):
        raise PreconditionError("matrix has NaN or Inf entries")
    return arr


def dagger(m):
    return np.conj(m).T


def max_abs(m):
    return float(np.max(np.abs(m))) if np.size(m) else 0.0


def kron(*mats) -> ComplexMatrix:
    """Kronecker product; the leftmost argument becomes register 0."""
    if not mats:
        return np.ones((1, 1), dtype=np.complex128)
    return reduce(np.kron, (np.asarray(m, dtype=np.complex128) for m in mats))


def _check_registers(shape: RegisterShape, registers: Iterable[int]):
    regs = list(registers)
    if len(set(regs)) != len(regs):
        raise DimensionError(f"duplicate registers in {regs}")
    for r in regs:
        if r < 0 or r >= len(shape):
            raise DimensionError(f"register {r} out of range for {shape.dims}")
    return regs


def partial_trace(m, shape: RegisterShape, keep: Iterable[int]) -> ComplexMatrix:
    """Trace out all registers not in ``keep``; kept registers stay in original order."""
    m = np.asarray(m, dtype=np.complex128)
    keep = _check_registers(shape, keep)
    if not keep:
        raise DimensionError("keep must name at least one register")
    if m.shape != (shape.total, shape.total):
        raise DimensionError(f"matrix shape {m.shape} inconsistent with registers {shape.dims}")

    n = len(shape)
    t = m.reshape(shape.dims + shape.dims)
    # trace highest axis first so lower indices stay valid
    for r in sorted(set(range(n)) - set(keep), reverse=True):
        t = np.trace(t, axis1=r, axis2=r + n)
        n -= 1
    kept = shape.keep(keep)
    return t.reshape(kept.total, kept.total)


def embed_operator(op, shape: RegisterShape, on: Sequence[int]) -> ComplexMatrix:
    """Full-space operator acting as ``op`` on registers ``on`` (in that order), identity elsewhere."""
    on = _check_registers(shape, on)
    sub = shape.sub(on)
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != (int(np.prod(sub)), int(np.prod(sub))):
        raise DimensionError(f"operator shape {op.shape} does not act on registers with dims {sub}")
    rest = [r for r in range(len(shape)) if r not in on]
    rest_dim = int(np.prod(shape.sub(rest))) if rest else 1
    full = np.kron(op, np.eye(rest_dim, dtype=np.complex128))

    perm = on + rest
    n = len(shape)
    inv = list(np.argsort(perm))
    t = full.reshape(shape.sub(perm) + shape.sub(perm))
    t = t.transpose(inv + [n + i for i in inv])
    return t.reshape(shape.total, shape.total)


def _contract_ket(op_t, t, on, k):
    t = np.tensordot(op_t, t, axes=(list(range(k, 2 * k)), list(on)))
    return np.moveaxis(t, list(range(k)), list(on))


def apply_on_registers(ops, m, shape: RegisterShape, on: Sequence[int], out_dims=None):
    """
    Sum over ``ops`` of (I x K x I) m (I x K x I)^dagger.

    Each K maps registers ``on`` (dims ``shape.sub(on)``) to registers of dims
    ``out_dims``; outputs replace inputs in place. Returns (matrix, new_shape).
    """
    on = _check_registers(shape, on)
    in_dims = shape.sub(on)
    out_dims = tuple(out_dims) if out_dims is not None else in_dims
    if len(out_dims) != len(on):
        raise DimensionError("output register count must equal input register count")
    m = np.asarray(m, dtype=np.complex128)
    if m.shape != (shape.total, shape.total):
        raise DimensionError(f"matrix shape {m.shape} inconsistent with registers {shape.dims}")

    n, k = len(shape), len(on)
    new_shape = shape.replace(on, out_dims)
    t = m.reshape(shape.dims + shape.dims)
    acc = np.zeros(new_shape.dims + new_shape.dims, dtype=np.complex128)
    cols = [n + r for r in on]
    for op in ops:
        op = np.asarray(op, dtype=np.complex128)
        if op.shape != (int(np.prod(out_dims)), int(np.prod(in_dims))):
            raise DimensionError(f"Kraus operator shape {op.shape} does not map {in_dims} -> {out_dims}")
        op_t = op.reshape(out_dims + in_dims)
        left = _contract_ket(op_t, t, on, k)
        right = np.tensordot(left, np.conj(op_t), axes=(cols, list(range(k, 2 * k))))
        acc += np.moveaxis(right, list(range(2 * n - k, 2 * n)), cols)
    return acc.reshape(new_shape.total, new_shape.total), new_shape


def apply_to_vector(op, vec, shape: RegisterShape, on: Sequence[int]):
    """(I x U x I) vec for a square operator on registers ``on``."""
    on = _check_registers(shape, on)
    sub = shape.sub(on)
    op = np.asarray(op, dtype=np.complex128)
    if op.shape != (int(np.prod(sub)), int(np.prod(sub))):
        raise DimensionError(f"operator shape {op.shape} does not act on registers with dims {sub}")
    t = np.asarray(vec, dtype=np.complex128).reshape(shape.dims)
    t = _contract_ket(op.reshape(sub + sub), t, on, len(on))
    return t.reshape(-1)


def is_hermitian(m, tol=None):
    tol = config.HERMITIAN_TOL if tol is None else tol
    m = np.asarray(m)
    return m.shape[0] == m.shape[1] and max_abs(m - dagger(m)) <= tol


def jacobi_eigh(m, tol=None, max_sweeps=None):
    """
    Cyclic Jacobi eigendecomposition of a Hermitian matrix.

    Each (p, q) rotation first removes the phase of a_pq with a diagonal unitary,
    then applies the real Jacobi rotation. Stops once the off-diagonal Frobenius
    mass falls under ``tol`` times max(1, ||m||_F).

    Returns (eigenvalues, eigenvectors) in the order the sweep leaves them.
    """
    tol = config.JACOBI_TOL if tol is None else tol
    max_sweeps = config.JACOBI_MAX_SWEEPS if max_sweeps is None else max_sweeps
    a = np.array(m, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    scale = max(1.0, float(np.linalg.norm(a)))

    for sweep in range(max_sweeps):
        off = np.sqrt(max(0.0, float(np.sum(np.abs(a) ** 2) - np.sum(np.abs(np.diag(a)) ** 2))))
        if off < tol * scale:
            log.debug(f"jacobi converged after {sweep} sweeps (off={off:.3e})")
            return np.real(np.diag(a)).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                mag = abs(apq)
                if mag < 1e-300:
                    continue
                phase = apq / mag
                phi = (a[q, q].real - a[p, p].real) / (2.0 * mag)
                t = 1.0 / (abs(phi) + np.sqrt(phi * phi + 1.0))
                if phi < 0.0:
                    t = -t
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                rot = np.array([[c, s], [-s * np.conj(phase), c * np.conj(phase)]], dtype=np.complex128)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ rot
                a[idx, :] = dagger(rot) @ a[idx, :]
                v[:, idx] = v[:, idx] @ rot
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real

    raise ConvergenceError(f"jacobi did not converge in {max_sweeps} sweeps")


def eig_hermitian(m, method=None):
    """
    Eigendecomposition of a Hermitian matrix, eigenvalues descending.

    ``method`` is "lapack" (numpy.linalg.eigh) or "jacobi"; defaults to
    ``config.EIGENSOLVER``.
    """
    m = as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise DimensionError(f"eig_hermitian needs a square matrix, got {m.shape}")
    if not is_hermitian(m):
        raise PreconditionError(f"matrix is not Hermitian (deviation {max_abs(m - dagger(m)):.3e})")
    h = (m + dagger(m)) / 2
    method = method or config.EIGENSOLVER
    if method == "jacobi":
        vals, vecs = jacobi_eigh(h)
    elif method == "lapack":
        vals, vecs = np.linalg.eigh(h)
    else:
        raise PreconditionError(f"unknown eigensolver {method!r}")
    order = np.argsort(-vals, kind="stable")
    return np.asarray(vals)[order], vecs[:, order]


def svd(m):
    """Returns (u, s, vh) with m = u @ diag(s) @ vh, s descending."""
    m = as_matrix(m)
    return np.linalg.svd(m, full_matrices=True)


def trace_norm(m):
    """Schatten 1-norm; Hermitian inputs take the eigenvalue path."""
    m = as_matrix(m)
    if m.shape[0] == m.shape[1] and is_hermitian(m):
        vals, _ = eig_hermitian(m)
        return float(np.sum(np.abs(vals)))
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


def _psd_eig(m):
    vals, vecs = eig_hermitian(m)
    if vals.size and vals[-1] < -config.PSD_TOL:
        raise PreconditionError(f"matrix is not PSD (min eigenvalue {vals[-1]:.3e})")
    return np.clip(vals, 0.0, None), vecs


def psd_power(m, power, cutoff=None):
    """
    m**power on the support. Negative powers drop eigenvalues below ``cutoff``;
    positive powers drop only eigenvalues at the numerical floor.
    """
    cutoff = config.PINV_CUTOFF if cutoff is None else cutoff
    vals, vecs = _psd_eig(m)
    out = np.zeros_like(vals)
    support = vals >= cutoff if power < 0 else vals > config.EIG_FLOOR
    out[support] = vals[support] ** power
    return (vecs * out) @ dagger(vecs)


def sqrt_psd(m):
    return psd_power(m, 0.5)


def inv_sqrt_psd(m, cutoff=None):
    return psd_power(m, -0.5, cutoff)


def support_projector(m, cutoff=None):
    cutoff = config.PINV_CUTOFF if cutoff is None else cutoff
    vals, vecs = _psd_eig(m)
    cols = vecs[:, vals >= cutoff]
    return cols @ dagger(cols)
