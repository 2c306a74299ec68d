"""
Quantum States
==============

States, channels, measurements and the distance toolkit.

Types:
- DensityState / PureState - states over ordered registers
- KrausMap / KrausChannel - completely positive maps (channels are trace preserving)
- Povm - keyed measurement

Functions:
- apply_channel(), measure(), adjoint_channel()
- trace_distance(), fidelity()
- purify(), uhlmann_unitary()
- helstrom(), pgm()
- random_unitary(), random_pure(), random_density()
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, Hashable, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy.linalg import polar

import config
from quantum import matcore
from quantum.exceptions import DimensionError, PreconditionError
from quantum.matcore import RegisterShape, dagger

log = logging.getLogger(__name__)


def _shape(shape):
    if isinstance(shape, RegisterShape):
        return shape
    return RegisterShape(tuple(shape))


@dataclass(frozen=True)
class DensityState:
    """Normalized density matrix over ``shape``."""
    mat: np.ndarray
    shape: RegisterShape

    def __post_init__(self):
        mat = matcore.as_matrix(self.mat)
        shape = _shape(self.shape)
        if mat.shape != (shape.total, shape.total):
            raise DimensionError(f"density matrix {mat.shape} does not match registers {shape.dims}")
        if not matcore.is_hermitian(mat):
            raise PreconditionError("density matrix is not Hermitian")
        tr = np.trace(mat).real
        if abs(tr - 1.0) > config.TRACE_TOL:
            raise PreconditionError(f"density matrix trace is {tr:.12g}, expected 1")
        vals, _ = matcore.eig_hermitian(mat)
        if vals[-1] < -config.PSD_TOL:
            raise PreconditionError(f"density matrix has eigenvalue {vals[-1]:.3e}")
        object.__setattr__(self, 'mat', mat)
        object.__setattr__(self, 'shape', shape)

    @classmethod
    def from_vector(cls, vec, shape):
        vec = np.asarray(vec, dtype=np.complex128).reshape(-1)
        return cls(np.outer(vec, np.conj(vec)), shape)

    @classmethod
    def basis(cls, bits, dims=None):
        """Computational basis projector |bits><bits|."""
        dims = tuple(dims) if dims is not None else (2,) * len(bits)
        vec = np.zeros(int(np.prod(dims)), dtype=np.complex128)
        vec[np.ravel_multi_index(tuple(bits), dims)] = 1.0
        return cls.from_vector(vec, RegisterShape(dims))

    @classmethod
    def maximally_mixed(cls, shape):
        shape = _shape(shape)
        return cls(np.eye(shape.total, dtype=np.complex128) / shape.total, shape)

    @property
    def dim(self):
        return self.shape.total

    def min_eigenvalue(self):
        vals, _ = matcore.eig_hermitian(self.mat)
        return float(vals[-1])

    def check_positive(self, tol=None):
        tol = config.PSD_TOL if tol is None else tol
        low = self.min_eigenvalue()
        if low < -tol:
            raise PreconditionError(f"density matrix has eigenvalue {low:.3e}")
        return self

    def reduce(self, keep):
        return DensityState(matcore.partial_trace(self.mat, self.shape, keep), self.shape.keep(keep))

    def tensor(self, other):
        return DensityState(np.kron(self.mat, other.mat), self.shape.concat(other.shape))


@dataclass(frozen=True)
class PureState:
    """Unit vector over ``shape``."""
    vec: np.ndarray
    shape: RegisterShape

    def __post_init__(self):
        vec = np.asarray(self.vec, dtype=np.complex128).reshape(-1)
        shape = _shape(self.shape)
        if vec.size != shape.total:
            raise DimensionError(f"vector of length {vec.size} does not match registers {shape.dims}")
        if not np.all(np.isfinite(vec)):
            raise PreconditionError("state vector has NaN or Inf entries")
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > config.NORM_TOL:
            raise PreconditionError(f"state vector norm is {norm:.12g}, expected 1")
        object.__setattr__(self, 'vec', vec)
        object.__setattr__(self, 'shape', shape)

    @classmethod
    def basis(cls, bits, dims=None):
        dims = tuple(dims) if dims is not None else (2,) * len(bits)
        vec = np.zeros(int(np.prod(dims)), dtype=np.complex128)
        vec[np.ravel_multi_index(tuple(bits), dims)] = 1.0
        return cls(vec, RegisterShape(dims))

    def density(self):
        return DensityState.from_vector(self.vec, self.shape)

    def inner(self, other):
        """<self|other>."""
        if self.shape != other.shape:
            raise DimensionError(f"cannot take overlap of {self.shape.dims} and {other.shape.dims}")
        return complex(np.vdot(self.vec, other.vec))

    def tensor(self, other):
        return PureState(np.kron(self.vec, other.vec), self.shape.concat(other.shape))

    def evolve(self, op, on=None):
        on = list(range(len(self.shape))) if on is None else list(on)
        return PureState(matcore.apply_to_vector(op, self.vec, self.shape, on), self.shape)


@dataclass(frozen=True)
class KrausMap:
    """Completely positive map given by Kraus operators; no trace condition."""
    kraus_ops: Tuple[np.ndarray, ...]
    in_shape: RegisterShape
    out_shape: RegisterShape

    def __post_init__(self):
        in_shape, out_shape = _shape(self.in_shape), _shape(self.out_shape)
        ops = tuple(matcore.as_matrix(k) for k in self.kraus_ops)
        if not ops:
            raise PreconditionError("a Kraus map needs at least one operator")
        for k in ops:
            if k.shape != (out_shape.total, in_shape.total):
                raise DimensionError(
                    f"Kraus operator {k.shape} does not map {in_shape.dims} -> {out_shape.dims}")
        object.__setattr__(self, 'kraus_ops', ops)
        object.__setattr__(self, 'in_shape', in_shape)
        object.__setattr__(self, 'out_shape', out_shape)

    def __call__(self, m):
        """Apply to a raw matrix on the full input space."""
        m = np.asarray(m, dtype=np.complex128)
        return sum(k @ m @ dagger(k) for k in self.kraus_ops)

    def completeness(self):
        return sum(dagger(k) @ k for k in self.kraus_ops)

    def unitality(self):
        return sum(k @ dagger(k) for k in self.kraus_ops)

    def is_trace_preserving(self, tol=None):
        tol = config.CPTP_TOL if tol is None else tol
        return matcore.max_abs(self.completeness() - np.eye(self.in_shape.total)) <= tol

    def is_unital(self, tol=None):
        tol = config.CPTP_TOL if tol is None else tol
        if self.in_shape.total != self.out_shape.total:
            return False
        return matcore.max_abs(self.unitality() - np.eye(self.out_shape.total)) <= tol


@dataclass(frozen=True)
class KrausChannel(KrausMap):
    """CPTP map: completeness sum K^dagger K = I within CPTP_TOL."""

    def __post_init__(self):
        super().__post_init__()
        if not self.is_trace_preserving():
            dev = matcore.max_abs(self.completeness() - np.eye(self.in_shape.total))
            raise PreconditionError(f"Kraus set is not trace preserving (deviation {dev:.3e})")


@dataclass(frozen=True)
class Povm:
    """Keyed POVM; elements PSD and summing to identity."""
    elements: Dict[Hashable, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if not self.elements:
            raise PreconditionError("POVM has no elements")
        elems = {key: matcore.as_matrix(e) for key, e in self.elements.items()}
        dims = {e.shape for e in elems.values()}
        if len(dims) != 1:
            raise DimensionError(f"POVM elements have mixed shapes {sorted(dims)}")
        total = sum(elems.values())
        d = total.shape[0]
        for key, e in elems.items():
            vals, _ = matcore.eig_hermitian(e)
            if vals[-1] < -config.PSD_TOL:
                raise PreconditionError(f"POVM element {key!r} is not PSD (min eigenvalue {vals[-1]:.3e})")
        dev = matcore.max_abs(total - np.eye(d))
        if dev > config.CPTP_TOL:
            raise PreconditionError(f"POVM elements do not sum to identity (deviation {dev:.3e})")
        object.__setattr__(self, 'elements', elems)

    @property
    def keys(self):
        return list(self.elements)

    @property
    def dim(self):
        return next(iter(self.elements.values())).shape[0]

    def __getitem__(self, key):
        return self.elements[key]


def _as_density_matrix(x):
    if isinstance(x, DensityState):
        return x.mat, x.shape
    if isinstance(x, PureState):
        return x.density().mat, x.shape
    m = matcore.as_matrix(x)
    return m, RegisterShape((m.shape[0],))


def apply_channel(ch: KrausMap, state: DensityState, on: Optional[Sequence[int]] = None) -> DensityState:
    """Apply ``ch`` to registers ``on`` of ``state`` (all registers when omitted)."""
    on = list(range(len(state.shape))) if on is None else list(on)
    if state.shape.sub(on) != ch.in_shape.dims:
        raise DimensionError(
            f"channel expects registers {ch.in_shape.dims}, got {state.shape.sub(on)} on {on}")
    mat, shape = matcore.apply_on_registers(
        ch.kraus_ops, state.mat, state.shape, on, out_dims=ch.out_shape.dims)
    return DensityState(mat, shape)


def trace_distance(a, b):
    """Delta(a, b) = 1/2 ||a - b||_1."""
    ma, _ = _as_density_matrix(a)
    mb, _ = _as_density_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"cannot compare states of dimension {ma.shape[0]} and {mb.shape[0]}")
    return min(1.0, max(0.0, 0.5 * matcore.trace_norm(ma - mb)))


def fidelity(a, b):
    """F(a, b) = || sqrt(a) sqrt(b) ||_1 (root fidelity)."""
    ma, _ = _as_density_matrix(a)
    mb, _ = _as_density_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"cannot compare states of dimension {ma.shape[0]} and {mb.shape[0]}")
    val = float(np.sum(np.linalg.svd(matcore.sqrt_psd(ma) @ matcore.sqrt_psd(mb), compute_uv=False)))
    return min(1.0, max(0.0, val))


def purify(rho: DensityState) -> PureState:
    """Canonical purification: eigenvalues descending, reference appended as the last register."""
    vals, vecs = matcore.eig_hermitian(rho.mat)
    rank = max(1, int(np.sum(vals > config.RANK_CUTOFF)))
    vals = np.clip(vals[:rank], 0.0, None)
    vals = vals / np.sum(vals)
    psi = sum(np.sqrt(vals[i]) * np.kron(vecs[:, i], np.eye(rank)[i]) for i in range(rank))
    return PureState(psi, rho.shape.concat(RegisterShape((rank,))))


def _split(phi: PureState, local):
    local = sorted(local)
    rest = [r for r in range(len(phi.shape)) if r not in local]
    t = phi.vec.reshape(phi.shape.dims).transpose(local + rest)
    return t.reshape(int(np.prod(phi.shape.sub(local))), -1)


def uhlmann_unitary(phi1: PureState, phi2: PureState, local: Sequence[int]):
    """
    Unitary U on registers ``local`` maximizing |<phi2| (U on local) |phi1>|.

    With phi_j reshaped to matrices M_j (rows = local registers), the overlap is
    Tr(U M1 M2^dagger); the polar factor of M1 M2^dagger gives the optimum.
    Returns (U, achieved_overlap).
    """
    if phi1.shape != phi2.shape:
        raise PreconditionError(
            f"purifications must share registers, got {phi1.shape.dims} and {phi2.shape.dims}")
    local = sorted(local)
    if not local or len(local) >= len(phi1.shape):
        raise PreconditionError("local registers must be a nonempty proper subset")
    cross = _split(phi1, local) @ dagger(_split(phi2, local))
    w, p = polar(cross)
    u = dagger(w)
    overlap = float(np.trace(p).real)
    log.debug(f"uhlmann overlap {overlap:.12g} (raw {abs(phi2.inner(phi1)):.12g})")
    return u, min(1.0, overlap)


def helstrom(a, b):
    """Equal-prior two-state discrimination. Returns (Povm keyed 0/1, success)."""
    ma, _ = _as_density_matrix(a)
    mb, _ = _as_density_matrix(b)
    if ma.shape != mb.shape:
        raise DimensionError(f"cannot discriminate states of dimension {ma.shape[0]} and {mb.shape[0]}")
    vals, vecs = matcore.eig_hermitian(ma - mb)
    pos = vecs[:, vals > 0]
    proj = pos @ dagger(pos)
    povm = Povm({0: proj, 1: np.eye(ma.shape[0]) - proj})
    success = 0.5 * (1.0 + trace_distance(ma, mb))
    return povm, success


NULL_OUTCOME = 'null'


def pgm(states, priors=None):
    """
    Pretty good measurement for an ensemble.

    ``states`` is a sequence or a key -> state mapping. S^{-1/2} is taken on the
    support of S; the complement goes to the ``'null'`` outcome so the POVM stays
    complete. Returns (Povm, success).
    """
    if isinstance(states, Mapping):
        keys = list(states)
        mats = [_as_density_matrix(states[k])[0] for k in keys]
    else:
        keys = list(range(len(states)))
        mats = [_as_density_matrix(s)[0] for s in states]
    if not mats:
        raise PreconditionError("pgm needs at least one state")
    if len({m.shape for m in mats}) != 1:
        raise DimensionError("pgm states must share a shape")
    if priors is None:
        priors = [1.0 / len(mats)] * len(mats)
    priors = [float(p) for p in (priors.values() if isinstance(priors, Mapping) else priors)]
    if abs(sum(priors) - 1.0) > config.CPTP_TOL:
        raise PreconditionError(f"priors sum to {sum(priors):.12g}")

    weighted = [p * m for p, m in zip(priors, mats)]
    s = sum(weighted)
    s = (s + dagger(s)) / 2
    root = matcore.inv_sqrt_psd(s)
    elements = {}
    for key, w in zip(keys, weighted):
        e = root @ w @ root
        elements[key] = (e + dagger(e)) / 2
    support = matcore.support_projector(s)
    elements[NULL_OUTCOME] = np.eye(s.shape[0]) - support
    log.debug(f"pgm over {len(keys)} states, support rank {int(round(np.trace(support).real))}")

    povm = Povm(elements)
    success = float(sum(np.trace(povm[k] @ w).real for k, w in zip(keys, weighted)))
    return povm, min(1.0, max(0.0, success))


def measure(povm: Povm, state) -> Dict[Hashable, float]:
    """Outcome probabilities Tr(E rho), clipped to [0, 1] within PROB_CLIP_TOL."""
    m, _ = _as_density_matrix(state)
    if m.shape[0] != povm.dim:
        raise DimensionError(f"POVM of dimension {povm.dim} cannot measure a {m.shape[0]}-dim state")
    probs = {}
    for key, e in povm.elements.items():
        p = float(np.trace(e @ m).real)
        if p < -config.PROB_CLIP_TOL or p > 1.0 + config.PROB_CLIP_TOL:
            raise PreconditionError(f"outcome {key!r} has probability {p:.12g}")
        probs[key] = min(1.0, max(0.0, p))
    total = sum(probs.values())
    if abs(total - 1.0) > config.CPTP_TOL:
        raise PreconditionError(f"outcome probabilities sum to {total:.12g}")
    return probs


def adjoint_channel(ch: KrausMap) -> KrausMap:
    """Heisenberg-picture map with Kraus set {K^dagger}; unital when ``ch`` is trace preserving."""
    adj = KrausMap(tuple(dagger(k) for k in ch.kraus_ops), ch.out_shape, ch.in_shape)
    if isinstance(ch, KrausChannel) and not adj.is_unital():
        raise PreconditionError("adjoint of a trace-preserving channel must be unital")
    return adj


def random_unitary(dim, rng):
    """Haar-random unitary via QR with phase fix."""
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_pure(shape, rng) -> PureState:
    shape = _shape(shape)
    v = rng.standard_normal(shape.total) + 1j * rng.standard_normal(shape.total)
    return PureState(v / np.linalg.norm(v), shape)


def random_channel(shape, rng, n_kraus=2) -> KrausChannel:
    """Random CPTP map on ``shape`` from a random isometry split into Kraus blocks."""
    shape = _shape(shape)
    d = shape.total
    g = rng.standard_normal((d * n_kraus, d)) + 1j * rng.standard_normal((d * n_kraus, d))
    q, _ = np.linalg.qr(g)
    return KrausChannel(tuple(q[j * d:(j + 1) * d] for j in range(n_kraus)), shape, shape)


def random_density(shape, rng, rank=None) -> DensityState:
    """Random mixed state of the given rank (full rank by default)."""
    shape = _shape(shape)
    rank = shape.total if rank is None else rank
    g = rng.standard_normal((shape.total, rank)) + 1j * rng.standard_normal((shape.total, rank))
    m = g @ dagger(g)
    m = (m + dagger(m)) / 2
    return DensityState(m / np.trace(m).real, shape)
