"""
base scheme interface

defines the (family, KeyGen, Enc, Eval, Dec) contract every QHE scheme implements
"""

import itertools
import logging
import math
from abc import ABC, abstractmethod
from dataclasses import asdict, dataclass, field
from typing import Dict, List, Tuple

from quantum.channelzoo import TWO_QUBITS, compose, sot_channel_compact
from quantum.exceptions import PreconditionError
from quantum.qstate import DensityState, KrausChannel, apply_channel

log = logging.getLogger(__name__)

Key = Tuple[int, ...]
FamilyKey = Tuple[int, int]

SOT_KEYS: List[FamilyKey] = [(0, 0), (0, 1), (1, 0), (1, 1)]
MAX_KEY_LENGTH = 8

# plaintext registers A = (A1, A2) are registers 0 and 1 of every input state
MESSAGE_REGISTERS = [0, 1]


class QheScheme(ABC):
    """abstract base class for QHE schemes delegating the SOT family"""

    name = ''
    key_length = 0

    def __init__(self):
        if not 0 <= self.key_length <= MAX_KEY_LENGTH:
            raise PreconditionError(f"key length {self.key_length} outside 0..{MAX_KEY_LENGTH}")
        self.family: Dict[FamilyKey, KrausChannel] = {k: sot_channel_compact(*k) for k in SOT_KEYS}
        self._actual = {}

    @property
    def input_shape(self):
        return TWO_QUBITS

    def keys(self) -> List[Key]:
        """Every key in {0,1}^L, in lexicographic order."""
        return list(itertools.product((0, 1), repeat=self.key_length))

    def key_gen(self, rng) -> Key:
        """Uniform key from ``rng``."""
        return tuple(int(b) for b in rng.integers(0, 2, size=self.key_length))

    def _check_key(self, key):
        key = tuple(key)
        if len(key) != self.key_length or any(b not in (0, 1) for b in key):
            raise PreconditionError(f"{self.name} expects a {self.key_length}-bit key, got {key}")
        return key

    @abstractmethod
    def enc_channel(self, key: Key) -> KrausChannel:
        """Enc_k: A -> A-hat."""
        pass

    @abstractmethod
    def eval_channel(self, family_key: FamilyKey) -> KrausChannel:
        """F-hat for the family member ``family_key``: A-hat -> O-hat."""
        pass

    @abstractmethod
    def dec_channel(self, key: Key) -> KrausChannel:
        """Dec_k: O-hat -> O."""
        pass

    def actual_channel(self, key: Key, family_key: FamilyKey) -> KrausChannel:
        """Dec_k . F-hat . Enc_k, cached per (key, family member)."""
        cache_key = (tuple(key), tuple(family_key))
        if cache_key not in self._actual:
            key = self._check_key(key)
            inner = compose(self.eval_channel(family_key), self.enc_channel(key))
            self._actual[cache_key] = compose(self.dec_channel(key), inner)
        return self._actual[cache_key]

    def encrypt(self, key, state: DensityState, on=None) -> DensityState:
        return apply_channel(self.enc_channel(self._check_key(key)), state, on or MESSAGE_REGISTERS)

    def evaluate(self, family_key, state: DensityState, on=None) -> DensityState:
        return apply_channel(self.eval_channel(family_key), state, on or MESSAGE_REGISTERS)

    def decrypt(self, key, state: DensityState, on=None) -> DensityState:
        return apply_channel(self.dec_channel(self._check_key(key)), state, on or MESSAGE_REGISTERS)

    def evaluate_protocol(self, key, family_key, state: DensityState, on=None) -> DensityState:
        """(Dec_k F-hat Enc_k (x) id) on registers ``on`` of ``state``."""
        return apply_channel(self.actual_channel(key, family_key), state, on or MESSAGE_REGISTERS)

    def ideal(self, family_key, state: DensityState, on=None) -> DensityState:
        return apply_channel(self.family[tuple(family_key)], state, on or MESSAGE_REGISTERS)

    def averaged_ciphertext(self, rho: DensityState, on=None) -> DensityState:
        """Exact E_k Enc_k[rho] over all 2^L keys."""
        keys = self.keys()
        acc = sum(self.encrypt(k, rho, on).mat for k in keys) / len(keys)
        return DensityState(acc, rho.shape)

    def describe(self):
        return {'name': self.name, 'key_length': self.key_length, 'family': [list(k) for k in SOT_KEYS]}


@dataclass(frozen=True)
class CertifiedValue:
    """A one-sided bound and the witness attaining it."""
    value: float
    witness: dict = field(default_factory=dict)

    def __float__(self):
        return float(self.value)

    def to_dict(self):
        return {'value': self.value, 'witness': dict(self.witness)}


@dataclass
class SchemeMetrics:
    """Certified security parameters of a scheme plus their witnesses."""

    scheme: str
    eps: float
    eps_d: float
    eps_c_lb: float
    eps_c_ub: float
    provenance: dict = field(default_factory=dict)

    @property
    def bound_lhs(self) -> float:
        """eps_d + eps_c_ub + 4 sqrt(eps)."""
        return self.eps_d + self.eps_c_ub + 4.0 * math.sqrt(max(0.0, self.eps))

    @property
    def holds(self) -> bool:
        return self.bound_lhs >= 0.5 - 1e-9

    def to_dict(self) -> dict:
        """Serialize to dictionary."""
        data = asdict(self)
        data['bound_lhs'] = self.bound_lhs
        data['holds'] = self.holds
        return data
