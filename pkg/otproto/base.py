"""
OT outcomes and runner interfaces.

Two flavors share one outcome record:

- standard: Alice chooses i and learns x_i; alice value is a bit
- semi-random: i is uniformly random; alice value is the pair (i, x_hat)

Either party may output Abort. Scripted adversarial runners additionally
record what a cheating party guessed, so reductions can carry guesses across.
"""

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple, Union

from quantum.exceptions import PreconditionError

log = logging.getLogger(__name__)

STANDARD = 'standard'
SEMI_RANDOM = 'semi-random'


class Verdict(Enum):
    ACCEPT = 'accept'
    ABORT = 'abort'


def check_bit(name, value):
    if value not in (0, 1):
        raise PreconditionError(f"{name} must be 0 or 1, got {value!r}")
    return int(value)


@dataclass(frozen=True)
class OtOutcome:
    """Result of one OT run."""
    flavor: str
    alice: Union[int, Tuple[int, int], Verdict]
    bob: Verdict
    # cheating Bob's guess of Alice's index (i, or j for a semi-random sub-protocol)
    bob_guess: Optional[int] = None
    # cheating Alice's guess of Bob's bit pair
    alice_guess: Optional[Tuple[int, int]] = None

    def __post_init__(self):
        if self.flavor not in (STANDARD, SEMI_RANDOM):
            raise PreconditionError(f"unknown OT flavor {self.flavor!r}")
        if self.alice is Verdict.ABORT:
            return
        if self.flavor == STANDARD:
            check_bit('standard OT output', self.alice)
        else:
            if not isinstance(self.alice, tuple) or len(self.alice) != 2:
                raise PreconditionError(f"semi-random OT output must be (i, x_hat), got {self.alice!r}")
            check_bit('index', self.alice[0])
            check_bit('x_hat', self.alice[1])

    @property
    def aborted(self):
        return self.alice is Verdict.ABORT or self.bob is Verdict.ABORT

    @classmethod
    def abort(cls, flavor, bob_guess=None, alice_guess=None):
        return cls(flavor, Verdict.ABORT, Verdict.ABORT, bob_guess, alice_guess)

    def to_dict(self):
        return {
            'flavor': self.flavor,
            'alice': self.alice.value if isinstance(self.alice, Verdict) else self.alice,
            'bob': self.bob.value,
            'bob_guess': self.bob_guess,
            'alice_guess': self.alice_guess,
        }


class StandardOt(ABC):
    """Standard OT: Alice inputs i, Bob inputs (x0, x1)."""

    name = ''
    flavor = STANDARD

    @abstractmethod
    def run(self, i, x0, x1, rng) -> OtOutcome:
        pass


class SemiRandomOt(ABC):
    """Semi-random OT: Bob inputs (x0, x1); Alice receives a uniformly random i and x_i."""

    name = ''
    flavor = SEMI_RANDOM

    @abstractmethod
    def run(self, x0, x1, rng) -> OtOutcome:
        pass
