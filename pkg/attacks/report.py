"""
Attack report shared by every adversary in this package.
"""

from dataclasses import dataclass, field

import config
from quantum.exceptions import PreconditionError

FLOOR = 'floor'
CEILING = 'ceiling'


@dataclass(frozen=True)
class AttackReport:
    """
    Success probability of a constructive attack next to the bound it is checked against.

    ``kind`` says whether ``bound`` is a guaranteed floor (the attack must reach it)
    or a ceiling (the attack must not beat it).
    """
    attack: str
    success: float
    bound: float
    kind: str = FLOOR
    witness: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in (FLOOR, CEILING):
            raise PreconditionError(f"bound kind must be {FLOOR!r} or {CEILING!r}, got {self.kind!r}")
        success = float(self.success)
        if success < -config.PROB_CLIP_TOL or success > 1.0 + config.PROB_CLIP_TOL:
            raise PreconditionError(f"{self.attack}: success {success:.12g} is not a probability")
        object.__setattr__(self, 'success', min(1.0, max(0.0, success)))
        object.__setattr__(self, 'bound', float(self.bound))

    @property
    def slack(self) -> float:
        if self.kind == FLOOR:
            return self.success - self.bound
        return self.bound - self.success

    @property
    def holds(self) -> bool:
        return self.slack >= -config.THEOREM_TOL

    def to_dict(self):
        return {
            'attack': self.attack,
            'success': self.success,
            'bound': self.bound,
            'kind': self.kind,
            'slack': self.slack,
            'holds': self.holds,
            'witness': dict(self.witness),
        }
