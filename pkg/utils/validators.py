"""
experiment config validation

ExperimentConfig is what every cli command runs from. values come from
defaults, then an optional yaml file, then command-line flags.
"""

import dataclasses
import logging
import math
from dataclasses import dataclass, field
from typing import List, Optional

import yaml

import config
from quantum.exceptions import ConfigError

log = logging.getLogger(__name__)

COMMANDS = ('verify-channels', 'scheme-metrics', 'tradeoff-curve', 'certify', 'transcript')
FORMATS = ('json', 'csv')
MAX_SEED = 2 ** 64


def default_thetas():
    """k pi / 9 for k = 1..8"""
    return [k * math.pi / 9 for k in range(1, 9)]


def validate_thetas(thetas):
    """
    check a theta grid

    returns:
        tuple: (is_valid: bool, message: str)
    """
    if not thetas:
        return False, "theta grid is empty"
    for t in thetas:
        try:
            t = float(t)
        except (TypeError, ValueError):
            return False, f"theta {t!r} is not a number"
        if not 0.0 <= t <= math.pi:
            return False, f"theta {t} outside [0, pi]"
    return True, "ok"


def validate_trials(trials):
    """None means exact evaluation only, no Monte-Carlo run"""
    if trials is None:
        return True, "ok"
    if isinstance(trials, bool) or not isinstance(trials, int):
        return False, f"trials must be an integer, got {trials!r}"
    if trials < 1:
        return False, f"trials must be at least 1, got {trials}"
    return True, "ok"


def validate_seed(seed):
    if isinstance(seed, bool) or not isinstance(seed, int):
        return False, f"seed must be an integer, got {seed!r}"
    if not 0 <= seed < MAX_SEED:
        return False, f"seed {seed} outside the 64-bit range"
    return True, "ok"


def validate_format(fmt):
    if fmt not in FORMATS:
        return False, f"format must be one of {', '.join(FORMATS)}, got {fmt!r}"
    return True, "ok"


def validate_points(points, limit=None):
    if isinstance(points, bool) or not isinstance(points, int) or points < 2:
        return False, f"points must be an integer >= 2, got {points!r}"
    if limit is not None and points > limit:
        return False, f"points {points} above the limit of {limit}"
    return True, "ok"


def validate_n_random(n_random, limit=None):
    if isinstance(n_random, bool) or not isinstance(n_random, int) or n_random < 0:
        return False, f"n_random must be an integer >= 0, got {n_random!r}"
    if limit is not None and n_random > limit:
        return False, f"n_random {n_random} above the limit of {limit}"
    return True, "ok"


@dataclass
class ExperimentConfig:
    """One batch run: command, targets, grids, randomness and output."""

    command: str = 'certify'
    scheme: Optional[str] = None
    instance: Optional[str] = None
    thetas: List[float] = field(default_factory=default_thetas)
    trials: Optional[int] = None
    seed: int = config.DEFAULT_SEED
    out: Optional[str] = None
    format: str = 'json'
    points: int = 101
    dump_payloads: bool = False

    def validate(self):
        """raise ConfigError on the first invalid field"""
        if self.command not in COMMANDS:
            raise ConfigError(f"unknown command {self.command!r}")
        checks = [
            validate_thetas(self.thetas),
            validate_trials(self.trials),
            validate_seed(self.seed),
            validate_format(self.format),
            validate_points(self.points),
        ]
        for ok, message in checks:
            if not ok:
                raise ConfigError(message)
        self.thetas = [float(t) for t in self.thetas]
        return self

    @classmethod
    def from_mapping(cls, data):
        """build from a dict, e.g. a parsed yaml file; unknown keys are rejected"""
        if data is None:
            data = {}
        if not isinstance(data, dict):
            raise ConfigError("experiment config must be a mapping")
        known = {f.name for f in dataclasses.fields(cls)}
        data = {str(k).replace('-', '_'): v for k, v in data.items()}
        if 'theta' in data:
            data['thetas'] = data.pop('theta')
        unknown = sorted(set(data) - known)
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**data)

    def merged(self, **overrides):
        """copy with every non-None override applied"""
        changes = {k: v for k, v in overrides.items() if v is not None}
        return dataclasses.replace(self, **changes)

    def to_dict(self):
        return dataclasses.asdict(self)


def load_experiment_config(path):
    """read a yaml experiment file into an ExperimentConfig (not yet validated)"""
    try:
        with open(path, 'r', encoding='utf-8') as fh:
            data = yaml.safe_load(fh)
    except (OSError, yaml.YAMLError) as e:
        log.warning(f"Could not read config {path}: {e}")
        raise ConfigError(f"could not read config {path}: {e}") from e
    return ExperimentConfig.from_mapping(data)
