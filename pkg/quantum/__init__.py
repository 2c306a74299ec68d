"""
Dense quantum-state numerics: matrices, states, channels and the gate/channel zoo.
"""

from .exceptions import (
    QheotError,
    DimensionError,
    PreconditionError,
    ConvergenceError,
    InvalidInstanceError,
    UnknownNameError,
    CertificationError,
    ProtocolAbort,
    ConfigError,
)
from .matcore import RegisterShape
from .qstate import DensityState, PureState, KrausMap, KrausChannel, Povm

__all__ = [
    'QheotError',
    'DimensionError',
    'PreconditionError',
    'ConvergenceError',
    'InvalidInstanceError',
    'UnknownNameError',
    'CertificationError',
    'ProtocolAbort',
    'ConfigError',
    'RegisterShape',
    'DensityState',
    'PureState',
    'KrausMap',
    'KrausChannel',
    'Povm',
]
