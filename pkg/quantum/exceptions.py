"""
Custom exceptions for simulator, protocol and certification operations.
"""


class QheotError(Exception):
    """Base exception for all simulator errors."""
    error_key = 'internal_error'


class DimensionError(QheotError):
    """Raised when register shapes or matrix dimensions do not line up."""
    error_key = 'dimension_mismatch'


class PreconditionError(QheotError):
    """Raised when an input violates a documented precondition (Hermiticity, PSD, bit range, ...)."""
    error_key = 'precondition_failed'


class ConvergenceError(QheotError):
    """Raised when the Jacobi eigensolver runs out of sweeps."""
    error_key = 'no_convergence'


class InvalidInstanceError(QheotError):
    """Raised when a Protocol-1 instance does not meet the completeness definition."""
    error_key = 'invalid_instance'


class UnknownNameError(QheotError):
    """Raised when a scheme, instance or runner name is not registered."""
    error_key = 'unknown_name'


class CertificationError(QheotError):
    """Raised when a certified inequality or consistency check fails. Always a bug."""
    error_key = 'certification_failed'


class ProtocolAbort(QheotError):
    """Raised inside runners when a party declares Abort."""
    error_key = 'protocol_abort'


class ConfigError(QheotError):
    """Raised when an experiment configuration fails validation."""
    error_key = 'bad_config'
