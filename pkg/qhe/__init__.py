"""
QHE schemes over the SOT family and their certified security parameters.
"""

from .base import CertifiedValue, QheScheme, SchemeMetrics, SOT_KEYS
from .factory import SchemeFactory
from .metrics import correctness_eps, data_privacy_eps

__all__ = [
    'CertifiedValue',
    'QheScheme',
    'SchemeMetrics',
    'SOT_KEYS',
    'SchemeFactory',
    'correctness_eps',
    'data_privacy_eps',
]
