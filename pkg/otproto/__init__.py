"""
Oblivious-transfer layer: standard and semi-random OT runners, the reductions
between them, the generic Protocol-1 scheme and OT built from QHE.
"""

from .base import OtOutcome, SemiRandomOt, StandardOt, Verdict
from .factory import get_runner, get_supported_runners
from .protocol_one import ProtocolOneInstance, completeness_delta, honest_acceptance, run_protocol1_honest
from .reductions import srot_to_standard, standard_to_srot
from .transcript import Transcript

__all__ = [
    'OtOutcome',
    'SemiRandomOt',
    'StandardOt',
    'Verdict',
    'get_runner',
    'get_supported_runners',
    'ProtocolOneInstance',
    'completeness_delta',
    'honest_acceptance',
    'run_protocol1_honest',
    'srot_to_standard',
    'standard_to_srot',
    'Transcript',
]
