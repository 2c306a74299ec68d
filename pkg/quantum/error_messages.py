"""
Readable failure descriptions for the cli and the api.

Every simulator exception carries an ``error_key``; HINTS turns that key into
a one-line summary and a hint on what to change before re-running.
"""

from typing import NamedTuple, Optional, Union


class ErrorHint(NamedTuple):
    summary: str
    hint: str


HINTS = {
    'dimension_mismatch': ErrorHint(
        'Register dimensions disagree',
        'A channel, POVM or partial trace was applied to registers whose dims do not match the state.',
    ),
    'precondition_failed': ErrorHint(
        'Input is not a valid quantum object',
        'States need unit trace and no eigenvalue below -1e-10; bits are 0 or 1; theta lies in [0, pi].',
    ),
    'no_convergence': ErrorHint(
        'Jacobi sweeps did not converge',
        'Set QHEOT_EIGENSOLVER=lapack, or look for NaN entries in the matrix.',
    ),
    'invalid_instance': ErrorHint(
        'Protocol instance fails the semi-random OT checks',
        'Honest runs must give a uniform index; inspect the final POVM and Bob unitaries.',
    ),
    'unknown_name': ErrorHint(
        'No scheme, instance or runner by that name',
        'GET /api/schemes or "qheot certify --help" lists what is registered.',
    ),
    'certification_failed': ErrorHint(
        'A certified bound was violated',
        'The exact values contradict a proven inequality; rerun with QHEOT_LOG_LEVEL=DEBUG and file the report.',
    ),
    'protocol_abort': ErrorHint(
        'A party aborted the run',
        'Shipped instances never abort when both parties are honest; check the runner parameters.',
    ),
    'bad_config': ErrorHint(
        'Experiment settings rejected',
        'Allowed formats are json and csv, trials and points are positive, seeds fit in 64 bits.',
    ),
    'not_found': ErrorHint(
        'No such endpoint',
        'Report endpoints live under /api; /api/health answers when the server is up.',
    ),
}

_FALLBACK = ErrorHint(
    'Simulation failed unexpectedly',
    'Rerun with QHEOT_LOG_LEVEL=DEBUG to see the numeric state at the failure.',
)


def describe(error: Union[str, BaseException]) -> ErrorHint:
    """hint for an error key or for an exception carrying one"""
    key = error if isinstance(error, str) else getattr(error, 'error_key', None)
    return HINTS.get(key, _FALLBACK)


def error_body(error: Union[str, BaseException], status: int = 500, detail: Optional[str] = None):
    """
    (json body, status) for an api response.

    The exception text goes into ``detail`` for client errors only; server
    errors answer with the summary and hint alone.
    """
    info = describe(error)
    body = {'success': False, 'error': info.summary, 'guidance': info.hint}
    if detail is None and isinstance(error, BaseException):
        detail = str(error)
    if detail and status < 500:
        body['detail'] = detail
    return body, status
