"""shared helpers for api endpoints (error responses, query parsing)"""

import logging

from flask import request

from quantum.error_messages import error_body
from quantum.exceptions import ConfigError, PreconditionError, UnknownNameError
from utils.helpers import normalize

log = logging.getLogger(__name__)

_STATUS = (
    (UnknownNameError, 404),
    (ConfigError, 400),
    (PreconditionError, 400),
)


def error_response(exc):
    """(body, status) for a simulator exception; unknown names are 404, bad input 400"""
    status = next((code for cls, code in _STATUS if isinstance(exc, cls)), 500)
    if status == 500:
        log.error(f"API request failed: {type(exc).__name__}")
    return error_body(exc, status)


def query_value(name, cast, default=None):
    """typed query parameter; ConfigError on a value that does not parse"""
    raw = request.args.get(name)
    if raw is None or raw == '':
        return default
    try:
        return cast(raw)
    except ValueError:
        raise ConfigError(f"query parameter {name!r} has invalid value {raw!r}")


def report(payload):
    """json-safe copy of a report, same rounding as the cli artifacts"""
    return normalize(payload)
