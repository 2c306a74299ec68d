"""
output helpers

formatting and serialization shared by the cli, the api and the transcript
recorder. every artifact goes through here so same input gives the same bytes.
"""

import csv
import hashlib
import io
import json
import logging
import math
import os
from enum import Enum

import numpy as np

import config

log = logging.getLogger(__name__)

# magnitudes below this are rounding noise and print as 0
_NOISE_FLOOR = 1e-14


def sig(value, digits=None):
    """round a float to ``digits`` significant digits (12 by default)"""
    digits = config.SIGNIFICANT_DIGITS if digits is None else digits
    value = float(value)
    if not math.isfinite(value):
        return value
    if abs(value) < _NOISE_FLOOR:
        return 0.0
    return float(f"{value:.{digits}g}")


def normalize(obj):
    """
    convert a report into plain json types

    floats are rounded with sig(), tuples and arrays become lists, enums become
    their value and dict keys become strings
    """
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return sig(obj)
    if isinstance(obj, dict):
        return {str(k): normalize(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [normalize(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return normalize(obj.tolist())
    if hasattr(obj, 'to_dict'):
        return normalize(obj.to_dict())
    return obj


def with_schema(payload):
    """tag a report with the output schema version"""
    return {'schema': config.SCHEMA_VERSION, **payload}


def dumps_json(payload):
    """deterministic json text: normalized, sorted keys, trailing newline"""
    return json.dumps(normalize(payload), sort_keys=True, indent=2, ensure_ascii=False) + '\n'


def dumps_csv(header, rows):
    """comma separated, LF line endings, values normalized like json"""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator='\n')
    writer.writerow(header)
    for row in rows:
        writer.writerow([_csv_cell(normalize(row.get(col))) for col in header])
    return buf.getvalue()


def _csv_cell(value):
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if value is None:
        return ''
    if isinstance(value, float):
        return repr(value)
    return value


def payload_bytes(data):
    """little-endian complex128 bytes for arrays, utf-8 for text"""
    if isinstance(data, bytes):
        return data
    if isinstance(data, str):
        return data.encode('utf-8')
    return np.ascontiguousarray(np.asarray(data, dtype='<c16')).tobytes()


def payload_digest(data):
    """sha256 hex digest of a message payload"""
    return hashlib.sha256(payload_bytes(data)).hexdigest()


def write_output(text, out=None):
    """
    write an artifact or return it for stdout

    args:
        text: rendered output
        out: path, relative names resolve under OUTPUT_DIR; None means stdout

    returns:
        the path written, or None
    """
    if not out:
        return None
    path = config.get_output_path(out)
    parent = os.path.dirname(path)
    if parent:
        os.makedirs(parent, exist_ok=True)
    with open(path, 'w', encoding='utf-8', newline='') as fh:
        fh.write(text)
    log.info(f"Wrote {len(text)} bytes to {path}")
    return path
