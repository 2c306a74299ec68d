"""
utils package

- helpers: report normalization, json/csv rendering, digests, artifact writing
- validators: ExperimentConfig and its field checks
- monitoring: run timing
"""

from utils.helpers import dumps_csv, dumps_json, payload_digest, sig, with_schema, write_output
from utils.validators import ExperimentConfig, load_experiment_config

__all__ = [
    'dumps_csv',
    'dumps_json',
    'payload_digest',
    'sig',
    'with_schema',
    'write_output',
    'ExperimentConfig',
    'load_experiment_config',
]
