"""
report routes

schemes, their certified metrics, the trade-off boundary and per-instance
theorem certification. every view is computed on request, nothing is stored,
so grid sizes and random-input counts are capped per request (config.API_MAX_*).
"""

import logging

from flask import jsonify

import config
from api import api_bp
from api.helpers import query_value, report
from quantum.exceptions import ConfigError
from services.ExperimentService import ExperimentService
from utils.validators import validate_n_random, validate_points, validate_seed

log = logging.getLogger(__name__)


def _checked(result):
    ok, message = result
    if not ok:
        raise ConfigError(message)


@api_bp.route('/schemes', methods=['GET'])
def list_schemes():
    """registered schemes and Protocol-1 instances"""
    return jsonify(ExperimentService.catalog())


@api_bp.route('/schemes/<name>/metrics', methods=['GET'])
def scheme_metrics(name):
    seed = query_value('seed', int)
    n_random = query_value('n_random', int)
    if seed is not None:
        _checked(validate_seed(seed))
    if n_random is not None:
        _checked(validate_n_random(n_random, config.API_MAX_RANDOM_INPUTS))
    payload = ExperimentService.scheme_metrics([name], seed, n_random)
    return jsonify(report(payload))


@api_bp.route('/tradeoff', methods=['GET'])
def tradeoff():
    points = query_value('points', int, 101)
    _checked(validate_points(points, config.API_MAX_POINTS))
    return jsonify(report(ExperimentService.tradeoff_curve(points)))


@api_bp.route('/instances/<name>/theorem2', methods=['GET'])
def theorem2(name):
    theta = query_value('theta', float)
    log.debug(f"theorem2 for {name} (theta={theta})")
    return jsonify(report(ExperimentService.theorem2(name, theta)))
