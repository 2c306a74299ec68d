"""
api blueprint, read-only json views of the simulator reports.
routes are split across modules under api/, this module creates the blueprint
and imports route modules so they register.
"""

from flask import Blueprint, jsonify

from api.helpers import error_response
from quantum.exceptions import QheotError

api_bp = Blueprint('api', __name__)


@api_bp.errorhandler(QheotError)
def handle_simulator_error(e):
    body, status = error_response(e)
    return jsonify(body), status


# import route modules so they register routes on api_bp
from api import routes_health, routes_metrics, routes_monitoring  # noqa: E402,F401
