"""
monitoring api routes

run timings collected by utils.monitoring for the report endpoints and the cli.
"""

from flask import jsonify, request

from api import api_bp
from utils.monitoring import get_collector


@api_bp.route('/timings')
def get_timings():
    """timing stats for one operation (?operation=...) or all of them"""
    collector = get_collector()
    operation = request.args.get('operation')
    stats = [collector.get_stats(operation)] if operation else collector.get_all_stats()
    return jsonify({'status': 'success', 'timings': stats})


@api_bp.route('/timings/reset', methods=['POST'])
def reset_timings():
    get_collector().reset()
    return jsonify({'status': 'success'})
