"""
Lightweight health check endpoint.
No simulation work, fast response.
"""
import time

from flask import jsonify

import config
from api import api_bp


@api_bp.route('/health', methods=['GET'])
def health_check():
    """simple status plus the artifact schema version"""
    return jsonify({
        'status': 'ok',
        'schema': config.SCHEMA_VERSION,
        'timestamp': time.time()
    }), 200
