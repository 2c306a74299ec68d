"""Flask app - read-only JSON api over the simulator plus the qheot cli commands."""

import logging

from flask import Flask, jsonify, request

import config
from quantum.error_messages import error_body

_log_level = getattr(logging, config.LOG_LEVEL, logging.INFO)
logging.basicConfig(level=_log_level)

log = logging.getLogger(__name__)


def create_app(config_overrides=None):
    """
    build the app

    args:
        config_overrides: mapping applied to app.config (e.g. TESTING)
    """
    app = Flask(__name__)
    app.json.sort_keys = True
    if config_overrides:
        app.config.update(config_overrides)

    from api import api_bp
    app.register_blueprint(api_bp, url_prefix='/api')

    from cli import cli
    app.cli.add_command(cli)

    # errors outside the blueprint still answer in json
    @app.errorhandler(404)
    def not_found(e):
        body, status = error_body('not_found', 404)
        body['path'] = request.path
        return jsonify(body), status

    @app.errorhandler(500)
    def server_error(e):
        log.error(f"Unhandled error on {request.path}")
        body, status = error_body('internal_error', 500)
        return jsonify(body), status

    log.debug("App created")
    return app


if __name__ == '__main__':
    create_app().run(host='127.0.0.1', port=5000)
