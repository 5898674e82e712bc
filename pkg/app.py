"""
Command-line application for the hypergeometric-modular toolkit
This file initializes the app and registers the command groups
"""

import logging
import os

from flask import Flask
from flask.cli import FlaskGroup

from config import config

from commands.evaluate import evaluate_bp
from commands.plots import plots_bp
from commands.tables import tables_bp
from commands.verify import verify_bp


def create_app(config_name='development'):
    """
    Application factory pattern
    Creates the app, loads configuration and attaches the commands
    """
    app = Flask(__name__)
    app.config.from_object(config[config_name])

    # One level for the app logger and the numerical modules
    level = getattr(logging, str(app.config['LOG_LEVEL']).upper(), logging.INFO)
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    logging.getLogger('models').setLevel(level)
    app.logger.setLevel(level)

    app.register_blueprint(evaluate_bp)
    app.register_blueprint(verify_bp)
    app.register_blueprint(tables_bp)
    app.register_blueprint(plots_bp)

    app.logger.debug("🚀 %s configuration loaded", config_name)
    return app


cli = FlaskGroup(
    create_app=lambda: create_app(os.environ.get('HML_ENV', 'default')),
    add_default_commands=False,
    load_dotenv=False,
    help='Hypergeometric functions, theta functions and modular forms.',
)


if __name__ == '__main__':
    cli()
