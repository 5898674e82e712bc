import pytest

from app import create_app


@pytest.fixture
def app(tmp_path):
    app = create_app('testing')
    app.config['DATA_DIR'] = str(tmp_path / 'data')
    return app


@pytest.fixture
def runner(app):
    return app.test_cli_runner()
