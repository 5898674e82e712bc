import os

from dotenv import load_dotenv

load_dotenv()


def _env_float(name, default):
    value = os.environ.get(name)
    return float(value) if value else default


def _env_int(name, default):
    value = os.environ.get(name)
    return int(value) if value else default


class Config:
    """
    Configuration class for the hypergeometric-modular toolkit
    Numerical modules never read this; commands pass values explicitly
    """

    BASE_DIR = os.path.abspath(os.path.dirname(__file__))

    # Verification reports written by `verify --save`
    DATA_DIR = os.environ.get('HML_DATA_DIR') or os.path.join(BASE_DIR, 'data')

    # Tolerances
    DEFAULT_TOL = _env_float('HML_TOL', 1e-8)   # absolute-or-relative identity tolerance
    SERIES_REL_TOL = 1e-16                      # hypergeometric series stopping rule
    SERIES_MAX_TERMS = 4000

    # Im(tau) of the segment sampled by the Fourier checks
    Q_EXPAND_HEIGHT = 1.1

    # E4 lattice oracle
    LATTICE_RADIUS = 200

    # Sample grids for `verify` and `table`
    GRID_POINTS = 10
    GRID_SEED = 2024

    # Worker threads for `verify`
    THREADS = _env_int('HML_THREADS', os.cpu_count() or 1)

    LOG_LEVEL = 'INFO'
    DEBUG = False
    TESTING = False


class DevelopmentConfig(Config):
    """
    Configuration for development
    """
    DEBUG = True
    LOG_LEVEL = 'DEBUG'


class ProductionConfig(Config):
    """
    Configuration for batch runs
    """
    LOG_LEVEL = os.environ.get('HML_LOG_LEVEL') or 'WARNING'


class TestingConfig(Config):
    """
    Configuration for testing: small grids, no worker pool
    """
    TESTING = True
    GRID_POINTS = 4
    THREADS = 1
    LOG_LEVEL = 'WARNING'


# Dictionary to easily switch between configurations
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}
