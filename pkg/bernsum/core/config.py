"""
Configuration settings for bernsum.
Provides different configuration classes for different environments.
"""
import os
from pathlib import Path

from dotenv import load_dotenv

# Load environment variables
load_dotenv()


class BaseConfig:
    """Base configuration with common settings."""

    # Project structure
    PROJECT_ROOT = Path(os.path.abspath(os.path.join(os.path.dirname(__file__), '../../')))
    LOGS_DIR = PROJECT_ROOT / "logs"

    TESTING = False

    # Moment engine
    DEFAULT_ENUMERATION_BUDGET = 2_000_000
    GENERAL_MAX_N = 25
    EXPECTED_FACTORIAL_MAX_N = 20

    # Tail sums over infinite supports
    DEFAULT_TRUNCATION_EPSILON = 1e-15
    TRUNCATION_MAX_TERMS = 1_000_000
    # Factorial moments past --xmax when inverting an infinite-support pmf
    FRECHET_EXTRA_TERMS = 40

    # Oracles
    ORACLE_INDEPENDENT_MAX_N = 20
    ORACLE_MATCHING_MAX_N = 8
    ORACLE_URN_MAX_PLACEMENTS = 1_000_000
    ORACLE_DRAW_MAX_SUBSETS = 1_000_000
    DEFAULT_SEED = 20240517

    # Verification tolerances
    APPROX_RTOL = 1e-9
    APPROX_ATOL = 1e-12
    MC_SIGMA = 4.0

    # Rendering
    FLOAT_DIGITS = 12

    # Logging
    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    LOG_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"
    LOG_RETENTION_DAYS = int(os.environ.get('LOG_RETENTION_DAYS', '7'))

    def __init__(self):
        """Read the environment-dependent settings."""
        self.ENUMERATION_BUDGET = int(
            os.environ.get('BERNSUM_BUDGET', self.DEFAULT_ENUMERATION_BUDGET)
        )
        self.TRUNCATION_EPSILON = float(
            os.environ.get('BERNSUM_EPSILON', self.DEFAULT_TRUNCATION_EPSILON)
        )
        self.SEED = int(os.environ.get('BERNSUM_SEED', self.DEFAULT_SEED))
        self.LOG_LEVEL = os.environ.get('BERNSUM_LOG_LEVEL', self.default_log_level())
        self.LOG_TO_FILE = os.environ.get('BERNSUM_LOG_FILE', '').lower() in ('1', 'true', 'yes')

    def default_log_level(self):
        return 'WARNING'


class DevelopmentConfig(BaseConfig):
    """Development configuration."""

    def default_log_level(self):
        return 'DEBUG'


class TestingConfig(BaseConfig):
    """Testing configuration."""
    TESTING = True

    # Keep truncated sums short in tests
    TRUNCATION_MAX_TERMS = 100_000

    def default_log_level(self):
        return 'DEBUG'


class ProductionConfig(BaseConfig):
    """Production configuration, the profile the CLI runs under."""

    def __init__(self):
        super().__init__()
        if self.ENUMERATION_BUDGET <= 0:
            import logging
            logging.warning(
                "BERNSUM_BUDGET=%s is not positive; every General-kind enumeration will be refused.",
                self.ENUMERATION_BUDGET,
            )


# Dictionary to map environment names to config classes
config = {
    'development': DevelopmentConfig,
    'testing': TestingConfig,
    'production': ProductionConfig,
    'default': ProductionConfig
}


def get_config():
    """Get the configuration based on environment."""
    env = os.environ.get('BERNSUM_ENV', 'production')
    return config.get(env, config['default'])()
