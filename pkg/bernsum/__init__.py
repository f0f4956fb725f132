"""
Package initialization.
This module builds the bernsum command-line application and registers its commands.
"""
from bernsum.core.config import get_config


def create_cli(config_class=None):
    """CLI factory function."""
    # Use provided config or get config based on environment
    if config_class is None:
        config = get_config()
    elif isinstance(config_class, type):
        config = config_class()
    else:
        config = config_class

    from bernsum.cli import build_group
    return build_group(config)
