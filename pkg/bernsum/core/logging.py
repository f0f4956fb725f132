"""
Logging configuration for bernsum.
Component loggers write to stderr so that stdout carries nothing but reports.
Rotating log files are opt-in through BERNSUM_LOG_FILE.
"""
import logging
import logging.handlers
import sys
from pathlib import Path

from bernsum.core.config import get_config


def _console_handler(formatter):
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(formatter)
    return handler


def _file_handler(config, name, log_file, formatter):
    path = config.LOGS_DIR / f"{name}.log" if log_file is None else Path(log_file)
    path.parent.mkdir(parents=True, exist_ok=True)
    handler = logging.handlers.TimedRotatingFileHandler(
        filename=path,
        when='midnight',
        interval=1,
        backupCount=config.LOG_RETENTION_DAYS,
        encoding='utf-8'
    )
    handler.setFormatter(formatter)
    return handler


def setup_logger(name, log_file=None):
    """
    Configure the logger `name` once and return it.

    Args:
        name (str): Dotted logger name, e.g. 'bernsum.engine'
        log_file (str, optional): File for the rotating handler. Defaults to
            logs/<name>.log when file logging is enabled.

    Returns:
        logging.Logger: Configured logger
    """
    logger = logging.getLogger(name)
    if logger.handlers:
        return logger

    config = get_config()
    logger.setLevel(getattr(logging, config.LOG_LEVEL.upper(), logging.WARNING))
    logger.propagate = False

    formatter = logging.Formatter(fmt=config.LOG_FORMAT, datefmt=config.LOG_DATE_FORMAT)
    logger.addHandler(_console_handler(formatter))
    if config.LOG_TO_FILE and not config.TESTING:
        logger.addHandler(_file_handler(config, name, log_file, formatter))
    return logger


# Component loggers
engine_logger = setup_logger('bernsum.engine')
tail_logger = setup_logger('bernsum.tail')
oracle_logger = setup_logger('bernsum.oracle')
cli_logger = setup_logger('bernsum.cli')
