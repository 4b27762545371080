"""
Logging utility for the census engine
"""

import logging
import os
import sys
from pathlib import Path
from logging.handlers import RotatingFileHandler


def _json_logging_requested() -> bool:
    return os.getenv('S4CENSUS_LOG_JSON', '').lower() in ('1', 'true', 'yes')


def _json_formatter() -> logging.Formatter:
    from pythonjsonlogger import jsonlogger
    return jsonlogger.JsonFormatter('%(asctime)s %(name)s %(levelname)s %(message)s')


def setup_logger(name: str, level: str = None) -> logging.Logger:
    """
    Set up a logger with both file and console handlers.

    Console output goes to stderr: stdout is reserved for the JSON
    results printed by the CLI.

    Args:
        name: Logger name
        level: Logging level (defaults to S4CENSUS_LOG_LEVEL or INFO)

    Returns:
        Configured logger instance
    """
    level = level or os.getenv('S4CENSUS_LOG_LEVEL', 'INFO')
    logger = logging.getLogger(name)
    logger.setLevel(getattr(logging, level.upper(), logging.INFO))

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    log_dir = Path(os.getenv('S4CENSUS_LOG_DIR', 'logs'))
    log_dir.mkdir(parents=True, exist_ok=True)

    # File handler with rotation
    file_handler = RotatingFileHandler(
        log_dir / "s4census.log",
        maxBytes=10485760,  # 10MB
        backupCount=5
    )
    file_handler.setLevel(logging.DEBUG)

    console_handler = logging.StreamHandler(sys.stderr)
    console_handler.setLevel(logging.INFO)

    formatter = logging.Formatter(
        '%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        datefmt='%Y-%m-%d %H:%M:%S'
    )

    if _json_logging_requested():
        file_handler.setFormatter(_json_formatter())
    else:
        file_handler.setFormatter(formatter)
    console_handler.setFormatter(formatter)

    logger.addHandler(file_handler)
    logger.addHandler(console_handler)
    logger.propagate = False

    return logger


def _census_loggers():
    """Loggers built by setup_logger so far."""
    for existing in list(logging.Logger.manager.loggerDict.values()):
        if isinstance(existing, logging.Logger) and existing.handlers and not existing.propagate:
            yield existing


def configure_from(config: dict) -> None:
    """
    Apply the logging section of the configuration.

    Environment variables win over the file. Loggers created before the
    configuration was read get the new level and file format too.
    """
    options = (config or {}).get('logging') or {}
    if options.get('json') and not os.getenv('S4CENSUS_LOG_JSON'):
        os.environ['S4CENSUS_LOG_JSON'] = '1'
    if _json_logging_requested():
        for existing in _census_loggers():
            for handler in existing.handlers:
                if isinstance(handler, RotatingFileHandler):
                    handler.setFormatter(_json_formatter())

    level = os.getenv('S4CENSUS_LOG_LEVEL') or options.get('level')
    if not level:
        return
    os.environ.setdefault('S4CENSUS_LOG_LEVEL', level)
    for existing in _census_loggers():
        existing.setLevel(getattr(logging, level.upper(), logging.INFO))
