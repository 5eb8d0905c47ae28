import datetime
import logging
import os
from pathlib import Path
from typing import Optional, TypeVar

from toric_euler import fmt

TLogger = TypeVar("TLogger", bound=logging.Logger)

PACKAGE_LOGGER_NAME = "toric_euler"


class _TzFormatter(logging.Formatter):
    def __init__(self, *args, **kwargs):
        self._tz = kwargs.pop("tz", None)
        super().__init__(*args, **kwargs)

    def formatTime(self, record, datefmt=None) -> str:
        record_time = datetime.datetime.fromtimestamp(record.created, tz=self._tz)
        return record_time.isoformat(timespec="milliseconds")


utc_formatter = _TzFormatter(fmt, tz=datetime.timezone.utc)


def add_file_logger(logger: TLogger, output_path: os.PathLike) -> TLogger:
    file_handler = logging.FileHandler(Path(output_path), encoding="utf-8", mode="w")
    file_handler.setFormatter(utc_formatter)
    logger.addHandler(file_handler)
    return logger


def configure_package_logger(debug: bool = False, log_file: Optional[os.PathLike] = None) -> logging.Logger:
    """Sets the level of the package logger and optionally mirrors it to a file.

    Args:
        debug: Log per-term computation details when True.
        log_file: Optional path of a UTF-8 log file, truncated on open.

    Returns:
        The package logger.
    """
    package_logger = logging.getLogger(PACKAGE_LOGGER_NAME)
    package_logger.setLevel(logging.DEBUG if debug else logging.INFO)
    if log_file is not None:
        add_file_logger(package_logger, log_file)
    return package_logger


def shutdown_logger(logger: TLogger) -> None:
    close_file_handlers(logger)
    logging.shutdown()


def close_file_handlers(logger: TLogger) -> TLogger:
    for handler in list(logger.handlers):
        if isinstance(handler, logging.FileHandler):
            handler.close()
            logger.removeHandler(handler)
    return logger
