"""
Logging setup
Single handler configuration and timing of long computations
"""

import logging
import time
from contextlib import contextmanager
from typing import Iterator, Optional

from icbound.config import settings
from icbound.utils.constants import LOG_DATE_FORMAT, LOG_FORMAT

logger = logging.getLogger(__name__)


def setup_logging(level: Optional[str] = None, log_file: Optional[str] = None) -> None:
    """
    Configure the package logger

    Args:
        level: Level name (default: settings.LOG_LEVEL)
        log_file: Optional file path; stderr when omitted
    """
    level = (level or settings.LOG_LEVEL).upper()
    log_file = log_file or settings.LOG_FILE

    handler: logging.Handler
    if log_file:
        handler = logging.FileHandler(log_file)
    else:
        handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT, datefmt=LOG_DATE_FORMAT))

    root = logging.getLogger("icbound")
    root.handlers.clear()
    root.addHandler(handler)
    root.setLevel(level)


class Timer:
    """Elapsed wall time of a `log_duration` block"""

    def __init__(self) -> None:
        self.start = time.perf_counter()
        self.elapsed = 0.0


@contextmanager
def log_duration(label: str) -> Iterator[Timer]:
    """
    Log start and duration of a computation

    Args:
        label: Name written to the log

    Yields:
        Timer whose `elapsed` is set when the block exits
    """
    timer = Timer()
    logger.info(f"Start: {label}")
    try:
        yield timer
    finally:
        timer.elapsed = time.perf_counter() - timer.start
        logger.info(f"Done: {label} - Duration: {timer.elapsed:.3f}s")
