import os
import logging
from logging import Logger
from logging.handlers import RotatingFileHandler


def get_logger() -> Logger:
    logger = logging.getLogger("sombor")

    # Handlers are attached once per process, every module calls this at import
    if logger.handlers:
        return logger

    logger.setLevel(logging.DEBUG)
    logger.propagate = False

    formatter = logging.Formatter(
        "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    )

    debug = os.getenv("DEBUG", "0")

    console_handler = logging.StreamHandler()
    console_handler.setLevel(logging.DEBUG if debug == "1" else logging.WARNING)
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    log_file = os.getenv("SOMBOR_LOG_FILE")

    if log_file:
        file_handler = RotatingFileHandler(
            log_file, maxBytes=5 * 1024 * 1024, backupCount=3
        )
        file_handler.setLevel(logging.INFO)
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def set_console_level(level: int) -> None:
    for handler in get_logger().handlers:
        if not isinstance(handler, RotatingFileHandler):
            handler.setLevel(level)
