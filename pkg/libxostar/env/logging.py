import colorama
import logging
import sys

from logging import (
    DEBUG, INFO, WARNING, ERROR, CRITICAL
)

colorama.init(autoreset=True)

ROOT_NAME = "libxostar"


###############################################################################


class MaxFilter(logging.Filter):

    """
    Logging filter specifying the maximum log level to be handled.
    """

    def __init__(self, maxlevel=100):
        super().__init__()
        self.maxlevel = maxlevel

    def filter(self, record):
        return record.levelno <= self.maxlevel


###############################################################################


class ColorFormatter(logging.Formatter):

    """
    Prefixes the formatted record with a level dependent color.

    The record itself is left untouched so that other handlers
    (e.g. file handlers) see the plain message.
    """

    COLORS = {
        "DEBUG": colorama.Fore.WHITE + colorama.Style.DIM,
        "INFO": colorama.Fore.WHITE,
        "WARNING": colorama.Fore.YELLOW,
        "ERROR": colorama.Fore.RED,
        "CRITICAL": colorama.Fore.WHITE + colorama.Back.RED
    }

    def format(self, record):
        s = logging.Formatter.format(self, record)
        color = self.COLORS.get(record.levelname, "")
        if color:
            s = color + s + colorama.Style.RESET_ALL
        return s


LOG_FMT = ColorFormatter(
    "%(asctime)s [%(levelname).4s|%(name)s] %(message)s",
    datefmt="%Y-%m-%d %H:%M:%S"
)


###############################################################################


def _make_handler(stream, level, maxlevel=None):
    handler = logging.StreamHandler(stream=stream)
    handler.setFormatter(LOG_FMT)
    handler.setLevel(level)
    if maxlevel is not None:
        handler.addFilter(MaxFilter(maxlevel=maxlevel))
    return handler


# Diagnostics go to stdout up to warnings, errors to stderr.
# Commands that print tables write them through `print`, never the logger.
HANDLERS = [
    _make_handler(sys.stdout, DEBUG, maxlevel=INFO-1),
    _make_handler(sys.stdout, INFO, maxlevel=WARNING-1),
    _make_handler(sys.stderr, WARNING, maxlevel=ERROR-1),
    _make_handler(sys.stderr, ERROR, maxlevel=CRITICAL-1),
    _make_handler(sys.stderr, CRITICAL),
]


def _root_logger():
    root = logging.getLogger(ROOT_NAME)
    if not getattr(root, "_xostar_configured", False):
        for h in HANDLERS:
            root.addHandler(h)
        root.setLevel(WARNING)
        root.propagate = False
        root._xostar_configured = True
    return root


###############################################################################


def get_logger(name, level=None):
    """
    Gets a named logger instance.

    Handlers are attached once to the package root logger, named loggers
    propagate to it.

    Parameters
    ----------
    name : `str`
        Name of logger. Should be hierarchically dot-separated
        below `"libxostar"`.
    level : `int` or `None`
        Log level of this logger.
        Use one of `DEBUG, INFO, WARNING, ERROR, CRITICAL`.
        `None` inherits the package level.

    Examples
    --------
    >>> logger = get_logger("libxostar.tools.modular.sieve")
    >>> logger.error("pair discarded twice")
    2024-02-02 20:20:02 [ERRO|libxostar.tools.modular.sieve] pair discarded twice
    """
    _root_logger()
    logger = logging.getLogger(name)
    if level is not None:
        logger.setLevel(level)
    return logger


def set_level(level):
    """
    Sets the log level of the whole package.

    Parameters
    ----------
    level : `int` or `str`
        Level constant or level name (e.g. `"INFO"`).
    """
    if isinstance(level, str):
        level = logging.getLevelName(level.upper())
    _root_logger().setLevel(level)
