"""improlms/improlms/utils/log.py.

Logging for improlms. Messages are space-joined parts, so calls read like
`log.debug("simulator.monte_carlo_mse() -", f"{runs} runs")`.
"""

import logging
from functools import partial

LOGGER_NAME = "improlms"

STREAM_FORMAT = "%(name)s [%(levelname)s] %(message)s"
# ensembles run for a while, so the file keeps timestamps
FILE_FORMAT = "%(asctime)s " + STREAM_FORMAT


def configure(debug=False, logfile=None):
    """Configures the improlms logger. Safe to call repeatedly: there is
    exactly one stream handler afterwards. A logfile always records debug
    messages, regardless of `debug`.

    Parameters
    -----------
    debug: bool
      Stream handler level is DEBUG if True, else INFO.
    logfile: str
      (Optional) adds a file handler.

    Returns
    --------
    None
    """
    logger = logging.getLogger(LOGGER_NAME)
    stream_level = logging.DEBUG if debug else logging.INFO

    # FileHandler is a StreamHandler too, keep it.
    handlers = [
        h
        for h in logger.handlers
        if isinstance(h, logging.FileHandler)
        or not isinstance(h, logging.StreamHandler)
    ]
    stream_handler = logging.StreamHandler()
    stream_handler.setLevel(stream_level)
    stream_handler.setFormatter(logging.Formatter(fmt=STREAM_FORMAT))
    handlers.append(stream_handler)

    if logfile is not None:
        file_handler = logging.FileHandler(logfile, encoding="utf-8")
        file_handler.setLevel(logging.DEBUG)
        file_handler.setFormatter(logging.Formatter(fmt=FILE_FORMAT))
        handlers.append(file_handler)

    logger.handlers = handlers
    has_file = any(isinstance(h, logging.FileHandler) for h in handlers)
    logger.setLevel(logging.DEBUG if has_file else stream_level)


def _emit(level, parts):
    logger = logging.getLogger(LOGGER_NAME)
    # skip joining for disabled levels
    if logger.isEnabledFor(level):
        logger.log(level, " ".join(map(str, parts)))


def debug(*log):
    """Debug logger.

    Parameters
    -----------
    *log: Tuple[str]

    Returns
    --------
    None
    """
    _emit(logging.DEBUG, log)


def info(*log):
    """Info logger.

    Parameters
    -----------
    *log: Tuple[str]

    Returns
    --------
    None
    """
    _emit(logging.INFO, log)


def warning(*log):
    """Warning logger. Used for step sizes beyond a bound and diverged
    models.

    Parameters
    -----------
    *log: Tuple[str]

    Returns
    --------
    None
    """
    _emit(logging.WARNING, log)


def prepended_log(message, log_func):
    """
    Prepend message before a logging function.

    Parameters
    ----------
    message: str
    log_func: function
      one of the followings - {info, debug, warning}

    Returns
    -------
    prepended: function
    """
    return partial(log_func, message)
