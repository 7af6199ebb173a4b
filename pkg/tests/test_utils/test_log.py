import logging

from improlms.utils import log


def test_configure_keeps_one_stream_handler():
    log.configure()
    log.configure(debug=True)

    logger = logging.getLogger(log.LOGGER_NAME)
    streams = [
        h
        for h in logger.handlers
        if isinstance(h, logging.StreamHandler)
        and not isinstance(h, logging.FileHandler)
    ]
    assert len(streams) == 1
    assert logger.level == logging.DEBUG
    log.configure()
    assert logger.level == logging.INFO


def test_messages_are_joined(caplog):
    with caplog.at_level(logging.DEBUG, logger=log.LOGGER_NAME):
        log.debug("a", 1)
        log.info("b", 2.5)
        log.warning("c", None)

    assert [r.getMessage() for r in caplog.records] == [
        "a 1",
        "b 2.5",
        "c None",
    ]
    assert caplog.records[2].levelno == logging.WARNING


def test_prepended_log(caplog):
    prepended = log.prepended_log("<Thing>", log.info)
    with caplog.at_level(logging.INFO, logger=log.LOGGER_NAME):
        prepended("hello")

    assert caplog.records[-1].getMessage() == "<Thing> hello"


def test_logfile_records_debug(tmp_path):
    logfile = tmp_path / "run.log"
    logger = logging.getLogger(log.LOGGER_NAME)
    log.configure(logfile=str(logfile))
    try:
        log.debug("only", "in", "file")
        log.info("both")
    finally:
        for handler in list(logger.handlers):
            if isinstance(handler, logging.FileHandler):
                logger.removeHandler(handler)
                handler.close()
        log.configure()

    text = logfile.read_text(encoding="utf-8")
    assert "improlms [DEBUG] only in file" in text
    assert "improlms [INFO] both" in text
    assert logger.level == logging.INFO
