import io
import logging
import pytest
from ..core.logger import (
    chowlogger,
    activate_local_debug_mode,
    case_logger,
    init_worker,
    reset,
)

stream = io.StringIO()
stream_handler = logging.StreamHandler(stream=stream)
formatter = logging.Formatter("%(levelname)s:%(message)s")
stream_handler.setFormatter(formatter)


def get_last_log_entry():
    lines = stream_handler.stream.getvalue().splitlines()
    if lines:
        return lines[-1]
    return ''


def expected_log_entry(message):
    return f"{message.upper()}:{message}"


def delete_log_entries():
    stream_handler.stream.close()
    stream_handler.stream = io.StringIO()


@pytest.fixture(autouse=True)
def clean_logger():
    reset()
    delete_log_entries()
    yield
    reset()


@pytest.mark.parametrize(
    "message, level, should_log", [
        ("debug", logging.DEBUG, False),
        ("info", logging.INFO, True),
        ("warning", logging.WARNING, True),
        ("error", logging.ERROR, True),
    ])
def test_default_logging(message, level, should_log):
    chowlogger.addHandler(stream_handler)
    chowlogger.log(level, message)
    expected = expected_log_entry(message) if should_log else ""
    assert get_last_log_entry() == expected


def test_local_debug_mode_without_handler():
    activate_local_debug_mode()
    chowlogger.debug("debug")
    assert get_last_log_entry() == ""
    assert chowlogger.level == logging.DEBUG
    assert chowlogger.propagate is False


def test_local_debug_mode_with_handler():
    activate_local_debug_mode(handler=stream_handler)
    chowlogger.debug("debug")
    assert get_last_log_entry() == expected_log_entry("debug")


def test_local_debug_mode_sets_default_formatter():
    handler = logging.StreamHandler(stream=io.StringIO())
    activate_local_debug_mode(handler=handler)
    chowlogger.debug("solved t_2")
    assert handler.stream.getvalue().strip() == "DEBUG:chowcheck:solved t_2"


def test_reset_keeps_handlers_on_request():
    activate_local_debug_mode(handler=stream_handler)
    reset(keep_handlers=True)
    assert stream_handler in chowlogger.handlers
    assert chowlogger.level == logging.INFO
    reset()
    assert chowlogger.handlers == []


def test_case_logger_prefixes_the_case():
    chowlogger.addHandler(stream_handler)
    case_logger("A.1").info("corank 4")
    assert get_last_log_entry() == "INFO:A.1: corank 4"


@pytest.mark.parametrize(
    "level, expected", [
        (logging.DEBUG, logging.DEBUG),
        (logging.INFO, logging.INFO),
        (logging.WARNING, logging.WARNING),
    ])
def test_init_worker(level, expected):
    init_worker(level)
    assert chowlogger.level == expected
    assert (len(chowlogger.handlers) == 1) == (level == logging.DEBUG)
