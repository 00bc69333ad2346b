"""
Tests for the run failure log
"""

import logging

from error_logger import ErrorLogger, get_error_logger, reset_error_logger

logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s'
)


def test_writes_nothing_without_a_directory(tmp_path):
    """A logger without a directory only counts"""
    error_logger = ErrorLogger()
    assert not error_logger.enabled
    error_logger.log_run_error("s2.pres", "PARSE_ERROR", "undeclared letter 'x'")
    error_logger.log_session_summary("groebner s2.pres", 1, 0.1)
    assert error_logger.errors == 1
    assert list(tmp_path.iterdir()) == []


def test_records_errors_warnings_and_summary(tmp_path):
    """Entries carry their source and the summary carries the counts"""
    error_logger = ErrorLogger(str(tmp_path))
    error_logger.log_run_error("bad.pres", "PARSE_ERROR", "undeclared letter 'x'", {"Line": 3})
    error_logger.log_bound_hit("aba.pres", "TruncatedAtDegree(12)", 10, 4)
    error_logger.log_session_summary("groebner aba.pres", 2, 1.5)
    with open(error_logger.log_filename, encoding="utf-8") as f:
        text = f.read()
    assert "NEW SESSION STARTED" in text
    assert "Input: bad.pres | Type: PARSE_ERROR | Details: undeclared letter 'x' | Line: 3" in text
    assert "Input: aba.pres | Type: BOUND_HIT | Details: TruncatedAtDegree(12) | Generators: 10" in text
    assert "Exit: 2 | Errors: 1 | Warnings: 1" in text


def test_does_not_propagate(tmp_path, caplog):
    """The failure log stays out of the root logger"""
    error_logger = ErrorLogger(str(tmp_path))
    with caplog.at_level(logging.WARNING):
        error_logger.log_run_warning("s2.pres", "SOFT_MISMATCH", "composition count differs")
    assert "SOFT_MISMATCH" not in caplog.text


def test_shared_instance(tmp_path):
    """get_error_logger returns one instance until reset"""
    first = get_error_logger(str(tmp_path))
    assert get_error_logger() is first
    assert first.enabled
    reset_error_logger()
    assert get_error_logger() is not first
