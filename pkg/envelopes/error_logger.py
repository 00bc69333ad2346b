#!/usr/bin/env python3
"""
Run failure log

A separate logging channel that keeps writing when the application runs
in quiet mode. It records parse failures, completions that stopped at a
bound, refusals on infinite quotients, and a summary per session.
"""

import os
import logging
from datetime import datetime
from typing import Optional, Dict, Any


class ErrorLogger:
    """
    Dedicated logger with its own dated file, independent of the root
    logging configuration. Without a log directory nothing is written.
    """

    def __init__(self, log_directory: Optional[str] = None):
        """
        Args:
            log_directory: Directory for the log file; None disables the file
        """
        self.log_directory = log_directory
        self.log_filename = None
        if log_directory:
            self.log_filename = os.path.join(
                log_directory,
                f"envelopes_errors_{datetime.now().strftime('%Y%m%d')}.log"
            )

        self.logger = logging.getLogger('envelopes_error_logger')
        self.logger.setLevel(logging.WARNING)
        for handler in list(self.logger.handlers):
            handler.close()
            self.logger.removeHandler(handler)

        if self.log_filename:
            file_handler = logging.FileHandler(self.log_filename, mode='a', encoding='utf-8')
            file_handler.setLevel(logging.WARNING)
            formatter = logging.Formatter(
                '%(asctime)s | %(levelname)s | Input: %(source)s | %(message)s',
                datefmt='%Y-%m-%d %H:%M:%S'
            )
            file_handler.setFormatter(formatter)
            self.logger.addHandler(file_handler)
        else:
            self.logger.addHandler(logging.NullHandler())

        # quiet mode must not silence this channel
        self.logger.propagate = False

        self.errors = 0
        self.warnings = 0
        self._write_session_header()

    @property
    def enabled(self) -> bool:
        return self.log_filename is not None

    def _append(self, text: str):
        if self.enabled:
            with open(self.log_filename, 'a', encoding='utf-8') as f:
                f.write(text)

    def _write_session_header(self):
        self._append(
            f"\n{'=' * 80}\n"
            f"NEW SESSION STARTED: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}\n"
            f"{'=' * 80}\n\n"
        )

    @staticmethod
    def _message(kind: str, details: str, additional_info: Optional[Dict[str, Any]]) -> str:
        parts = [f"Type: {kind}", f"Details: {details}"]
        if additional_info:
            for key, value in additional_info.items():
                parts.append(f"{key}: {value}")
        return " | ".join(parts)

    def log_run_error(self, source: str, error_type: str, error_details: str,
                      additional_info: Optional[Dict[str, Any]] = None):
        """
        Args:
            source: The presentation file, preset key or expression that failed
            error_type: e.g. 'PARSE_ERROR', 'CATALOG_ERROR', 'INFINITE_QUOTIENT'
            error_details: The error message
            additional_info: Extra key/value context
        """
        self.errors += 1
        self.logger.error(self._message(error_type, error_details, additional_info),
                          extra={'source': source})

    def log_run_warning(self, source: str, warning_type: str, warning_details: str,
                        additional_info: Optional[Dict[str, Any]] = None):
        self.warnings += 1
        self.logger.warning(self._message(warning_type, warning_details, additional_info),
                            extra={'source': source})

    def log_bound_hit(self, source: str, status: str, generators: int, iterations: int):
        """A completion that stopped at a bound instead of finishing."""
        self.log_run_warning(source, 'BOUND_HIT', status,
                             {'Generators': generators, 'Iterations': iterations})

    def log_session_summary(self, command: str, exit_code: int, seconds: float):
        self._append(
            f"\nSESSION SUMMARY: Command: {command} | Exit: {exit_code} | "
            f"Errors: {self.errors} | Warnings: {self.warnings} | Seconds: {seconds:.2f}\n"
        )


_error_logger_instance = None


def get_error_logger(log_directory: Optional[str] = None) -> ErrorLogger:
    """
    Args:
        log_directory: Only used on the first call

    Returns:
        The shared ErrorLogger
    """
    global _error_logger_instance
    if _error_logger_instance is None:
        _error_logger_instance = ErrorLogger(log_directory)
    return _error_logger_instance


def reset_error_logger():
    """Drop the shared instance so the next call opens a fresh one."""
    global _error_logger_instance
    _error_logger_instance = None
