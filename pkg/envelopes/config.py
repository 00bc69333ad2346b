"""
Run configuration: .env-backed defaults and logging setup for the CLI.

Library modules never configure logging; only the entry point calls
configure_logging.
"""

import logging
import os
import sys
from datetime import datetime
from typing import Optional

from dotenv import load_dotenv

from groebner import CompletionConfig

load_dotenv()

logger = logging.getLogger("envelopes.config")

DEFAULT_MAX_DEGREE = 20
DEFAULT_MAX_ITER = 50
DEFAULT_DIMS_WINDOW = 10
DEFAULT_WORKERS = 1

LOG_FORMAT = '%(asctime)s - %(levelname)s - %(message)s'


def env_int(name: str, default: Optional[int]) -> Optional[int]:
    """Positive integer from the environment, or the default when unset or malformed."""
    raw = os.getenv(name)
    if raw is None or not raw.strip():
        return default
    try:
        value = int(raw)
    except ValueError:
        logger.warning(f"Ignoring {name}={raw!r}: not an integer, using {default}")
        return default
    if value <= 0:
        logger.warning(f"Ignoring {name}={raw!r}: must be positive, using {default}")
        return default
    return value


def env_flag(name: str) -> bool:
    return os.getenv(name, "").strip().lower() in ("1", "true", "yes")


def is_quiet() -> bool:
    return env_flag("QUIET_MODE")


def max_degree_default() -> int:
    return env_int("ENVELOPES_MAX_DEGREE", DEFAULT_MAX_DEGREE)


def max_iter_default() -> int:
    return env_int("ENVELOPES_MAX_ITER", DEFAULT_MAX_ITER)


def max_size_default() -> Optional[int]:
    return env_int("ENVELOPES_MAX_SIZE", None)


def dims_window_default() -> int:
    return env_int("ENVELOPES_DIMS_WINDOW", DEFAULT_DIMS_WINDOW)


def workers_default() -> int:
    return env_int("ENVELOPES_WORKERS", DEFAULT_WORKERS)


def log_dir() -> Optional[str]:
    return os.getenv("ENVELOPES_LOG_DIR") or None


def completion_config(max_degree: Optional[int] = None, max_iterations: Optional[int] = None,
                      max_basis_size: Optional[int] = None, snapshots: bool = False,
                      workers: Optional[int] = None) -> CompletionConfig:
    """
    Completion bounds for a CLI run.

    Bounds given explicitly are used as they are. When none is given, the
    environment (or built-in) degree, iteration and size defaults apply.
    """
    if max_degree is None and max_iterations is None and max_basis_size is None:
        max_degree = max_degree_default()
        max_iterations = max_iter_default()
        max_basis_size = max_size_default()
        logger.debug(f"No bounds given; using max_degree={max_degree}, max_iterations={max_iterations}, "
                     f"max_basis_size={max_basis_size}")
    return CompletionConfig(
        max_degree=max_degree,
        max_iterations=max_iterations,
        max_basis_size=max_basis_size,
        snapshots=snapshots,
        workers=workers if workers is not None else workers_default(),
    )


def configure_logging(quiet: bool = False, log_file: Optional[str] = None):
    """
    Root logging for a CLI run: stdout always, plus a file when log_file is
    given or ENVELOPES_LOG_DIR is set.
    """
    quiet = quiet or is_quiet()
    handlers = [logging.StreamHandler(sys.stdout)]
    if log_file is None and log_dir():
        log_file = os.path.join(log_dir(), f"envelopes_{datetime.now().strftime('%Y%m%d')}.log")
    if log_file:
        handlers.append(logging.FileHandler(log_file, encoding='utf-8'))
    level = logging.ERROR if quiet else logging.INFO
    logging.basicConfig(level=level, format=LOG_FORMAT, handlers=handlers)
    if quiet:
        logging.getLogger().setLevel(logging.ERROR)
        for logger_name in logging.root.manager.loggerDict:
            logging.getLogger(logger_name).setLevel(logging.ERROR)
