"""
Logging for the toolkit.

Console messages go to stderr; stdout carries only command results. A
timestamped log file under ~/.seifert_interior/logs is written when file
logging is switched on in the configuration.
"""

import logging
import sys
import time
from datetime import datetime, timedelta
from pathlib import Path
from typing import Dict, Optional


DEFAULT_LOG_DIR = Path.home() / ".seifert_interior" / "logs"
LOG_FILE_PATTERN = "seifert_*.log"

CONSOLE_FORMAT = "%(levelname)-8s | %(message)s"
FILE_FORMAT = "[%(asctime)s] %(levelname)-8s | %(name)s | %(message)s"
BANNER = "=" * 70


class ToolkitLogger:
    """
    Logger shared by the computation modules.

    Long computations are bracketed by operation banners; the closing banner
    reports the elapsed time since the matching start.
    """

    def __init__(
        self,
        name: str = "seifert_interior",
        log_dir: Optional[str] = None,
        console_level: int = logging.WARNING,
        file_level: int = logging.DEBUG,
        file_enabled: bool = False
    ):
        """
        Args:
            name: Logger name
            log_dir: Directory for log files
            console_level: Threshold for stderr output
            file_level: Threshold for the log file
            file_enabled: Whether to open a log file
        """
        self.name = name
        self.logger = logging.getLogger(name)
        self.logger.setLevel(logging.DEBUG)
        self.logger.propagate = False
        for handler in list(self.logger.handlers):
            self.logger.removeHandler(handler)
            handler.close()

        self.log_dir = Path(log_dir) if log_dir else DEFAULT_LOG_DIR
        self.current_log_file: Optional[Path] = None
        self._started: Dict[str, float] = {}

        console = logging.StreamHandler(sys.stderr)
        console.setLevel(console_level)
        console.setFormatter(logging.Formatter(CONSOLE_FORMAT))
        self.logger.addHandler(console)

        if file_enabled:
            self._open_log_file(file_level)

    def _open_log_file(self, level: int) -> None:
        self.log_dir.mkdir(parents=True, exist_ok=True)
        log_file = self.log_dir / f"seifert_{datetime.now():%Y%m%d_%H%M%S}.log"
        handler = logging.FileHandler(log_file, encoding="utf-8")
        handler.setLevel(level)
        handler.setFormatter(logging.Formatter(FILE_FORMAT, datefmt="%Y-%m-%d %H:%M:%S"))
        self.logger.addHandler(handler)
        self.current_log_file = log_file
        self.logger.debug(f"Writing log file {log_file}")

    def debug(self, message: str) -> None:
        self.logger.debug(message)

    def info(self, message: str) -> None:
        self.logger.info(message)

    def warning(self, message: str) -> None:
        self.logger.warning(message)

    def error(self, message: str) -> None:
        self.logger.error(message)

    def log_operation_start(self, operation: str, target: str) -> None:
        """
        Open a banner for a computation.

        Args:
            operation: Computation name (e.g. "HOMFLY", "Ehrhart")
            target: Size or input description
        """
        self._started[operation] = time.perf_counter()
        self.logger.info(BANNER)
        self.logger.info(f"OPERATION START: {operation}")
        self.logger.info(f"Target: {target}")
        self.logger.info(BANNER)

    def log_operation_end(self, operation: str, success: bool, details: str = "") -> None:
        """Close the banner opened by log_operation_start; failures are logged as errors."""
        started = self._started.pop(operation, None)
        level = logging.INFO if success else logging.ERROR
        status = "SUCCESS" if success else "FAILED"
        if started is not None:
            status += f" in {time.perf_counter() - started:.3f}s"

        self.logger.log(level, BANNER)
        self.logger.log(level, f"OPERATION END: {operation} - {status}")
        if details:
            self.logger.log(level, f"Details: {details}")
        self.logger.log(level, BANNER)

    def log_cache_stats(self, name: str, evaluations: int, cache_hits: int) -> None:
        """Memo efficiency of a recursive evaluator."""
        rate = cache_hits / evaluations if evaluations else 0.0
        self.logger.debug(f"{name}: {evaluations} evaluation(s), {cache_hits} cache hit(s) ({rate:.0%})")

    def get_log_file_path(self) -> Optional[Path]:
        return self.current_log_file

    def cleanup_old_logs(self, keep_days: int = 30) -> int:
        """Delete log files last modified more than keep_days ago; returns how many went."""
        if not self.log_dir.is_dir():
            return 0
        cutoff = (datetime.now() - timedelta(days=keep_days)).timestamp()
        deleted = 0
        for log_file in self.log_dir.glob(LOG_FILE_PATTERN):
            if log_file == self.current_log_file:
                continue
            try:
                if log_file.stat().st_mtime < cutoff:
                    log_file.unlink()
                    deleted += 1
            except OSError as e:
                self.logger.warning(f"Could not remove old log file {log_file.name}: {e}")
        if deleted:
            self.logger.info(f"Removed {deleted} log file(s) older than {keep_days} day(s)")
        return deleted


_global_logger: Optional[ToolkitLogger] = None


def get_logger(name: str = "seifert_interior") -> ToolkitLogger:
    """The process-wide logger, created quiet on first use."""
    global _global_logger
    if _global_logger is None:
        _global_logger = ToolkitLogger(name=name)
    return _global_logger


def configure_logging(
    level: str = "WARNING",
    file_enabled: bool = False,
    log_dir: Optional[str] = None,
    keep_days: int = 30
) -> ToolkitLogger:
    """
    Rebuild the process-wide logger from configuration values.

    Args:
        level: Console level name (DEBUG, INFO, WARNING, ERROR)
        file_enabled: Also write a log file
        log_dir: Directory for log files
        keep_days: Age limit for old log files, applied when file logging is on
    """
    global _global_logger
    console_level = logging.getLevelName(str(level).upper())
    if not isinstance(console_level, int):
        console_level = logging.WARNING
    _global_logger = ToolkitLogger(log_dir=log_dir, console_level=console_level, file_enabled=file_enabled)
    if file_enabled:
        _global_logger.cleanup_old_logs(keep_days)
    return _global_logger
