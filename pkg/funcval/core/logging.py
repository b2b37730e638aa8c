"""
Structured Logging Configuration

Log records of a verification run carry the run id of the suite that
emitted them, and any context attached through extra={"context": ...} is
serialized with exact rationals written as "p/q".
"""

import json
import logging
import sys
from datetime import datetime, timezone
from fractions import Fraction
from typing import Any, Dict, MutableMapping, Optional, Tuple

from funcval.core.config import settings

PLAIN_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
QUIET_LOGGERS = ("hypothesis",)


def to_jsonable(data: Any) -> Any:
    """Rationals as p/q, tuples and sets as lists; unknown objects by repr"""
    if isinstance(data, Fraction):
        return f"{data.numerator}/{data.denominator}"
    if isinstance(data, dict):
        return {str(key): to_jsonable(value) for key, value in data.items()}
    if isinstance(data, (list, tuple, set, frozenset)):
        return [to_jsonable(value) for value in data]
    if isinstance(data, (str, int, float, bool)) or data is None:
        return data
    return repr(data)


class JSONFormatter(logging.Formatter):
    """One JSON object per record"""

    def format(self, record: logging.LogRecord) -> str:
        entry: Dict[str, Any] = {
            "timestamp": datetime.fromtimestamp(record.created, timezone.utc).isoformat().replace("+00:00", "Z"),
            "level": record.levelname,
            "logger": record.name,
            "message": record.getMessage(),
        }
        for attribute in ("run_id", "context"):
            if hasattr(record, attribute):
                entry[attribute] = to_jsonable(getattr(record, attribute))
        if record.exc_info:
            entry["exception"] = self.formatException(record.exc_info)
        return json.dumps(entry)


class RunAdapter(logging.LoggerAdapter):
    """Stamps every record with the run id of a suite run"""

    def process(self, msg: Any, kwargs: MutableMapping[str, Any]) -> Tuple[Any, MutableMapping[str, Any]]:
        extra = dict(kwargs.get("extra") or {})
        extra.setdefault("run_id", self.extra["run_id"])
        kwargs["extra"] = extra
        return msg, kwargs


def run_logger(logger: logging.Logger, run_id: str) -> RunAdapter:
    return RunAdapter(logger, {"run_id": run_id})


def setup_logging(level: Optional[str] = None) -> logging.Logger:
    """
    Route all records to stderr; stdout is reserved for reports

    Args:
        level: Overrides settings.log_level

    Returns:
        The configured root logger
    """
    level_no = getattr(logging, (level or settings.log_level).upper(), logging.INFO)
    handler = logging.StreamHandler(sys.stderr)
    handler.setLevel(level_no)
    handler.setFormatter(JSONFormatter() if settings.environment == "production" else logging.Formatter(PLAIN_FORMAT))

    root = logging.getLogger()
    root.setLevel(level_no)
    root.handlers = [handler]
    for name in QUIET_LOGGERS:
        logging.getLogger(name).setLevel(logging.WARNING)
    return root


setup_logging()


def get_logger(name: str) -> logging.Logger:
    return logging.getLogger(name)
