"""
Suite Runner

Runs the checks of one verification suite and assembles the report:
1. Expand the config into checks
2. Run every check, on a thread pool when settings.workers > 1
3. Turn outcomes and check-level errors into records, in check order
4. Count passes and failures
"""

import hashlib
import json
import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from functools import partial
from typing import Any, Dict, Optional, Union

from funcval.api.models.request import SuiteConfig
from funcval.api.models.response import CheckRecord, Report, ReportSummary, Value
from funcval.core.config import settings
from funcval.core.errors import FuncvalError
from funcval.core.logging import get_logger, run_logger, to_jsonable
from funcval.services.suites import Check, build_checks
from funcval.utils.rational import format_fraction

logger = get_logger(__name__)

MAX_VALUE_LENGTH = 240


def inputs_digest(inputs: Dict[str, Any]) -> str:
    """First 12 hex digits of the SHA-256 of the canonical JSON inputs"""
    payload = json.dumps(to_jsonable(inputs), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode("utf-8")).hexdigest()[:12]


def render_value(value: Any) -> Value:
    """Report form of an expected or computed value; rationals as p/q"""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, float):
        return value if math.isfinite(value) else str(value)
    if isinstance(value, Fraction):
        return format_fraction(value)
    if isinstance(value, (list, tuple, dict)):
        text = json.dumps(to_jsonable(value), separators=(",", ":"))
    else:
        text = repr(value)
    if len(text) > MAX_VALUE_LENGTH:
        text = text[:MAX_VALUE_LENGTH - 3] + "..."
    return text


def resolve_seed(cli_seed: Optional[int]) -> int:
    """FUNCVAL_SEED wins over the command line, which wins over the default"""
    if "seed" in settings.model_fields_set or cli_seed is None:
        return settings.seed
    return cli_seed


class SuiteRunner:
    """Verification suite runner"""

    def __init__(self, workers: Optional[int] = None):
        self.workers = workers or settings.workers

    def run_suite(self, config: SuiteConfig) -> Report:
        """
        Run every check of a suite

        Args:
            config: Suite, dimension, seed, trials and tolerance override

        Returns:
            Report with one record per check in check order
        """
        start_time = time.time()
        log = run_logger(logger, f"{config.suite.value}-{config.seed}")

        try:
            checks = build_checks(config)
            log.info(f"Running suite '{config.suite.value}': {len(checks)} checks "
                     f"(n={config.n}, seed={config.seed}, trials={config.trials}, workers={self.workers})")

            if self.workers > 1:
                # map preserves input order, so the merge is deterministic
                with ThreadPoolExecutor(max_workers=self.workers) as pool:
                    records = list(pool.map(partial(self._run_check, log=log), checks))
            else:
                records = [self._run_check(check, log) for check in checks]

            passed = sum(1 for record in records if record.passed)
            summary = ReportSummary(total=len(records), passed=passed, failed=len(records) - passed)
            wall_time = time.time() - start_time

            log.info(f"Suite '{config.suite.value}' finished: {passed}/{len(records)} passed "
                     f"in {wall_time:.2f}s")

            return Report(
                suite=config.suite,
                n=config.n,
                seed=config.seed,
                trials=config.trials,
                records=records,
                summary=summary,
                wall_time_s=wall_time,
                format=config.format,
            )

        except Exception as e:
            log.error(f"Suite '{config.suite.value}' aborted: {e}", exc_info=True)
            raise

    def _run_check(self, check: Check, log: Optional[Union[logging.Logger, logging.LoggerAdapter]] = None) -> CheckRecord:
        """
        Run one check; errors become failing records

        Args:
            check: Check to run
            log: Run-scoped logger; the module logger when absent

        Returns:
            CheckRecord of the outcome or of the error
        """
        log = log or logger
        digest = inputs_digest(check.inputs)
        try:
            outcome = check.run()
        except FuncvalError as e:
            record = CheckRecord(name=check.name, inputs_digest=digest, passed=False,
                                 detail=f"{type(e).__name__}: {e.message}")
        except Exception as e:
            log.error(f"Check '{check.name}' raised unexpectedly: {e}", exc_info=True)
            record = CheckRecord(name=check.name, inputs_digest=digest, passed=False,
                                 detail=f"{type(e).__name__}: {e}")
        else:
            gap = outcome.gap
            if gap is not None and math.isnan(gap):
                gap = None
            record = CheckRecord(
                name=check.name,
                inputs_digest=digest,
                expected=render_value(outcome.expected),
                got=render_value(outcome.got),
                gap=gap,
                passed=bool(outcome.passed),
            )

        if record.passed:
            log.debug(f"Check '{check.name}' [{digest}] passed")
        else:
            log.warning(f"Check '{check.name}' [{digest}] failed",
                        extra={"context": {"inputs": check.inputs, "record": record.model_dump()}})
        return record


# Global runner instance
suite_runner = SuiteRunner()
