"""
Verify Command

funcval verify <suite> - run a verification suite and write its report.
"""

from funcval.api.models.request import SuiteConfig
from funcval.core.logging import get_logger
from funcval.services.report_writer import report_writer
from funcval.services.suite_runner import suite_runner

logger = get_logger(__name__)


def verify(config: SuiteConfig) -> int:
    """
    Run a suite and emit the report

    Args:
        config: Validated suite configuration

    Returns:
        0 when every check passed, 1 otherwise
    """
    report = suite_runner.run_suite(config)
    report_writer.emit(report_writer.render_report(report, config.format), config.out)

    if not report.passed:
        logger.warning(f"Suite '{config.suite.value}': {report.summary.failed} of "
                       f"{report.summary.total} checks failed")
        return 1
    return 0
