"""
Eval Command

funcval eval --fn FILE --spec FILE - print the three components of Z(u).
"""

from typing import Optional

from funcval.api.models.request import load_function, load_spec
from funcval.api.models.response import ComponentsResponse
from funcval.convexfn.functions import ConvexFn
from funcval.core.errors import ParseError
from funcval.core.logging import get_logger
from funcval.services.report_writer import report_writer
from funcval.valuations.functionals import ValuationSpec, components

logger = get_logger(__name__)


def evaluate_components(u: ConvexFn, spec: ValuationSpec) -> ComponentsResponse:
    """z0, z1 with its error estimate, z2 and their sum"""
    parts = components(u, spec)
    return ComponentsResponse(z0=parts.z0, z1=parts.z1, z1_error=parts.z1_error, z2=parts.z2, total=parts.total)


def evaluate(fn_path: str, spec_path: str, out: Optional[str] = None) -> int:
    """
    Evaluate Z on a function file

    Args:
        fn_path: JSON function file
        spec_path: JSON valuation spec file
        out: Output path; stdout when absent

    Returns:
        Exit code 0

    Raises:
        ParseError: Malformed input files or mismatched dimensions
    """
    u = load_function(fn_path)
    spec = load_spec(spec_path)
    if u.n != spec.n:
        raise ParseError(f"{fn_path}: function on R^{u.n} for a valuation on R^{spec.n}", 1, 1)

    response = evaluate_components(u, spec)
    logger.info(f"Z(u) = {response.total:.12g} (z0={response.z0:.6g}, z1={response.z1:.6g}, z2={response.z2:.6g})")
    report_writer.emit(response.model_dump_json(indent=2) + "\n", out)
    return 0
