"""
Table Command

funcval table --spec FILE --tgrid a,b,c - CSV of analytic and recovered
growth functions over a t-grid.
"""

from fractions import Fraction
from typing import List, Optional, Sequence

from funcval.api.models.request import load_spec
from funcval.api.models.response import GrowthRow
from funcval.core.errors import UsageError
from funcval.core.logging import get_logger
from funcval.geomkernel.bodies import cube
from funcval.geomkernel.polytope import Polytope
from funcval.services.report_writer import report_writer
from funcval.utils.rational import to_fraction
from funcval.valuations.functionals import ValuationSpec
from funcval.valuations.growth import growth_extract, growth_fns

logger = get_logger(__name__)

TABLE_LAMBDAS = (Fraction(1), Fraction(2), Fraction(1, 2))


def parse_tgrid(text: str) -> List[Fraction]:
    """
    Comma-separated rationals ("0,1/2,1")

    Raises:
        UsageError: Empty grid or a value that is not a rational
    """
    values = []
    for part in text.split(","):
        part = part.strip()
        if not part:
            continue
        try:
            values.append(to_fraction(part))
        except (TypeError, ValueError, ZeroDivisionError):
            raise UsageError(f"--tgrid value {part!r} is not a rational number")
    if not values:
        raise UsageError("--tgrid needs at least one value")
    return values


def growth_rows(spec: ValuationSpec, t_grid: Sequence[Fraction], body: Optional[Polytope] = None) -> List[GrowthRow]:
    """
    Analytic psi and recovered psi_hat per t

    Args:
        spec: Weight triple
        t_grid: Shifts of the cone functions
        body: Body of the cone functions (the cube by default)
    """
    K = body if body is not None else cube(spec.n)
    psi = growth_fns(spec)
    rows = []
    for t in t_grid:
        sample = growth_extract(spec, K, t, TABLE_LAMBDAS)
        t_f = float(t)
        rows.append(GrowthRow(
            t=t_f,
            psi0=psi.psi0(t_f),
            psi1=psi.psi1(t_f),
            psi2=psi.psi2(t_f),
            psi0_hat=sample.psi0,
            psi1_hat=sample.psi1,
            psi2_hat=sample.psi2,
        ))
    return rows


def table(spec_path: str, tgrid: str, out: Optional[str] = None) -> int:
    """
    Write the growth table of a valuation spec

    Returns:
        Exit code 0

    Raises:
        ParseError: Malformed spec file
        UsageError: Malformed t-grid
    """
    spec = load_spec(spec_path)
    t_grid = parse_tgrid(tgrid)
    rows = growth_rows(spec, t_grid)
    logger.info(f"Growth table: {len(rows)} rows for n={spec.n}")
    report_writer.emit(report_writer.render_table(rows), out)
    return 0
