"""
Pytest Configuration and Fixtures

Provides shared test fixtures for unit and integration tests.
"""

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict

import pytest

from funcval.convexfn.functions import PacfFinite, cone, finite
from funcval.core.config import Settings
from funcval.geomkernel.bodies import cross, cube, t_delta
from funcval.geomkernel.polytope import PolytopeV
from funcval.valuations.functionals import ValuationSpec
from funcval.zeta.presets import ZetaRole, ZetaSpec, bump, exp_decay, poly_cutoff

F = Fraction


@pytest.fixture
def square() -> PolytopeV:
    """Q^2 = [-1, 1]^2"""
    return cube(2)


@pytest.fixture
def diamond() -> PolytopeV:
    """C^2, the polar of the square"""
    return cross(2)


@pytest.fixture
def triangle() -> PolytopeV:
    """T_{1/2} with vertices (-1/2, -1/2), (3/2, -1/2), (-1/2, 3/2)"""
    return t_delta(2, F(1, 2))


@pytest.fixture
def sup_norm() -> PacfFinite:
    """max(|x_1|, |x_2|), the cone function of the square"""
    return finite([((1, 0), 0), ((-1, 0), 0), ((0, 1), 0), ((0, -1), 0)])


@pytest.fixture
def l1_norm() -> PacfFinite:
    """|x_1| + |x_2|"""
    return finite([((1, 1), 0), ((1, -1), 0), ((-1, 1), 0), ((-1, -1), 0)])


@pytest.fixture
def abs_1d() -> PacfFinite:
    """|x| on the line"""
    return finite([((1,), 0), ((-1,), 0)])


@pytest.fixture
def exp_zeta() -> ZetaSpec:
    return exp_decay(1)


@pytest.fixture
def bump_zeta() -> ZetaSpec:
    """Tent of height 1 on [-1, 1]"""
    return bump(0, 1, 1)


@pytest.fixture
def cutoff_zeta() -> ZetaSpec:
    """(1 - t)^3 on t < 1"""
    return poly_cutoff(1, 3)


@pytest.fixture
def full_spec() -> ValuationSpec:
    """ExpDecay zeta_0 and zeta_1, tent zeta_2 on R^2"""
    return ValuationSpec(n=2, zeta0=exp_decay(1, ZetaRole.ZETA0), zeta1=exp_decay(1), zeta2=bump(0, 1, 1))


@pytest.fixture
def square_cone():
    """l_{Q^2} as a special kind"""
    return cone(cube(2))


@pytest.fixture
def spec_payload() -> Dict[str, Any]:
    """Valuation spec file content matching full_spec"""
    return {
        "n": 2,
        "zeta0": {"kind": "exp", "alpha": 1},
        "zeta1": {"kind": "exp", "alpha": 1},
        "zeta2": {"kind": "bump", "center": 0, "width": 1, "height": 1},
    }


@pytest.fixture
def cone_payload() -> Dict[str, Any]:
    """Function file content for l_{Q^2} + 0"""
    return {
        "n": 2,
        "kind": "cone",
        "body": {"n": 2, "vertices": [[-1, -1], [-1, 1], [1, -1], [1, 1]]},
        "shift": 0,
    }


@pytest.fixture
def write_json(tmp_path: Path):
    """Write a payload to a JSON file and return its path"""
    def _write(name: str, payload: Any) -> str:
        path = tmp_path / name
        path.write_text(json.dumps(payload, indent=2), encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def quick_settings(monkeypatch) -> Settings:
    """Settings with two workers and two trials, patched into the suite runner"""
    quick = Settings(workers=2, default_trials=2)
    monkeypatch.setattr("funcval.services.suite_runner.settings", quick)
    return quick
