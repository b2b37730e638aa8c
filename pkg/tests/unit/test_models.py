"""
Unit Tests for Input Models, Settings and Logging
"""

import json
import logging
from fractions import Fraction

import pytest
from pydantic import ValidationError

from funcval.api.models.request import (
    FunctionModel,
    PolytopeModel,
    SuiteConfig,
    ValuationSpecModel,
    load_function,
    load_spec,
    parse_model,
)
from funcval.convexfn.functions import SpecialFn, SpecialKind, evaluate
from funcval.core.config import Settings
from funcval.core.errors import ParseError
from funcval.core.logging import JSONFormatter, get_logger, run_logger, to_jsonable
from funcval.zeta.presets import ZetaKind, ZetaRole


class TestParseModel:
    """Test JSON parsing with located errors"""

    def test_malformed_json(self):
        with pytest.raises(ParseError) as exc_info:
            parse_model('{\n  "n": 2,\n  "pieces": [\n}', FunctionModel)
        assert exc_info.value.line == 4
        assert exc_info.value.exit_code == 2

    def test_schema_error_is_located(self):
        text = '{\n  "n": 2,\n  "kind": "cone"\n}'
        with pytest.raises(ParseError) as exc_info:
            parse_model(text, FunctionModel)
        assert "body" in exc_info.value.message

    def test_missing_field_line(self):
        text = '{\n  "n": 2,\n  "pieces": [\n    {"a": [1, 0]}\n  ]\n}'
        with pytest.raises(ParseError) as exc_info:
            parse_model(text, FunctionModel)
        assert exc_info.value.line == 3
        assert "line 3" in exc_info.value.message

    def test_rational_strings(self):
        model = parse_model('{"n": 1, "pieces": [{"a": ["1/2"], "b": "-3/4"}]}', FunctionModel)
        u = model.to_function()
        assert evaluate(u, (Fraction(2),)) == Fraction(1, 4)

    def test_bad_rational(self):
        with pytest.raises(ParseError):
            parse_model('{"n": 1, "pieces": [{"a": ["one"], "b": 0}]}', FunctionModel)


class TestPolytopeModel:
    """Test polytope validation"""

    def test_exactly_one_representation(self):
        with pytest.raises(ValidationError):
            PolytopeModel(n=1, vertices=[[0], [1]], halfspaces=[{"normal": [1], "offset": 1}])
        with pytest.raises(ValidationError):
            PolytopeModel(n=1)

    def test_row_length(self):
        with pytest.raises(ValidationError):
            PolytopeModel(n=2, vertices=[[0, 0], [1]])

    def test_halfspaces(self):
        model = PolytopeModel(n=1, halfspaces=[{"normal": [1], "offset": 2}, {"normal": [-1], "offset": 0}])
        body = model.to_polytope()
        assert body.n == 1


class TestLoaders:
    """Test file loaders"""

    def test_cone_payload(self, write_json, cone_payload):
        u = load_function(write_json("cone.json", cone_payload))
        assert isinstance(u, SpecialFn)
        assert u.kind == SpecialKind.CONE
        assert evaluate(u, (3, -1)) == 3

    def test_invalid_function_becomes_parse_error(self, write_json):
        payload = {"n": 2, "kind": "cone", "body": {"n": 2, "vertices": [[0, 0], [1, 0], [0, 1]]}}
        with pytest.raises(ParseError):
            load_function(write_json("simplex_cone.json", payload))

    def test_spec_payload(self, write_json, spec_payload):
        spec = load_spec(write_json("spec.json", spec_payload))
        assert spec.zeta0.role == ZetaRole.ZETA0
        assert spec.zeta2.kind == ZetaKind.BUMP

    def test_poly_power_too_small(self, write_json):
        payload = {"n": 3, "zeta1": {"kind": "poly", "cutoff": 1, "power": 3}}
        with pytest.raises(ParseError):
            load_spec(write_json("poly.json", payload))

    def test_missing_file(self, tmp_path):
        with pytest.raises(ParseError):
            load_spec(str(tmp_path / "absent.json"))

    def test_spec_model_defaults(self):
        spec = ValuationSpecModel(n=2).to_spec()
        assert spec.zeta0 is None and spec.zeta1 is None and spec.zeta2 is None


class TestSuiteConfig:
    """Test run configuration bounds"""

    def test_defaults(self):
        config = SuiteConfig(suite="moment")
        assert config.n == 2
        assert config.trials == 20

    @pytest.mark.parametrize("field,value", [("n", 4), ("trials", 0), ("trials", 1001), ("tol", 0)])
    def test_bounds(self, field, value):
        with pytest.raises(ValidationError):
            SuiteConfig(suite="moment", **{field: value})

    def test_unknown_suite(self):
        with pytest.raises(ValidationError):
            SuiteConfig(suite="everything")


class TestSettings:
    """Test environment overrides"""

    def test_env_override(self, monkeypatch):
        monkeypatch.setenv("FUNCVAL_IDENTITY_TOL", "1e-4")
        monkeypatch.setenv("FUNCVAL_SEED", "42")
        current = Settings()
        assert current.identity_tol == 1e-4
        assert current.seed == 42
        assert "seed" in current.model_fields_set

    def test_negative_tolerance(self):
        with pytest.raises(ValidationError):
            Settings(quad_tol=-1.0)

    def test_guard_limit(self):
        with pytest.raises(ValidationError):
            Settings(max_pieces=0)


class TestLogging:
    """Test JSON log records"""

    def test_to_jsonable(self):
        assert to_jsonable({"delta": Fraction(1, 4), "x": (1, Fraction(-2, 3))}) == {
            "delta": "1/4", "x": [1, "-2/3"]}

    def test_formatter_context(self):
        record = logging.LogRecord("funcval.test", logging.WARNING, __file__, 1, "check failed", None, None)
        record.context = {"gap": Fraction(1, 3)}
        payload = json.loads(JSONFormatter().format(record))
        assert payload["level"] == "WARNING"
        assert payload["message"] == "check failed"
        assert payload["context"] == {"gap": "1/3"}

    def test_run_id_is_stamped(self):
        log = run_logger(get_logger("funcval.test"), "moment-7")
        _, kwargs = log.process("start", {"extra": {"context": {"n": 2}}})
        assert kwargs["extra"] == {"context": {"n": 2}, "run_id": "moment-7"}

    def test_formatter_run_id(self):
        record = logging.LogRecord("funcval.test", logging.INFO, __file__, 1, "done", None, None)
        record.run_id = "growth-1"
        assert json.loads(JSONFormatter().format(record))["run_id"] == "growth-1"
