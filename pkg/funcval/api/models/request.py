"""
Input Models

Pydantic models for the JSON files read by the CLI: polytopes, functions,
weights and valuation specs. Rationals may be given as numbers or as
"p/q" strings.
"""

import json
from enum import Enum
from typing import List, Optional, Type, TypeVar, Union

from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from funcval.core.errors import FuncvalError, ParseError
from funcval.convexfn.functions import ConvexFn, cone, finite, guard, indicator, restricted, support
from funcval.geomkernel.polytope import Polytope, halfspace_polytope, hull
from funcval.utils.rational import to_fraction
from funcval.valuations.functionals import ValuationSpec
from funcval.zeta.presets import ZetaKind, ZetaRole, ZetaSpec

Rational = Union[int, float, str]

ModelT = TypeVar("ModelT", bound=BaseModel)


def _check_rational(value: Rational) -> Rational:
    try:
        to_fraction(value)
    except (TypeError, ValueError, ZeroDivisionError):
        raise ValueError(f"{value!r} is not a rational number")
    return value


class HalfspaceModel(BaseModel):
    """normal . x <= offset"""
    normal: List[Rational] = Field(..., min_length=1, description="Outer normal")
    offset: Rational = Field(..., description="Right-hand side")

    @field_validator("normal")
    @classmethod
    def validate_normal(cls, v: List[Rational]) -> List[Rational]:
        return [_check_rational(x) for x in v]

    @field_validator("offset")
    @classmethod
    def validate_offset(cls, v: Rational) -> Rational:
        return _check_rational(v)


class PolytopeModel(BaseModel):
    """Polytope by vertices or by halfspaces"""
    n: int = Field(..., ge=1, le=4, description="Ambient dimension")
    vertices: Optional[List[List[Rational]]] = Field(None, description="Vertex list")
    halfspaces: Optional[List[HalfspaceModel]] = Field(None, description="Halfspace list")

    @field_validator("vertices")
    @classmethod
    def validate_vertices(cls, v: Optional[List[List[Rational]]]) -> Optional[List[List[Rational]]]:
        if v is None:
            return v
        return [[_check_rational(x) for x in point] for point in v]

    @model_validator(mode="after")
    def validate_representation(self) -> "PolytopeModel":
        """Exactly one representation, every row of length n"""
        if (self.vertices is None) == (self.halfspaces is None):
            raise ValueError("give exactly one of 'vertices' and 'halfspaces'")
        rows = self.vertices if self.vertices is not None else [h.normal for h in self.halfspaces]
        if not rows:
            raise ValueError("a polytope needs at least one row")
        if any(len(row) != self.n for row in rows):
            raise ValueError(f"every row must have length n={self.n}")
        return self

    def to_polytope(self) -> Polytope:
        if self.vertices is not None:
            return hull(self.vertices)
        return halfspace_polytope(self.n, [(h.normal, h.offset) for h in self.halfspaces])


class PieceModel(BaseModel):
    """Affine piece a . x + b"""
    a: List[Rational] = Field(..., min_length=1, description="Slope")
    b: Rational = Field(..., description="Constant term")

    @field_validator("a")
    @classmethod
    def validate_slope(cls, v: List[Rational]) -> List[Rational]:
        return [_check_rational(x) for x in v]

    @field_validator("b")
    @classmethod
    def validate_constant(cls, v: Rational) -> Rational:
        return _check_rational(v)


class FunctionKind(str, Enum):
    """Special kinds accepted in function files"""
    CONE = "cone"
    INDICATOR = "indicator"
    SUPPORT = "support"


class FunctionModel(BaseModel):
    """Piecewise-affine convex function or special kind"""
    n: int = Field(..., ge=1, description="Ambient dimension")
    pieces: Optional[List[PieceModel]] = Field(None, description="Affine pieces")
    domain: Optional[PolytopeModel] = Field(None, description="Bounded domain of a restricted function")
    kind: Optional[FunctionKind] = Field(None, description="Special kind")
    body: Optional[PolytopeModel] = Field(None, description="Body of a special kind")
    shift: Rational = Field(default=0, description="Shift of a special kind")

    @field_validator("shift")
    @classmethod
    def validate_shift(cls, v: Rational) -> Rational:
        return _check_rational(v)

    @model_validator(mode="after")
    def validate_shape(self) -> "FunctionModel":
        """Special kinds need a body; piece lists need pieces of length n"""
        if self.kind is not None:
            if self.body is None:
                raise ValueError(f"kind '{self.kind.value}' needs a 'body'")
            if self.body.n != self.n:
                raise ValueError("body dimension differs from n")
            return self
        if not self.pieces:
            raise ValueError("give 'pieces' or a special 'kind'")
        if any(len(p.a) != self.n for p in self.pieces):
            raise ValueError(f"every slope must have length n={self.n}")
        if self.domain is not None and self.domain.n != self.n:
            raise ValueError("domain dimension differs from n")
        return self

    def to_function(self) -> ConvexFn:
        if self.kind is not None:
            build = {FunctionKind.CONE: cone, FunctionKind.INDICATOR: indicator, FunctionKind.SUPPORT: support}
            return guard(build[self.kind](self.body.to_polytope(), self.shift))
        pieces = [(p.a, p.b) for p in self.pieces]
        if self.domain is not None:
            return guard(restricted(pieces, self.domain.to_polytope()))
        return guard(finite(pieces))


class ZetaModel(BaseModel):
    """Preset weight"""
    kind: ZetaKind = Field(..., description="exp, bump or poly")
    role: Optional[ZetaRole] = Field(None, description="Slot; defaults to the slot it is given in")
    alpha: Rational = Field(default=1, description="Decay rate of exp")
    center: Rational = Field(default=0, description="Center of bump")
    width: Rational = Field(default=1, description="Half width of bump")
    height: Rational = Field(default=1, description="Peak of bump")
    cutoff: Rational = Field(default=1, description="Cutoff T of poly")
    power: int = Field(default=3, ge=1, description="Power p of poly")

    @field_validator("alpha", "center", "width", "height", "cutoff")
    @classmethod
    def validate_parameter(cls, v: Rational) -> Rational:
        return _check_rational(v)

    def to_zeta(self, slot: Optional[ZetaRole] = None) -> ZetaSpec:
        role = self.role or slot or ZetaRole.ZETA1
        return ZetaSpec(
            kind=self.kind,
            role=role,
            alpha=to_fraction(self.alpha),
            center=to_fraction(self.center),
            width=to_fraction(self.width),
            height=to_fraction(self.height),
            cutoff=to_fraction(self.cutoff),
            power=self.power,
        )


class ValuationSpecModel(BaseModel):
    """Weight triple of a valuation"""
    n: int = Field(..., ge=1, description="Ambient dimension")
    zeta0: Optional[ZetaModel] = Field(None, description="Weight of the minimum term")
    zeta1: Optional[ZetaModel] = Field(None, description="Weight of the layer-cake term")
    zeta2: Optional[ZetaModel] = Field(None, description="Weight of the Monge-Ampere term")

    def to_spec(self) -> ValuationSpec:
        return ValuationSpec(
            n=self.n,
            zeta0=self.zeta0.to_zeta(ZetaRole.ZETA0) if self.zeta0 else None,
            zeta1=self.zeta1.to_zeta(ZetaRole.ZETA1) if self.zeta1 else None,
            zeta2=self.zeta2.to_zeta(ZetaRole.ZETA2) if self.zeta2 else None,
        )


def _locate(text: str, loc) -> tuple:
    """Line and column of the first key named in a validation location"""
    for part in reversed(loc):
        if isinstance(part, str):
            index = text.find(f'"{part}"')
            if index >= 0:
                line = text.count("\n", 0, index) + 1
                column = index - (text.rfind("\n", 0, index) + 1) + 1
                return line, column
    return 1, 1


def parse_model(text: str, model: Type[ModelT]) -> ModelT:
    """
    Parse JSON text into a model

    Raises:
        ParseError: Malformed JSON or a schema violation, with line and column
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed JSON: {e.msg}", e.lineno, e.colno)
    try:
        return model.model_validate(data)
    except ValidationError as e:
        first = e.errors()[0]
        line, column = _locate(text, first["loc"])
        where = ".".join(str(p) for p in first["loc"]) or "document"
        raise ParseError(f"{where}: {first['msg']}", line, column)


def load_model(path: str, model: Type[ModelT]) -> ModelT:
    """Read and parse a JSON file"""
    try:
        with open(path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}")
    return parse_model(text, model)


def load_function(path: str) -> ConvexFn:
    """
    Function from a JSON file

    Raises:
        ParseError: The file is malformed or describes an invalid function
    """
    model = load_model(path, FunctionModel)
    try:
        return model.to_function()
    except FuncvalError as e:
        raise ParseError(f"{path}: {e.message}", 1, 1)


def load_spec(path: str) -> ValuationSpec:
    """
    Valuation spec from a JSON file

    Raises:
        ParseError: The file is malformed or the weights are invalid
    """
    model = load_model(path, ValuationSpecModel)
    try:
        return model.to_spec()
    except FuncvalError as e:
        raise ParseError(f"{path}: {e.message}", 1, 1)


class SuiteName(str, Enum):
    """Verification suites"""
    GEOMETRY = "geometry"
    CONJUGATION = "conjugation"
    REGDELTA = "regdelta"
    VALUATION_IDENTITY = "valuation-identity"
    INVARIANCE = "invariance"
    HOMOGENEITY = "homogeneity"
    GROWTH = "growth"
    MOMENT = "moment"
    BOX_IDENTITY = "box-identity"
    THEOREM_SYNTHESIS = "theorem-synthesis"


class ReportFormat(str, Enum):
    """Report encodings"""
    JSON = "json"
    CSV = "csv"


class SuiteConfig(BaseModel):
    """Configuration of one verification run"""
    suite: SuiteName = Field(..., description="Suite to run")
    n: int = Field(default=2, ge=1, le=3, description="Ambient dimension for generated inputs")
    seed: int = Field(default=0x5EED, description="Seed of every random draw in the run")
    trials: int = Field(default=20, ge=1, le=1000, description="Random trials per property")
    tol: Optional[float] = Field(None, gt=0, description="Overrides the suite's default tolerance")
    out: Optional[str] = Field(None, description="Report path; stdout when absent")
    format: ReportFormat = Field(default=ReportFormat.JSON, description="json or csv")
