"""
Verification Suites

Each suite expands a SuiteConfig into a list of independent checks. A check
carries its inputs (hashed into the report) and a zero-argument callable
returning an Outcome; nothing is computed until the runner calls it.

Exact checks compare rationals with ==; numeric checks compare floats
against a tolerance taken from settings unless the config overrides it.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, partial
from typing import Any, Callable, Dict, List, Optional, Sequence

import numpy as np

from funcval.api.models.request import SuiteConfig, SuiteName
from funcval.core.config import settings
from funcval.core.errors import IllConditioned
from funcval.core.logging import get_logger
from funcval.convexfn.conjugation import (
    coercivity_margin,
    conjugate,
    epigraph_vertices,
    lowest_vertex_cone,
    min_value,
    subdivision,
)
from funcval.convexfn.functions import (
    ConvexFn,
    PacfFinite,
    as_pacf,
    cone,
    evaluate,
    finite,
    indicator,
    is_coercive,
    pieces_of,
    restricted,
    sublevel_body,
    support,
)
from funcval.convexfn.lattice import NonConvex, max_fn, min_fn
from funcval.convexfn.regularize import epiconv_distance, reg_delta
from funcval.convexfn.transforms import add_constant, compose_linear, scale_hom, translate_fn
from funcval.geomkernel.actions import apply_map, random_unimodular, scale, translate
from funcval.geomkernel.bodies import box, cross, cube, simplex, t_delta
from funcval.geomkernel.lemmas import (
    body_valuation_check,
    conv_union_formula,
    conv_union_volume,
    lemma_T_delta_suite,
    mahler_lower_bound,
    mahler_product,
    same_body,
)
from funcval.geomkernel.polytope import (
    Polytope,
    conv_union,
    hausdorff_distance,
    hausdorff_distance_sq,
    hull,
    intersect_halfspace,
    polar,
    polar_volume,
    to_hrep,
    to_vrep,
    volume,
)
from funcval.services.generators import (
    GeneratedPair,
    cut_cone_pair,
    generate_pair,
    random_body,
    random_fraction,
    random_function,
    rng_for,
)
from funcval.utils.rational import add, norm_sq, unit, zero
from funcval.utils.rational import scale as scale_point
from funcval.valuations.box import box_identity_check, cnk_coefficients
from funcval.valuations.functionals import (
    Valuation,
    ValuationSpec,
    dual_min_val,
    hessian_dual_exact,
    origin_hull_volume,
    z0,
    z1,
    z2_exact,
    z_total,
)
from funcval.valuations.growth import GrowthSample, growth_difference, growth_extract
from funcval.valuations.identity import valuation_identity_check
from funcval.valuations.synthesis import synthesis_chain
from funcval.zeta.growth import moment_reconstruction, psi1, psi1_by_quadrature
from funcval.zeta.presets import ZetaRole, ZetaSpec, bump, exp_decay, poly_cutoff, zeta_eval

logger = get_logger(__name__)

LEMMA_GRID = {
    "n": (2, 3),
    "delta": (Fraction(1, 5), Fraction(1, 4), Fraction(2, 5)),
    "rho": (Fraction(1, 3), Fraction(1, 2), Fraction(2, 3)),
    "b": (Fraction(1),),
    "t": (Fraction(1), Fraction(2)),
}
REG_DELTAS = (Fraction(2, 5), Fraction(1, 5), Fraction(1, 10), Fraction(1, 20))
SCALES = (Fraction(1, 2), Fraction(1), Fraction(2), Fraction(4))
GROWTH_T = (Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(1), Fraction(2))
GROWTH_LAMBDAS = (Fraction(1), Fraction(2), Fraction(1, 2))
BOX_GRID = {
    "lam": (Fraction(1, 2), Fraction(1), Fraction(2)),
    "delta": (Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)),
    "t": (Fraction(0), Fraction(1)),
}
MOMENT_T = tuple(float(t) for t in np.linspace(0.0, 1.8, 10))
DERIVATIVE_T = (0.2, 0.7, 1.2)
DIFFERENCE_STEP = 1e-4
RECONSTRUCTION_R = (2.0, 4.0, 8.0, 16.0, 32.0)
DECAY_T = (5.0, 10.0, 20.0)
DECAY_LIMIT = 1e-6
CONTINUITY_VALUE_TOL = 1e-3
BALL_GAP_LIMIT = 1e-2
EXACT_TOL = 1e-9


@dataclass
class Outcome:
    """Expected and computed value of one check"""
    expected: Any
    got: Any
    gap: Optional[float]
    passed: bool


@dataclass
class Check:
    """A named, lazily evaluated check"""
    name: str
    inputs: Dict[str, Any]
    run: Callable[[], Outcome]


def exact(expected: Any, got: Any) -> Outcome:
    """Exact equality; rational gaps are reported as floats"""
    gap = None
    if isinstance(expected, (int, Fraction)) and isinstance(got, (int, Fraction)):
        gap = float(abs(got - expected))
    return Outcome(expected, got, gap, got == expected)


def within(expected: float, got: float, tol: float, relative: bool = True) -> Outcome:
    """|got - expected| <= tol, scaled by max(1, |expected|) when relative"""
    gap = abs(float(got) - float(expected))
    if relative:
        gap /= max(1.0, abs(float(expected)))
    return Outcome(float(expected), float(got), gap, gap <= tol)


def holds(flag: bool) -> Outcome:
    return Outcome(True, bool(flag), None, bool(flag))


def nonincreasing(values: Sequence[float], slack: float = 1e-12) -> bool:
    return all(b <= a + slack for a, b in zip(values, values[1:]))


def full_spec(n: int) -> ValuationSpec:
    """ExpDecay zeta_0 and zeta_1, bump zeta_2 on [-1, 1]"""
    return ValuationSpec(
        n=n,
        zeta0=exp_decay(1, ZetaRole.ZETA0),
        zeta1=exp_decay(1),
        zeta2=bump(0, 1, 1),
    )


def layer_spec(n: int) -> ValuationSpec:
    return ValuationSpec(n=n, zeta1=exp_decay(1))


def _seeds(config: SuiteConfig) -> List[int]:
    return [config.seed + i for i in range(config.trials)]


@lru_cache(maxsize=512)
def _function(n: int, seed: int) -> PacfFinite:
    return random_function(n, rng_for(seed))


@lru_cache(maxsize=512)
def _pair(n: int, seed: int) -> GeneratedPair:
    return generate_pair(n, seed)


@lru_cache(maxsize=512)
def _conjugate(u: ConvexFn) -> ConvexFn:
    return conjugate(u)


def _canonical(u: ConvexFn) -> ConvexFn:
    """Piece-list form rebuilt through the canonical constructors"""
    w = as_pacf(u)
    if isinstance(w, PacfFinite):
        return finite(w.pieces)
    return restricted(w.pieces, w.domain)


def _random_point(n: int, rng: np.random.Generator, low: int = -2, high: int = 2):
    return tuple(random_fraction(rng, low, high) for _ in range(n))


# --- geometry ---------------------------------------------------------------

HULL_EXAMPLE = ((0, 0), (1, 0), (0, 1), (Fraction(1, 4), Fraction(1, 4)))


def _hull_example() -> Outcome:
    expected = sorted([(Fraction(0), Fraction(0)), (Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))])
    return exact(expected, sorted(hull(HULL_EXAMPLE).vertices))


def _hull_contains_inputs(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    points = [_random_point(n, rng) for _ in range(12)]
    P = hull(points)
    H = to_hrep(P)
    inside = all(sum(a * x for a, x in zip(normal, p)) <= offset
                 for p in points for normal, offset in H.halfspaces)
    return holds(inside and set(P.vertices) <= set(points))


def _round_trip(n: int, seed: int) -> Outcome:
    P = random_body(n, rng_for(seed))
    return exact(sorted(P.vertices), sorted(to_vrep(to_hrep(P)).vertices))


def _bipolar(n: int, seed: int) -> Outcome:
    P = random_body(n, rng_for(seed))
    return holds(same_body(polar(polar(P)), P))


def _sl_volume(n: int, seed: int) -> Outcome:
    P = random_body(n, rng_for(seed))
    phi = random_unimodular(n, seed)
    return exact(volume(P), volume(apply_map(phi, P)))


def _polar_homogeneity(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    P = random_body(n, rng)
    lam = random_fraction(rng, 1, 3, 2)
    return exact(polar_volume(P) / lam ** n, polar_volume(scale(P, lam)))


def _conv_union(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    delta = random_fraction(rng, 1, 4, 4) / 4
    c = [random_fraction(rng, 1, 8, 4) / 4 for _ in range(n)]
    return exact(conv_union_formula(delta, c), conv_union_volume(delta, c))


def _translated_hausdorff(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    P = random_body(n, rng)
    shift = _random_point(n, rng, -1, 1)
    return exact(norm_sq(shift), hausdorff_distance_sq(P, translate(P, shift)))


def _split(P: Polytope, s: Fraction):
    e1 = unit(P.n, 0)
    K = to_vrep(intersect_halfspace(P, e1, s))
    L = to_vrep(intersect_halfspace(P, scale_point(e1, Fraction(-1)), s))
    return K, L


def _body_valuation(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    P = random_body(n, rng)
    K, L = _split(P, random_fraction(rng, 1, 2, 4) / 4)
    result = body_valuation_check(K, L)
    return Outcome(True, str(result), None, all(result.values()))


def _mahler_symmetric(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    points = [scale_point(v, random_fraction(rng, 1, 2, 2)) for v in cross(n).vertices]
    for _ in range(3):
        p = _random_point(n, rng)
        points += [p, scale_point(p, Fraction(-1))]
    K = hull(points)
    product, bound = mahler_product(K), mahler_lower_bound(n)
    return Outcome(bound, product, float(product - bound), product >= bound)


def _lemma(n: int, delta: Fraction, rho: Fraction, b: Fraction, t: Fraction) -> Outcome:
    report = lemma_T_delta_suite(n, delta, rho, b, t)
    return Outcome(report.closed_form, report.increment, float(abs(report.increment - report.closed_form)),
                   report.passed)


def geometry_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    half = Fraction(1, 2)
    checks = [
        Check("hull_drops_interior_point", {"points": HULL_EXAMPLE}, _hull_example),
        Check("simplex_volume", {"n": n}, lambda: exact(Fraction(1, math.factorial(n)), volume(simplex(n)))),
        Check("cube_volume", {"n": n}, lambda: exact(Fraction(2 ** n), volume(cube(n)))),
        Check("box_volume", {"n": n, "lam": Fraction(3, 2)},
              lambda: exact(Fraction(3, 2) ** n, volume(box(n, Fraction(3, 2))))),
        Check("triangle_volume", {"vertices": ((-2, 0), (0, -2), (1, 1))},
              lambda: exact(Fraction(4), volume(hull([(-2, 0), (0, -2), (1, 1)])))),
        Check("polar_cube_is_cross", {"n": n}, lambda: holds(same_body(polar(cube(n)), cross(n)))),
        Check("polar_volume_t_delta", {"n": 2, "delta": half},
              lambda: exact(Fraction(4), polar_volume(t_delta(2, half)))),
        Check("polar_t_delta_vertices", {"n": 2, "delta": half},
              lambda: holds(same_body(polar(t_delta(2, half)), hull([(-2, 0), (0, -2), (1, 1)])))),
        Check("hausdorff_scaled_cube", {"n": n},
              lambda: exact(Fraction(n), hausdorff_distance_sq(cube(n), scale(cube(n), 2)))),
        Check("hausdorff_scaled_square", {"n": 2},
              lambda: within(math.sqrt(2), hausdorff_distance(cube(2), scale(cube(2), 2)), 1e-12)),
        Check("mahler_cube", {"n": n}, lambda: exact(mahler_lower_bound(n), mahler_product(cube(n)))),
        Check("mahler_cross", {"n": n}, lambda: exact(mahler_lower_bound(n), mahler_product(cross(n)))),
    ]
    for dim in LEMMA_GRID["n"]:
        for delta in LEMMA_GRID["delta"]:
            for rho in LEMMA_GRID["rho"]:
                for b in LEMMA_GRID["b"]:
                    for t in LEMMA_GRID["t"]:
                        inputs = {"n": dim, "delta": delta, "rho": rho, "b": b, "t": t}
                        checks.append(Check("t_delta_lemma", inputs, partial(_lemma, dim, delta, rho, b, t)))
    trial_checks = (
        ("hull_contains_inputs", _hull_contains_inputs),
        ("vrep_hrep_round_trip", _round_trip),
        ("bipolar", _bipolar),
        ("sl_volume_invariance", _sl_volume),
        ("polar_volume_homogeneity", _polar_homogeneity),
        ("conv_union_volume", _conv_union),
        ("hausdorff_translation", _translated_hausdorff),
        ("body_valuation", _body_valuation),
        ("mahler_symmetric_bound", _mahler_symmetric),
    )
    for seed in _seeds(config):
        for name, run in trial_checks:
            checks.append(Check(name, {"n": n, "seed": seed}, partial(run, n, seed)))
    return checks


# --- conjugation ------------------------------------------------------------

def _biconjugate(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    return exact(u, conjugate(_conjugate(u)))


def _min_from_conjugate(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    return exact(-evaluate(_conjugate(u), zero(n)), min_value(u)[0])


def _min_by_vertices(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    return exact(min(height for _, height in epigraph_vertices(u)), min_value(u)[0])


def _cell_volumes(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    cells = subdivision(u).cells
    return exact(volume(hull(u.slopes)), sum((c.volume for c in cells), Fraction(0)))


def _cell_duality(n: int, seed: int) -> Outcome:
    """x . y = u(x) + u*(y) at every vertex y of the cell of x"""
    u = _function(n, seed)
    w = _conjugate(u)
    ok = True
    for cell in subdivision(u).cells:
        x = cell.gradient
        ok &= evaluate(u, x) == cell.value
        for y in cell.polytope.vertices:
            ok &= sum(a * b for a, b in zip(x, y)) == evaluate(u, x) + evaluate(w, y)
    return holds(ok)


def _sl_equivariance(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    phi = random_unimodular(n, seed)
    expected = compose_linear(_conjugate(u), phi.inverse().transpose())
    return exact(expected, conjugate(compose_linear(u, phi)))


def _translation_rule(n: int, seed: int) -> Outcome:
    """(u o tau_y^-1)*(x) = u*(x) + y . x"""
    rng = rng_for(seed)
    u = _function(n, seed)
    y = _random_point(n, rng, -1, 1)
    w = _conjugate(u)
    expected = restricted([(add(a, y), b) for a, b in w.pieces], w.domain)
    return exact(expected, conjugate(translate_fn(u, y)))


def _scaling_rule(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    u = _function(n, seed)
    lam = random_fraction(rng, 1, 3, 2)
    return exact(scale_hom(_conjugate(u), 1 / lam), conjugate(scale_hom(u, lam)))


def _coercive_bounded(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    margin = coercivity_margin(u)
    bounded = sublevel_body(u, min_value(u)[0] + 1) is not None
    return Outcome(True, margin, None, margin > 0 and bounded and is_coercive(u))


def _lowest_vertex_cone(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    u = _function(n, seed)
    vc = lowest_vertex_cone(u)
    points = [x for x, _ in epigraph_vertices(u)] + [_random_point(n, rng) for _ in range(10)]
    below = all(evaluate(u, x) >= evaluate(vc.function, x) for x in points)
    touching = evaluate(u, vc.apex) == evaluate(vc.function, vc.apex) == vc.height
    return holds(below and touching)


def _lattice_swap(n: int, seed: int) -> Outcome:
    """(u ^ v)* = u* v v* and (u v v)* = u* ^ v*"""
    pair = _pair(n, seed)
    meet = min_fn(pair.u, pair.v)
    wu, wv = _canonical(conjugate(pair.u)), _canonical(conjugate(pair.v))
    dual_meet = min_fn(wu, wv)
    if isinstance(meet, NonConvex) or isinstance(dual_meet, NonConvex):
        return Outcome(True, False, None, False)
    first = conjugate(meet) == max_fn(wu, wv)
    second = conjugate(max_fn(pair.u, pair.v)) == dual_meet
    return holds(first and second)


def conjugation_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    checks = [
        Check("conjugate_cone_is_indicator", {"n": n},
              lambda: exact(restricted([(zero(n), 0)], cross(n)),
                            conjugate(finite(pieces_of(cone(cube(n))))))),
        Check("conjugate_indicator_is_support", {"n": n},
              lambda: exact(finite(pieces_of(support(cube(n)))),
                            conjugate(restricted([(zero(n), 0)], cube(n))))),
        Check("non_coercive_margin", {"n": n},
              lambda: exact(Fraction(0), coercivity_margin(finite([(unit(n, 0), 0),
                                                                    (scale_point(unit(n, 0), 2), 0)])))),
        Check("l1_norm_margin", {"n": n},
              lambda: exact(Fraction(1), coercivity_margin(finite([(v, 0) for v in cube(n).vertices])))),
    ]
    trial_checks = (
        ("biconjugation", _biconjugate),
        ("min_is_minus_conjugate_at_zero", _min_from_conjugate),
        ("min_over_epigraph_vertices", _min_by_vertices),
        ("cell_volumes_fill_slope_hull", _cell_volumes),
        ("cell_duality", _cell_duality),
        ("sl_equivariance", _sl_equivariance),
        ("translation_rule", _translation_rule),
        ("scaling_rule", _scaling_rule),
        ("coercive_sublevel_bounded", _coercive_bounded),
        ("lowest_vertex_cone", _lowest_vertex_cone),
        ("lattice_swap", _lattice_swap),
    )
    for seed in _seeds(config):
        for name, run in trial_checks:
            checks.append(Check(name, {"n": n, "seed": seed}, partial(run, n, seed)))
    return checks


# --- regdelta ---------------------------------------------------------------

def _reg_bodies(n: int) -> Dict[str, Polytope]:
    bodies = {"cube": cube(n), "cross": cross(n)}
    if n >= 2:
        bodies["t_delta"] = t_delta(n, Fraction(1, 4))
    else:
        bodies["segment"] = hull([(Fraction(-1, 4),), (Fraction(1),)])
    return bodies


def _reg_cone(K: Polytope, delta: Fraction) -> Outcome:
    expected = finite(pieces_of(cone(conv_union(K, scale(cross(K.n), delta)))))
    return exact(expected, reg_delta(cone(K), delta))


def _reg_cone_layer(K: Polytope, delta: Fraction, t: Fraction, tol: float) -> Outcome:
    zeta = exp_decay(1)
    expected = psi1(zeta, K.n, float(t)) * float(volume(conv_union(K, scale(cross(K.n), delta))))
    return within(expected, z1(reg_delta(cone(K, t), delta), zeta).value, tol)


def _reg_shift(n: int, seed: int) -> Outcome:
    rng = rng_for(seed)
    u = _function(n, seed)
    delta = random_fraction(rng, 1, 4, 4) / 4
    t = random_fraction(rng, -1, 1)
    return exact(add_constant(reg_delta(u, delta), t), reg_delta(add_constant(u, t), delta))


def _reg_finite_coercive(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    result = reg_delta(u, Fraction(1, 4))
    return holds(isinstance(result, PacfFinite) and is_coercive(result))


def _reg_box(n: int, seed: int) -> Outcome:
    """reg_delta(I_box + t)(x) = t + (l1 distance to the box) / delta"""
    rng = rng_for(seed)
    lam = random_fraction(rng, 1, 2, 2)
    delta = random_fraction(rng, 1, 4, 4) / 4
    t = random_fraction(rng, 0, 1)
    regularized = reg_delta(indicator(box(n, lam), t), delta)
    ok = True
    for _ in range(20):
        x = _random_point(n, rng, -2, 4)
        expected = t + sum(max(Fraction(0), -xi, xi - lam) for xi in x) / delta
        ok &= evaluate(regularized, x) == expected
    return holds(ok)


def _reg_lattice(n: int, seed: int) -> Outcome:
    pair = _pair(n, seed)
    delta = Fraction(1, 4)
    meet = min_fn(pair.u, pair.v)
    reg_meet = min_fn(reg_delta(pair.u, delta), reg_delta(pair.v, delta))
    if isinstance(meet, NonConvex) or isinstance(reg_meet, NonConvex):
        return Outcome(True, False, None, False)
    return exact(reg_delta(meet, delta), reg_meet)


def _continuity(u: ConvexFn, tol: float) -> Outcome:
    """Distances and value gaps along delta -> 0 shrink monotonically"""
    spec = full_spec(u.n)
    low = min_value(u)[0]
    grid = [low + Fraction(1, 2), low + 1, low + 2]
    reference = z_total(u, spec)
    distances, gaps = [], []
    for delta in REG_DELTAS:
        regularized = reg_delta(u, delta)
        distances.append(epiconv_distance(regularized, u, grid))
        gaps.append(abs(z_total(regularized, spec) - reference))
    passed = (nonincreasing(distances) and nonincreasing(gaps)
              and distances[-1] <= tol and gaps[-1] <= CONTINUITY_VALUE_TOL)
    return Outcome(f"<= {tol:g} / <= {CONTINUITY_VALUE_TOL:g}",
                   f"{distances[-1]:.3e} / {gaps[-1]:.3e}", max(distances[-1], gaps[-1]), passed)


def regdelta_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    tol = config.tol or settings.identity_tol
    continuity_tol = config.tol or settings.continuity_tol
    checks = []
    for name, K in _reg_bodies(n).items():
        for delta in (Fraction(1, 2), Fraction(1, 4)):
            inputs = {"body": name, "n": n, "delta": delta}
            checks.append(Check("reg_cone_is_cone_of_hull", inputs, partial(_reg_cone, K, delta)))
            for t in (Fraction(0), Fraction(1)):
                checks.append(Check("reg_cone_layer_integral", {**inputs, "t": t},
                                    partial(_reg_cone_layer, K, delta, t, tol)))
        checks.append(Check("continuity_cone", {"body": name, "n": n},
                            partial(_continuity, finite(pieces_of(cone(K))), continuity_tol)))
    trial_checks = (
        ("reg_commutes_with_shift", _reg_shift),
        ("reg_finite_coercive", _reg_finite_coercive),
        ("reg_box_indicator", _reg_box),
        ("reg_preserves_min", _reg_lattice),
    )
    for seed in _seeds(config):
        for name, run in trial_checks:
            checks.append(Check(name, {"n": n, "seed": seed}, partial(run, n, seed)))
        checks.append(Check("continuity_random", {"n": n, "seed": seed},
                            lambda seed=seed: _continuity(_function(n, seed), continuity_tol)))
    return checks


# --- valuation-identity -----------------------------------------------------

def _pair_identity(n: int, seed: int, tol: float) -> Outcome:
    pair = _pair(n, seed)
    report = valuation_identity_check(full_spec(n), pair.u, pair.v, tol)
    return Outcome(report.bound, report.gap, report.gap, report.passed)


def _dual_consistency(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    weight = full_spec(n).zeta2
    return exact(z2_exact(u, weight), hessian_dual_exact(_conjugate(u), weight))


def _dual_identity(n: int, seed: int, tol: float) -> Outcome:
    """Z*(w1 v w2) + Z*(w1 ^ w2) = Z*(w1) + Z*(w2) on conjugates of a pair"""
    pair = _pair(n, seed)
    w1, w2 = _canonical(conjugate(pair.u)), _canonical(conjugate(pair.v))
    meet = min_fn(w1, w2)
    if isinstance(meet, NonConvex):
        return Outcome(True, False, None, False)
    Z = Valuation(full_spec(n), dual=True)
    values = [Z(w1), Z(w2)]
    gap = abs(Z(max_fn(w1, w2)) + Z(meet) - sum(values))
    bound = tol * (1 + sum(abs(v) for v in values))
    return Outcome(bound, gap, gap, gap <= bound)


def _origin_hull_identity(n: int, seed: int, tol: float) -> Outcome:
    pair = _pair(n, seed)
    meet = min_fn(pair.u, pair.v)
    if isinstance(meet, NonConvex):
        return Outcome(True, False, None, False)
    zeta = exp_decay(1)
    values = [origin_hull_volume(f, zeta).value for f in (pair.u, pair.v)]
    gap = abs(origin_hull_volume(max_fn(pair.u, pair.v), zeta).value
              + origin_hull_volume(meet, zeta).value - sum(values))
    bound = tol * (1 + sum(abs(v) for v in values))
    return Outcome(bound, gap, gap, gap <= bound)


def _cut_cone_example() -> Outcome:
    half = Fraction(1, 2)
    pair = cut_cone_pair(2, half, half, Fraction(1))
    return exact(finite(pieces_of(cone(t_delta(2, half)))), min_fn(pair.u, pair.v))


def _cone_split_example() -> Outcome:
    P = t_delta(2, Fraction(1, 4))
    K, L = _split(P, Fraction(1, 4))
    return holds(same_body(conv_union(K, L), P))


def valuation_identity_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    tol = config.tol or settings.identity_tol
    weight = full_spec(n).zeta2
    checks = [
        Check("cut_cone_min_is_cone", {"n": 2, "delta": "1/2", "rho": "1/2", "b": 1}, _cut_cone_example),
        Check("cone_split_union", {"n": 2, "delta": "1/4", "s": "1/4"}, _cone_split_example),
        Check("dual_valuation_support", {"n": n},
              lambda: within(float(2 ** n), Valuation(layer_spec(n), dual=True)(support(cube(n))), EXACT_TOL)),
        Check("hessian_dual_cross", {"n": n},
              lambda: exact(volume(cross(n)), hessian_dual_exact(restricted([(zero(n), 0)], cross(n)), weight))),
    ]
    for index, seed in enumerate(_seeds(config)):
        inputs = {"n": n, "seed": seed}
        checks.append(Check("valuation_identity", inputs, partial(_pair_identity, n, seed, tol)))
        checks.append(Check("z2_matches_hessian_dual", inputs, partial(_dual_consistency, n, seed)))
        if index % 3 == 0:
            checks.append(Check("dual_valuation_identity", inputs, partial(_dual_identity, n, seed, tol)))
            checks.append(Check("origin_hull_identity", inputs, partial(_origin_hull_identity, n, seed, tol)))
    return checks


# --- invariance -------------------------------------------------------------

def _transformed(n: int, seed: int) -> Dict[str, ConvexFn]:
    rng = rng_for(seed)
    u = _function(n, seed)
    return {
        "linear": compose_linear(u, random_unimodular(n, seed)),
        "translate": translate_fn(u, _random_point(n, rng, -1, 1)),
    }


def _z0_invariance(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    spec = full_spec(n)
    values = [z0(v, spec.zeta0) for v in _transformed(n, seed).values()]
    return exact([z0(u, spec.zeta0)] * len(values), values)


def _z2_invariance(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    weight = full_spec(n).zeta2
    values = [z2_exact(v, weight) for v in _transformed(n, seed).values()]
    return exact([z2_exact(u, weight)] * len(values), values)


def _z1_invariance(n: int, seed: int, tol: float) -> Outcome:
    u = _function(n, seed)
    zeta = exp_decay(1)
    reference = z1(u, zeta).value
    worst = max(abs(z1(v, zeta).value - reference) for v in _transformed(n, seed).values())
    gap = worst / max(1.0, abs(reference))
    return Outcome(reference, reference + worst, gap, gap <= tol)


def _dual_min_invariance(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    w = _conjugate(u)
    zeta = exp_decay(1, ZetaRole.ZETA0)
    moved = compose_linear(w, random_unimodular(n, seed))
    return exact(dual_min_val(w, zeta), dual_min_val(moved, zeta))


def _hessian_dual_invariance(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    w = _conjugate(u)
    weight = full_spec(n).zeta2
    moved = compose_linear(w, random_unimodular(n, seed))
    return exact(hessian_dual_exact(w, weight), hessian_dual_exact(moved, weight))


def _origin_hull_sl(n: int, seed: int, tol: float) -> Outcome:
    u = _function(n, seed)
    zeta = exp_decay(1)
    expected = origin_hull_volume(u, zeta).value
    got = origin_hull_volume(compose_linear(u, random_unimodular(n, seed)), zeta).value
    return within(expected, got, tol)


def _origin_hull_translation(n: int, tol: float) -> Outcome:
    """A translated cone with a negative shift changes the origin-hull volume"""
    zeta = exp_decay(1)
    u = cone(cube(n), -1)
    expected = origin_hull_volume(u, zeta).value
    got = origin_hull_volume(translate_fn(u, scale_point(unit(n, 0), 2)), zeta).value
    gap = abs(got - expected) / max(1.0, abs(expected))
    return Outcome(expected, got, gap, gap > tol)


def invariance_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    tol = config.tol or settings.identity_tol
    checks = [Check("origin_hull_not_translation_invariant", {"n": n},
                    partial(_origin_hull_translation, n, tol))]
    for seed in _seeds(config):
        inputs = {"n": n, "seed": seed}
        checks += [
            Check("z0_invariance", inputs, partial(_z0_invariance, n, seed)),
            Check("z2_invariance", inputs, partial(_z2_invariance, n, seed)),
            Check("z1_invariance", inputs, partial(_z1_invariance, n, seed, tol)),
            Check("dual_min_val_invariance", inputs, partial(_dual_min_invariance, n, seed)),
            Check("hessian_dual_invariance", inputs, partial(_hessian_dual_invariance, n, seed)),
            Check("origin_hull_sl_invariance", inputs, partial(_origin_hull_sl, n, seed, tol)),
        ]
    return checks


# --- homogeneity ------------------------------------------------------------

def _slope(values: Sequence[float]) -> float:
    logs = np.log([float(lam) for lam in SCALES])
    return float(np.polyfit(logs, np.log(np.abs(values)), 1)[0])


def _degree(expected: int, values: Sequence[float], tol: float) -> Outcome:
    return within(float(expected), _slope(values), tol, relative=False)


def _cutoff_above(u: ConvexFn, n: int) -> ZetaSpec:
    """Cutoff weight positive at every vertex height of u"""
    top = max(height for _, height in epigraph_vertices(as_pacf(u)))
    return poly_cutoff(math.floor(top) + 2, n + 1, ZetaRole.ZETA2)


def _z0_degree(n: int, seed: int, tol: float) -> Outcome:
    u = _function(n, seed)
    zeta = exp_decay(1, ZetaRole.ZETA0)
    return _degree(0, [z0(scale_hom(u, lam), zeta) for lam in SCALES], tol)


def _z1_degree(n: int, seed: int, tol: float) -> Outcome:
    u = _function(n, seed)
    zeta = exp_decay(1)
    return _degree(n, [z1(scale_hom(u, lam), zeta).value for lam in SCALES], tol)


def _z2_degree(n: int, seed: int, tol: float) -> Outcome:
    u = _function(n, seed)
    weight = _cutoff_above(u, n)
    base = z2_exact(u, weight)
    scaled = [z2_exact(scale_hom(u, lam), weight) for lam in SCALES]
    outcome = _degree(-n, [float(v) for v in scaled], tol)
    outcome.passed &= all(v == base / lam ** n for v, lam in zip(scaled, SCALES))
    return outcome


def _hessian_dual_degree(n: int, seed: int) -> Outcome:
    u = _function(n, seed)
    w = _conjugate(u)
    weight = _cutoff_above(u, n)
    base = hessian_dual_exact(w, weight)
    return exact([base * lam ** n for lam in SCALES],
                 [hessian_dual_exact(scale_hom(w, lam), weight) for lam in SCALES])


def _dual_z1_degree(n: int, seed: int, tol: float) -> Outcome:
    w = _conjugate(_function(n, seed))
    Z = Valuation(layer_spec(n), dual=True)
    return _degree(-n, [Z(scale_hom(w, lam)) for lam in SCALES], tol)


def homogeneity_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    tol = config.tol or settings.slope_tol
    checks = []
    for seed in _seeds(config):
        inputs = {"n": n, "seed": seed, "scales": SCALES}
        checks += [
            Check("z0_degree_0", inputs, partial(_z0_degree, n, seed, tol)),
            Check("z1_degree_n", inputs, partial(_z1_degree, n, seed, tol)),
            Check("z2_degree_minus_n", inputs, partial(_z2_degree, n, seed, tol)),
            Check("hessian_dual_degree_n", inputs, partial(_hessian_dual_degree, n, seed)),
            Check("dual_z1_degree_minus_n", inputs, partial(_dual_z1_degree, n, seed, tol)),
        ]
    return checks


# --- growth -----------------------------------------------------------------

def _growth_bodies(n: int) -> Dict[str, Polytope]:
    bodies = {"cube": cube(n), "cross": cross(n)}
    if n >= 2:
        bodies["t_delta"] = t_delta(n, Fraction(1, 4))
    return bodies


@lru_cache(maxsize=64)
def _growth_sample(K: Polytope, t: Fraction) -> GrowthSample:
    return growth_extract(full_spec(K.n), K, t, GROWTH_LAMBDAS)


def _growth_component(K: Polytope, t: Fraction, component: str, tol: float) -> Outcome:
    spec = full_spec(K.n)
    sample = _growth_sample(K, t)
    t_f = float(t)
    expected = {
        "psi0": zeta_eval(spec.zeta0, t_f),
        "psi1": psi1_by_quadrature(spec.zeta1, K.n, t_f),
        "psi2": zeta_eval(spec.zeta2, t_f),
    }[component]
    return within(expected, getattr(sample, component), tol)


def _growth_residual(K: Polytope, t: Fraction, tol: float) -> Outcome:
    sample = _growth_sample(K, t)
    return Outcome(0.0, sample.residual, sample.residual, sample.residual <= tol)


def _growth_vanishing(K: Polytope, t: Fraction, tol: float) -> Outcome:
    sample = _growth_sample(K, t)
    return Outcome(0.0, sample.psi2, abs(sample.psi2), abs(sample.psi2) <= tol)


def _growth_difference(K: Polytope, t: Fraction, tol: float) -> Outcome:
    measured, expected = growth_difference(full_spec(K.n), K, t, 2)
    return within(expected, measured, tol)


def _ill_conditioned(n: int) -> Outcome:
    lambdas = (Fraction(1), Fraction(1000001, 1000000), Fraction(1000002, 1000000))
    try:
        growth_extract(full_spec(n), cube(n), 0, lambdas)
    except IllConditioned as e:
        return Outcome("IllConditioned", type(e).__name__, None, True)
    return Outcome("IllConditioned", "solved", None, False)


def growth_checks(config: SuiteConfig) -> List[Check]:
    n = config.n
    tol = config.tol or settings.growth_tol
    vanishing_from = bump(0, 1, 1).center + bump(0, 1, 1).width
    checks = [Check("growth_ill_conditioned", {"n": n}, partial(_ill_conditioned, n))]
    for name, K in _growth_bodies(n).items():
        for t in GROWTH_T:
            inputs = {"body": name, "n": n, "t": t, "lambdas": GROWTH_LAMBDAS}
            for component in ("psi0", "psi1", "psi2"):
                checks.append(Check(f"growth_{component}", inputs, partial(_growth_component, K, t, component, tol)))
            checks.append(Check("growth_residual", inputs, partial(_growth_residual, K, t, tol)))
            if t >= vanishing_from:
                checks.append(Check("growth_psi2_vanishes", inputs, partial(_growth_vanishing, K, t, tol)))
        checks.append(Check("growth_difference", {"body": name, "n": n, "t": "1/2", "lam": 2},
                            partial(_growth_difference, K, Fraction(1, 2), tol)))
    return checks


# --- moment -----------------------------------------------------------------

def _moment_presets(n: int) -> Dict[str, ZetaSpec]:
    return {"exp": exp_decay(1), "poly": poly_cutoff(2, n + 1)}


def _top_derivative(zeta: ZetaSpec, n: int, t: float, tol: float) -> Outcome:
    recovered = (-1) ** n * psi1(zeta, n, t, n) / math.factorial(n)
    return within(zeta_eval(zeta, t), recovered, tol)


def _derivative_chain(zeta: ZetaSpec, n: int, k: int, t: float) -> Outcome:
    """psi_1^(k) against a central difference of psi_1^(k-1)"""
    h = DIFFERENCE_STEP
    difference = (psi1(zeta, n, t + h, k - 1) - psi1(zeta, n, t - h, k - 1)) / (2 * h)
    return within(difference, psi1(zeta, n, t, k), 1e-5)


def _reconstruction(zeta: ZetaSpec, n: int, t: float) -> Outcome:
    target = zeta_eval(zeta, t)
    errors = [abs(moment_reconstruction(zeta, n, t, R) - target) for R in RECONSTRUCTION_R]
    floor = 10 * settings.psi_quad_tol
    passed = all(b <= a / 2 or b <= floor for a, b in zip(errors, errors[1:]))
    return Outcome(target, errors[-1], errors[-1], passed)


def _decay(zeta: ZetaSpec, n: int) -> Outcome:
    values = [psi1(zeta, n, t) for t in DECAY_T]
    return Outcome(0.0, values[-1], abs(values[-1]), nonincreasing(values) and abs(values[-1]) <= DECAY_LIMIT)


def _psi1_quadrature(zeta: ZetaSpec, n: int, t: float) -> Outcome:
    return within(psi1(zeta, n, t), psi1_by_quadrature(zeta, n, t), 1e-8)


def moment_checks(config: SuiteConfig) -> List[Check]:
    tol = config.tol or EXACT_TOL
    checks = []
    for n in (1, 2, 3):
        for name, zeta in _moment_presets(n).items():
            inputs = {"n": n, "zeta": name}
            for t in MOMENT_T:
                checks.append(Check("moment_top_derivative", {**inputs, "t": t},
                                    partial(_top_derivative, zeta, n, t, tol)))
                checks.append(Check("psi1_by_quadrature", {**inputs, "t": t}, partial(_psi1_quadrature, zeta, n, t)))
            for t in DERIVATIVE_T:
                for k in range(1, n + 1):
                    checks.append(Check("psi1_derivative", {**inputs, "t": t, "k": k},
                                        partial(_derivative_chain, zeta, n, k, t)))
            checks.append(Check("moment_reconstruction", {**inputs, "t": 0.5}, partial(_reconstruction, zeta, n, 0.5)))
            checks.append(Check("psi1_decay", inputs, partial(_decay, zeta, n)))
    return checks


# --- box-identity -----------------------------------------------------------

def _box(n: int, lam: Fraction, delta: Fraction, t: Fraction, tol: float) -> Outcome:
    report = box_identity_check(n, lam, delta, t, exp_decay(1), tol)
    return Outcome(report.rhs, report.lhs, report.gap, report.passed)


def _box_value(n: int, lam: Fraction, delta: Fraction, expected: float) -> Outcome:
    report = box_identity_check(n, lam, delta, 0, exp_decay(1))
    return within(expected, report.lhs, 1e-6)


def box_identity_checks(config: SuiteConfig) -> List[Check]:
    tol = config.tol or settings.box_tol
    half = Fraction(1, 2)
    checks = [
        Check("box_value_square", {"n": 2, "lam": 1, "delta": "1/2", "t": 0},
              partial(_box_value, 2, Fraction(1), half, 4.0)),
        Check("box_value_segment", {"n": 1, "lam": "1/2", "delta": "1/2", "t": 0},
              partial(_box_value, 1, half, half, 1.5)),
        Check("box_value_segment_quarter", {"n": 1, "lam": 1, "delta": "1/4", "t": 0},
              partial(_box_value, 1, Fraction(1), Fraction(1, 4), 1.5)),
        Check("cnk_square", {"n": 2, "delta": "1/2"},
              lambda: exact([Fraction(1), Fraction(2), Fraction(1)], cnk_coefficients(2, half))),
        Check("cnk_segment", {"n": 1, "delta": "1/4"},
              lambda: exact([half, Fraction(1)], cnk_coefficients(1, Fraction(1, 4)))),
    ]
    for n in (1, 2):
        for lam in BOX_GRID["lam"]:
            for delta in BOX_GRID["delta"]:
                for t in BOX_GRID["t"]:
                    inputs = {"n": n, "lam": lam, "delta": delta, "t": t}
                    checks.append(Check("box_identity", inputs, partial(_box, n, lam, delta, t, tol)))
    return checks


# --- theorem-synthesis ------------------------------------------------------

def _synthesis(lam: Fraction, t: Fraction, tol: float) -> Outcome:
    report = synthesis_chain(full_spec(2), lam, t, tol=tol)
    return Outcome(report.steps[0], report.steps[-1], report.relative_gap, report.passed)


def _ball_gaps() -> Outcome:
    report = synthesis_chain(full_spec(2), 1, 0)
    gap = max(report.volume_gap, report.polar_volume_gap)
    return Outcome(math.pi, report.ball_value, gap, gap <= BALL_GAP_LIMIT)


def synthesis_checks(config: SuiteConfig) -> List[Check]:
    tol = config.tol or settings.synthesis_tol
    checks = [Check("ball_stand_in_volume", {"vertices": settings.ball_vertices}, _ball_gaps)]
    for lam in (Fraction(1), Fraction(2)):
        for t in (Fraction(0), Fraction(1)):
            checks.append(Check("synthesis_chain", {"lam": lam, "t": t}, partial(_synthesis, lam, t, tol)))
    return checks


SUITES: Dict[SuiteName, Callable[[SuiteConfig], List[Check]]] = {
    SuiteName.GEOMETRY: geometry_checks,
    SuiteName.CONJUGATION: conjugation_checks,
    SuiteName.REGDELTA: regdelta_checks,
    SuiteName.VALUATION_IDENTITY: valuation_identity_checks,
    SuiteName.INVARIANCE: invariance_checks,
    SuiteName.HOMOGENEITY: homogeneity_checks,
    SuiteName.GROWTH: growth_checks,
    SuiteName.MOMENT: moment_checks,
    SuiteName.BOX_IDENTITY: box_identity_checks,
    SuiteName.THEOREM_SYNTHESIS: synthesis_checks,
}


def build_checks(config: SuiteConfig) -> List[Check]:
    """Checks of the configured suite in run order"""
    checks = SUITES[config.suite](config)
    logger.debug(f"Suite {config.suite.value}: {len(checks)} checks")
    return checks
