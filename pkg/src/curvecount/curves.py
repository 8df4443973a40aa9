"""Parameterized curves with exact derivative jets, Wronskians, and
non-degeneracy certification.

Two coordinate-function representations cover every supported curve kind:

* ``PolyCoord`` -- a rational polynomial in the parameter t.  Jets of every
  order are exact.
* ``TrigCoord`` -- a polynomial in (u, v) = (cos 2πt, sin 2πt) with rational
  coefficients and an explicit power of 2π in front.  Differentiation maps
  u -> -2πv, v -> 2πu, so each derivative stays in the same class with the
  2π power bumped by one; only the final evaluation is floating point.
  Terms are kept reduced modulo cos² = 1 - sin² (u-exponent 0 or 1), which
  turns function identities like u² + v² = 1 into exact dictionary algebra.

The Wronskian W(γ₁',…,γₙ') -- the n×n determinant whose i-th row is the i-th
derivative vector -- is computed once symbolically over the exact coefficient
ring and then evaluated, never as a numeric determinant of jet samples; a
numeric determinant would amplify roundoff catastrophically for degenerate
lifts whose true Wronskian is identically zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import polys
from .polys import Poly

TAU = math.tau  # 2π

DEFAULT_SMOOTHNESS = 16

POLYNOMIAL_KINDS = ("moment", "polynomial-parametric", "polynomial-graph")
CURVE_KINDS = POLYNOMIAL_KINDS + ("circle-arc", "lifted")


class CurveError(ValueError):
    pass


class DomainError(CurveError):
    """Parameter outside the curve's domain."""


class SmoothnessError(CurveError):
    """Requested derivative order exceeds smoothness_order."""


class InvalidCurveError(CurveError):
    """Ill-formed curve construction."""


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("exact rational expected, got float")
    return Fraction(x)


# ---------------------------------------------------------------------------
# Coordinate functions
# ---------------------------------------------------------------------------

class PolyCoord:
    """One curve coordinate as an exact polynomial in t."""

    __slots__ = ("coeffs",)
    exact = True

    def __init__(self, coeffs):
        self.coeffs: Poly = coeffs if isinstance(coeffs, tuple) else polys.poly(coeffs)

    def derivative(self) -> "PolyCoord":
        return PolyCoord(polys.derivative(self.coeffs))

    def eval(self, t):
        if isinstance(t, float):
            return polys.eval_float(self.coeffs, t)
        return polys.eval_exact(self.coeffs, t)

    def eval_float(self, t: float) -> float:
        return polys.eval_float(self.coeffs, t)

    def sup_abs(self, lo, hi) -> float:
        return polys.sup_bound(self.coeffs, lo, hi)

    def error_estimate(self, lo, hi) -> float:
        # float Horner on rational coefficients: a few ulps of the sup bound
        return 4.0 * len(self.coeffs) * 2.3e-16 * self.sup_abs(lo, hi)

    def is_zero(self) -> bool:
        return polys.is_zero(self.coeffs)

    def __eq__(self, other):
        return isinstance(other, PolyCoord) and self.coeffs == other.coeffs

    def __repr__(self):
        return f"PolyCoord({self.coeffs!r})"


def _reduce_trig(terms: dict) -> dict:
    """Rewrite u^a v^b with a ≥ 2 via u² = 1 - v²; drop zero coefficients."""
    out: dict = {}
    stack = list(terms.items())
    while stack:
        (a, b), c = stack.pop()
        if c == 0:
            continue
        if a >= 2:
            stack.append(((a - 2, b), c))
            stack.append(((a - 2, b + 2), -c))
        else:
            key = (a, b)
            acc = out.get(key, 0) + c
            if acc:
                out[key] = acc
            else:
                out.pop(key, None)
    return out


class TrigCoord:
    """One curve coordinate as (2π)^k times a reduced polynomial in
    (cos 2πt, sin 2πt)."""

    __slots__ = ("terms", "tau_power")
    exact = False

    def __init__(self, terms: dict, tau_power: int = 0):
        self.terms = _reduce_trig({k: _as_fraction(v) for k, v in terms.items()})
        self.tau_power = tau_power

    def derivative(self) -> "TrigCoord":
        out: dict = {}
        for (a, b), c in self.terms.items():
            if a:
                key = (a - 1, b + 1)
                out[key] = out.get(key, 0) - a * c
            if b:
                key = (a + 1, b - 1)
                out[key] = out.get(key, 0) + b * c
        return TrigCoord(out, self.tau_power + 1)

    def eval(self, t) -> float:
        return self.eval_float(float(t))

    def eval_float(self, t: float) -> float:
        u = math.cos(TAU * t)
        v = math.sin(TAU * t)
        acc = 0.0
        for (a, b), c in sorted(self.terms.items()):
            term = float(c)
            if a:
                term *= u
            if b:
                term *= v ** b
            acc += term
        return acc * TAU ** self.tau_power

    def sup_abs(self, lo, hi) -> float:
        total = sum(abs(float(c)) for c in self.terms.values())
        return total * TAU ** self.tau_power

    def error_estimate(self, lo, hi) -> float:
        return 4.0 * (len(self.terms) + 2) * 2.3e-16 * self.sup_abs(lo, hi)

    def is_zero(self) -> bool:
        return not self.terms

    def mul(self, other: "TrigCoord") -> "TrigCoord":
        out: dict = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                out[key] = out.get(key, 0) + c1 * c2
        return TrigCoord(out, self.tau_power + other.tau_power)

    def add(self, other: "TrigCoord") -> "TrigCoord":
        if self.tau_power != other.tau_power and self.terms and other.terms:
            raise ValueError("cannot add trig coordinates of different 2π powers")
        tau = self.tau_power if self.terms else other.tau_power
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return TrigCoord(out, tau)

    def scaled(self, k) -> "TrigCoord":
        k = _as_fraction(k)
        return TrigCoord({key: c * k for key, c in self.terms.items()}, self.tau_power)

    def __eq__(self, other):
        return (isinstance(other, TrigCoord) and self.terms == other.terms
                and (self.tau_power == other.tau_power or not self.terms))

    def __repr__(self):
        return f"TrigCoord({self.terms!r}, tau_power={self.tau_power})"


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------

class CurveSpec:
    """A parameterized curve in R^n with derivative jets up to
    smoothness_order.

    Immutable after construction; the derivative table and the symbolic
    Wronskian are cached lazily (pure functions of the curve).
    """

    def __init__(self, kind: str, coords, domain=(0, 1), smoothness_order=None):
        coords = tuple(coords)
        if kind not in CURVE_KINDS:
            raise InvalidCurveError(f"unknown curve kind {kind!r}")
        if len(coords) < 1:
            raise InvalidCurveError("curve needs at least one coordinate")
        if not (all(isinstance(c, PolyCoord) for c in coords)
                or all(isinstance(c, TrigCoord) for c in coords)):
            raise InvalidCurveError("coordinate representations must be homogeneous")
        lo, hi = (_as_fraction(domain[0]), _as_fraction(domain[1]))
        if not (0 <= lo < hi <= 1):
            raise InvalidCurveError("domain must satisfy 0 <= t_lo < t_hi <= 1")
        if smoothness_order is None:
            smoothness_order = max(len(coords), DEFAULT_SMOOTHNESS)
        if smoothness_order < len(coords):
            raise InvalidCurveError("smoothness_order must be >= dimension")
        self.kind = kind
        self.coords = coords
        self.domain = (lo, hi)
        self.smoothness_order = int(smoothness_order)
        self._deriv_table = [list(coords)]
        self._wronskian_sym = None

    @property
    def dimension(self) -> int:
        return len(self.coords)

    @property
    def is_exact(self) -> bool:
        return all(c.exact for c in self.coords)

    @property
    def is_graph_form(self) -> bool:
        c0 = self.coords[0]
        return isinstance(c0, PolyCoord) and c0.coeffs == (Fraction(0), Fraction(1))

    def derivatives(self, order: int):
        """Rows 0..order of coordinate derivative functions (row k is γ^(k))."""
        if order > self.smoothness_order:
            raise SmoothnessError(
                f"order {order} exceeds smoothness_order {self.smoothness_order}")
        while len(self._deriv_table) <= order:
            self._deriv_table.append([c.derivative() for c in self._deriv_table[-1]])
        return self._deriv_table[: order + 1]

    def contains_parameter(self, t) -> bool:
        lo, hi = self.domain
        if isinstance(t, float):
            return float(lo) - 1e-12 <= t <= float(hi) + 1e-12
        return lo <= Fraction(t) <= hi

    def __repr__(self):
        return (f"CurveSpec(kind={self.kind!r}, n={self.dimension}, "
                f"domain=({self.domain[0]}, {self.domain[1]}))")


@dataclass(frozen=True)
class Jet:
    """Point and derivative rows γ^(1)..γ^(k) of a curve at one parameter."""
    point: tuple
    derivatives: tuple
    arithmetic_mode: str  # 'exact' or 'floating'
    error_estimate: float = 0.0


@dataclass(frozen=True)
class NondegeneracyCertificate:
    min_sampled_wronskian: float
    claimed_lower_bound: float
    grid_resolution: int
    margin_estimate: float
    status: str  # 'certified' | 'sampled-only' | 'failed'
    exact: bool = False


# -- constructors -----------------------------------------------------------

def moment_curve(n: int, smoothness_order=None) -> CurveSpec:
    """The moment curve (t, t², …, tⁿ) on [0, 1]."""
    if n < 2:
        raise InvalidCurveError("moment curve needs dimension n >= 2")
    coords = [PolyCoord((Fraction(0),) * j + (Fraction(1),)) for j in range(1, n + 1)]
    return CurveSpec("moment", coords, (0, 1), smoothness_order)


def polynomial_curve(coeff_lists, domain=(0, 1), kind="polynomial-parametric",
                     smoothness_order=None) -> CurveSpec:
    """Parametric polynomial curve from per-coordinate coefficient lists."""
    coords = [PolyCoord(polys.poly(cs)) for cs in coeff_lists]
    return CurveSpec(kind, coords, domain, smoothness_order)


def graph_curve(f_coeff_lists, domain=(0, 1), smoothness_order=None) -> CurveSpec:
    """Graph-form curve (t, f₂(t), …, fₙ(t)) from the coefficients of the fᵢ."""
    coords = [PolyCoord((Fraction(0), Fraction(1)))]
    coords += [PolyCoord(polys.poly(cs)) for cs in f_coeff_lists]
    return CurveSpec("polynomial-graph", coords, domain, smoothness_order)


def parabola(domain=(0, 1), smoothness_order=None) -> CurveSpec:
    """The model planar curve (t, t²)."""
    return graph_curve([[0, 0, 1]], domain, smoothness_order)


def circle_arc(t_lo=0, t_hi=1, smoothness_order=None) -> CurveSpec:
    """The arc t ↦ (cos 2πt, sin 2πt) for t in [t_lo, t_hi] ⊆ [0, 1]."""
    coords = [TrigCoord({(1, 0): 1}), TrigCoord({(0, 1): 1})]
    return CurveSpec("circle-arc", coords, (t_lo, t_hi), smoothness_order)


def line_segment(p, q) -> CurveSpec:
    """The segment from p to q parameterized over [0, 1]."""
    p = [_as_fraction(x) for x in p]
    q = [_as_fraction(x) for x in q]
    if len(p) != len(q):
        raise InvalidCurveError("endpoint dimensions differ")
    coords = [PolyCoord((a, b - a)) for a, b in zip(p, q)]
    return CurveSpec("polynomial-parametric", coords)


# -- jets and Wronskians ----------------------------------------------------

def eval_jet(curve: CurveSpec, t, order: int) -> Jet:
    """γ(t) together with derivative rows γ^(1)(t)…γ^(order)(t).

    Exact rational arithmetic whenever the curve is polynomial and t is
    rational; floating otherwise, with a roundoff magnitude estimate.
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    if order > curve.smoothness_order:
        raise SmoothnessError(
            f"order {order} exceeds smoothness_order {curve.smoothness_order}")
    if not curve.contains_parameter(t):
        raise DomainError(f"parameter {t} outside domain {curve.domain}")
    exact = curve.is_exact and not isinstance(t, float)
    table = curve.derivatives(order)
    tv = _as_fraction(t) if exact else float(t)
    rows = [tuple(fn.eval(tv) for fn in row) for row in table]
    err = 0.0
    if not exact:
        lo, hi = curve.domain
        err = max(fn.error_estimate(lo, hi) for row in table for fn in row)
    return Jet(point=rows[0], derivatives=tuple(rows[1:]),
               arithmetic_mode="exact" if exact else "floating",
               error_estimate=err)


def wronskian_symbolic(curve: CurveSpec):
    """The Wronskian W(γ₁',…,γₙ') as an exact coordinate function of t.

    Rows are the derivative vectors γ^(1)…γ^(n); the determinant is expanded
    symbolically over the exact coefficient ring (polynomials in t, or
    reduced trig polynomials with the common 2π power factored out).
    """
    if curve._wronskian_sym is not None:
        return curve._wronskian_sym
    n = curve.dimension
    if curve.smoothness_order < n:
        raise SmoothnessError("Wronskian needs smoothness_order >= dimension")
    table = curve.derivatives(n)
    rows = table[1:]
    if curve.is_exact:
        mat = [[fn.coeffs for fn in row] for row in rows]
        result = PolyCoord(polys.det_poly(mat))
    else:
        # entry (row k, column j) carries (2π)^(base_j + k), so every
        # permutation product carries the same total power: factor it out
        tau_total = sum(rows[i][i].tau_power for i in range(n))
        mat = [[fn.terms for fn in row] for row in rows]

        def tadd(x, y):
            out = dict(x)
            for k, c in y.items():
                acc = out.get(k, 0) + c
                if acc:
                    out[k] = acc
                else:
                    out.pop(k, None)
            return out

        def tmul(x, y):
            out: dict = {}
            for (a1, b1), c1 in x.items():
                for (a2, b2), c2 in y.items():
                    key = (a1 + a2, b1 + b2)
                    out[key] = out.get(key, 0) + c1 * c2
            return _reduce_trig(out)

        def tneg(x):
            return {k: -c for k, c in x.items()}

        det = polys.det_ring(mat, {}, tadd, tmul, tneg)
        result = TrigCoord(det, tau_total)
    curve._wronskian_sym = result
    return result


def wronskian(curve: CurveSpec, t):
    """W(Γ)(t); exact Fraction for polynomial curves at rational t."""
    if not curve.contains_parameter(t):
        raise DomainError(f"parameter {t} outside domain {curve.domain}")
    w = wronskian_symbolic(curve)
    if curve.is_exact and not isinstance(t, float):
        return w.eval(_as_fraction(t))
    return w.eval(float(t))


def certify_nondegenerate(curve: CurveSpec, c0, grid: int) -> NondegeneracyCertificate:
    """Sample |W| on grid+1 equispaced parameters and certify W > c0 if the
    sampled minimum clears the finite-difference margin.

    For exact polynomial curves with c0 = 0 the check is upgraded to exact
    sign constancy via root isolation of the Wronskian polynomial, in which
    case the certificate margin is exact.
    """
    if grid < 2:
        raise ValueError("grid must be >= 2")
    c0f = _as_fraction(c0) if not isinstance(c0, float) else c0
    if c0f < 0:
        raise ValueError("c0 must be >= 0")
    lo, hi = curve.domain
    w = wronskian_symbolic(curve)
    exact_vals = curve.is_exact
    ts = [lo + (hi - lo) * Fraction(i, grid) for i in range(grid + 1)]
    vals = [w.eval(t) if exact_vals else w.eval(float(t)) for t in ts]
    abs_vals = [abs(v) for v in vals]
    min_s = min(abs_vals)
    margin = max((abs(b - a) for a, b in zip(vals, vals[1:])), default=0)

    def cert(status, exact=False):
        return NondegeneracyCertificate(
            min_sampled_wronskian=float(min_s),
            claimed_lower_bound=float(c0f),
            grid_resolution=grid,
            margin_estimate=0.0 if exact else float(margin),
            status=status,
            exact=exact,
        )

    if any(v <= c0f for v in abs_vals):
        return cert("failed")
    if exact_vals and c0f == 0:
        wp = w.coeffs
        if polys.is_zero(wp):
            return cert("failed")
        if polys.count_roots_closed(wp, lo, hi) == 0:
            return cert("certified", exact=True)
        return cert("failed")
    if min_s - margin > c0f:
        return cert("certified")
    return cert("sampled-only")


# -- transforms and bounds --------------------------------------------------

def translate_curve(curve: CurveSpec, vector) -> CurveSpec:
    """Translate the curve by an exact rational vector."""
    vec = [_as_fraction(x) for x in vector]
    if len(vec) != curve.dimension:
        raise InvalidCurveError("translation dimension mismatch")
    out = []
    for fn, c in zip(curve.coords, vec):
        if isinstance(fn, PolyCoord):
            out.append(PolyCoord(polys.add(fn.coeffs, polys.poly([c]))))
        else:
            out.append(fn.add(TrigCoord({(0, 0): c}, fn.tau_power)))
    kind = curve.kind if not curve.is_exact else "polynomial-parametric"
    return CurveSpec(kind, out, curve.domain, curve.smoothness_order)


def scale_coordinate(curve: CurveSpec, index: int, factor) -> CurveSpec:
    """Scale one coordinate by an exact rational factor."""
    f = _as_fraction(factor)
    out = list(curve.coords)
    fn = out[index]
    if isinstance(fn, PolyCoord):
        out[index] = PolyCoord(polys.scale(fn.coeffs, f))
    else:
        out[index] = fn.scaled(f)
    kind = curve.kind if not curve.is_exact else "polynomial-parametric"
    return CurveSpec(kind, out, curve.domain, curve.smoothness_order)


def affine_transform(curve: CurveSpec, matrix, shift) -> CurveSpec:
    """Apply x ↦ Mx + b with exact rational M, b (polynomial curves)."""
    if not curve.is_exact:
        raise InvalidCurveError("affine transform supported for polynomial curves")
    n = curve.dimension
    rows = [[_as_fraction(x) for x in r] for r in matrix]
    b = [_as_fraction(x) for x in shift]
    if len(rows) != n or any(len(r) != n for r in rows) or len(b) != n:
        raise InvalidCurveError("affine transform shape mismatch")
    out = []
    for i in range(n):
        acc = polys.poly([b[i]])
        for j in range(n):
            if rows[i][j]:
                acc = polys.add(acc, polys.scale(curve.coords[j].coeffs, rows[i][j]))
        out.append(PolyCoord(acc))
    return CurveSpec("polynomial-parametric", out, curve.domain,
                     curve.smoothness_order)


def derivative_sup_bound(curve: CurveSpec, order: int) -> float:
    """Upper bound for sup |γ^(order)(t)| over the domain (Euclidean norm)."""
    lo, hi = curve.domain
    row = curve.derivatives(order)[order]
    return math.sqrt(sum(fn.sup_abs(lo, hi) ** 2 for fn in row))


def point_fn(curve: CurveSpec):
    """Fast scalar evaluator t ↦ γ(t) in floats."""
    return _row_fn(curve.derivatives(0)[0])


def velocity_fn(curve: CurveSpec):
    """Fast scalar evaluator t ↦ γ'(t) in floats."""
    return _row_fn(curve.derivatives(1)[1])


def _row_fn(row):
    if all(isinstance(fn, PolyCoord) for fn in row):
        coeff_rows = [[float(c) for c in reversed(fn.coeffs)] or [0.0] for fn in row]

        def evaluate(t: float) -> tuple:
            out = []
            for cs in coeff_rows:
                acc = 0.0
                for c in cs:
                    acc = acc * t + c
                out.append(acc)
            return tuple(out)

        return evaluate

    term_rows = [(sorted((a, b, float(c)) for (a, b), c in fn.terms.items()),
                  TAU ** fn.tau_power) for fn in row]

    def evaluate(t: float) -> tuple:
        u = math.cos(TAU * t)
        v = math.sin(TAU * t)
        out = []
        for terms, tau_factor in term_rows:
            acc = 0.0
            for a, b, c in terms:
                term = c
                if a:
                    term *= u
                if b:
                    term *= v ** b
                acc += term
            out.append(acc * tau_factor)
        return tuple(out)

    return evaluate


def eval_array(curve: CurveSpec, ts: np.ndarray, order: int = 0) -> np.ndarray:
    """Vectorized evaluation of γ^(order) at a parameter array; shape (len, n)."""
    ts = np.asarray(ts, dtype=float)
    row = curve.derivatives(order)[order]
    cols = []
    if all(isinstance(fn, PolyCoord) for fn in row):
        for fn in row:
            acc = np.zeros_like(ts)
            for c in reversed(fn.coeffs):
                acc = acc * ts + float(c)
            cols.append(acc)
    else:
        u = np.cos(TAU * ts)
        v = np.sin(TAU * ts)
        for fn in row:
            acc = np.zeros_like(ts)
            for (a, b), c in sorted(fn.terms.items()):
                term = np.full_like(ts, float(c))
                if a:
                    term = term * u
                if b:
                    term = term * v ** b
                acc = acc + term
            cols.append(acc * TAU ** fn.tau_power)
    return np.stack(cols, axis=-1)
