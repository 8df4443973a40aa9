"""JSON (de)serialization for curves, monomial sets, point sets, GAPs,
hyperplanes, and tube queries.

Rationals travel as decimal-free "numerator/denominator" strings so files
round-trip exactly.  Curve files carry kind, dimension, coefficients and
domain; lifted curves serialize as their base curve plus the monomial list
and are rebuilt by lifting on load, which preserves exactness for both
polynomial and circle-arc bases.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from .curves import (CurveSpec, InvalidCurveError, circle_arc, graph_curve,
                     moment_curve, polynomial_curve)
from .hyperplanes import Hyperplane
from .lifting import MonomialSet, lift_curve
from .pointsets import FiniteSet, Gap
from .tube import (ExplicitSource, GapSource, InvalidQuery, LatticeSource,
                   TubeQuery, delta_from_rule)


def frac_str(x) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s) -> Fraction:
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if isinstance(s, float):
        raise ValueError("refusing to parse a float as an exact rational")
    return Fraction(str(s).strip())


# -- curves -----------------------------------------------------------------

def curve_to_dict(curve: CurveSpec) -> dict:
    lo, hi = curve.domain
    base = {"kind": curve.kind, "dimension": curve.dimension,
            "domain": [frac_str(lo), frac_str(hi)]}
    if curve.kind == "lifted":
        origin = getattr(curve, "lift_origin", None)
        if origin is None:
            base["kind"] = "polynomial-parametric"
        else:
            base_curve, mset = origin
            base["base"] = curve_to_dict(base_curve)
            base["monomials"] = monomials_to_list(mset)
            return base
    if curve.kind in ("moment", "circle-arc"):
        return base
    if curve.kind == "polynomial-graph":
        coeffs = [[frac_str(c) for c in fn.coeffs] for fn in curve.coords[1:]]
    else:
        coeffs = [[frac_str(c) for c in fn.coeffs] for fn in curve.coords]
    base["coefficients"] = coeffs
    return base


def curve_from_dict(data: dict) -> CurveSpec:
    kind = data.get("kind")
    domain = tuple(parse_frac(x) for x in data.get("domain", ["0", "1"]))
    smooth = data.get("smoothness_order")
    if kind == "moment":
        n = int(data["dimension"])
        c = moment_curve(n, smooth)
        return c if domain == (0, 1) else CurveSpec("moment", c.coords, domain, smooth)
    if kind == "circle-arc":
        return circle_arc(domain[0], domain[1], smooth)
    if kind == "lifted":
        base = curve_from_dict(data["base"])
        mset = monomials_from_list(data["monomials"])
        return lift_curve(base, mset)
    if kind == "polynomial-graph":
        coeffs = [[parse_frac(c) for c in row] for row in data["coefficients"]]
        return graph_curve(coeffs, domain, smooth)
    if kind == "polynomial-parametric":
        coeffs = [[parse_frac(c) for c in row] for row in data["coefficients"]]
        return polynomial_curve(coeffs, domain, smoothness_order=smooth)
    raise InvalidCurveError(f"unknown curve kind {kind!r}")


def load_curve(path) -> CurveSpec:
    return curve_from_dict(_load_structured(path))


def save_curve(curve: CurveSpec, path):
    Path(path).write_text(json.dumps(curve_to_dict(curve), indent=2) + "\n")


def _load_structured(path) -> dict:
    p = Path(path)
    text = p.read_text()
    if p.suffix.lower() == ".toml":
        try:
            import tomllib
        except ImportError as exc:  # Python < 3.11
            raise ValueError("TOML support needs Python >= 3.11; use JSON") from exc
        return tomllib.loads(text)
    return json.loads(text)


# -- monomial sets ----------------------------------------------------------

def monomials_to_list(mset: MonomialSet) -> list:
    return [[m.a, m.b] for m in mset]


def monomials_from_list(data) -> MonomialSet:
    return MonomialSet([(int(a), int(b)) for a, b in data])


def load_monomials(path) -> MonomialSet:
    data = _load_structured(path)
    if isinstance(data, dict):
        data = data["monomials"]
    return monomials_from_list(data)


# -- point sets and GAPs ----------------------------------------------------

def points_to_list(points) -> list:
    return [[frac_str(c) for c in p] for p in sorted(points)]


def points_from_list(data, dimension=None) -> FiniteSet:
    return FiniteSet([tuple(parse_frac(c) for c in row) for row in data],
                     dimension=dimension)


def gap_to_dict(g: Gap) -> dict:
    return {
        "base": [frac_str(c) for c in g.base],
        "generators": [[frac_str(c) for c in v] for v in g.generators],
        "lengths": list(g.lengths),
    }


def gap_from_dict(data: dict) -> Gap:
    return Gap(
        base=tuple(parse_frac(c) for c in data["base"]),
        generators=tuple(tuple(parse_frac(c) for c in v)
                         for v in data["generators"]),
        lengths=tuple(int(n) for n in data["lengths"]),
    )


# -- hyperplanes ------------------------------------------------------------

def hyperplane_to_list(h: Hyperplane) -> list:
    return [frac_str(h.a0)] + [frac_str(a) for a in h.normal]


def hyperplane_from_list(data) -> Hyperplane:
    vals = [parse_frac(x) for x in data]
    if len(vals) < 2:
        raise ValueError("hyperplane needs a0 plus at least one coefficient")
    return Hyperplane(vals[0], vals[1:])


# -- tube queries -----------------------------------------------------------

def delta_from_spec(data) -> Fraction:
    if isinstance(data, dict):
        return delta_from_rule(parse_frac(data.get("d", 1)),
                               int(data["N"]), int(data["n"]))
    return parse_frac(data)


def source_from_dict(data: dict):
    kind = data.get("type")
    if kind == "lattice":
        box = data.get("box")
        if box is None:
            raise InvalidQuery("lattice source needs a bounded box")
        box = tuple((parse_frac(a), parse_frac(b)) for a, b in box)
        return LatticeSource(int(data["N"]), box)
    if kind == "points":
        return ExplicitSource(points_from_list(data["points"]))
    if kind == "gap":
        return GapSource(gap_from_dict(data))
    raise InvalidQuery(f"unknown source type {kind!r}")


def query_from_dict(data: dict, base_dir=None) -> TubeQuery:
    curve_field = data["curve"]
    if isinstance(curve_field, str):
        path = Path(curve_field)
        if base_dir is not None and not path.is_absolute():
            path = Path(base_dir) / path
        curve = load_curve(path)
    else:
        curve = curve_from_dict(curve_field)
    return TubeQuery(curve=curve,
                     delta=delta_from_spec(data["delta"]),
                     source=source_from_dict(data["source"]))


def load_query(path) -> TubeQuery:
    return query_from_dict(_load_structured(path), base_dir=Path(path).parent)
