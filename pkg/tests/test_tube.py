"""Tube counting: exact on-curve enumeration, the production counter, the
brute-force oracle, and their agreement."""

from fractions import Fraction as F

import pytest

from curvecount import (CapExceeded, ExplicitSource, FiniteSet, Gap,
                        GapSource, InvalidQuery, LatticeSource, TubeQuery,
                        brute_force_tube_oracle, circle_arc,
                        count_in_tube, count_on_curve_lattice, delta_from_rule,
                        graph_curve, line_segment, parabola, polynomial_curve)
from curvecount.curves import translate_curve
from curvecount.tube import materialize_source


def test_delta_rule():
    assert delta_from_rule(1, 4, 2) == F(1, 16)
    assert delta_from_rule(F(3, 2), 2, 3) == F(3, 16)


def test_on_curve_lattice_parabola():
    pts = count_on_curve_lattice(parabola(), 4)
    assert sorted(pts) == [(0, 0), (F(1, 2), F(1, 4)), (1, 1)]


def test_on_curve_lattice_square_N():
    for m in range(2, 12):
        pts = count_on_curve_lattice(parabola(), m * m)
        assert len(pts) == m + 1
        assert sorted(p[0] for p in pts) == [F(j, m) for j in range(m + 1)]


def test_on_curve_lattice_offset_graph():
    curve = graph_curve([[F(1, 3), 0, 1]])  # y = x^2 + 1/3
    pts = count_on_curve_lattice(curve, 3)
    assert sorted(p[0] for p in pts) == [0, 1]


def test_on_curve_lattice_needs_graph():
    with pytest.raises(InvalidQuery):
        count_on_curve_lattice(circle_arc(), 4)


def test_segment_distance_decision():
    seg = line_segment((0, 0), (1, 0))
    src = ExplicitSource(FiniteSet([(F(1, 2), F(1, 20)), (F(1, 2), F(1, 5))]))
    q = TubeQuery(seg, F(1, 10), src)
    for counter in (count_in_tube, brute_force_tube_oracle):
        res = counter(q)
        assert res.count == 1 and res.certified
        assert res.points == ((F(1, 2), F(1, 20)),)


def test_huge_delta_counts_everything():
    q = TubeQuery(parabola(), F(100), LatticeSource(4, ((0, 1), (0, 1))))
    assert count_in_tube(q).count == 25
    assert brute_force_tube_oracle(q).count == 25


def test_on_curve_points_always_inside():
    pb = parabola()
    for N in (4, 9, 16):
        on_curve = set(count_on_curve_lattice(pb, N))
        for d in (F(1, N * N), F(1, N ** 3)):
            res = count_in_tube(TubeQuery(pb, d, LatticeSource(N, ((0, 1), (0, 1)))))
            assert on_curve <= set(res.points)


def test_monotone_in_delta():
    pb = parabola()
    src = LatticeSource(16, ((0, 1), (0, 1)))
    counts = [count_in_tube(TubeQuery(pb, d, src)).count
              for d in (F(1, 512), F(1, 256), F(1, 64), F(1, 16), F(1, 4))]
    assert counts == sorted(counts)


def test_translation_equivariance():
    pb = parabola()
    shift = (F(3, 7), F(-2, 5))
    src_pts = FiniteSet([(F(i, 8), F(j, 8)) for i in range(9) for j in range(9)])
    q1 = TubeQuery(pb, F(1, 64), ExplicitSource(src_pts))
    q2 = TubeQuery(translate_curve(pb, shift), F(1, 64),
                   ExplicitSource(src_pts.translate(shift)))
    r1 = count_in_tube(q1)
    r2 = count_in_tube(q2)
    assert r1.count == r2.count
    moved = {tuple(F(a) + F(b) for a, b in zip(p, shift)) for p in r1.points}
    assert moved == set(r2.points)


def test_gap_source():
    gap = Gap((0, 0), [(F(1, 8), 0), (0, F(1, 8))], [9, 9])
    q = TubeQuery(parabola(), F(1, 64), GapSource(gap))
    r = count_in_tube(q)
    rb = brute_force_tube_oracle(q)
    assert r.count == rb.count and r.count > 0


def test_oracle_equivalence_small_grid():
    cubic = polynomial_curve([[0, 1], [0, 0, 0, 1]])
    for curve, box in ((parabola(), ((0, 1), (0, 1))),
                       (cubic, ((0, 1), (0, 1))),
                       (circle_arc(), ((-1, 1), (-1, 1)))):
        for N in (8, 16):
            for d in (1, 4):
                q = TubeQuery(curve, delta_from_rule(d, N, 2),
                              LatticeSource(N, box))
                r = count_in_tube(q)
                rb = brute_force_tube_oracle(q)
                assert r.certified and rb.certified
                assert r.count == rb.count
                assert set(r.points) == set(rb.points)


def test_big_segment_count_path():
    # theorem-scale delta forces the pruned nearest-neighbor candidate pass
    pb = parabola()
    N = 32
    q = TubeQuery(pb, delta_from_rule(1, N, 5), LatticeSource(N, ((0, 1), (0, 1))))
    r = count_in_tube(q)
    assert r.certified
    assert set(count_on_curve_lattice(pb, N)) == set(r.points)


def test_partial_circle_arc_oracle_equivalence():
    quarter = circle_arc(0, F(1, 4))
    q = TubeQuery(quarter, delta_from_rule(1, 16, 2),
                  LatticeSource(16, ((0, 1), (0, 1))))
    r = count_in_tube(q)
    rb = brute_force_tube_oracle(q)
    assert r.certified and rb.certified
    assert r.count == rb.count and set(r.points) == set(rb.points)
    # (1, 0) and (0, 1) are the arc endpoints, on the lattice for every N
    assert (1, 0) in set(r.points) and (0, 1) in set(r.points)


def test_invalid_queries():
    with pytest.raises(InvalidQuery):
        TubeQuery(parabola(), 0, LatticeSource(4, ((0, 1), (0, 1))))
    with pytest.raises(InvalidQuery):
        LatticeSource(0, ((0, 1), (0, 1)))
    with pytest.raises(InvalidQuery):
        LatticeSource(4, None)
    with pytest.raises(CapExceeded):
        materialize_source(LatticeSource(10 ** 6, ((0, 1), (0, 1))))
    with pytest.raises(InvalidQuery):
        count_in_tube(TubeQuery(parabola(), F(1, 4),
                                ExplicitSource(FiniteSet([(1, 2, 3)]))))


def test_result_counts_match_points():
    q = TubeQuery(parabola(), F(1, 16), LatticeSource(4, ((0, 1), (0, 1))))
    r = count_in_tube(q)
    assert r.count == len(r.points)
    r2 = count_in_tube(q, keep_points=False)
    assert r2.points is None and r2.count == r.count
