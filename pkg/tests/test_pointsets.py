"""Exact point sets: GAPs, sumsets, doubling, energy, and the inequality
checkers.  Brute-force enumerations serve as the oracles throughout."""

import random
from fractions import Fraction as F

import pytest

from curvecount import (CapExceeded, FiniteSet, Gap, SubsetViolation,
                        additive_energy, check_energy_lower_bound,
                        check_plunnecke, doubling, energy_bruteforce,
                        gap_enumerate, is_proper, m_fold_sumset,
                        min_separation, min_separation_squared,
                        representation_counts, sumset)
from curvecount.pointsets import DimensionMismatch, SeparationUndefined


def iset(*pts):
    return FiniteSet(pts)


def test_finite_set_dedup_and_dimension():
    a = FiniteSet([(1, 2), (F(2, 2), F(4, 2)), (0, 0)])
    assert len(a) == 2
    with pytest.raises(DimensionMismatch):
        FiniteSet([(1, 2), (1, 2, 3)])
    with pytest.raises(TypeError):
        FiniteSet([(0.5, 1)])


def test_gap_enumerate_examples():
    g = Gap((0, 0), [(1, 0)], [5])
    assert sorted(gap_enumerate(g)) == [(i, 0) for i in range(1, 6)]
    assert is_proper(g)

    g2 = Gap((0, 0), [(1, 0), (2, 0)], [2, 2])
    assert sorted(gap_enumerate(g2)) == [(3, 0), (4, 0), (5, 0), (6, 0)]
    assert is_proper(g2)

    g3 = Gap((0, 0), [(1, 0), (1, 0)], [2, 2])
    assert sorted(gap_enumerate(g3)) == [(2, 0), (3, 0), (4, 0)]
    assert not is_proper(g3)


def test_gap_cap():
    g = Gap((0,), [(1,)], [1000])
    with pytest.raises(CapExceeded):
        gap_enumerate(g, cap=100)


def test_min_separation_examples():
    assert min_separation_squared(iset((0, 0), (1, 0), (3, 0))) == 1
    lattice = FiniteSet([(F(i, 10), F(j, 10)) for i in range(11) for j in range(11)])
    assert min_separation_squared(lattice) == F(1, 100)
    assert min_separation(iset((0, 0), (F(3, 5), F(4, 5)))) == 1.0
    with pytest.raises(SeparationUndefined):
        min_separation(iset((1, 1)))


def test_sumset_and_doubling():
    ap = FiniteSet([(i, 0) for i in range(1, 11)])
    assert len(sumset(ap, ap)) == 19
    assert doubling(ap) == F(19, 10)
    square = iset((0, 0), (1, 0), (0, 1), (1, 1))
    assert len(sumset(square, square)) == 9
    assert doubling(square) == F(9, 4)
    with pytest.raises(DimensionMismatch):
        sumset(ap, iset((1,)))


def test_m_fold_sumset():
    a = iset((0,), (1,))
    assert sorted(m_fold_sumset(a, 1)) == [(0,), (1,)]
    assert sorted(m_fold_sumset(a, 3)) == [(0,), (1,), (2,), (3,)]
    b = iset((0,), (1,), (3,))
    assert sorted(m_fold_sumset(b, 2)) == [(0,), (1,), (2,), (3,), (4,), (6,)]


def test_energy_basics():
    assert additive_energy(iset((0,), (1,), (2,)), 2) == 19
    assert additive_energy(iset((5, 7)), 3) == 1
    rng = random.Random(1)
    for _ in range(10):
        pts = {(rng.randint(-9, 9), rng.randint(-9, 9)) for _ in range(6)}
        a = FiniteSet(pts)
        assert additive_energy(a, 1) == len(a)


def test_energy_matches_bruteforce_paths():
    rng = random.Random(42)
    for _ in range(30):
        size = rng.randint(1, 8)
        pts = set()
        while len(pts) < size:
            pts.add((rng.randint(-6, 6), rng.randint(-6, 6)))
        a = FiniteSet(pts)
        m = rng.choice([2, 3])
        fast = additive_energy(a, m)
        # literal 2m-tuple loop on the small ones, two-sided join on the rest
        assert fast == energy_bruteforce(a, m)
        assert fast == energy_bruteforce(a, m, literal_limit=0)


def test_representation_counts_cross_check_mfold():
    rng = random.Random(17)
    for _ in range(20):
        pts = {(rng.randint(-9, 9),) for _ in range(rng.randint(2, 9))}
        a = FiniteSet(pts)
        m = rng.choice([2, 3])
        phi = representation_counts(a, m)
        assert set(phi) == set(m_fold_sumset(a, m).points)
        assert sum(phi.values()) == len(a) ** m


def test_energy_lower_bounds():
    rng = random.Random(23)
    for _ in range(40):
        size = rng.randint(2, 10)
        pts = set()
        while len(pts) < size:
            pts.add((rng.randint(-15, 15), rng.randint(-15, 15)))
        a = FiniteSet(pts)
        m = rng.choice([2, 3])
        e = additive_energy(a, m)
        assert e >= len(a) ** m                       # obvious lower bound
        assert e * len(m_fold_sumset(a, m)) >= len(a) ** (2 * m)


def test_lemma_bound_on_progression():
    ap = FiniteSet([(i, 0) for i in range(1, 11)])
    rep = check_energy_lower_bound(ap, ap, 2)
    assert rep.holds and rep.doubling_constant == F(19, 10)
    assert rep.ratio >= 1


def test_lemma_bound_singleton():
    a = iset((0, 0), (2, 3), (5, 1))
    rep = check_energy_lower_bound(a, iset((2, 3)), 3)
    assert rep.holds and rep.energy == 1


def test_lemma_bound_subset_violation():
    with pytest.raises(SubsetViolation):
        check_energy_lower_bound(iset((0, 0)), iset((1, 1)), 2)


def test_plunnecke_holds():
    rng = random.Random(31)
    for _ in range(25):
        pts = {(rng.randint(-20, 20), rng.randint(-20, 20))
               for _ in range(rng.randint(2, 15))}
        rep = check_plunnecke(FiniteSet(pts), rng.choice([2, 3]))
        assert rep.holds


def test_translation_invariance_exact():
    rng = random.Random(8)
    for _ in range(15):
        pts = {(rng.randint(-9, 9), rng.randint(-9, 9))
               for _ in range(rng.randint(2, 8))}
        a = FiniteSet(pts)
        shift = (F(rng.randint(-50, 50), 7), F(rng.randint(-50, 50), 11))
        b = a.translate(shift)
        m = rng.choice([2, 3])
        assert additive_energy(a, m) == additive_energy(b, m)
        assert doubling(a) == doubling(b)


def test_proper_gap_separation_and_doubling():
    rng = random.Random(12)
    checked = 0
    while checked < 15:
        m = rng.randint(1, 3)
        lengths = [rng.randint(1, 6) for _ in range(m)]
        gens = [tuple(rng.randint(-5, 5) for _ in range(2)) for _ in range(m)]
        g = Gap((rng.randint(-3, 3), rng.randint(-3, 3)), gens, lengths)
        pts = gap_enumerate(g)
        if not is_proper(g):
            continue
        checked += 1
        if len(pts) >= 2:
            assert min_separation_squared(pts) > 0
        assert doubling(pts) <= F(2) ** m


def test_ap_energy_closed_form():
    for length in range(2, 51):
        ap = FiniteSet([(i,) for i in range(length)])
        assert additive_energy(ap, 2) == (2 * length ** 3 + length) // 3
    # the normalized energy E2 / L^3 = 2/3 + 1/(3L^2) falls to 2/3 from above
    for length in (10, 50):
        ap = FiniteSet([(i,) for i in range(length)])
        ratio = F(additive_energy(ap, 2), length ** 3)
        assert ratio == F(2, 3) + F(1, 3 * length ** 2)


def test_energy_work_cap():
    a = FiniteSet([(i,) for i in range(40)])
    with pytest.raises(CapExceeded):
        additive_energy(a, 3, work_cap=10)
