"""Truncated exponential polynomial series: validation, differentiation,
products, splitting and wall restriction."""

import random
from fractions import Fraction

import pytest

from laurcalc import (
    GQ,
    DiffOp,
    ExpPolySeries,
    Polynomial,
    Space,
    series_diffop,
    series_exponents,
    series_mul,
    series_restrict,
    series_split,
)

from _support import rand_gq, rand_poly

rng = random.Random(61)


def _basic(trunc=3):
    sp = Space(2)
    delta = [(Fraction(1), Fraction(0)), (Fraction(0), Fraction(1))]
    lam = (GQ(Fraction(5, 2)), GQ(1))
    terms = {
        lam: [Polynomial.const(2, GQ(2))],
        (lam[0] - GQ(1), lam[1]): [Polynomial.variable(2, 0)],
    }
    return ExpPolySeries(sp, delta, [lam], trunc, 1, terms)


def test_exponent_outside_cosets_rejected():
    sp = Space(1)
    with pytest.raises(ValueError):
        ExpPolySeries(
            sp,
            [(Fraction(1),)],
            [(GQ(0),)],
            2,
            1,
            {(GQ(Fraction(1, 2)),): [Polynomial.const(1, GQ(1))]},
        )


def test_truncation_depth_enforced():
    sp = Space(1)
    with pytest.raises(ValueError):
        ExpPolySeries(
            sp,
            [(Fraction(1),)],
            [(GQ(0),)],
            2,
            1,
            {(GQ(-3),): [Polynomial.const(1, GQ(1))]},
        )


def test_exponents_and_leaders():
    F = _basic()
    exps, leading = series_exponents(F)
    assert len(exps) == 2
    assert leading == [(GQ(Fraction(5, 2)), GQ(1))]


def test_diffop_derivation_on_products():
    for _ in range(15):
        F = _basic()
        G = ExpPolySeries(
            F.space,
            F.delta,
            [(GQ(0), GQ(0))],
            3,
            1,
            {(GQ(0), GQ(0)): [rand_poly(rng, 2, 2)]},
        )
        d = DiffOp.partial(2, rng.randint(0, 1))
        lhs = series_diffop(d, series_mul(F, G))
        rhs = series_mul(series_diffop(d, F), G) + series_mul(F, series_diffop(d, G))
        assert lhs == rhs


def test_mul_prunes_deep_terms():
    sp = Space(1)
    delta = [(Fraction(1),)]
    mk = lambda e, h: ExpPolySeries(
        sp,
        delta,
        [(GQ(e),)],
        2,
        1,
        {(GQ(e - k),): [Polynomial.const(1, GQ(1))] for k in range(h + 1)},
    )
    F = mk(0, 2)
    G = mk(0, 2)
    H = series_mul(F, G)
    # depth beyond the joint truncation is dropped
    assert all((GQ(0) - xi[0]).re <= 2 for xi in H.terms)
    assert (GQ(-3),) not in H.terms


def test_split_and_reassemble():
    sp = Space(1)
    delta = [(Fraction(1),)]
    s1, s2 = (GQ(0),), (GQ(Fraction(1, 2)),)
    terms = {
        s1: [Polynomial.const(1, GQ(1))],
        (GQ(-1),): [Polynomial.const(1, GQ(2))],
        s2: [Polynomial.const(1, GQ(3))],
    }
    F = ExpPolySeries(sp, delta, [s1, s2], 2, 1, terms)
    parts = series_split(F, [s1, s2])
    assert set(parts) == {s1, s2}
    total = parts[s1] + parts[s2]
    assert total == F


def test_split_rejects_equivalent_leaders():
    sp = Space(1)
    delta = [(Fraction(1),)]
    F = ExpPolySeries(
        sp, delta, [(GQ(0),)], 2, 1, {(GQ(0),): [Polynomial.const(1, GQ(1))]}
    )
    with pytest.raises(ValueError):
        series_split(F, [(GQ(0),), (GQ(1),)])


def test_restriction_grouping():
    F = _basic()
    R = series_restrict(F, [(Fraction(1), Fraction(0))])
    outer = R.outer_exponents()
    # the two exponents differ on the wall direction
    assert len(outer) == 2
    for eta, xis in R.groups.items():
        for xi in xis:
            assert tuple(F.space.inner(xi, b) for b in R.wall) == eta
    assert R.reassemble() == F


def test_shifted_coeff_collapses_to_original():
    F = _basic()
    R = series_restrict(F, [(Fraction(1), Fraction(0))])
    for xi, polys in F.terms.items():
        shifted = R.shifted_coeff(xi)
        n = F.space.dim
        for q2, q in zip(shifted, polys):
            # substituting y = 0 in the split argument recovers q(x)
            back = q2.substitute(
                [Polynomial.variable(n, i) for i in range(n)]
                + [Polynomial.zero(n) for _ in range(n)]
            )
            assert back == q
