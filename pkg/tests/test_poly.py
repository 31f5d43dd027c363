"""Polynomials, differential operators, jets, the Leibniz transfer and
its cocycle property."""

import random
from fractions import Fraction

import pytest

from laurcalc import (
    GQ,
    ArityError,
    DiffOp,
    Polynomial,
    Space,
    j_map,
    leibniz_flatten,
    pi_product,
    taylor_jet,
)

from _support import rand_diffop, rand_gq, rand_point, rand_poly

rng = random.Random(23)


def test_ring_identities():
    for _ in range(30):
        dim = rng.randint(1, 3)
        a = rand_poly(rng, dim, 3)
        b = rand_poly(rng, dim, 3)
        c = rand_poly(rng, dim, 3)
        assert a * b == b * a
        assert a * (b + c) == a * b + a * c
        pt = rand_point(rng, dim)
        assert (a * b).eval(pt) == a.eval(pt) * b.eval(pt)
        assert (a + b).eval(pt) == a.eval(pt) + b.eval(pt)


def test_shift_eval():
    for _ in range(20):
        dim = rng.randint(1, 3)
        p = rand_poly(rng, dim, 3)
        a = rand_point(rng, dim)
        z = rand_point(rng, dim)
        assert p.shift(a).eval(z) == p.eval([x + y for x, y in zip(z, a)])


def test_substitute_eval():
    for _ in range(20):
        dim = rng.randint(1, 3)
        inner_dim = rng.randint(1, 3)
        p = rand_poly(rng, dim, 2)
        subs = [rand_poly(rng, inner_dim, 2) for _ in range(dim)]
        pt = rand_point(rng, inner_dim)
        assert p.substitute(subs).eval(pt) == p.eval([s.eval(pt) for s in subs])


def test_deriv_product_rule():
    for _ in range(20):
        dim = rng.randint(1, 3)
        i = rng.randint(0, dim - 1)
        a = rand_poly(rng, dim, 3)
        b = rand_poly(rng, dim, 3)
        assert (a * b).deriv(i) == a.deriv(i) * b + a * b.deriv(i)


def test_divide_by_linear():
    p = Polynomial(2, {(1, 0): GQ(1), (0, 1): GQ(-1)})  # x - y
    q = rand_poly(rng, 2, 2)
    prod = p * q
    got = prod.divide_by_linear([Fraction(1), Fraction(-1)])
    assert got == q
    assert Polynomial.const(2, GQ(1)).divide_by_linear([Fraction(1), Fraction(-1)]) is None


def test_arity_mismatch():
    with pytest.raises(ArityError):
        Polynomial.variable(2, 0) + Polynomial.variable(3, 0)


def test_diffop_apply_composition():
    for _ in range(20):
        dim = rng.randint(1, 3)
        u = rand_diffop(rng, dim, 2)
        v = rand_diffop(rng, dim, 2)
        p = rand_poly(rng, dim, 4)
        assert (u * v).apply(p) == u.apply(v.apply(p))


def test_taylor_jet_matches_derivatives():
    p = rand_poly(rng, 2, 3)
    a = rand_point(rng, 2)
    jet = taylor_jet(p, a, 3)
    assert jet.poly == p.shift(a).truncate(3)
    assert jet.value() == p.eval(a)


def test_leibniz_flatten_defining_identity():
    # flatten(u, p, a) represents phi -> u(p * phi) evaluated at a
    for _ in range(30):
        dim = rng.randint(1, 3)
        u = rand_diffop(rng, dim, 3)
        p = rand_poly(rng, dim, 3)
        phi = rand_poly(rng, dim, 3)
        a = rand_point(rng, dim)
        lhs = leibniz_flatten(u, p, a).apply(phi).eval(a)
        rhs = u.apply(p * phi).eval(a)
        assert lhs == rhs


def test_j_map_cocycle_small():
    sp = Space(2)
    X0 = [(Fraction(1), Fraction(0)), (Fraction(1), Fraction(1))]
    for _ in range(25):
        u = rand_diffop(rng, 2, 3)
        d = [rng.randint(1, 3), rng.randint(1, 3)]
        dm = [rng.randint(0, d[0]), rng.randint(0, d[1])]
        dl = [rng.randint(0, dm[0]), rng.randint(0, dm[1])]
        a = rand_point(rng, 2)
        two_step = j_map(sp, j_map(sp, u, d, dm, X0, a), dm, dl, X0, a)
        assert two_step == j_map(sp, u, d, dl, X0, a)


def test_j_map_identity_level():
    sp = Space(1)
    u = rand_diffop(rng, 1, 3)
    assert j_map(sp, u, [2], [2], [(Fraction(1),)], [GQ(0)]) == u


def test_pi_product_value():
    sp = Space(2)
    p = pi_product(sp, [(Fraction(1), Fraction(0))], [GQ(0), GQ(0)], [2])
    assert p == Polynomial(2, {(2, 0): GQ(1)})
