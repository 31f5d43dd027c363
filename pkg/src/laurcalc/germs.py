"""Local germs with linear-form poles, and global rational functions whose
denominators are products of configuration hyperplanes.

A germ at a is stored as a pole multi-index over canonical root directions
together with a truncated Taylor jet of the regularized function: the
represented object is jet(w) / prod <xi, w>^d(xi), w = z - a.
"""

from __future__ import annotations

from .config import Hyperplane, XSubspace, _restrict_form_to_subspace, canonical_normal
from .poly import ArityError, Polynomial, Space
from .scalars import GQ


class Germ:
    __slots__ = ("space", "base", "pole", "jet", "order")

    def __init__(self, space: Space, base, pole, jet: Polynomial, order: int):
        self.space = space
        self.base = tuple(GQ.of(x) for x in base)
        self.pole = {}
        for xi, k in dict(pole).items():
            if k:
                canon, scalar = canonical_normal(xi)
                if scalar != 1:
                    raise ValueError("pole directions must be canonical primitive vectors")
                self.pole[canon] = int(k)
        self.jet = jet.truncate(order)
        self.order = int(order)

    def copy_with(self, **kw):
        data = dict(
            space=self.space, base=self.base, pole=self.pole, jet=self.jet, order=self.order
        )
        data.update(kw)
        return Germ(**data)

    def is_holomorphic(self):
        return not self.pole

    def pole_degree(self):
        return sum(self.pole.values())

    def _form(self, xi) -> Polynomial:
        # <xi, w> in the shifted variable; no offset since the pole passes
        # through the base point
        return self.space.linear_form(xi, GQ(0))


def germ_constant(space: Space, base, value, order: int) -> Germ:
    return Germ(space, base, {}, Polynomial.const(space.dim, GQ.of(value)), order)


def germ_normalize(g: Germ) -> Germ:
    """Cancel linear factors of the jet against the pole until minimal."""
    if g.jet.is_zero():
        return Germ(g.space, g.base, {}, g.jet, g.order)
    pole = dict(g.pole)
    jet = g.jet
    order = g.order
    changed = True
    while changed:
        changed = False
        for xi in list(pole):
            if pole[xi] == 0:
                continue
            coeffs = g.space.form_coeffs(xi)
            q = jet.divide_by_linear(coeffs)
            if q is not None:
                jet = q
                order -= 1
                pole[xi] -= 1
                if pole[xi] == 0:
                    del pole[xi]
                changed = True
    return Germ(g.space, g.base, pole, jet, order)


def germ_mul(g1: Germ, g2: Germ) -> Germ:
    if g1.base != g2.base:
        raise ValueError("germ base points differ")
    order = min(g1.order, g2.order)
    pole = dict(g1.pole)
    for xi, k in g2.pole.items():
        pole[xi] = pole.get(xi, 0) + k
    jet = (g1.jet * g2.jet).truncate(order)
    return Germ(g1.space, g1.base, pole, jet, order)


def germ_add(g1: Germ, g2: Germ) -> Germ:
    """Sum over the common denominator, at the compatible truncation."""
    if g1.base != g2.base:
        raise ValueError("germ base points differ")
    pole = {}
    for xi in set(g1.pole) | set(g2.pole):
        pole[xi] = max(g1.pole.get(xi, 0), g2.pole.get(xi, 0))
    def lift(g):
        p = g.jet
        extra = 0
        for xi, k in pole.items():
            add = k - g.pole.get(xi, 0)
            if add:
                p = p * g._form(xi) ** add
                extra += add
        return p, g.order + extra
    p1, o1 = lift(g1)
    p2, o2 = lift(g2)
    order = min(o1, o2)
    return Germ(g1.space, g1.base, pole, (p1 + p2).truncate(order), order)


def germ_scale(g: Germ, c) -> Germ:
    return g.copy_with(jet=g.jet * GQ.of(c))


def germ_diff(v, g: Germ) -> Germ:
    """Derivative along the vector v, with pole bookkeeping.

    Uses the regularized identity: with the pole raised by one on every
    active direction, the new numerator is v(P1*jet) - Qv*jet where P1 is
    the product of the active linear forms and Qv the exact quotient of
    v(pi_{d+1}) by pi_d.
    """
    if g.order < 1:
        raise ValueError("jet order must be at least 1 to differentiate")
    v = [GQ.of(x) for x in v]
    active = sorted(g.pole)
    if not active:
        jet = g.jet.directional(v)
        return Germ(g.space, g.base, {}, jet, g.order - 1)
    forms = {xi: g._form(xi) for xi in active}
    P1 = Polynomial.const(g.space.dim, GQ(1))
    for xi in active:
        P1 = P1 * forms[xi]
    Qv = Polynomial.zero(g.space.dim)
    for xi in active:
        coef = GQ(g.pole[xi] + 1) * g.space.inner(xi, v)
        if coef.is_zero():
            continue
        rest = Polynomial.const(g.space.dim, GQ(1))
        for eta in active:
            if eta != xi:
                rest = rest * forms[eta]
        Qv = Qv + coef * rest
    k = len(active)
    order = g.order + k - 1
    numerator = ((P1 * g.jet).directional(v) - Qv * g.jet).truncate(order)
    pole = {xi: d + 1 for xi, d in g.pole.items()}
    return germ_normalize(Germ(g.space, g.base, pole, numerator, order))


# ---------------------------------------------------------------------------
# rational functions with hyperplane denominators
# ---------------------------------------------------------------------------


class RationalFn:
    """numerator / prod l_H^k over a finite set of hyperplanes."""

    __slots__ = ("space", "numerator", "denominator")

    def __init__(self, space: Space, numerator: Polynomial, denominator=None):
        if numerator.dim != space.dim:
            raise ArityError("numerator arity mismatch")
        self.space = space
        self.numerator = numerator
        self.denominator = {}
        for h, k in dict(denominator or {}).items():
            if k:
                self.denominator[h] = int(k)

    @staticmethod
    def from_poly(space, p):
        return RationalFn(space, p)

    @staticmethod
    def const(space, c):
        return RationalFn(space, Polynomial.const(space.dim, GQ.of(c)))

    def cancel(self) -> "RationalFn":
        """Divide out exact common linear factors."""
        num = self.numerator
        den = dict(self.denominator)
        for h in list(den):
            coeffs = self.space.form_coeffs(h.normal)
            while den.get(h, 0) > 0:
                q = num.divide_by_linear(coeffs, -h.offset)
                if q is None:
                    break
                num = q
                den[h] -= 1
            if den.get(h) == 0:
                del den[h]
        return RationalFn(self.space, num, den)

    def __add__(self, other):
        if isinstance(other, RationalFn):
            den = {}
            for h in set(self.denominator) | set(other.denominator):
                den[h] = max(self.denominator.get(h, 0), other.denominator.get(h, 0))
            def lift(f):
                p = f.numerator
                for h, k in den.items():
                    add = k - f.denominator.get(h, 0)
                    if add:
                        p = p * h.form(self.space) ** add
                return p
            return RationalFn(self.space, lift(self) + lift(other), den).cancel()
        raise TypeError("can only add rational functions")

    def __neg__(self):
        return RationalFn(self.space, -self.numerator, self.denominator)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, RationalFn):
            den = dict(self.denominator)
            for h, k in other.denominator.items():
                den[h] = den.get(h, 0) + k
            return RationalFn(self.space, self.numerator * other.numerator, den).cancel()
        return RationalFn(self.space, self.numerator * GQ.of(other), self.denominator)

    __rmul__ = __mul__

    def directional_deriv(self, v) -> "RationalFn":
        """Quotient rule; output denominator powers raised by one."""
        v = [GQ.of(x) for x in v]
        num = self.numerator.directional(v)
        hs = list(self.denominator)
        if not hs:
            return RationalFn(self.space, num)
        prod_all = Polynomial.const(self.space.dim, GQ(1))
        for h in hs:
            prod_all = prod_all * h.form(self.space)
        out = num * prod_all
        for h in hs:
            dform = h.form(self.space).directional(v)  # a constant
            rest = Polynomial.const(self.space.dim, GQ(1))
            for h2 in hs:
                if h2 != h:
                    rest = rest * h2.form(self.space)
            out = out - GQ(self.denominator[h]) * dform * self.numerator * rest
        den = {h: k + 1 for h, k in self.denominator.items()}
        return RationalFn(self.space, out, den).cancel()

    def eval(self, point) -> GQ:
        point = [GQ.of(x) for x in point]
        val = self.numerator.eval(point)
        for h, k in self.denominator.items():
            d = self.space.inner(h.normal, point) - h.offset
            if d.is_zero():
                raise ZeroDivisionError("evaluation on a pole hyperplane")
            val = val / d**k
        return val

    def shift(self, a) -> "RationalFn":
        """The function z -> f(a + z)."""
        a = [GQ.of(x) for x in a]
        num = self.numerator.shift(a)
        den = {}
        for h, k in self.denominator.items():
            # <n, a + z> - c = <n, z> - (c - <n, a>)
            h2 = Hyperplane(h.normal, h.offset - self.space.inner(h.normal, a))
            den[h2] = den.get(h2, 0) + k
        return RationalFn(self.space, num, den)

    def is_regular_at(self, point) -> bool:
        try:
            self.eval(point)
            return True
        except ZeroDivisionError:
            return False

    def __eq__(self, other):
        if not isinstance(other, RationalFn):
            return NotImplemented
        a = self.cancel()
        b = other.cancel()
        # cross-multiplied polynomial identity
        den = {}
        for h in set(a.denominator) | set(b.denominator):
            den[h] = max(a.denominator.get(h, 0), b.denominator.get(h, 0))
        def lift(f):
            p = f.numerator
            for h, k in den.items():
                add = k - f.denominator.get(h, 0)
                if add:
                    p = p * h.form(self.space) ** add
            return p
        return lift(a) == lift(b)

    def __repr__(self):
        if not self.denominator:
            return repr(self.numerator)
        den = " * ".join(f"({h.form(self.space)})^{k}" for h, k in self.denominator.items())
        return f"[{self.numerator}] / [{den}]"


def rationalfn_germ_at(f: RationalFn, a, order: int) -> Germ:
    """Localize at a: pole index from the hyperplanes through a; all other
    denominator factors are Taylor-inverted into the jet."""
    a = [GQ.of(x) for x in a]
    pole = {}
    jet = f.numerator.shift(a).truncate(order)
    for h, k in f.denominator.items():
        c0 = f.space.inner(h.normal, a) - h.offset
        if c0.is_zero():
            pole[h.normal] = pole.get(h.normal, 0) + k
        else:
            # 1/(c0 + l0(w)) = (1/c0) sum (-l0/c0)^j, truncated
            l0 = f.space.linear_form(h.normal, GQ(0))
            inv = Polynomial.zero(f.space.dim)
            t = Polynomial.const(f.space.dim, GQ(1) / c0)
            for _ in range(order + 1):
                inv = inv + t
                t = (t * l0 * (GQ(-1) / c0)).truncate(order)
            for _ in range(k):
                jet = (jet * inv).truncate(order)
    return Germ(f.space, a, pole, jet, order)


def rationalfn_restrict(f: RationalFn, L: XSubspace) -> RationalFn:
    """Restrict to the affine subspace L, in its s-coordinates.

    Raises ValueError when a denominator hyperplane contains L even after
    exact cancellation.
    """
    f = f.cancel()
    sub = L.induced_space()
    subs = []
    for i in range(f.space.dim):
        # coordinate i of the parametrization center + sum s_j b_j
        coeffs = [GQ.of(b[i]) for b in L.basis_VL]
        subs.append(Polynomial.linear(sub.dim, coeffs, L.center[i]))
    num = f.numerator.substitute(subs) if f.space.dim else f.numerator
    den = {}
    for h, k in f.denominator.items():
        res = _restrict_form_to_subspace(f.space, L, h.normal, h.offset)
        if res[0] == "zero":
            raise ValueError("denominator hyperplane contains the subspace")
        if res[0] == "const":
            num = num * (GQ(1) / res[1]) ** k
        else:
            _, hL, scalar = res
            den[hL] = den.get(hL, 0) + k
            num = num * (GQ(1) / scalar) ** k
    return RationalFn(sub, num, den).cancel()
