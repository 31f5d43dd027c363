"""Laurent functionals in bounded-order string representation, their
actions, and the induced operators sending rational functions on the
ambient space to rational functions on an affine subspace.

A functional is a finite sum of summands (a, X, d_max, u): on a germ at a
with pole index d covered by d_max, the value is u(pi_{a,X,d_max} * phi)(a),
computed directly from the stored top-level operator.  Application to a
pole not covered by d_max is an error; extensions beyond the stored order
are never chosen silently.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import linalg
from .config import Hyperplane, XSubspace, canonical_normal
from .germs import (
    Germ,
    RationalFn,
    germ_normalize,
    rationalfn_germ_at,
    rationalfn_restrict,
)
from .poly import ArityError, DiffOp, Polynomial, Space, leibniz_flatten
from .scalars import GQ


class LaurentOrderError(ValueError):
    """Pole order of the argument exceeds the stored functional order."""


class LFSummand:
    """One support point: roots, top pole index, and the top operator."""

    __slots__ = ("support", "x_list", "d_max", "u")

    def __init__(self, support, x_list, d_max, u: DiffOp):
        self.support = tuple(GQ.of(x) for x in support)
        self.x_list = [tuple(GQ.of(c).rational() for c in v) for v in x_list]
        self.d_max = [int(k) for k in d_max]
        if len(self.d_max) != len(self.x_list):
            raise ValueError("pole index must be parallel to the root list")
        self.u = u

    def canonical_totals(self):
        """Totals of d_max per canonical direction, plus the scalar relating
        the stored product of forms to the canonical one."""
        totals = {}
        scalar = GQ(1)
        for v, k in zip(self.x_list, self.d_max):
            if k == 0:
                continue
            canon, s = canonical_normal(v)
            totals[canon] = totals.get(canon, 0) + k
            scalar = scalar * GQ(s) ** k
        return totals, scalar


class LaurentFunctional:
    def __init__(self, space: Space, summands):
        self.space = space
        self.summands = list(summands)
        seen = set()
        for s in self.summands:
            if s.support in seen:
                raise ValueError("support points must be distinct")
            seen.add(s.support)

    def support(self):
        return [s.support for s in self.summands]


def _dir_form(space: Space, direction) -> Polynomial:
    """<direction, w> in the shifted variable."""
    return space.linear_form(direction, GQ(0))


def _apply_summand(space: Space, s: LFSummand, g: Germ) -> GQ:
    gn = germ_normalize(g)
    totals, scalar = s.canonical_totals()
    leftover = {}
    for dir_, k in gn.pole.items():
        if totals.get(dir_, 0) < k:
            raise LaurentOrderError(
                "functional order insufficient for the germ's pole"
            )
    for dir_, cap in totals.items():
        rest = cap - gn.pole.get(dir_, 0)
        if rest:
            leftover[dir_] = rest
    q = Polynomial.const(space.dim, scalar)
    hom_deg = 0
    for dir_, k in leftover.items():
        q = q * _dir_form(space, dir_) ** k
        hom_deg += k
    if s.u.order() > gn.order + hom_deg:
        raise ValueError("jet order too small for the operator order")
    prod = (q * gn.jet).truncate(s.u.order())
    return s.u.apply(prod).eval([GQ(0)] * space.dim)


def lf_apply(L: LaurentFunctional, g: Germ) -> GQ:
    """Apply to a single germ; summands supported elsewhere contribute 0."""
    if g.space.dim != L.space.dim:
        raise ArityError("germ and functional live in different dimensions")
    out = GQ(0)
    for s in L.summands:
        if s.support == g.base:
            out = out + _apply_summand(L.space, s, g)
    return out


def lf_apply_rational(L: LaurentFunctional, f: RationalFn, extra_order: int = 2) -> GQ:
    """Localize f at every support point and sum the summand values."""
    if f.space.dim != L.space.dim:
        raise ArityError("function and functional live in different dimensions")
    out = GQ(0)
    for s in L.summands:
        order = s.u.order() + sum(s.d_max) + extra_order
        g = rationalfn_germ_at(f, s.support, order)
        out = out + _apply_summand(L.space, s, g)
    return out


# ---------------------------------------------------------------------------
# canonical constructions
# ---------------------------------------------------------------------------


def lf_residue(space: Space, a, X, d_max) -> LaurentFunctional:
    """The functional with top operator 1 (pure coefficient extraction)."""
    return LaurentFunctional(
        space, [LFSummand(a, X, d_max, DiffOp.identity(space.dim))]
    )


def lf_from_evaluation(space: Space, a, X, d_max) -> LaurentFunctional:
    """A functional restricting to evaluation at a on holomorphic germs.

    Canonical choice: the top operator is the symbol of the pole product
    applied as derivatives, normalized so that the single surviving
    homogeneous contribution equals 1.
    """
    from .poly import factorial_multi, pi_product

    pi = pi_product(space, X, a, d_max).shift(a)  # homogeneous in w
    norm = GQ(0)
    for gamma, c in pi.terms.items():
        norm = norm + GQ(factorial_multi(gamma)) * c * c
    if norm.is_zero():
        # X empty: pi = 1, evaluation is the identity operator
        u = DiffOp.identity(space.dim)
    else:
        u = DiffOp(space.dim, {g: c / norm for g, c in pi.terms.items()})
    return LaurentFunctional(space, [LFSummand(a, X, d_max, u)])


# ---------------------------------------------------------------------------
# push-forward along an injective linear map
# ---------------------------------------------------------------------------


def lf_pushforward(
    iota, L0: LaurentFunctional, space_V: Space, ambient_X=None
) -> LaurentFunctional:
    """Transport a functional along the injective linear map given by the
    matrix iota (columns = images of the source basis vectors).

    The source space must carry the pulled-back inner product.  Without an
    ambient root list, the roots of each summand are pushed by iota.  With
    one, the standing transversality assumption (no ambient root
    orthogonal to the image) is checked and the pole index is transported
    onto the ambient roots: per proportionality class of the transposed
    images, the full order goes to the first listed root.
    """
    n0 = L0.space.dim
    n = space_V.dim
    cols = [[GQ.of(iota[i][j]) for i in range(n)] for j in range(n0)]
    if linalg.rank([[c for c in col] for col in cols]) < n0:
        raise ValueError("embedding is not injective")
    # pulled-back inner product must match the source space
    for j in range(n0):
        for k in range(n0):
            got = space_V.inner(cols[j], cols[k])
            want = GQ(L0.space.ip[j][k])
            if got != want:
                raise ValueError("source space does not carry the pulled-back inner product")
    b0 = [[GQ(x) for x in row] for row in L0.space.ip]

    def transpose_image(xi):
        """p(xi): the source vector with <xi, iota(y)> = <p(xi), y>."""
        rhs = [space_V.inner(xi, col) for col in cols]
        return linalg.solve(b0, rhs)

    if ambient_X is not None:
        ambient_X = [tuple(GQ.of(c).rational() for c in v) for v in ambient_X]
        p_img = []
        for xi in ambient_X:
            p = transpose_image(xi)
            if all(c.is_zero() for c in p):
                raise ValueError("an ambient root is orthogonal to the embedded subspace")
            p_img.append(p)

    def push_point(a0):
        out = [GQ(0)] * n
        for j in range(n0):
            for i in range(n):
                out[i] = out[i] + GQ.of(a0[j]) * cols[j][i]
        return out

    def push_op(u: DiffOp) -> DiffOp:
        subs = [Polynomial.linear(n, [cols[j][i] for i in range(n)]) for j in range(n0)]
        return DiffOp.from_symbol(u.symbol().substitute(subs))

    summands = []
    for s in L0.summands:
        if ambient_X is None:
            summands.append(
                LFSummand(
                    push_point(s.support),
                    [
                        tuple(push_point(xi)[i].rational() for i in range(n))
                        for xi in s.x_list
                    ],
                    s.d_max,
                    push_op(s.u),
                )
            )
            continue
        totals0, c0 = s.canonical_totals()
        x_new, d_new = [], []
        c1 = GQ(1)
        for dir0 in sorted(totals0):
            pick = None
            for xi, p in zip(ambient_X, p_img):
                canon, t = canonical_normal(p)
                if canon == dir0:
                    pick = (xi, t)
                    break
            if pick is None:
                raise ValueError("no ambient root covers a pole direction")
            xi, t = pick
            x_new.append(xi)
            d_new.append(totals0[dir0])
            c1 = c1 * GQ(t) ** totals0[dir0]
        summands.append(
            LFSummand(push_point(s.support), x_new, d_new, (c0 / c1) * push_op(s.u))
        )
    return LaurentFunctional(space_V, summands)


def lf_pullback_fn(iota, f: RationalFn, space_V0: Space) -> RationalFn:
    """Pull a rational function back along the linear map iota."""
    n0 = space_V0.dim
    n = f.space.dim
    subs = [
        Polynomial.linear(n0, [GQ.of(iota[i][j]) for j in range(n0)])
        for i in range(n)
    ]
    num = f.numerator.substitute(subs)
    den = {}
    for h, k in f.denominator.items():
        coeffs = f.space.form_coeffs(h.normal)
        # <n, iota(w)> - c as a form on the source
        c0 = [
            sum((coeffs[i] * GQ.of(iota[i][j]) for i in range(n)), GQ(0))
            for j in range(n0)
        ]
        if all(c.is_zero() for c in c0):
            if h.offset.is_zero():
                raise ValueError("pull-back has a denominator vanishing identically")
            num = num * (GQ(1) / (-h.offset)) ** k
            continue
        # express as <beta, w>_{B0} - offset
        rows = [[GQ(space_V0.ip[i][j]) for j in range(n0)] for i in range(n0)]
        beta = linalg.solve(rows, c0)
        canon, scalar = canonical_normal(beta)
        h0 = Hyperplane(canon, h.offset / GQ(scalar))
        den[h0] = den.get(h0, 0) + k
        num = num * (GQ(1) / GQ(scalar)) ** k
    return RationalFn(space_V0, num, den).cancel()


# ---------------------------------------------------------------------------
# multiplicative and differential actions
# ---------------------------------------------------------------------------


def _psi_germ_at(psi, support, order, space) -> Germ:
    if isinstance(psi, Germ):
        if psi.base != support:
            raise ValueError("multiplier germ based at a different point")
        return psi
    if isinstance(psi, RationalFn):
        return rationalfn_germ_at(psi, support, order)
    raise TypeError("multiplier must be a germ or a rational function")


def lf_mul_action(psi, L: LaurentFunctional) -> LaurentFunctional:
    """The transpose of multiplication: the result satisfies
    result(phi) = L(psi * phi) on all admissible arguments."""
    summands = []
    for s in L.summands:
        order_needed = s.u.order() + sum(s.d_max)
        g = germ_normalize(_psi_germ_at(psi, s.support, order_needed, L.space))
        if g.order < s.u.order():
            raise ValueError("multiplier jet order too small")
        totals, scalar = s.canonical_totals()
        for dir_, k in g.pole.items():
            if totals.get(dir_, 0) < k:
                raise LaurentOrderError("multiplier pole exceeds the functional order")
        # zeros of the multiplier along active directions raise the capacity
        jet = g.jet
        jet_order = g.order
        extra = {}
        if not jet.is_zero():
            for dir_ in totals:
                coeffs = L.space.form_coeffs(dir_)
                while True:
                    q = jet.divide_by_linear(coeffs)
                    if q is None:
                        break
                    jet = q
                    jet_order -= 1
                    extra[dir_] = extra.get(dir_, 0) + 1
        if jet_order < s.u.order():
            raise ValueError("multiplier jet order too small")
        new_totals = {}
        for dir_, cap in totals.items():
            rest = cap - g.pole.get(dir_, 0) + extra.get(dir_, 0)
            if rest:
                new_totals[dir_] = rest
        jet_z = (scalar * jet).shift([-x for x in s.support])
        u_new = leibniz_flatten(s.u, jet_z, s.support)
        dirs = sorted(new_totals)
        summands.append(
            LFSummand(s.support, dirs, [new_totals[d] for d in dirs], u_new)
        )
    return LaurentFunctional(L.space, summands)


def lf_diff_action(v, L: LaurentFunctional) -> LaurentFunctional:
    """The transpose of differentiation along v: the result satisfies
    result(phi) = L(d_v phi)."""
    v = [GQ.of(x) for x in v]
    space = L.space
    dv = DiffOp.directional(space.dim, v)
    summands = []
    for s in L.summands:
        totals, scalar = s.canonical_totals()
        active = sorted(d for d in totals if totals[d] >= 1)
        # P: one power of every active canonical form, in the z variable
        P = Polynomial.const(space.dim, GQ(1))
        forms_z = {}
        for dir_ in active:
            forms_z[dir_] = space.linear_form(dir_, space.inner(dir_, s.support))
            P = P * forms_z[dir_]
        u1 = leibniz_flatten(DiffOp.from_symbol(s.u.symbol() * dv.symbol()), P, s.support)
        u_new = u1
        for dir_ in active:
            rest = Polynomial.const(space.dim, GQ(1))
            for d2 in active:
                if d2 != dir_:
                    rest = rest * forms_z[d2]
            coef = GQ(totals[dir_]) * space.inner(dir_, v)
            if not coef.is_zero():
                u_new = u_new - coef * leibniz_flatten(s.u, rest, s.support)
        u_new = scalar * u_new
        new_totals = {d: totals[d] - 1 for d in active if totals[d] - 1 > 0}
        dirs = sorted(new_totals)
        summands.append(
            LFSummand(s.support, dirs, [new_totals[d] for d in dirs], u_new)
        )
    return LaurentFunctional(space, summands)


# ---------------------------------------------------------------------------
# annihilator witness
# ---------------------------------------------------------------------------


def lf_annihilator_witness(g: Germ):
    """Either "holomorphic", or a functional vanishing on all holomorphic
    germs at the base point but not on g."""
    gn = germ_normalize(g)
    if gn.is_holomorphic():
        return "holomorphic"
    space = gn.space
    xi = sorted(gn.pole)[0]
    perp = space.orth_complement([xi])
    # restrict the numerator jet to the orthocomplement of xi
    sdim = len(perp)
    subs = [
        Polynomial.linear(sdim, [GQ.of(b[i]) for b in perp])
        for i in range(space.dim)
    ]
    restricted = gn.jet.substitute(subs)
    if restricted.is_zero():
        raise ValueError("jet order too small to certify the singularity")
    deg = min(sum(idx) for idx in restricted.terms)
    gamma = min(idx for idx in restricted.terms if sum(idx) == deg)
    c = restricted.terms[gamma]
    from .poly import factorial_multi

    u = DiffOp.identity(space.dim)
    for j, k in enumerate(gamma):
        for _ in range(k):
            u = u * DiffOp.directional(space.dim, perp[j])
    u = u * (GQ(1) / (GQ(factorial_multi(gamma)) * c))
    dirs = sorted(gn.pole)
    s = LFSummand(gn.base, dirs, [gn.pole[d] for d in dirs], u)
    return LaurentFunctional(space, [s])


# ---------------------------------------------------------------------------
# Laurent operators on rational functions
# ---------------------------------------------------------------------------


def transverse_space(L: XSubspace) -> Space:
    """Coordinates on the orthogonal complement of the direction space."""
    perp = L.normal_basis()
    gram = [
        [L.space.inner(bi, bj).rational() for bj in perp] for bi in perp
    ]
    return Space(len(perp), gram)


@dataclass(frozen=True)
class _LinForm:
    coeffs: tuple  # GQ over the combined (s, tau) variables
    const: GQ

    def poly(self, dim) -> Polynomial:
        return Polynomial.linear(dim, list(self.coeffs), self.const)


class _RatExpr:
    """Internal rational expression over combined coordinates."""

    def __init__(self, dim, num: Polynomial, den):
        self.dim = dim
        self.num = num
        self.den = {f: k for f, k in den.items() if k}

    def cancel(self):
        num = self.num
        den = dict(self.den)
        for f in list(den):
            while den.get(f, 0) > 0:
                q = num.divide_by_linear(list(f.coeffs), f.const)
                if q is None:
                    break
                num = q
                den[f] -= 1
            if den.get(f) == 0:
                del den[f]
        return _RatExpr(self.dim, num, den)

    def deriv(self, i):
        num = self.num.deriv(i)
        fs = list(self.den)
        if not fs:
            return _RatExpr(self.dim, num, {})
        prod_all = Polynomial.const(self.dim, GQ(1))
        for f in fs:
            prod_all = prod_all * f.poly(self.dim)
        out = num * prod_all
        for f in fs:
            df = f.coeffs[i]
            if df.is_zero():
                continue
            rest = Polynomial.const(self.dim, GQ(1))
            for f2 in fs:
                if f2 != f:
                    rest = rest * f2.poly(self.dim)
            out = out - GQ(self.den[f]) * df * self.num * rest
        den = {f: k + 1 for f, k in self.den.items()}
        return _RatExpr(self.dim, out, den).cancel()


def laurent_operator_apply(
    L: LaurentFunctional, f: RationalFn, Lsub: XSubspace, perp=None
) -> RationalFn:
    """Apply a functional in the transverse variables of Lsub to a rational
    function on the ambient space; the result is a rational function on
    Lsub in its subspace coordinates.

    L lives on the coordinates attached to perp (default: an orthogonal
    complement basis of the direction space, i.e. transverse_space(Lsub)).
    Passing a non-spanning perp applies the functional through the linear
    embedding it parametrizes, which is how the diagonal action is built.
    """
    space = Lsub.space
    f = f.cancel()
    sub = Lsub.induced_space()
    if perp is None:
        perp = Lsub.normal_basis()
    perp = [tuple(GQ.of(x) for x in u) for u in perp]
    ns, nt = sub.dim, len(perp)
    total = ns + nt
    if L.space.dim != nt:
        raise ValueError("functional arity does not match the transverse coordinates")
    gram_t = [[space.inner(ui, uj) for uj in perp] for ui in perp]
    for i in range(nt):
        for j in range(nt):
            if gram_t[i][j] != GQ(L.space.ip[i][j]):
                raise ValueError(
                    "functional space does not carry the transverse inner product"
                )

    result = None
    for s in L.summands:
        # ambient support point
        a_amb = [GQ(0)] * space.dim
        for k in range(nt):
            for i in range(space.dim):
                a_amb[i] = a_amb[i] + s.support[k] * GQ.of(perp[k][i])
        # substitution z_i = center_i + a_i + sum_j b_j[i] s_j + sum_k u_k[i] tau_k
        subs = []
        for i in range(space.dim):
            coeffs = [GQ.of(b[i]) for b in Lsub.basis_VL] + [GQ.of(u[i]) for u in perp]
            subs.append(
                Polynomial.linear(total, coeffs, Lsub.center[i] + a_amb[i])
            )
        num = f.numerator.substitute(subs)
        den = {}
        pole = {}  # canonical transverse direction -> power
        pole_scalar = GQ(1)
        for h, pw in f.denominator.items():
            A = [space.inner(h.normal, b) for b in Lsub.basis_VL]
            m = [space.inner(h.normal, u) for u in perp]
            const0 = (
                space.inner(h.normal, Lsub.center)
                + space.inner(h.normal, a_amb)
                - h.offset
            )
            a_zero = all(x.is_zero() for x in A)
            m_zero = all(x.is_zero() for x in m)
            if m_zero and a_zero:
                if const0.is_zero():
                    raise ValueError(
                        "denominator hyperplane contains the shifted subspace"
                    )
                num = num * (GQ(1) / const0) ** pw
                continue
            if not m_zero and a_zero and const0.is_zero():
                # pure transverse pole at the support point
                beta = linalg.solve(gram_t, m)
                canon, scal = canonical_normal(beta)
                pole[canon] = pole.get(canon, 0) + pw
                pole_scalar = pole_scalar * GQ(scal) ** pw
                continue
            form = _LinForm(tuple(A) + tuple(m), const0)
            den[form] = den.get(form, 0) + pw
        totals, scalar = s.canonical_totals()
        for dir_, k in pole.items():
            if totals.get(dir_, 0) < k:
                raise LaurentOrderError(
                    "pole order along the subspace exceeds the functional order"
                )
        # multiply by the regularizing product: leftover canonical forms
        q = Polynomial.const(total, scalar / pole_scalar)
        for dir_, cap in totals.items():
            rest = cap - pole.get(dir_, 0)
            if rest:
                coeffs = [GQ(0)] * ns + list(linalg.matvec(gram_t, dir_))
                q = q * Polynomial.linear(total, coeffs) ** rest
        expr = _RatExpr(total, num * q, den).cancel()
        # apply the operator in the transverse coordinates
        acc = None
        for gamma, c in s.u.terms.items():
            e = expr
            for k, g in enumerate(gamma):
                for _ in range(g):
                    e = e.deriv(ns + k)
            e = _RatExpr(total, e.num * c, e.den)
            if acc is None:
                acc = e
            else:
                # bring to a common denominator
                den_all = dict(acc.den)
                for fm, kk in e.den.items():
                    den_all[fm] = max(den_all.get(fm, 0), kk)
                def lift(x):
                    p = x.num
                    for fm, kk in den_all.items():
                        add = kk - x.den.get(fm, 0)
                        if add:
                            p = p * fm.poly(total) ** add
                    return p
                acc = _RatExpr(total, lift(acc) + lift(e), den_all).cancel()
        if acc is None:
            acc = _RatExpr(total, Polynomial.zero(total), {})
        # evaluate at tau = 0
        tau_zero = [
            Polynomial.variable(ns, j) if j < ns else Polynomial.zero(ns)
            for j in range(total)
        ]
        num_s = acc.num.substitute(tau_zero)
        den_s = {}
        gram_s = [[GQ(x) for x in row] for row in sub.ip]
        for fm, kk in acc.den.items():
            A = list(fm.coeffs[:ns])
            const = fm.const
            if all(x.is_zero() for x in A):
                if const.is_zero():
                    raise ValueError("uncancelled factor vanishes on the subspace")
                num_s = num_s * (GQ(1) / const) ** kk
                continue
            beta = linalg.solve(gram_s, A)
            canon, scal = canonical_normal(beta)
            hL = Hyperplane(canon, -const / GQ(scal))
            den_s[hL] = den_s.get(hL, 0) + kk
            num_s = num_s * (GQ(1) / GQ(scal)) ** kk
        part = RationalFn(sub, num_s, den_s).cancel()
        result = part if result is None else result + part
    if result is None:
        result = RationalFn(sub, Polynomial.zero(ns))
    return result


# ---------------------------------------------------------------------------
# diagonal action
# ---------------------------------------------------------------------------


def _product_space(space: Space) -> Space:
    """The doubled space with half the block-diagonal inner product, so
    that the diagonal embedding is isometric."""
    n = space.dim
    half = [[x / 2 for x in row] for row in space.ip]
    out = [[0] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            out[i][j] = half[i][j]
            out[n + i][n + j] = half[i][j]
    return Space(2 * n, out)


def lf_diagonal_apply(
    L: LaurentFunctional, Phi: RationalFn, Lsub: XSubspace
) -> RationalFn:
    """Apply a transverse functional diagonally to a rational function on
    the doubled space, then pull back to the diagonal of Lsub."""
    space = Lsub.space
    n = space.dim
    if Phi.space.dim != 2 * n:
        raise ValueError("the argument must live on the doubled space")
    prod_sp = _product_space(space)
    # doubled subspace L x L
    basis2 = [tuple(list(b) + [GQ(0)] * n) for b in Lsub.basis_VL] + [
        tuple([GQ(0)] * n + list(b)) for b in Lsub.basis_VL
    ]
    center2 = tuple(list(Lsub.center) + list(Lsub.center))
    Lsub2 = XSubspace(prod_sp, [], basis2, center2)
    perp = Lsub.normal_basis()
    # the functional acts through the diagonal copies of the transverse
    # basis vectors; the doubled inner product makes this isometric
    perp_diag = [tuple(list(u) + list(u)) for u in perp]
    # Phi must be reinterpreted over the doubled inner product; its
    # denominators were built with hyperplanes over Phi.space, rebuild them
    den = {}
    num = Phi.numerator
    for h, k in Phi.denominator.items():
        coeffs = Phi.space.form_coeffs(h.normal)
        rows = [[GQ(x) for x in row] for row in prod_sp.ip]
        beta = linalg.solve(rows, coeffs)
        canon, scal = canonical_normal(beta)
        h2 = Hyperplane(canon, h.offset / GQ(scal))
        den[h2] = den.get(h2, 0) + k
        num = num * (GQ(1) / GQ(scal)) ** k
    psi = RationalFn(prod_sp, num, den)
    out2 = laurent_operator_apply(L, psi, Lsub2, perp=perp_diag)
    # restrict to the diagonal of Lsub x Lsub
    ns = len(Lsub.basis_VL)
    sub2 = Lsub2.induced_space()
    diag_basis = [
        tuple(
            GQ(1) if (j == i or j == ns + i) else GQ(0) for j in range(2 * ns)
        )
        for i in range(ns)
    ]
    diag = XSubspace(sub2, [], diag_basis, tuple([GQ(0)] * (2 * ns)))
    return rationalfn_restrict(out2, diag)
