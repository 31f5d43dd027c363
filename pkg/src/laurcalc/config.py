"""Hyperplanes with roots drawn from a fixed finite set, finite
configurations of them, affine subspaces cut out by them, and the
localized products of linear forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from . import linalg
from .poly import Polynomial, Space, pi_product
from .scalars import GQ


def canonical_normal(v):
    """Scale a nonzero rational vector to the primitive integer vector with
    positive first nonzero coordinate.  Returns (canonical, scalar) with
    v = scalar * canonical."""
    fr = []
    for x in v:
        x = GQ.of(x)
        fr.append(x.rational())
    if all(x == 0 for x in fr):
        raise ValueError("zero vector has no canonical representative")
    denlcm = 1
    for x in fr:
        denlcm = denlcm * x.denominator // gcd(denlcm, x.denominator)
    ints = [int(x * denlcm) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    ints = [x // g for x in ints]
    lead = next(x for x in ints if x != 0)
    if lead < 0:
        ints = [-x for x in ints]
    canon = tuple(Fraction(x) for x in ints)
    # scalar with v = scalar * canon, read off at the first nonzero slot
    i = next(i for i, x in enumerate(canon) if x != 0)
    scalar = fr[i] / canon[i]
    return canon, scalar


@dataclass(frozen=True)
class Hyperplane:
    """The zero set of z -> <normal, z> - offset, with a real rational
    normal stored in canonical primitive form."""

    normal: tuple  # Fractions
    offset: GQ

    @staticmethod
    def make(normal, offset) -> "Hyperplane":
        canon, scalar = canonical_normal(normal)
        return Hyperplane(canon, GQ.of(offset) / GQ(scalar))

    @property
    def dim(self):
        return len(self.normal)

    def is_real(self):
        return self.offset.is_real()

    def form(self, space: Space) -> Polynomial:
        return space.linear_form(self.normal, self.offset)

    def contains(self, space: Space, point) -> bool:
        return (space.inner(self.normal, point) - self.offset).is_zero()


class Configuration:
    """A finite collection of hyperplanes with multiplicities, with the
    underlying root set and its canonical proportionality representatives."""

    def __init__(self, space: Space, hyperplanes=None, x_set=None):
        self.space = space
        self.multiplicity = {}
        if hyperplanes:
            for h, mult in hyperplanes:
                if h.dim != space.dim:
                    raise ValueError("hyperplane dimension mismatch")
                if h in self.multiplicity:
                    raise ValueError(f"duplicate hyperplane {h}")
                self.multiplicity[h] = int(mult)
        self.x_set = [tuple(GQ.of(c).rational() for c in v) for v in (x_set or [])]
        derived = {h.normal for h in self.multiplicity}
        for v in self.x_set:
            derived.add(canonical_normal(v)[0])
        self.x0_set = sorted(derived)

    @property
    def hyperplanes(self):
        return list(self.multiplicity)

    def mult(self, h: Hyperplane) -> int:
        # the usual convention: multiplicity 0 off the configuration
        return self.multiplicity.get(h, 0)


class XSubspace:
    """Nonempty intersection of hyperplanes: direction space, orthogonal
    basis-free central point, and an affine parametrization."""

    def __init__(self, space: Space, defining, basis_VL, center):
        self.space = space
        self.defining = list(defining)
        self.basis_VL = [tuple(GQ.of(x) for x in b) for b in basis_VL]
        self.center = tuple(GQ.of(x) for x in center)

    @property
    def codim(self):
        return self.space.dim - len(self.basis_VL)

    def param_point(self, s):
        """Ambient point center + sum s_j * b_j."""
        out = list(self.center)
        for c, b in zip(s, self.basis_VL):
            c = GQ.of(c)
            for i in range(self.space.dim):
                out[i] = out[i] + c * b[i]
        return out

    def induced_space(self) -> Space:
        """Coordinates s on the subspace, with the inherited inner product."""
        n = len(self.basis_VL)
        gram = [
            [self.space.inner(bi, bj).rational() for bj in self.basis_VL]
            for bi in self.basis_VL
        ]
        return Space(n, gram)

    def normal_basis(self):
        """Basis of the orthogonal complement of the direction space."""
        return self.space.orth_complement(self.basis_VL)

    def contains(self, point) -> bool:
        diff = [GQ.of(p) - c for p, c in zip(point, self.center)]
        # point - center must be orthogonal to every normal direction
        return all(
            self.space.inner(n, diff).is_zero() for n in self.normal_basis()
        )


def subspace_from(space: Space, hyps) -> XSubspace:
    """Intersection of hyperplanes, its direction space and central point.

    Raises ValueError when the linear system is inconsistent.
    """
    rows = [space.form_coeffs(h.normal) for h in hyps]
    rhs = [h.offset for h in hyps]
    if rows:
        z0 = linalg.solve(rows, rhs)
        if z0 is None:
            raise ValueError("hyperplanes have empty intersection")
    else:
        z0 = [GQ(0)] * space.dim
    basis = space.orth_complement([h.normal for h in hyps])
    # central point: the unique point of L orthogonal to the direction space
    proj = space.project_onto(z0, basis)
    center = [a - b for a, b in zip(z0, proj)]
    return XSubspace(space, hyps, basis, center)


def pi_a_d(space: Space, X, a, d) -> Polynomial:
    """Product of <xi, z - a>^d(xi); the empty product is 1."""
    return pi_product(space, X, a, d)


def hyperplanes_through(cfg: Configuration, L: XSubspace):
    """Hyperplanes of the configuration containing L."""
    out = []
    for h in cfg.hyperplanes:
        normal_in_perp = all(
            cfg.space.inner(h.normal, b).is_zero() for b in L.basis_VL
        )
        if normal_in_perp and h.contains(cfg.space, L.center):
            out.append(h)
    return out


def x_of_subspace(cfg: Configuration, L: XSubspace):
    """X(L): roots of the configuration orthogonal to the direction space."""
    return [
        v
        for v in cfg.x_set
        if all(cfg.space.inner(v, b).is_zero() for b in L.basis_VL)
    ]


def q_L_d(cfg: Configuration, L: XSubspace, d_map) -> Polynomial:
    """Product of l_H^d(H) over the hyperplanes of cfg containing L."""
    p = Polynomial.const(cfg.space.dim, GQ(1))
    for h in hyperplanes_through(cfg, L):
        k = d_map.get(h, 0)
        if k:
            p = p * h.form(cfg.space) ** k
    return p


def _restrict_form_to_subspace(space: Space, L: XSubspace, normal, offset):
    """Restrict the form <normal, z> - offset to L in s-coordinates.

    Returns ("zero",), ("const", value) or ("hyp", Hyperplane, scalar)
    where the original form on L equals scalar * canonical form.
    """
    coeffs = [space.inner(normal, b) for b in L.basis_VL]
    const = space.inner(normal, L.center) - GQ.of(offset)
    if all(c.is_zero() for c in coeffs):
        if const.is_zero():
            return ("zero",)
        return ("const", const)
    sub = L.induced_space()
    # write the form as <beta, s>_G - c with beta = G^{-1} coeffs: beta is
    # the coordinate vector of the orthogonal projection of normal onto V_L
    gram = [[GQ(x) for x in row] for row in sub.ip]
    beta = linalg.solve(gram, coeffs)
    canon, scalar = canonical_normal(beta)
    h = Hyperplane(canon, -const / GQ(scalar))
    return ("hyp", h, GQ(scalar))


def induced_config(cfg: Configuration, L: XSubspace, S=None) -> Configuration:
    """The configuration induced on L by shifted intersections.

    S is a finite list of shifts from the orthogonal complement of the
    direction space; default is the single shift 0.
    """
    if S is None:
        S = [[GQ(0)] * cfg.space.dim]
    sub = L.induced_space()
    found = {}
    x_r = set()
    for v in cfg.x_set:
        res = _restrict_form_to_subspace(cfg.space, L, v, GQ(0))
        if res[0] == "hyp":
            x_r.add(res[1].normal)
    for a in S:
        a = [GQ.of(x) for x in a]
        for h in cfg.hyperplanes:
            # H' = L cap (-a + H): points w of L with <normal, a + w> = offset
            shifted_offset = h.offset - cfg.space.inner(h.normal, a)
            res = _restrict_form_to_subspace(cfg.space, L, h.normal, shifted_offset)
            if res[0] != "hyp":
                continue
            hL = res[1]
            found[hL] = max(found.get(hL, 0), cfg.mult(h))
    return Configuration(sub, list(found.items()), x_set=sorted(x_r))


def pi_omega_d(cfg: Configuration, center, radius2) -> Polynomial:
    """Product of l_H^mult over hyperplanes meeting the open ball of given
    center and squared radius, by the exact squared-distance test."""
    radius2 = Fraction(radius2) if not isinstance(radius2, GQ) else radius2.rational()
    center = [GQ.of(x) for x in center]
    p = Polynomial.const(cfg.space.dim, GQ(1))
    for h in cfg.hyperplanes:
        k = cfg.mult(h)
        if not k:
            continue
        val = cfg.space.inner(h.normal, center) - h.offset
        a2 = cfg.space.inner(h.normal, h.normal).rational()
        if val.norm2() < radius2 * a2:
            p = p * h.form(cfg.space) ** k
    return p
