"""Invariants of the Fano fourfold attached to specifying data.

Everything here is exact.  Hodge numbers come from additivity of the
Hodge-Deligne polynomial over the torus strata of ``X`` together with the
Danilov-Khovanskii formulas for nondegenerate hypersurfaces in tori.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, gcd

import numpy as np

from .grading_core import R, NewtonData, SpecifyingData, moving_cone, newton_data, relevant_faces
from .lattice_geometry import PointConfiguration, det2, fiber_count, fiber_points, same_ray
from .verification import base_point_free, ambient_cone, fano_chamber


class FitInconsistent(ValueError):
    """The Hilbert function is not matched by a quartic on k = 0..6."""


class StratumDegenerate(ValueError):
    """A stratum of X is inconsistent with smoothness of X."""


class HodgeInconsistent(ValueError):
    """The assembled E-polynomial is not that of a smooth projective fourfold with h11 = 2."""


class NotApplicable(ValueError):
    """Hypotheses of the deformation formula fail."""


@dataclass(frozen=True)
class HodgeTriple:
    h21: int
    h31: int
    h22: int

    def as_list(self) -> list[int]:
        return [self.h21, self.h31, self.h22]


def anticanonical_class(d: SpecifyingData) -> tuple[int, int]:
    return d.anticanonical


def fano_index(d: SpecifyingData) -> int:
    a, b = d.anticanonical
    return gcd(a, b)


def hilbert_dim_ambient(d: SpecifyingData, w) -> int:
    return fiber_count(d.Q, w)


def hilbert_dim(d: SpecifyingData, w) -> int:
    """dim R_w = #M(w) - #M(w - mu)."""
    w = (int(w[0]), int(w[1]))
    v = (w[0] - d.mu[0], w[1] - d.mu[1])
    return fiber_count(d.Q, w) - fiber_count(d.Q, v)


def hilbert_values(d: SpecifyingData, kmax: int = 6) -> list[int]:
    a, b = d.anticanonical
    return [hilbert_dim(d, (k * a, k * b)) for k in range(kmax + 1)]


def _lagrange(xs, ys, x) -> Fraction:
    total = Fraction(0)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = Fraction(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term *= Fraction(x - xj, xi - xj)
        total += term
    return total


def anticanonical_degree(d: SpecifyingData) -> int:
    """K^4 as 24 times the leading coefficient of the Hilbert polynomial of -K."""
    vals = hilbert_values(d, 6)
    xs = list(range(5))
    for k in (5, 6):
        if _lagrange(xs, vals[:5], k) != vals[k]:
            raise FitInconsistent(f"quartic fit misses k={k}")
    # leading coefficient is the 4th finite difference over 4!
    diff4 = sum((-1) ** (4 - i) * comb(4, i) * vals[i] for i in range(5))
    return diff4


# ---------------------------------------------------------------------------
# Hodge-Deligne polynomials

def _epoly_mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for (p, q), x in a.items():
        for (s, t), y in b.items():
            out[(p + s, q + t)] = out.get((p + s, q + t), 0) + x * y
    return {k: v for k, v in out.items() if v}


def torus_epoly(m: int) -> dict:
    """E((C*)^m) = (uv - 1)^m."""
    return {(k, k): comb(m, k) * (-1) ** (m - k) for k in range(m + 1)}


class _Lin:
    """Value ``c + a*t`` with a single free unknown ``t``."""
    __slots__ = ("c", "a")

    def __init__(self, c=0, a=0):
        self.c, self.a = c, a

    def __add__(self, o):
        o = o if isinstance(o, _Lin) else _Lin(o)
        return _Lin(self.c + o.c, self.a + o.a)

    __radd__ = __add__

    def __neg__(self):
        return _Lin(-self.c, -self.a)

    def __sub__(self, o):
        return self + (-(o if isinstance(o, _Lin) else _Lin(o)))

    def __rsub__(self, o):
        return (-self) + o

    def __mul__(self, k: int):
        return _Lin(self.c * k, self.a * k)

    __rmul__ = __mul__

    def at(self, t) -> Fraction:
        return Fraction(self.c) + self.a * Fraction(t)


def _phi(n: int, i: int, lstar) -> int:
    return sum((-1) ** (i + j) * comb(n + 1, i - j) * lstar(j) for j in range(1, i + 1))


def dk_hypersurface(n: int, lstar, face_sums) -> dict:
    """E-polynomial of a nondegenerate hypersurface in (C*)^n with full
    dimensional Newton polytope.

    ``lstar(j)`` counts interior lattice points of ``j*Delta`` and
    ``face_sums[k]`` is the sum of ``l*`` over the ``k``-dimensional faces.
    Values are ``_Lin``; at most one entry (``e^{2,1}`` for ``n = 5``) is free.
    """
    e: dict = {}
    for p in range(n):
        for q in range(n):
            if p + q > n - 1:
                e[(p, q)] = _Lin((-1) ** (n - p - 1) * comb(n, p + 1) if p == q else 0)
    for p in range(1, n):
        v = (-1) ** (n - 1) * face_sums.get(p + 1, 0)
        e[(p, 0)] = _Lin(v)
        e[(0, p)] = _Lin(v)
    free_used = False
    for p in range(n - 1, -1, -1):
        row = (-1) ** (p + n - 1) * comb(n, p + 1) + (-1) ** (n - 1) * _phi(n, n - p, lstar)
        unknown = [q for q in range(n) if (p, q) not in e]
        while len(unknown) > 1:
            if free_used:
                raise StratumDegenerate("more than one free Hodge-Deligne number")
            q = unknown.pop(0)
            e[(p, q)] = _Lin(0, 1)
            e[(q, p)] = e[(p, q)]
            free_used = True
        if unknown:
            q = unknown[0]
            known = sum((e[(p, s)] for s in range(n) if s != q), _Lin())
            e[(p, q)] = _Lin(row) - known
            e[(q, p)] = e[(p, q)]
        else:
            total = sum((e[(p, s)] for s in range(n)), _Lin())
            if total.a == 0 and total.c != row:
                raise StratumDegenerate("row sum mismatch")
    return e


def _stratum_points(d: SpecifyingData, idx: list[int], j: int) -> np.ndarray:
    QI = d.Q[:, idx]
    return fiber_points(QI, (j * d.mu[0], j * d.mu[1]))


def _hypersurface_stratum(d: SpecifyingData, n: NewtonData, mask: int) -> dict:
    idx = [i for i in range(R) if mask >> i & 1]
    pts = n.monomials_in(mask)[:, idx]
    pc = PointConfiguration(pts)
    dim = pc.dim
    amb = len(idx) - 2
    if dim == 0:
        raise StratumDegenerate(f"single monomial on face {idx}")

    def lstar(j: int) -> int:
        if j == 1:
            X = pc.points
        else:
            X = _stratum_points(d, idx, j)
        inside, y = pc.frame.coords(X, scale=j)
        return int(pc.contains(y[inside], j, strict=True).sum())

    cache: dict = {}

    def lstar_c(j):
        if j not in cache:
            cache[j] = lstar(j)
        return cache[j]

    face_sums: dict = {}
    counts = pc.face_interior_counts()
    for G, dm in pc.faces.items():
        face_sums[dm] = face_sums.get(dm, 0) + counts[G]
    e = dk_hypersurface(dim, lstar_c, face_sums)
    torus = torus_epoly(amb - dim)
    out: dict = {}
    for (p, q), v in e.items():
        for (s, t), c in torus.items():
            k = (p + s, q + t)
            out[k] = out.get(k, _Lin()) + v * c
    return out


def hodge_deligne(d: SpecifyingData) -> dict:
    """Assembled e^{p,q}(X) with the free unknown resolved by h^{1,1} = 2."""
    n = newton_data(d)
    lam = fano_chamber(d, n)
    total: dict = {}
    for mask in relevant_faces(d, n, lam):
        size = bin(mask).count("1")
        if len(n.monomials_in(mask)) == 0:
            part = {k: _Lin(v) for k, v in torus_epoly(size - 2).items()}
        else:
            part = _hypersurface_stratum(d, n, mask)
        for k, v in part.items():
            total[k] = total.get(k, _Lin()) + v
    e11 = total.get((1, 1), _Lin())
    if e11.a:
        t = Fraction(2 - e11.c, e11.a)
    else:
        t = Fraction(0)
    out = {}
    for k, v in total.items():
        x = v.at(t)
        if x.denominator != 1:
            raise HodgeInconsistent("non-integral Hodge-Deligne number")
        if x:
            out[k] = int(x)
    _check_diamond(out)
    return out


def _check_diamond(e: dict) -> None:
    def h(p, q):
        return (-1) ** (p + q) * e.get((p, q), 0)
    for (p, q) in e:
        if not (0 <= p <= 4 and 0 <= q <= 4):
            raise HodgeInconsistent(f"e^{p},{q} outside the diamond")
    for p in range(5):
        for q in range(5):
            if h(p, q) != h(q, p) or h(p, q) != h(4 - p, 4 - q) or h(p, q) < 0:
                raise HodgeInconsistent(f"symmetry fails at ({p},{q})")
    if h(0, 0) != 1 or h(1, 1) != 2 or any(h(p, 0) for p in range(1, 5)):
        raise HodgeInconsistent("not the diamond of a Fano fourfold with Picard number two")
    if h(1, 2) != h(2, 1):
        raise HodgeInconsistent("e^{1,2} and e^{2,1} disagree")


def hodge_numbers(d: SpecifyingData) -> HodgeTriple:
    e = hodge_deligne(d)
    return HodgeTriple(-e.get((2, 1), 0), e.get((3, 1), 0), e.get((2, 2), 0))


def euler_number(d: SpecifyingData) -> int:
    return sum(hodge_deligne(d).values())


# ---------------------------------------------------------------------------
# deformations

def prop81_applicable(d: SpecifyingData) -> bool:
    n = newton_data(d)
    if not base_point_free(d, n, d.mu, ambient_cone(d, d.anticanonical)):
        return False
    for w in d.columns:
        diff = (w[0] - d.mu[0], w[1] - d.mu[1])
        if fiber_count(d.Q, diff) > 0:
            return False
    return True


def deformation_h1(d: SpecifyingData, dim_aut_X: int) -> int:
    if not prop81_applicable(d):
        raise NotApplicable("deformation formula hypotheses fail")
    return hilbert_dim_ambient(d, d.mu) - 1 + 2 - \
        sum(hilbert_dim_ambient(d, w) for w in d.columns) + dim_aut_X


# ---------------------------------------------------------------------------
# elementary contractions

@dataclass(frozen=True)
class ContractionDescriptor:
    kind: str                      # fibration | birational | product
    via_small_modification: bool
    base_or_target: str
    fiber_or_center: str
    singular_target: bool

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "small_modification": self.via_small_modification,
            "target": self.base_or_target,
            "fiber_or_center": self.fiber_or_center,
            "singular": self.singular_target,
        }


def _weight_list(weights) -> str:
    ws = sorted(weights)
    parts = []
    for a in sorted(set(ws)):
        k = ws.count(a)
        parts.append(f"{a}^{k}" if k > 1 else f"{a}")
    return ",".join(parts)


def projective_label(weights) -> str:
    if len(weights) == 1:
        return "pt"
    if all(a == 1 for a in weights):
        return f"P_{len(weights) - 1}"
    return "P_{" + _weight_list(weights) + "}"


def hypersurface_label(degree: int, weights) -> str:
    if all(a == 1 for a in weights):
        return f"Y_{{{degree};{len(weights) - 1}}}"
    return f"Y_{{{degree};{_weight_list(weights)}}}"


_CENTER_NAMES = {(1, 2): "pt", (2, 2): "P_1", (2, 3): "P_1xP_1"}


@dataclass(frozen=True)
class _WeightedHypersurface:
    """``V(f)`` in a weighted projective space, ``f`` given by its support."""
    weights: tuple[int, ...]
    degree: int
    support: np.ndarray          # rows: exponent vectors over the weights

    def linear_variable(self) -> int | None:
        for k in range(len(self.weights)):
            e = np.zeros(len(self.weights), dtype=np.int64)
            e[k] = 1
            if len(self.support) and np.any(np.all(self.support == e, axis=1)):
                return k
        return None

    def label(self, simplify: bool) -> str:
        if len(self.support) == 0:
            return projective_label(self.weights)
        k = self.linear_variable()
        if k is not None:
            rest = self.weights[:k] + self.weights[k + 1:]
            return projective_label(rest)
        if simplify and all(a == 1 for a in self.weights):
            n = len(self.weights) - 1
            if self.degree == 1:
                return projective_label(self.weights[:-1])
            if (self.degree, n) in _CENTER_NAMES:
                return _CENTER_NAMES[(self.degree, n)]
        return hypersurface_label(self.degree, self.weights)

    def singular(self) -> bool:
        """Singular for generic coefficients: a non-quasismooth point, or a
        point with nontrivial isotropy in the weighted projective space."""
        m = len(self.weights)
        k = self.linear_variable()
        if k is not None:
            rest = self.weights[:k] + self.weights[k + 1:]
            return not all(a == 1 for a in rest)
        from .verification import face_generically_quasismooth
        supports = [sum(1 << i for i in range(m) if row[i]) for row in self.support]
        for I in range(1, 1 << m):
            inside = [s for s in supports if s & ~I == 0]
            if len(inside) == 1:
                continue
            if len(inside) == 0 or _vertex_count(self.support, supports, I) != 1:
                g = 0
                for i in range(m):
                    if I >> i & 1:
                        g = gcd(g, self.weights[i])
                if g > 1:
                    return True
                if not face_generically_quasismooth(self.support, I):
                    return True
        return False


def _vertex_count(support: np.ndarray, supports, I: int) -> int:
    idx = [j for j, s in enumerate(supports) if s & ~I == 0]
    if len(idx) <= 1:
        return len(idx)
    return len(PointConfiguration(support[idx]).vertex_indices)


def _functional(v) -> tuple[int, int]:
    """Primitive linear form vanishing on ``v``."""
    return (-v[1], v[0])


def _side_columns(d: SpecifyingData, ray, clockwise: bool) -> list[int]:
    """Columns strictly beyond ``ray`` (outside Mov) on the given side."""
    out = []
    for i, w in enumerate(d.columns):
        s = det2(ray, w)
        if (s < 0 if clockwise else s > 0):
            out.append(i)
    return out


def _contraction(d: SpecifyingData, n: NewtonData, lam, v, clockwise: bool) -> ContractionDescriptor:
    small = not any(same_ray(g, v) for g in lam.generators)
    S = [i for i, w in enumerate(d.columns) if same_ray(w, v)]
    beyond = _side_columns(d, v, clockwise)
    heights = tuple(_height(d.columns[i], v) for i in S)
    if not beyond:
        l = _functional(v)
        T = [i for i in range(R) if i not in S]
        lw = tuple(l[0] * d.columns[i][0] + l[1] * d.columns[i][1] for i in T)
        if lw[0] < 0:
            l = (-l[0], -l[1])
            lw = tuple(-a for a in lw)
        lmu = l[0] * d.mu[0] + l[1] * d.mu[1]
        if same_ray(d.mu, v):
            mask = sum(1 << i for i in S)
            sup = n.monomials_in(mask)[:, S]
            base = _WeightedHypersurface(heights, _height(d.mu, v), sup).label(simplify=False)
        else:
            base = projective_label(heights)
        if lmu == 0:
            fiber = projective_label(lw)
        else:
            fiber = hypersurface_label(lmu, lw)
        return ContractionDescriptor("fibration", small, base, fiber, False)
    if len(beyond) != 1:
        raise StratumDegenerate("birational contraction without a unique exceptional column")
    c = beyond[0]
    wc = d.columns[c]
    sign = 1 if det2(wc, d.columns[S[0]]) > 0 else -1

    def phi(u):
        return sign * det2(wc, u)

    keep = [i for i in range(R) if i != c]
    weights = tuple(phi(d.columns[i]) for i in keep)
    target = _WeightedHypersurface(weights, phi(d.mu), n.monomials[:, keep])
    face = sum(1 << i for i in S) | (1 << c)
    sup = n.monomials_in(face)[:, S]
    if len(S) == 1:
        center = "pt"
    else:
        pv = phi(v)
        deg = phi(d.mu) // pv if phi(d.mu) % pv == 0 else 0
        center = _WeightedHypersurface(heights, deg, sup).label(simplify=True)
    others = [i for i in range(R) if i != c and i not in S]
    # g' in the square of the ideal of the other variables: singular along the center
    low = int(n.monomials[:, others].sum(axis=1).min())
    singular = low >= 2 or target.singular()
    return ContractionDescriptor("birational", small, target.label(simplify=False), center, singular)


def _height(w, v) -> int:
    return w[0] // v[0] if v[0] else w[1] // v[1]


def elementary_contractions(d: SpecifyingData) -> list[ContractionDescriptor]:
    from .enumeration import product_split
    ps = product_split(d)
    if ps is not None:
        sup = newton_data(d).monomials[:, list(ps.factor_indices)]
        Y = _WeightedHypersurface(ps.factor_weights, ps.degree, sup).label(simplify=False)
        return [ContractionDescriptor("product", False, Y, projective_label(ps.other_weights), False)]
    n = newton_data(d)
    lam = fano_chamber(d, n)
    mov = moving_cone(d)
    first, second = mov.generators
    return [_contraction(d, n, lam, first, True), _contraction(d, n, lam, second, False)]
