"""Exact lattice geometry: planar cones, integer normal forms, polytopes and
lattice point counting.

Everything here works with Python integers (or int64 numpy arrays holding
small integers); no floating point is used.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, reduce
from itertools import combinations
from math import gcd
from typing import Iterable, Sequence

import numpy as np


class NotPointed(ValueError):
    """The vectors do not lie in an open half plane (or no positive functional)."""


Vec = tuple[int, int]


# ---------------------------------------------------------------------------
# plane vectors

def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def is_primitive(v: Sequence[int]) -> bool:
    return gcd(abs(v[0]), abs(v[1])) == 1


def primitive(v: Sequence[int]) -> Vec:
    g = gcd(abs(v[0]), abs(v[1]))
    if g == 0:
        raise ValueError("zero vector has no primitive generator")
    return (v[0] // g, v[1] // g)


def _half(v: Sequence[int]) -> int:
    # 0 for angles in [0, pi), 1 for [pi, 2 pi)
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def angle_key(v: Sequence[int], start: Sequence[int] = (1, 0)):
    """Sort key giving the counter-clockwise angle of ``v`` measured from ``start``.

    Vectors on the same ray compare by length (via the second key component).
    """
    d = det2(start, v)
    s = start[0] * v[0] + start[1] * v[1]
    # rotate v so that start becomes (1,0); compare by half plane and cross product
    rv = (s, d)
    return _AngleKey(rv)


@dataclass(frozen=True)
class _AngleKey:
    v: tuple[int, int]

    def __lt__(self, other: "_AngleKey") -> bool:
        a, b = self.v, other.v
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha < hb
        c = det2(a, b)
        if c != 0:
            return c > 0
        return a[0] * a[0] + a[1] * a[1] < b[0] * b[0] + b[1] * b[1]

    def __eq__(self, other) -> bool:
        return isinstance(other, _AngleKey) and self.v == other.v

    def __hash__(self) -> int:
        return hash(self.v)


def same_ray(u: Sequence[int], v: Sequence[int]) -> bool:
    return det2(u, v) == 0 and u[0] * v[0] + u[1] * v[1] > 0


# ---------------------------------------------------------------------------
# integer matrices

def _as_rows(M) -> list[list[int]]:
    return [[int(x) for x in row] for row in M]


def column_hnf(M) -> tuple[list[list[int]], list[list[int]], list[list[int]], int]:
    """Column-style echelon form ``M U = H`` with ``U`` unimodular.

    Returns ``(H, U, Uinv, rank)``; the last ``n - rank`` columns of ``U`` are a
    basis of the integer kernel of ``M``.
    """
    A = _as_rows(M)
    m = len(A)
    n = len(A[0]) if m else 0
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    V = [[int(i == j) for j in range(n)] for i in range(n)]  # V = U^-1

    def colop(j, k, a, b, c, d):
        # columns (j, k) <- (a*col_j + b*col_k, c*col_j + d*col_k), det = +-1
        for R in (A, U):
            for row in R:
                x, y = row[j], row[k]
                row[j], row[k] = a * x + b * y, c * x + d * y
        # inverse acts on rows j, k of V
        det = a * d - b * c
        inv = (d * det, -b * det, -c * det, a * det)
        rj, rk = V[j], V[k]
        V[j] = [inv[0] * x + inv[2] * y for x, y in zip(rj, rk)]
        V[k] = [inv[1] * x + inv[3] * y for x, y in zip(rj, rk)]

    piv = 0
    for i in range(m):
        if piv >= n:
            break
        # gcd-reduce row i entries in columns piv..n-1 into column piv
        for k in range(piv + 1, n):
            x, y = A[i][piv], A[i][k]
            if y == 0:
                continue
            g, s, t = _xgcd(x, y)
            # new piv col = s*col_piv + t*col_k ; new k col = (-y/g)*col_piv + (x/g)*col_k
            colop(piv, k, s, t, -y // g, x // g)
        if A[i][piv] != 0:
            if A[i][piv] < 0:
                _negate_col(A, U, V, piv)
            piv += 1
    return A, U, V, piv


def _negate_col(A, U, V, j):
    for R in (A, U):
        for row in R:
            row[j] = -row[j]
    V[j] = [-x for x in V[j]]


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def integer_kernel(M, n: int | None = None) -> list[list[int]]:
    """A basis (as a list of vectors) of ``{v in Z^n : M v = 0}``."""
    M = _as_rows(M)
    if not M:
        return [[int(i == j) for j in range(n)] for i in range(n)]
    _, U, _, rk = column_hnf(M)
    ncols = len(M[0])
    return [[U[i][j] for i in range(ncols)] for j in range(rk, ncols)]


def rank(M) -> int:
    M = _as_rows(M)
    if not M:
        return 0
    return column_hnf(M)[3]


def elementary_divisors(M) -> list[int]:
    """Nonzero elementary divisors (Smith normal form diagonal) of an integer matrix."""
    A = _as_rows(M)
    if not A or not A[0]:
        return []
    out = []
    while A and A[0]:
        m, n = len(A), len(A[0])
        nz = [(abs(A[i][j]), i, j) for i in range(m) for j in range(n) if A[i][j]]
        if not nz:
            break
        _, pi, pj = min(nz)
        A[0], A[pi] = A[pi], A[0]
        for row in A:
            row[0], row[pj] = row[pj], row[0]
        done = False
        while not done:
            done = True
            p = A[0][0]
            for i in range(1, m):
                q = A[i][0] // p
                if q:
                    A[i] = [x - q * y for x, y in zip(A[i], A[0])]
                if A[i][0]:
                    done = False
            for j in range(1, n):
                q = A[0][j] // p
                if q:
                    for row in A:
                        row[j] -= q * row[0]
                if A[0][j]:
                    done = False
            if not done:
                nz = [(abs(A[i][j]), i, j) for i in range(m) for j in range(n)
                      if A[i][j] and (i == 0 or j == 0)]
                _, pi, pj = min(nz)
                A[0], A[pi] = A[pi], A[0]
                for row in A:
                    row[0], row[pj] = row[pj], row[0]
                continue
            # divisibility of the remaining block
            bad = [(i, j) for i in range(1, m) for j in range(1, n) if A[i][j] % p]
            if bad:
                i, _ = bad[0]
                A[0] = [x + y for x, y in zip(A[0], A[i])]
                done = False
        out.append(abs(A[0][0]))
        A = [row[1:] for row in A[1:]]
    return out


def lattice_index(vectors: Iterable[Sequence[int]]) -> int:
    """Index in Z^2 of the subgroup generated by plane vectors (0 if rank < 2)."""
    vs = list(vectors)
    if not vs:
        return 0
    cols = [[v[0] for v in vs], [v[1] for v in vs]]
    ed = elementary_divisors(cols)
    if len(ed) < 2:
        return 0
    return ed[0] * ed[1]


def generates_group(vectors: Iterable[Sequence[int]]) -> bool:
    return lattice_index(vectors) == 1


# ---------------------------------------------------------------------------
# planar cones

@dataclass(frozen=True)
class RationalCone2:
    """A pointed cone in Q^2: ``zero``, ``ray`` or ``wedge``.

    Generators are primitive; a wedge lists them counter-clockwise.
    """
    kind: str
    generators: tuple[Vec, ...] = ()

    def __post_init__(self):
        if self.kind == "zero":
            assert self.generators == ()
        elif self.kind == "ray":
            assert len(self.generators) == 1 and is_primitive(self.generators[0])
        elif self.kind == "wedge":
            a, b = self.generators
            assert is_primitive(a) and is_primitive(b) and det2(a, b) > 0
        else:
            raise ValueError(self.kind)

    @property
    def dim(self) -> int:
        return {"zero": 0, "ray": 1, "wedge": 2}[self.kind]

    @property
    def rays(self) -> tuple[Vec, ...]:
        return self.generators

    def contains(self, v: Sequence[int], strict: bool = False) -> bool:
        return cone_contains(self, v, strict)

    def __str__(self) -> str:
        if self.kind == "zero":
            return "{0}"
        return "cone(" + ", ".join(f"({a},{b})" for a, b in self.generators) + ")"

    def to_json(self):
        return [list(g) for g in self.generators]


ZERO_CONE = RationalCone2("zero")


def wedge(a: Sequence[int], b: Sequence[int]) -> RationalCone2:
    return RationalCone2("wedge", (primitive(a), primitive(b)))


def ray(v: Sequence[int]) -> RationalCone2:
    return RationalCone2("ray", (primitive(v),))


def cone_hull(vectors: Iterable[Sequence[int]]) -> RationalCone2:
    vs = [primitive(v) for v in vectors if tuple(v) != (0, 0)]
    if not vs:
        return ZERO_CONE
    vs = sorted(set(vs))
    # find a generator g such that all others are counter-clockwise of it within angle < pi
    for g in vs:
        others = [v for v in vs if v != g]
        if all(det2(g, v) > 0 or (det2(g, v) == 0 and g[0] * v[0] + g[1] * v[1] > 0)
               for v in others):
            if not others or all(det2(g, v) == 0 for v in others):
                if others and any(v != g for v in others):
                    raise NotPointed(vs)
                return RationalCone2("ray", (g,))
            last = max(others, key=lambda v: angle_key(v, g))
            # everything must lie in the wedge (g, last) and the wedge must be < pi
            if det2(g, last) <= 0:
                raise NotPointed(vs)
            return RationalCone2("wedge", (g, last))
    raise NotPointed(vs)


def cone_contains(c: RationalCone2, v: Sequence[int], strict: bool = False) -> bool:
    v = (int(v[0]), int(v[1]))
    if c.kind == "zero":
        return v == (0, 0)
    if c.kind == "ray":
        g = c.generators[0]
        if v == (0, 0):
            return not strict
        return same_ray(g, v)
    a, b = c.generators
    da, db = det2(a, v), det2(v, b)
    if strict:
        return da > 0 and db > 0
    return da >= 0 and db >= 0


def cone_contains_cone(outer: RationalCone2, inner: RationalCone2) -> bool:
    return all(cone_contains(outer, g) for g in inner.generators)


def relint_contained(inner: RationalCone2, outer: RationalCone2) -> bool:
    """``inner`` relative interior is contained in the relative interior of ``outer``."""
    if inner.kind == "zero":
        return outer.kind == "zero"
    if outer.kind == "zero":
        return False
    if outer.kind == "ray":
        return inner.kind == "ray" and inner.generators == outer.generators
    if inner.kind == "ray":
        return cone_contains(outer, inner.generators[0], strict=True)
    return cone_contains_cone(outer, inner)


def cone_intersect(a: RationalCone2, b: RationalCone2) -> RationalCone2:
    if a.kind == "zero" or b.kind == "zero":
        return ZERO_CONE
    if a.kind == "ray":
        return a if cone_contains(b, a.generators[0]) else ZERO_CONE
    if b.kind == "ray":
        return b if cone_contains(a, b.generators[0]) else ZERO_CONE
    a1, a2 = a.generators
    b1, b2 = b.generators
    lo = a1 if cone_contains(b, a1) else (b1 if cone_contains(a, b1) else None)
    hi = a2 if cone_contains(b, a2) else (b2 if cone_contains(a, b2) else None)
    if lo is None or hi is None:
        return ZERO_CONE
    d = det2(lo, hi)
    if d > 0:
        return RationalCone2("wedge", (lo, hi))
    if lo == hi:
        return RationalCone2("ray", (lo,))
    return ZERO_CONE


def positive_functional(vectors: Sequence[Sequence[int]], bound: int = 50) -> tuple[int, ...]:
    """A small integer functional strictly positive on all given vectors."""
    vectors = [tuple(int(x) for x in v) for v in vectors]
    k = len(vectors[0]) if vectors else 2
    if k == 1:
        if all(v[0] > 0 for v in vectors):
            return (1,)
        if all(v[0] < 0 for v in vectors):
            return (-1,)
        raise NotPointed(vectors)
    best = None
    for s in range(1, 2 * bound + 1):
        for c1 in range(-min(s, bound), min(s, bound) + 1):
            rest = s - abs(c1)
            if rest > bound:
                continue
            for c2 in {rest, -rest}:
                if all(c1 * v[0] + c2 * v[1] > 0 for v in vectors):
                    best = (c1, c2)
                    break
            if best:
                break
        if best:
            return best
    raise NotPointed(vectors)


# ---------------------------------------------------------------------------
# monomial fibers

def fiber_points(Q, w: Sequence[int], kappa: Sequence[int] | None = None) -> np.ndarray:
    """All ``nu >= 0`` integer with ``Q nu = w`` as an (N, r) int64 array.

    ``Q`` is a k x r integer matrix (k = 1 or 2) whose columns admit a
    strictly positive functional.
    """
    Q = np.asarray(Q, dtype=np.int64)
    if Q.ndim == 1:
        Q = Q[None, :]
    k, r = Q.shape
    w = np.asarray(w, dtype=np.int64).reshape(k)
    cols = [tuple(int(x) for x in Q[:, i]) for i in range(r)]
    if kappa is None:
        kappa = positive_functional(cols)
    kap = np.asarray(kappa, dtype=np.int64)
    kc = kap @ Q
    kw = int(kap @ w)
    if kw < 0:
        return np.zeros((0, r), dtype=np.int64)
    if kw == 0:
        return np.zeros((1, r), dtype=np.int64) if not w.any() else np.zeros((0, r), dtype=np.int64)
    # choose pivot columns (k of them, invertible) minimising the enumerated box
    best = None
    for piv in combinations(range(r), k):
        A = Q[:, piv]
        D = int(A[0, 0]) if k == 1 else int(A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0])
        if D == 0:
            continue
        cost = sum(np.log(kw // int(kc[i]) + 1) for i in range(r) if i not in piv)
        if best is None or cost < best[0]:
            best = (cost, piv, D)
    if best is None:
        raise ValueError("degree matrix has deficient rank")
    _, piv, D = best
    free = [i for i in range(r) if i not in piv]
    states = np.zeros((1, 0), dtype=np.int64)
    rem = np.array([kw], dtype=np.int64)
    for i in free:
        ki = int(kc[i])
        counts = rem // ki + 1
        idx = np.repeat(np.arange(len(rem)), counts)
        offs = np.arange(counts.sum()) - np.repeat(np.cumsum(counts) - counts, counts)
        states = np.concatenate([states[idx], offs[:, None]], axis=1)
        rem = rem[idx] - offs * ki
    # solve pivots: A x = w - Q_free * states
    rhs = w[None, :] - states @ Q[:, free].T
    A = Q[:, piv]
    if k == 1:
        sol = rhs
    else:
        adj = np.array([[A[1, 1], -A[0, 1]], [-A[1, 0], A[0, 0]]], dtype=np.int64)
        sol = rhs @ adj.T
    ok = np.all(sol % D == 0, axis=1)
    sol = sol[ok] // D
    states = states[ok]
    ok = np.all(sol >= 0, axis=1)
    sol, states = sol[ok], states[ok]
    out = np.zeros((len(sol), r), dtype=np.int64)
    out[:, free] = states
    out[:, list(piv)] = sol
    # lexicographic order for determinism
    if len(out):
        order = np.lexsort(out.T[::-1])
        out = out[order]
    return out


def fiber_count(Q, w: Sequence[int]) -> int:
    return len(fiber_points(Q, w))


def monoid_contains(gens: Sequence[Sequence[int]], w: Sequence[int]) -> bool:
    """Is ``w`` a nonnegative integer combination of the plane vectors ``gens``?"""
    w = (int(w[0]), int(w[1]))
    if w == (0, 0):
        return True
    gens = [tuple(int(x) for x in g) for g in gens if tuple(g) != (0, 0)]
    if not gens:
        return False
    kappa = positive_functional(gens)
    if kappa[0] * w[0] + kappa[1] * w[1] <= 0:
        return False
    Q = np.array(gens, dtype=np.int64).T
    if _plane_rank(gens) < 2:
        g = primitive(gens[0])
        if det2(g, w) != 0:
            return False
        t = w[0] // g[0] if g[0] else w[1] // g[1]
        hs = [x[0] // g[0] if g[0] else x[1] // g[1] for x in gens]
        return _numeric_monoid(hs, t)
    return len(fiber_points(Q, w, kappa)) > 0


def _plane_rank(vs) -> int:
    if not vs:
        return 0
    for a, b in combinations(vs, 2):
        if det2(a, b):
            return 2
    return 1


def _numeric_monoid(gens: Sequence[int], t: int) -> bool:
    reach = [False] * (t + 1)
    reach[0] = True
    for s in range(1, t + 1):
        reach[s] = any(g <= s and reach[s - g] for g in gens)
    return reach[t]


# ---------------------------------------------------------------------------
# lattice polytopes

@dataclass(frozen=True)
class Facet:
    """Inequality ``normal . y + offset >= 0`` in affine-hull coordinates.

    ``normal`` is primitive in the dual lattice, so ``offset`` may be a
    rational stored as numerator over ``denom``.
    """
    normal: tuple[int, ...]
    offset_num: int
    denom: int


class AffineFrame:
    """Integer coordinates on the affine hull of a point set.

    ``x = base + B y`` with ``B`` a basis of the saturated direction lattice.
    """

    def __init__(self, points: np.ndarray):
        pts = np.asarray(points, dtype=np.int64)
        self.n = pts.shape[1]
        self.base = pts[0].copy()
        diffs = (pts - self.base).tolist()
        normals = integer_kernel(diffs, self.n) if any(any(r) for r in diffs) else \
            [[int(i == j) for j in range(self.n)] for i in range(self.n)]
        self.normals = normals
        if normals:
            _, U, V, rk = column_hnf(normals)
        else:
            rk = 0
            U = [[int(i == j) for j in range(self.n)] for i in range(self.n)]
            V = [row[:] for row in U]
        self.codim = rk
        self.dim = self.n - rk
        self.U = np.array(U, dtype=np.int64)
        self.Uinv = np.array(V, dtype=np.int64)

    def coords(self, x: np.ndarray, scale: int = 1) -> tuple[np.ndarray, np.ndarray]:
        """Return ``(in_hull_mask, y)`` for points ``x`` relative to ``scale * hull``."""
        z = (np.asarray(x, dtype=np.int64) - scale * self.base) @ self.Uinv.T
        mask = np.all(z[:, :self.codim] == 0, axis=1) if self.codim else np.ones(len(z), bool)
        return mask, z[:, self.codim:]


def _dd_facets(Y: np.ndarray) -> list[tuple[tuple[int, ...], int]]:
    """Facets of conv(Y) for full-dimensional integer points ``Y`` (m x d).

    Double description on the homogenised cone {(a, b): a.y + b >= 0}; the
    extreme rays are the facet inequalities.
    """
    m, d = Y.shape
    if d == 0:
        return []
    H = [tuple(int(v) for v in row) + (1,) for row in Y]
    # initial affinely independent subset
    basis = []
    for i in range(m):
        cand = basis + [i]
        if rank([H[j] for j in cand]) == len(cand):
            basis = cand
            if len(basis) == d + 1:
                break
    from fractions import Fraction
    A = [[Fraction(x) for x in H[i]] for i in basis]
    inv = _invert(A)
    rays = []
    for c in range(d + 1):
        col = [inv[r][c] for r in range(d + 1)]
        den = reduce(lambda a, b: a * b // gcd(a, b), [x.denominator for x in col], 1)
        v = [int(x * den) for x in col]
        g = reduce(gcd, (abs(x) for x in v))
        rays.append(tuple(x // g for x in v))
    Hn = np.array(H, dtype=object)
    R = [np.array(r, dtype=object) for r in rays]
    tight = []
    for r in R:
        vals = Hn.dot(r)
        tight.append(sum(1 << j for j in range(m) if vals[j] == 0))
    processed = set(basis)
    order = [i for i in range(m) if i not in processed]
    for i in order:
        h = np.array(H[i], dtype=object)
        vals = [int(h.dot(r)) for r in R]
        pos = [k for k, v in enumerate(vals) if v > 0]
        neg = [k for k, v in enumerate(vals) if v < 0]
        zer = [k for k, v in enumerate(vals) if v == 0]
        bit = 1 << i
        newR = [R[k] for k in pos] + [R[k] for k in zer]
        newT = [tight[k] for k in pos] + [tight[k] | bit for k in zer]
        if neg:
            proc_mask = 0
            for j in processed:
                proc_mask |= 1 << j
            allT = tight
            for p in pos:
                for q in neg:
                    common = tight[p] & tight[q] & proc_mask
                    if bin(common).count("1") < d - 1:
                        continue
                    adjacent = True
                    for k in range(len(R)):
                        if k != p and k != q and (allT[k] & common) == common:
                            adjacent = False
                            break
                    if not adjacent:
                        continue
                    vp, vq = vals[p], -vals[q]
                    nr = vq * R[p] + vp * R[q]
                    g = reduce(gcd, (abs(int(x)) for x in nr))
                    nr = np.array([int(x) // g for x in nr], dtype=object)
                    newR.append(nr)
                    newT.append(common | bit)
        R, tight = newR, newT
        processed.add(i)
    # recompute tight sets over all points (all processed now)
    out = []
    seen = set()
    for r in R:
        t = tuple(int(x) for x in r)
        if t in seen:
            continue
        seen.add(t)
        out.append((t[:-1], t[-1]))
    return out


def _invert(A):
    from fractions import Fraction
    n = len(A)
    M = [row[:] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(A)]
    for c in range(n):
        p = next(r for r in range(c, n) if M[r][c] != 0)
        M[c], M[p] = M[p], M[c]
        pv = M[c][c]
        M[c] = [x / pv for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


class PointConfiguration:
    """A finite set of lattice points with its convex hull combinatorics.

    Faces are represented as bitmasks over the point list.  When the points
    are all lattice points of their hull (as for monomial fibers), interior
    counts of faces are read off directly.
    """

    def __init__(self, points):
        pts = np.asarray(points, dtype=np.int64)
        if pts.ndim != 2 or len(pts) == 0:
            raise ValueError("need a nonempty point set")
        self.points = pts
        self.frame = AffineFrame(pts)
        self.dim = self.frame.dim
        _, self.local = self.frame.coords(pts)

    @cached_property
    def facets(self) -> list[tuple[tuple[int, ...], int]]:
        if self.dim == 0:
            return []
        if self.dim == 1:
            y = self.local[:, 0]
            lo, hi = int(y.min()), int(y.max())
            return [((1,), -lo), ((-1,), hi)]
        return _dd_facets(self.local)

    @cached_property
    def facet_matrix(self) -> tuple[np.ndarray, np.ndarray]:
        if not self.facets:
            return np.zeros((0, self.dim), np.int64), np.zeros(0, np.int64)
        A = np.array([f[0] for f in self.facets], dtype=np.int64)
        b = np.array([f[1] for f in self.facets], dtype=np.int64)
        return A, b

    @cached_property
    def incidence(self) -> list[int]:
        """Per facet, bitmask of the points lying on it."""
        A, b = self.facet_matrix
        vals = self.local @ A.T + b
        out = []
        for j in range(A.shape[0]):
            on = np.nonzero(vals[:, j] == 0)[0]
            out.append(sum(1 << int(i) for i in on))
        return out

    @cached_property
    def point_facets(self) -> list[int]:
        """Per point, bitmask of the facets containing it."""
        A, b = self.facet_matrix
        vals = self.local @ A.T + b
        return [sum(1 << j for j in np.nonzero(vals[i] == 0)[0].tolist()) for i in range(len(vals))]

    @cached_property
    def vertex_indices(self) -> list[int]:
        if self.dim == 0:
            return [0]
        pf = self.point_facets
        out = []
        for i, fi in enumerate(pf):
            if not any(j != i and (pf[j] & fi) == fi for j in range(len(pf))):
                out.append(i)
        # duplicates of a vertex would both be rejected; points are assumed distinct
        return out

    @cached_property
    def vertices(self) -> np.ndarray:
        return self.points[self.vertex_indices]

    @cached_property
    def faces(self) -> dict[int, int]:
        """Map face bitmask (over points) -> face dimension, including the polytope itself."""
        full = (1 << len(self.points)) - 1
        found = {full}
        frontier = [full]
        inc = self.incidence
        while frontier:
            nxt = []
            for G in frontier:
                for F in inc:
                    H = G & F
                    if H and H not in found:
                        found.add(H)
                        nxt.append(H)
            frontier = nxt
        return {G: self._mask_dim(G) for G in found}

    def _mask_dim(self, mask: int) -> int:
        idx = [i for i in range(len(self.points)) if mask >> i & 1]
        p0 = self.local[idx[0]]
        diffs = (self.local[idx[1:]] - p0).tolist()
        return rank(diffs) if diffs else 0

    def minimal_face(self, i: int) -> int:
        full = (1 << len(self.points)) - 1
        mask = full
        fi = self.point_facets[i]
        for j, F in enumerate(self.incidence):
            if fi >> j & 1:
                mask &= F
        return mask

    def face_interior_counts(self) -> dict[int, int]:
        """Number of given points in the relative interior of each face."""
        counts = {G: 0 for G in self.faces}
        for i in range(len(self.points)):
            counts[self.minimal_face(i)] += 1
        return counts

    def contains(self, y: np.ndarray, scale: int = 1, strict: bool = False) -> np.ndarray:
        """Containment test for local coordinates ``y`` in ``scale`` times the hull."""
        A, b = self.facet_matrix
        if A.shape[0] == 0:
            return np.ones(len(y), bool)
        vals = y @ A.T + scale * b
        return np.all(vals > 0, axis=1) if strict else np.all(vals >= 0, axis=1)

    def edges(self) -> list[int]:
        return [G for G, dm in self.faces.items() if dm == 1]


@dataclass(frozen=True)
class LatticePolytope:
    """Convex hull of finitely many lattice points, stored by its vertices."""
    vertices: tuple[tuple[int, ...], ...]
    ambient_dim: int = field(default=0)

    @staticmethod
    def from_points(points) -> "LatticePolytope":
        pc = PointConfiguration(_unique_rows(points))
        verts = tuple(sorted(tuple(int(x) for x in v) for v in pc.vertices))
        return LatticePolytope(verts, pc.points.shape[1])

    @cached_property
    def config(self) -> PointConfiguration:
        return PointConfiguration(np.array(self.vertices, dtype=np.int64))

    @property
    def dim(self) -> int:
        return self.config.dim

    def lattice_points(self, j: int = 1) -> np.ndarray:
        """Lattice points of ``j * P`` in local affine-hull coordinates."""
        pc = self.config
        if pc.dim == 0:
            return np.zeros((1, 0), np.int64)
        lo = j * pc.local.min(axis=0)
        hi = j * pc.local.max(axis=0)
        grids = np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij")
        Y = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        return Y[pc.contains(Y, j)]

    def count(self, j: int = 1, strict: bool = False) -> int:
        pc = self.config
        if pc.dim == 0:
            return 0 if strict else 1
        lo = j * pc.local.min(axis=0)
        hi = j * pc.local.max(axis=0)
        grids = np.meshgrid(*[np.arange(a, b + 1) for a, b in zip(lo, hi)], indexing="ij")
        Y = np.stack([g.ravel() for g in grids], axis=1).astype(np.int64)
        return int(pc.contains(Y, j, strict=strict).sum())


def _unique_rows(points) -> np.ndarray:
    pts = np.asarray(points, dtype=np.int64)
    return np.unique(pts, axis=0)


def interior_count(P: LatticePolytope, j: int = 1) -> int:
    """Lattice points in the relative interior of ``j * P`` (affine-hull lattice)."""
    if j < 1:
        raise ValueError("dilation must be positive")
    if P.dim == 0:
        return 1
    return P.count(j, strict=True)


def _normal_cone_regular(pc: PointConfiguration, edge_mask: int) -> bool:
    A, _ = pc.facet_matrix
    rows = []
    for j, F in enumerate(pc.incidence):
        if (F & edge_mask) == edge_mask:
            a = [int(x) for x in A[j]]
            g = reduce(gcd, (abs(x) for x in a))
            rows.append([x // g for x in a])
    if len(rows) != pc.dim - 1:
        return False
    ed = elementary_divisors(rows)
    return len(ed) == pc.dim - 1 and all(e == 1 for e in ed)


def dolgachev_conditions(points) -> dict[str, bool]:
    """Evaluate the three Dolgachev conditions for conv(points) in Q^r_{>=0}."""
    pc = points if isinstance(points, PointConfiguration) else PointConfiguration(_unique_rows(points))
    dim_ok = pc.dim >= 4
    hyper_ok = bool(np.all((pc.points == 0).any(axis=0)))
    edges_ok = dim_ok and all(_normal_cone_regular(pc, e) for e in pc.edges())
    return {"dimension": dim_ok, "coordinate_hyperplanes": hyper_ok, "edge_cones": edges_ok}


def is_dolgachev(points) -> bool:
    c = dolgachev_conditions(points)
    return all(c.values())
