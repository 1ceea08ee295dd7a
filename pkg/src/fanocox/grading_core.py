"""Specifying data, monomial fibers, cones, GIT fans, faces and canonical forms."""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import numpy as np

from .lattice_geometry import (
    NotPointed, PointConfiguration, RationalCone2, ZERO_CONE, angle_key, cone_contains,
    cone_hull, cone_intersect, det2, fiber_points, generates_group, positive_functional,
    relint_contained, _xgcd,
)

R = 7
ALL = frozenset(range(R))


class InvalidData(ValueError):
    """Specifying data violating one of the standing invariants."""


def _vec(v) -> tuple[int, int]:
    return (int(v[0]), int(v[1]))


@dataclass(frozen=True)
class SpecifyingData:
    """Generator degrees ``w_1..w_7`` (columns of Q) and the relation degree ``mu``."""
    columns: tuple[tuple[int, int], ...]
    mu: tuple[int, int]

    @staticmethod
    def from_matrix(Q: Sequence[Sequence[int]], mu: Sequence[int]) -> "SpecifyingData":
        if len(Q) != 2 or any(len(row) != R for row in Q):
            raise InvalidData("degree matrix must be 2 x 7")
        cols = tuple((int(Q[0][i]), int(Q[1][i])) for i in range(R))
        return SpecifyingData(cols, _vec(mu))

    @property
    def matrix(self) -> list[list[int]]:
        return [[c[0] for c in self.columns], [c[1] for c in self.columns]]

    @cached_property
    def Q(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    @property
    def anticanonical(self) -> tuple[int, int]:
        return (sum(c[0] for c in self.columns) - self.mu[0],
                sum(c[1] for c in self.columns) - self.mu[1])

    def problems(self) -> list[str]:
        """Invariant violations (empty list when the datum is valid)."""
        out = []
        cols = self.columns
        if len(cols) != R:
            return ["need exactly seven columns"]
        try:
            kappa = positive_functional(cols)
        except NotPointed:
            return ["grading is not pointed"]
        for i in range(R):
            if not generates_group(cols[:i] + cols[i + 1:]):
                out.append("not almost free")
                break
        if self.mu == (0, 0):
            out.append("mu is zero")
        if self.mu in cols:
            out.append("mu equals a generator degree")
        if kappa[0] * self.mu[0] + kappa[1] * self.mu[1] <= 0 or \
                len(fiber_points(self.Q, self.mu, kappa)) == 0:
            out.append("no monomial of degree mu")
        if not self.is_ccw_ordered():
            out.append("columns not counter-clockwise ordered")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def validate(self) -> "SpecifyingData":
        p = self.problems()
        if p:
            raise InvalidData("; ".join(p))
        return self

    def is_ccw_ordered(self) -> bool:
        try:
            eff = cone_hull(self.columns)
        except NotPointed:
            return False
        if eff.kind != "wedge":
            return False
        # columns on a common ray may come in any order
        return all(det2(self.columns[i], self.columns[j]) >= 0
                   for i in range(R) for j in range(i + 1, R))

    def ccw_sorted(self) -> "SpecifyingData":
        eff = cone_hull(self.columns)
        start = eff.generators[0]
        cols = tuple(sorted(self.columns, key=lambda c: angle_key(c, start)))
        return SpecifyingData(cols, self.mu)

    def transform(self, M: Sequence[Sequence[int]]) -> "SpecifyingData":
        """Apply an integer 2x2 matrix to all degrees (columns keep their order)."""
        def app(v):
            return (M[0][0] * v[0] + M[0][1] * v[1], M[1][0] * v[0] + M[1][1] * v[1])
        return SpecifyingData(tuple(app(c) for c in self.columns), app(self.mu))

    def to_json(self) -> dict:
        return {"degree_matrix": self.matrix, "relation_degree": list(self.mu)}

    @staticmethod
    def from_json(obj) -> "SpecifyingData":
        if isinstance(obj, str):
            obj = json.loads(obj)
        return SpecifyingData.from_matrix(obj["degree_matrix"], obj["relation_degree"])

    def encoding(self) -> tuple[int, ...]:
        return tuple(x for c in self.columns for x in c) + self.mu

    def __str__(self) -> str:
        m = self.matrix
        return "[" + " ".join(map(str, m[0])) + "; " + " ".join(map(str, m[1])) + \
            f"] mu=({self.mu[0]},{self.mu[1]})"


@dataclass(frozen=True)
class FaceIndexSet:
    indices: frozenset

    @staticmethod
    def of(it: Iterable[int]) -> "FaceIndexSet":
        return FaceIndexSet(frozenset(it))

    @property
    def mask(self) -> int:
        return sum(1 << i for i in self.indices)

    def __str__(self):
        return "{" + ",".join(str(i + 1) for i in sorted(self.indices)) + "}"


def mask_to_set(mask: int) -> frozenset:
    return frozenset(i for i in range(R) if mask >> i & 1)


class NewtonData:
    """The monomials ``M(mu)`` of degree mu and their convex hull ``N(g)``."""

    def __init__(self, d: SpecifyingData):
        self.d = d
        self.monomials = fiber_points(d.Q, d.mu)
        if len(self.monomials) == 0:
            raise InvalidData("no monomial of degree mu")
        self.supports = [sum(1 << i for i in range(R) if m[i]) for m in self.monomials]

    @cached_property
    def config(self) -> PointConfiguration:
        return PointConfiguration(self.monomials)

    @cached_property
    def vertex_supports(self) -> list[int]:
        return [self.supports[i] for i in self.config.vertex_indices]

    @cached_property
    def xbar_masks(self) -> frozenset:
        # the monomials supported in I span a face of N(g); a face with two
        # lattice points has two vertices, so counting monomials suffices
        sup = np.array(self.supports, dtype=np.int64)
        full = (1 << R) - 1
        return frozenset(mask for mask in range(1 << R)
                         if int(np.count_nonzero((sup & (full ^ mask)) == 0)) != 1)

    def monomials_in(self, mask: int) -> np.ndarray:
        idx = [i for i, s in enumerate(self.supports) if s & ~mask == 0]
        return self.monomials[idx]


@lru_cache(maxsize=4096)
def newton_data(d: SpecifyingData) -> NewtonData:
    return NewtonData(d)


def xbar_face(d: SpecifyingData, n: NewtonData, I) -> bool:
    mask = I.mask if isinstance(I, FaceIndexSet) else sum(1 << i for i in I)
    return mask in n.xbar_masks


def projected_cone(d: SpecifyingData, mask: int) -> RationalCone2:
    return _hull(tuple(sorted({d.columns[i] for i in range(R) if mask >> i & 1})))


@lru_cache(maxsize=1 << 16)
def _hull(cols: tuple) -> RationalCone2:
    return cone_hull(cols)


def effective_cone(d: SpecifyingData) -> RationalCone2:
    return cone_hull(d.columns)


def moving_cone(d: SpecifyingData) -> RationalCone2:
    c = effective_cone(d)
    for i in range(R):
        c = cone_intersect(c, cone_hull(d.columns[:i] + d.columns[i + 1:]))
    return c


@dataclass(frozen=True)
class GitFan:
    rays: tuple[RationalCone2, ...]
    chambers: tuple[RationalCone2, ...]
    orbit_cones: tuple[RationalCone2, ...]

    def chamber_containing(self, w, strict: bool = True) -> RationalCone2 | None:
        for c in self.chambers:
            if cone_contains(c, w, strict=strict):
                return c
        return None

    def git_cone(self, w) -> RationalCone2:
        """The GIT cone of ``w``: intersection of all orbit cones containing it."""
        c = None
        for oc in self.orbit_cones:
            if cone_contains(oc, w):
                c = oc if c is None else cone_intersect(c, oc)
        return c if c is not None else ZERO_CONE


@lru_cache(maxsize=4096)
def _git_fan(d: SpecifyingData) -> GitFan:
    n = newton_data(d)
    cones = set()
    for mask in n.xbar_masks:
        if mask:
            cones.add(projected_cone(d, mask))
    orbit = tuple(sorted(cones, key=lambda c: (c.kind, c.generators)))
    rays = set()
    for c in orbit:
        for g in c.generators:
            rays.add(g)
    eff = effective_cone(d)
    start = eff.generators[0]
    rays = sorted(rays, key=lambda v: angle_key(v, start))
    fan0 = GitFan((), (), orbit)
    chambers = []
    for a, b in zip(rays, rays[1:]):
        s = (a[0] + b[0], a[1] + b[1])
        chambers.append(fan0.git_cone(s))
    return GitFan(tuple(RationalCone2("ray", (r,)) for r in rays), tuple(chambers), orbit)


def git_fan(d: SpecifyingData, n: NewtonData | None = None) -> GitFan:
    return _git_fan(d)


def relevant_faces(d: SpecifyingData, n: NewtonData, lam: RationalCone2) -> list[int]:
    """Masks of the X-faces for the chamber (or ray) ``lam``."""
    out = []
    for mask in sorted(n.xbar_masks):
        if mask and relint_contained(lam, projected_cone(d, mask)):
            out.append(mask)
    return out


def toric_relevant_faces(d: SpecifyingData, lam: RationalCone2) -> list[int]:
    """Faces of the ambient toric variety: all ``I`` with relint(lam) in relint Q(gamma_I)."""
    out = []
    for mask in range(1, 1 << R):
        if relint_contained(lam, projected_cone(d, mask)):
            out.append(mask)
    return out


# ---------------------------------------------------------------------------
# canonical forms

def _basis_to_x_axis(e: Sequence[int]) -> list[list[int]]:
    p, q = e
    g, s, t = _xgcd(p, q)
    assert g == 1
    return [[s, t], [-q, p]]


def _normalize_oriented(d: SpecifyingData) -> SpecifyingData:
    eff = cone_hull(d.columns)
    M = _basis_to_x_axis(eff.generators[0])
    d1 = d.transform(M).ccw_sorted()
    off = next(c for c in d1.columns if c[1] > 0)
    a, b = off
    k = -(a // b)
    d2 = d1.transform([[1, k], [0, 1]]).ccw_sorted()
    return d2


def canonical_form(d: SpecifyingData) -> SpecifyingData:
    """Unique representative of the orbit under admissible coordinate changes.

    Both orientations are normalised so that the clockwise-most ray of Eff is
    spanned by (1,0) and the first column off that ray has first coordinate
    in ``[0, b)`` where ``b`` is its second coordinate; the lexicographically
    least encoding (columns, then mu) wins.
    """
    cands = [_normalize_oriented(d), _normalize_oriented(d.transform([[1, 0], [0, -1]]))]
    return min(cands, key=lambda x: x.encoding())


def random_admissible_change(d: SpecifyingData, rng) -> SpecifyingData:
    """Apply a random unimodular change (possibly orientation reversing) and
    a random permutation among equal-degree columns, keeping ccw order."""
    M = [[1, 0], [0, 1]]
    for _ in range(rng.integers(1, 6)):
        k = int(rng.integers(-2, 3))
        E = [[1, k], [0, 1]] if rng.integers(0, 2) else [[1, 0], [k, 1]]
        M = [[M[0][0] * E[0][0] + M[0][1] * E[1][0], M[0][0] * E[0][1] + M[0][1] * E[1][1]],
             [M[1][0] * E[0][0] + M[1][1] * E[1][0], M[1][0] * E[0][1] + M[1][1] * E[1][1]]]
    flip = bool(rng.integers(0, 2))
    if flip:
        M = [[M[0][0], M[0][1]], [-M[1][0], -M[1][1]]]
    e = d.transform(M)
    cols = list(e.columns)
    if flip:
        cols = cols[::-1]
    # shuffle within blocks of equal degree
    blocks: dict = {}
    for i, c in enumerate(cols):
        blocks.setdefault(c, []).append(i)
    out = list(cols)
    for c, idx in blocks.items():
        perm = list(idx)
        rng.shuffle(perm)
        for i, j in zip(idx, perm):
            out[j] = cols[i]
    return SpecifyingData(tuple(out), e.mu)
