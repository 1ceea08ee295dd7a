"""Bounded search for specifying data of smooth Fano fourfolds.

The search runs over relation degrees ``mu`` in a window and, for each, a
depth-first walk over counter-clockwise column sequences already in the
normal form used by :func:`canonical_form` (first column on the positive
x-axis, first column off that ray sheared into ``0 <= a < b``).  Survivors
go through the full verification pipeline and are deduplicated by
canonical form.
"""
from __future__ import annotations

import logging
from functools import lru_cache
from math import gcd
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .grading_core import R, SpecifyingData, canonical_form, moving_cone, newton_data
from .lattice_geometry import angle_key, det2, primitive
from .verification import (
    FAIL, PASS, NotFano, VerificationReport, all_small_modifications_smooth, fano_chamber,
    verify_candidate,
)

log = logging.getLogger(__name__)

# v[0] + _SLOPE * v[1] > 0 on every admissible degree when entries are bounded by _SLOPE - 1
_SLOPE = 64


@dataclass(frozen=True)
class SearchBounds:
    max_abs_entry: int = 6
    max_mu: tuple[int, int] = (12, 12)

    def __post_init__(self):
        if self.max_abs_entry < 0 or min(self.max_mu) < 0:
            raise ValueError("bounds must be non-negative")

    def contains(self, d: SpecifyingData) -> bool:
        e = self.max_abs_entry
        return all(abs(x) <= e for c in d.columns for x in c) and \
            abs(d.mu[0]) <= self.max_mu[0] and abs(d.mu[1]) <= self.max_mu[1]


@dataclass(frozen=True)
class Candidate:
    data: SpecifyingData
    report: VerificationReport

    @property
    def status(self) -> str:
        return self.report.overall


def _count(cols: tuple, mu) -> int:
    """Number of monomials of degree ``mu`` in variables of the given degrees
    (all degrees lie in the upper half plane, off the negative x-axis)."""
    return _count_cached(tuple(sorted(cols)), tuple(mu))


@lru_cache(maxsize=1 << 18)
def _count_cached(cols: tuple, mu) -> int:
    if not cols:
        return 1 if mu == (0, 0) else 0
    w, rest = cols[0], cols[1:]
    f = (lambda v: v[0] + _SLOPE * v[1])
    total = 0
    m = mu
    while f(m) >= 0 and m[1] >= 0:
        total += _count_cached(rest, m)
        if total > 1:
            return total
        m = (m[0] - w[0], m[1] - w[1])
    return total


def _face_ok(face, mu) -> bool:
    """A face whose cone meets the interior of Mov: if it is an X-bar face
    (not exactly one monomial) its degrees must generate the lattice."""
    g = 0
    for i in range(len(face)):
        for j in range(i + 1, len(face)):
            g = gcd(g, det2(face[i], face[j]))
    return g == 1 or _count(face, mu) == 1


def _vectors(e: int) -> list[tuple[int, int]]:
    vs = [(x, y) for y in range(0, e + 1) for x in range(-e, e + 1)
          if (x, y) != (0, 0) and not (y == 0 and x < 0)]
    return sorted(vs, key=lambda v: angle_key(v))


def _sequences(mu, e: int, prune: bool):
    """Counter-clockwise 7-tuples in normal form; with ``prune`` the pair
    condition is applied as soon as both columns and Mov's side are known."""
    vecs = _vectors(e)
    memo: dict = {}

    def face_ok(face) -> bool:
        r = memo.get(face)
        if r is None:
            r = memo[face] = _face_ok(face, mu)
        return r
    cols: list[tuple[int, int]] = []

    def relevant(a: int, b: int, wb) -> bool:
        # cone(w_a, w_b) meets the interior of Mov = cone(w_2, w_6)
        wa = cols[a]
        if det2(wa, wb) <= 0:
            return False
        if a == 0 and det2(cols[1], wb) <= 0:
            return False
        if b == 6 and det2(wa, cols[5]) <= 0:
            return False
        return True

    def admissible(v) -> bool:
        j = len(cols)
        if not prune or j < 2:
            return True
        for a in range(j):
            if not relevant(a, j, v):
                continue
            if not face_ok((cols[a], v)):
                return False
            for k in range(a + 1, j):
                if not face_ok((cols[a], cols[k], v)):
                    return False
        return True

    def rec(start: int):
        j = len(cols)
        if j == R:
            yield tuple(cols)
            return
        for k in range(start, len(vecs)):
            v = vecs[k]
            if j == 0:
                if v[1] != 0:
                    break
            elif cols[0][1] == 0 and all(c[1] == 0 for c in cols) and v[1] > 0:
                # first column off the initial ray: sheared into 0 <= a < b
                if not 0 <= v[0] < v[1]:
                    continue
            if j >= 1 and det2(cols[0], v) < 0:
                continue
            if not admissible(v):
                continue
            cols.append(v)
            yield from rec(k)
            cols.pop()

    yield from rec(0)


def _quick_reject(cols, mu) -> bool:
    """Mov = cone(w_2, w_6) must be two-dimensional and contain -K inside."""
    if mu in cols:
        return True
    w2, w6 = cols[1], cols[5]
    if det2(w2, w6) <= 0:
        return True
    k = (sum(c[0] for c in cols) - mu[0], sum(c[1] for c in cols) - mu[1])
    if det2(w2, k) <= 0 or det2(k, w6) <= 0:
        return True
    return not _almost_free(cols)


def _almost_free(cols) -> bool:
    minors = {(i, j): abs(det2(cols[i], cols[j])) for i in range(R) for j in range(i + 1, R)}
    for k in range(R):
        g = 0
        for (i, j), m in minors.items():
            if i != k and j != k:
                g = gcd(g, m)
                if g == 1:
                    break
        if g != 1:
            return False
    return True


def _survives(d: SpecifyingData) -> VerificationReport | None:
    if d.problems():
        return None
    if moving_cone(d).kind != "wedge":
        return None
    n = newton_data(d)
    try:
        fano_chamber(d, n)
    except NotFano:
        return None
    if all_small_modifications_smooth(d, n) != PASS:
        return None
    rep = verify_candidate(d)
    return None if rep.overall == FAIL else rep


def _mu_window(b: SearchBounds) -> list[tuple[int, int]]:
    A, B = b.max_mu
    return [(x, y) for y in range(0, B + 1) for x in range(-A, A + 1)
            if (x, y) != (0, 0) and not (y == 0 and x < 0)]


def _search_mu(args) -> list[tuple[SpecifyingData, VerificationReport]]:
    mu, e, prune = args
    out = []
    for cols in _sequences(mu, e, prune):
        if _quick_reject(cols, mu):
            continue
        d = SpecifyingData(cols, mu)
        rep = _survives(d)
        if rep is not None:
            out.append((d, rep))
    return out


def enumerate_with_reports(b: SearchBounds = SearchBounds(), prune: bool = True,
                           jobs: int = 1) -> list[Candidate]:
    tasks = [(mu, b.max_abs_entry, prune) for mu in _mu_window(b)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            parts = list(ex.map(_search_mu, tasks, chunksize=4))
    else:
        parts = [_search_mu(t) for t in tasks]
    found: dict[tuple, Candidate] = {}
    for part in parts:
        for d, rep in part:
            c = canonical_form(d)
            if not b.contains(c):
                continue
            key = c.encoding()
            if key not in found:
                found[key] = Candidate(c, verify_candidate(c) if c != d else rep)
    log.info("enumeration: %d orbits", len(found))
    return [found[k] for k in sorted(found)]


def enumerate_candidates(b: SearchBounds = SearchBounds(), prune: bool = True,
                         jobs: int = 1) -> list[SpecifyingData]:
    """Canonical specifying data within ``b`` passing every necessary
    condition; ``requires-oracle`` candidates are kept."""
    return [c.data for c in enumerate_with_reports(b, prune, jobs)]


@dataclass(frozen=True)
class ProductSplit:
    """``X = Y x P`` where ``Y`` is a hypersurface of degree ``degree`` in the
    weighted projective space with ``factor_weights`` and ``P`` has ``other_weights``."""
    factor_indices: tuple[int, ...]
    factor_weights: tuple[int, ...]
    degree: int
    other_indices: tuple[int, ...]
    other_weights: tuple[int, ...]


def product_split(d: SpecifyingData) -> ProductSplit | None:
    rays = sorted({primitive(c) for c in d.columns})
    if len(rays) != 2:
        return None
    u1, u2 = rays
    if abs(det2(u1, u2)) != 1:
        return None
    n = newton_data(d)
    for a, b in ((u1, u2), (u2, u1)):
        B1 = tuple(i for i in range(R) if primitive(d.columns[i]) == a)
        B2 = tuple(i for i in range(R) if primitive(d.columns[i]) == b)
        mask = sum(1 << i for i in B1)
        if all(s & ~mask == 0 for s in n.supports):
            h = _heights(d, B1, a)
            k = _heights(d, B2, b)
            deg = _height(d.mu, a)
            return ProductSplit(B1, h, deg, B2, k)
    return None


def _height(w, v) -> int:
    return w[0] // v[0] if v[0] else w[1] // v[1]


def _heights(d: SpecifyingData, idx, v) -> tuple[int, ...]:
    return tuple(_height(d.columns[i], v) for i in idx)
