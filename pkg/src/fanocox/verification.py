"""Smoothness, factoriality and Fano decisions for specifying data.

Statuses are ``pass``, ``fail`` and ``requires-oracle``; when aggregating,
``fail`` dominates ``requires-oracle`` which dominates ``pass``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np

from .grading_core import (
    R, NewtonData, SpecifyingData, effective_cone, git_fan, moving_cone,
    newton_data, relevant_faces, toric_relevant_faces,
)
from .lattice_geometry import (
    RationalCone2, angle_key, cone_contains, cone_contains_cone, generates_group,
    is_dolgachev, monoid_contains, primitive, rank, relint_contained, same_ray,
)

PASS, FAIL, ORACLE = "pass", "fail", "requires-oracle"
_ORDER = {PASS: 0, ORACLE: 1, FAIL: 2}


class NotFano(ValueError):
    """The anticanonical class is not in the interior of a chamber inside Mov."""


def combine(statuses) -> str:
    return max(statuses, key=lambda s: _ORDER[s], default=PASS)


def _cols(d: SpecifyingData, mask: int):
    return [d.columns[i] for i in range(R) if mask >> i & 1]


def locally_factorial(d: SpecifyingData, n: NewtonData, lam: RationalCone2) -> bool:
    return all(generates_group(_cols(d, I)) for I in relevant_faces(d, n, lam))


def _degree_test_face(d: SpecifyingData, I: int) -> bool:
    gens = _cols(d, I)
    mu = d.mu
    if monoid_contains(gens, mu):
        return True
    return any(monoid_contains(gens, (mu[0] - w[0], mu[1] - w[1])) for w in d.columns)


def quasismooth_degree_test(d: SpecifyingData, n: NewtonData, lam: RationalCone2) -> bool:
    return all(_degree_test_face(d, I) for I in relevant_faces(d, n, lam))


def _affine_dim(points) -> int:
    pts = [tuple(p) for p in points]
    if len(pts) <= 1:
        return 0
    p0 = pts[0]
    return rank([[a - b for a, b in zip(p, p0)] for p in pts[1:]])


def partial_supports(monomials: np.ndarray, I: int) -> dict[int, np.ndarray]:
    """For ``k`` outside ``I``: exponents of ``dg/dT_k`` restricted to the face ``I``."""
    out = {}
    r = monomials.shape[1]
    for k in range(r):
        if I >> k & 1:
            continue
        rows = []
        for nu in monomials:
            if nu[k] < 1:
                continue
            e = nu.copy()
            e[k] -= 1
            if all(e[j] == 0 for j in range(r) if not (I >> j & 1)):
                rows.append(e)
        if rows:
            out[k] = np.array(rows)
    return out


def face_generically_quasismooth(monomials: np.ndarray, I: int) -> bool:
    """Is ``V(g)`` free of gradient zeros along the torus of the face ``I``
    for generic coefficients with support ``monomials``?

    With at least two monomials supported in ``I`` the stratum is smooth by
    Bertini; with exactly one it is empty.  With none, the torus of ``I``
    lies in ``V(g)`` and the gradient reduces to the polynomials ``h_k``
    collecting the monomials linear in ``T_k``; a generic system with these
    supports has a common torus zero iff every subfamily ``J`` has mixed
    dimension ``dim sum_J conv(A_k) >= |J|``.
    """
    r = monomials.shape[1]
    inside = sum(1 for nu in monomials if all(nu[j] == 0 for j in range(r) if not (I >> j & 1)))
    if inside >= 1:
        return True
    A = partial_supports(monomials, I)
    if not A:
        return False
    if any(len(a) == 1 for a in A.values()):
        return True
    keys = sorted(A)
    for size in range(1, len(keys) + 1):
        for J in combinations(keys, size):
            diffs = []
            for k in J:
                pts = A[k]
                diffs.extend((pts[1:] - pts[0]).tolist())
            if rank(diffs) < size:
                return True
    return False


def generically_quasismooth(d: SpecifyingData, n: NewtonData, lam: RationalCone2) -> bool:
    return all(face_generically_quasismooth(n.monomials, I) for I in relevant_faces(d, n, lam))


def small_modification_chambers(d: SpecifyingData, n: NewtonData | None = None) -> list[RationalCone2]:
    fan = git_fan(d)
    mov = moving_cone(d)
    if mov.kind != "wedge":
        return []
    return [c for c in fan.chambers if c.kind == "wedge" and cone_contains_cone(mov, c)]


def fano_chamber(d: SpecifyingData, n: NewtonData | None = None) -> RationalCone2:
    mk = d.anticanonical
    mov = moving_cone(d)
    if mov.kind != "wedge" or not cone_contains(mov, mk, strict=True):
        raise NotFano("-K is not in the interior of the moving cone")
    c = git_fan(d).chamber_containing(mk, strict=True)
    if c is None or c.kind != "wedge":
        raise NotFano("-K lies on a wall of the GIT fan")
    return c


def all_small_modifications_smooth(d: SpecifyingData, n: NewtonData | None = None) -> str:
    n = n or newton_data(d)
    ch = small_modification_chambers(d, n)
    if not ch:
        return FAIL
    ok = all(locally_factorial(d, n, c) and quasismooth_degree_test(d, n, c) for c in ch)
    return PASS if ok else FAIL


def ambient_cone(d: SpecifyingData, w) -> RationalCone2:
    """The cone of the ambient fan (rays through all generator degrees) whose
    relative interior contains ``w``."""
    eff = effective_cone(d)
    start = eff.generators[0]
    rays = sorted({primitive(c) for c in d.columns}, key=lambda v: angle_key(v, start))
    for r in rays:
        if same_ray(r, w):
            return RationalCone2("ray", (r,))
    for a, b in zip(rays, rays[1:]):
        c = RationalCone2("wedge", (a, b))
        if cone_contains(c, w, strict=True):
            return c
    raise NotFano("class outside the effective cone")


def base_point_free(d: SpecifyingData, n: NewtonData | None, w, chamber: RationalCone2 | None = None) -> bool:
    """``w`` lies in the monoid of every face relevant for the ambient toric variety."""
    tau = chamber if chamber is not None else ambient_cone(d, d.anticanonical)
    return all(monoid_contains(_cols(d, I), w) for I in toric_relevant_faces(d, tau))


def z_mu_smooth(d: SpecifyingData, n: NewtonData | None = None, chamber: RationalCone2 | None = None) -> bool:
    n = n or newton_data(d)
    tau = chamber if chamber is not None else ambient_cone(d, d.anticanonical)
    for I in toric_relevant_faces(d, tau):
        if I in n.xbar_masks and not generates_group(_cols(d, I)):
            return False
    return True


def generic_prime(support: np.ndarray) -> bool:
    """Is a polynomial with generic coefficients and the given exponents prime?"""
    if len(support) == 0:
        return False
    m = support.min(axis=0)
    if m.any():
        return len(support) == 1 and int(m.sum()) == 1
    if len(support) == 1:
        return False
    dim = _affine_dim(support.tolist())
    if dim >= 2:
        return True
    # one-dimensional: lattice length of the segment must be one
    p0 = support[0]
    diffs = support - p0
    v = next(x for x in diffs if x.any())
    g = np.gcd.reduce(np.abs(v[v != 0]))
    delta = v // g
    j = int(np.nonzero(delta)[0][0])
    t = diffs[:, j] // delta[j]
    return int(t.max() - t.min()) == 1


def variables_prime(d: SpecifyingData, n: NewtonData) -> bool:
    if not generic_prime(n.monomials):
        return False
    for i in range(R):
        sub = n.monomials[n.monomials[:, i] == 0]
        if not generic_prime(sub):
            return False
    return True


def relation_variables(n: NewtonData) -> int:
    """Number of variables the generic relation depends on."""
    return int((n.monomials.sum(axis=0) > 0).sum())


def factorial_by_base_point_freeness(d: SpecifyingData, n: NewtonData) -> bool:
    """Generic factoriality via an ambient cone having ``mu`` in its relative
    interior: that cone must sit inside Mov, ``mu`` must be base point free
    on the associated toric variety and the variables must be generically prime."""
    tau_mu = ambient_cone(d, d.mu)
    mov = moving_cone(d)
    if mov.kind != "wedge" or not relint_contained(tau_mu, mov) or \
            not all(cone_contains(mov, g, strict=True) for g in tau_mu.generators):
        return False
    return base_point_free(d, n, d.mu, tau_mu) and variables_prime(d, n)


@dataclass
class VerificationReport:
    fano_chamber: RationalCone2 | None
    checks: dict[str, str] = field(default_factory=dict)
    routes: dict[str, str] = field(default_factory=dict)
    overall: str = PASS

    def to_json(self) -> dict:
        return {
            "fano_chamber": self.fano_chamber.to_json() if self.fano_chamber else None,
            "checks": dict(self.checks),
            "routes": dict(self.routes),
            "overall": self.overall,
        }


def verify_candidate(d: SpecifyingData) -> VerificationReport:
    d.validate()
    n = newton_data(d)
    try:
        lam = fano_chamber(d, n)
    except NotFano:
        rep = VerificationReport(None, {"fano_chamber": FAIL}, {}, FAIL)
        return rep
    checks = {"fano_chamber": PASS}
    routes = {}
    checks["small_modifications"] = all_small_modifications_smooth(d, n)
    chambers = small_modification_chambers(d, n)
    checks["generic_quasismooth"] = PASS if all(generically_quasismooth(d, n, c) for c in chambers) else FAIL
    checks["relation_prime"] = PASS if generic_prime(n.monomials) else FAIL

    tau = ambient_cone(d, d.anticanonical)
    if not variables_prime(d, n):
        # each T_i must stay prime in R_g, whatever route certifies factoriality
        checks["factorial"] = FAIL
        routes["factorial"] = "variable-not-prime"
    elif relation_variables(n) <= 4:
        # g lives on a threefold cone Y; factorial would force Cl(Y) = Z, i.e. Y = P_2
        checks["factorial"] = FAIL
        routes["factorial"] = "few-variables"
    elif is_dolgachev(n.config):
        checks["factorial"] = PASS
        routes["factorial"] = "dolgachev"
    elif factorial_by_base_point_freeness(d, n):
        checks["factorial"] = PASS
        routes["factorial"] = "base-point-free"
    else:
        # necessary conditions hold but neither sufficient criterion applies
        checks["factorial"] = ORACLE
        routes["factorial"] = "oracle"

    if z_mu_smooth(d, n, tau) and cone_contains(tau, d.mu):
        checks["smooth"] = PASS
        routes["smooth"] = "minimal-ambient"
    else:
        checks["smooth"] = ORACLE
        routes["smooth"] = "oracle"
    return VerificationReport(lam, checks, routes, combine(checks.values()))
