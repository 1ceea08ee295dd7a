"""Acceptance criteria, one printed PASS/FAIL line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the summary lines.
Two criteria fail on purpose; see README for the analysis.
"""
import time

import pytest

from fanocox.cli import LABEL_ALIASES
from fanocox.enumeration import enumerate_with_reports
from fanocox.grading_core import canonical_form
from fanocox.invariants import deformation_h1, fano_index, hilbert_values, _lagrange, prop81_applicable
from fanocox.verification import ORACLE

import test_grading_core as tg
import test_lattice_geometry as tl

KEYS = ("kind", "target", "fiber_or_center", "singular")


@pytest.fixture
def report(capsys):
    def emit(name, ok, detail):
        with capsys.disabled():
            print(f"\n{'PASS' if ok else 'FAIL'} {name}: {detail}")
        assert ok, detail
    return emit


def _norm(c):
    return tuple(LABEL_ALIASES.get(c[k], c[k]) if isinstance(c[k], str) else c[k] for k in KEYS)


def test_table_reproduction(ref, rows, report):
    t = time.time()
    bad = [r.row for r in ref.rows
           if rows.K4(r.row) != r.K4 or r.data.anticanonical != r.minus_K]
    anchors = (rows.K4(1), rows.K4(6), rows.K4(12)) == (432, 26, 98)
    report("table -K and K^4", not bad and anchors,
           f"{len(ref.rows) - len(bad)}/{len(ref.rows)} rows match, anchors {anchors}, "
           f"{time.time() - t:.1f}s")


def test_hodge_reproduction(ref, rows, report):
    bad = [r.row for r in ref.rows if rows.hodge(r.row) != r.hodge]
    report("Hodge numbers", not bad, f"{len(ref.rows) - len(bad)}/{len(ref.rows)} rows match"
           + (f", mismatches {bad}" if bad else ""))


def test_contraction_reproduction(ref, rows, report):
    bad = []
    for r in ref.rows:
        have = [_norm(c.to_json()) for c in rows.contractions(r.row)]
        want = [_norm(c) for c in r.contractions]
        if have != want:
            bad.append(r.row)
    report("elementary contractions", not bad,
           f"{len(ref.rows) - len(bad)}/{len(ref.rows)} rows match"
           + (f", mismatches {bad}" if bad else ""))


def test_enumeration_completeness(ref, report):
    t = time.time()
    found = enumerate_with_reports()
    keys = {c.data.encoding(): c for c in found}
    known = {canonical_form(r.data).encoding(): r.row for r in ref.rows}
    missing = sorted(v for k, v in known.items() if k not in keys)
    extra = [str(keys[k].data) for k in keys if k not in known]
    oracle = sorted(known[k] for k, c in keys.items() if k in known and c.status == ORACLE)
    ok = not missing and not extra and {13, 14, 15} <= set(oracle)
    report("enumeration completeness", ok,
           f"{len(found)} orbits found, {len(known)} expected, missing {missing}, "
           f"extra {extra}, requires-oracle rows {oracle}, {time.time() - t:.0f}s")


def test_deformation_formula(ref, report):
    vals = {k: deformation_h1(ref.row(k).data, a) for k, a in ((1, 12), (65, 13), (9, 0))}
    na = sorted(r.row for r in ref.rows if not prop81_applicable(r.data))
    ok = vals == {1: 0, 65: 0, 9: 12} and na == [13, 14, 15, 33, 67]
    report("deformation formula", ok, f"h1 {vals}, not applicable on {na}")


def test_fano_index_census(ref, report):
    two = sorted(r.row for r in ref.rows if fano_index(r.data) == 2)
    rest = all(fano_index(r.data) == 1 for r in ref.rows if r.row not in two)
    report("Fano index census", len(two) == 8 and rest, f"index 2 on rows {two}")


def _residuals_zero(ref):
    for r in ref.rows:
        vals = hilbert_values(r.data, 8)
        if any(_lagrange(range(5), vals[:5], x) != vals[x] for x in range(5, 9)):
            return False
    return True


def test_property_suites(ref, report):
    failures = []

    def check(name, fn, *args):
        try:
            fn(*args)
        except AssertionError as e:
            failures.append(f"{name}: {e}")

    check("git fan axioms", tg.test_git_fan_axioms_random)
    check("fiber points", tl.test_fiber_points_match_box_scan)
    for k in (1, 9, 16, 47, 58):
        check(f"fiber points row {k}", tl.test_fiber_points_match_box_scan_on_rows, ref, k)
    for seed in range(12):
        check(f"ehrhart {seed}", tl.test_ehrhart_reciprocity, seed)
    if not _residuals_zero(ref):
        failures.append("quartic fit residuals")
    for r in ref.rows:
        check(f"canonical row {r.row}", tg.test_canonical_form_orbit_constant, ref, r.row)
    check("lattice lemma, two multiples", tl.test_two_multiples_of_one_vector)
    check("lattice lemma, unit determinants", tl.test_four_unit_determinants)
    check("generates group", tl.test_generates_group_matches_minors)
    report("property suites", not failures,
           f"{len(tg.RANDOM_DATA)} random GIT fans, {len(ref.rows)} rows x 100 orbit changes"
           + (f", failures {failures}" if failures else ""))
