import pytest

from fanocox.grading_core import SpecifyingData, newton_data
from fanocox.lattice_geometry import wedge
from fanocox.verification import (
    FAIL, ORACLE, PASS, NotFano, all_small_modifications_smooth, fano_chamber,
    generically_quasismooth, locally_factorial, quasismooth_degree_test, verify_candidate,
)

from conftest import ROW_NUMBERS

ORACLE_ROWS = {13, 14, 15, 33, 42, 43, 45, 47, 49}
ORTHANT = wedge((1, 0), (0, 1))


@pytest.mark.parametrize("k", ROW_NUMBERS)
def test_table_rows_verify(rows, k):
    rep = rows.report(k)
    assert rep.overall == (ORACLE if k in ORACLE_ROWS else PASS), rep.to_json()
    assert FAIL not in rep.checks.values()


def test_oracle_subset_contains_explicit_polynomial_rows(rows):
    flagged = {k for k in ROW_NUMBERS if rows.report(k).overall == ORACLE}
    assert flagged == ORACLE_ROWS
    assert {13, 14, 15} <= flagged


def test_row1(ref):
    d = ref.row(1).data
    n = newton_data(d)
    assert fano_chamber(d, n) == ORTHANT
    assert locally_factorial(d, n, ORTHANT)
    assert quasismooth_degree_test(d, n, ORTHANT)
    rep = verify_candidate(d)
    assert rep.routes == {"factorial": "dolgachev", "smooth": "minimal-ambient"}


def test_row9_quasismooth(ref):
    d = ref.row(9).data
    n = newton_data(d)
    assert generically_quasismooth(d, n, fano_chamber(d, n))
    assert all_small_modifications_smooth(d, n) == PASS


def test_doubled_weight_breaks_local_factoriality():
    d = SpecifyingData.from_matrix([[2, 1, 1, 1, 0, 0, 0], [0, 0, 0, 0, 1, 1, 1]], (2, 1))
    n = newton_data(d)
    assert not locally_factorial(d, n, ORTHANT)
    assert all_small_modifications_smooth(d, n) == FAIL
    assert verify_candidate(d).overall == FAIL


@pytest.mark.parametrize("matrix,mu", [
    ([[1, 1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 1]], (2, 5)),      # -K = 0
    ([[1, 1, 1, 0, 0, -1, -2], [0, 0, 0, 1, 1, 1, 1]], (1, 4)),    # -K = (-1, 0)
])
def test_not_fano(matrix, mu):
    d = SpecifyingData.from_matrix(matrix, mu)
    with pytest.raises(NotFano):
        fano_chamber(d)
    rep = verify_candidate(d)
    assert rep.overall == FAIL and rep.checks == {"fano_chamber": FAIL}


def test_mu_equal_to_generator_rejected():
    d = SpecifyingData.from_matrix([[1, 1, 1, 1, 1, 1, 1], [0, 0, 0, 0, 0, 1, 1]], (1, 1))
    assert "mu equals a generator degree" in d.problems()
    with pytest.raises(ValueError):
        verify_candidate(d)


def test_reducible_variable_fails_factoriality():
    # g = T1 f + T2 h: setting T1 = 0 leaves T2 h, so T1 is not prime
    d = SpecifyingData.from_matrix([[1, 1, 0, 0, 0, 0, 0], [0, 0, 1, 1, 1, 1, 1]], (1, 1))
    rep = verify_candidate(d)
    assert rep.checks["factorial"] == FAIL
    assert rep.routes["factorial"] == "variable-not-prime"


def test_relation_in_four_variables_fails_factoriality():
    # P2 x quadric threefold: the quadric cone in four variables has class group Z^2
    d = SpecifyingData.from_matrix([[1, 1, 1, 0, 0, 0, 0], [0, 0, 0, 1, 1, 1, 1]], (0, 2))
    rep = verify_candidate(d)
    assert rep.checks["small_modifications"] == PASS
    assert rep.routes["factorial"] == "few-variables"
    assert rep.overall == FAIL


def test_report_json(ref):
    js = verify_candidate(ref.row(9).data).to_json()
    assert js["overall"] == PASS
    assert js["fano_chamber"] == [[1, 0], [0, 1]]
