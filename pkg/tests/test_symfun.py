# tests/test_symfun.py
import pytest

from core.errors import DomainError
from core.grammar import parse
from analysis.symfun import (
    ElementaryPoly,
    PlethysmTable,
    SymmetricWitness,
    elementary_in_variables,
    evaluate_elementary,
    newton_e_in_p,
    newton_p_in_e,
    plethysm_P,
    power_sum_in_variables,
    sym_to_elementary,
    truncate_to_n,
)


def elementary(text):
    return parse(text, "elementary")


def test_newton_p_in_e():
    assert newton_p_in_e(1) == elementary("e1")
    assert newton_p_in_e(2).to_text() == "e1^2 - 2*e2"
    assert newton_p_in_e(3).to_text() == "e1^3 - 3*e1*e2 + 3*e3"


def test_newton_p_in_e_by_substitution():
    for k in range(1, 6):
        for size in (k - 1, k, k + 1):
            if size < 1:
                continue
            assert evaluate_elementary(newton_p_in_e(k), size) == power_sum_in_variables(k, size)


def test_newton_e_in_p():
    assert newton_e_in_p(2).to_text() == "(1/2)*p1^2 - (1/2)*p2"
    assert newton_e_in_p(1).to_text() == "p1"


def test_sym_to_elementary():
    e = elementary_in_variables(3)
    assert sym_to_elementary(e[2]) == elementary("e2")
    assert sym_to_elementary(power_sum_in_variables(2, 2)).to_text() == "e1^2 - 2*e2"
    assert sym_to_elementary(SymmetricWitness.zero(2)).is_zero()
    with pytest.raises(DomainError, match="not symmetric"):
        sym_to_elementary(SymmetricWitness.from_terms({(1, 0): 1}, 2))


def test_plethysm_small_cases():
    table = PlethysmTable()
    assert plethysm_P(3, 1, table) == elementary("e3")
    assert plethysm_P(1, 3, table) == newton_p_in_e(3)
    assert plethysm_P(2, 2, table).to_text() == "e2^2 - 2*e1*e3 + 2*e4"
    assert table.computed == 3
    plethysm_P(2, 2, table)
    assert table.computed == 3


def _check_plethysm(h, k, table):
    P = plethysm_P(h, k, table)
    assert P.weights() == {h * k}
    for size in (h * k, h * k + 1):
        e_h = elementary_in_variables(size)[h]
        powered = {tuple(x * k for x in exps): c for exps, c in e_h.exponent_terms().items()}
        assert evaluate_elementary(P, size) == SymmetricWitness.from_terms(powered, size)


def test_plethysm_soundness_by_substitution():
    table = PlethysmTable()
    for h, k in [(1, 1), (1, 2), (2, 1), (2, 2), (1, 3), (3, 1)]:
        _check_plethysm(h, k, table)


@pytest.mark.slow
def test_plethysm_soundness_up_to_three():
    table = PlethysmTable()
    for h in range(1, 4):
        for k in range(1, 4):
            _check_plethysm(h, k, table)


def test_plethysm_rejects_bad_indices():
    with pytest.raises(DomainError):
        plethysm_P(0, 2)


def test_truncate_to_n():
    assert truncate_to_n(elementary("e2^2 - 2*e1*e3 + 2*e4"), 2) == elementary("e2^2")
    assert truncate_to_n(elementary("e3"), 2).is_zero()
    assert isinstance(truncate_to_n(elementary("e1"), 1), ElementaryPoly)
