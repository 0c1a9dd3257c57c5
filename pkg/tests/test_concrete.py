# tests/test_concrete.py
import pytest

from core.errors import DomainError
from core.grammar import parse
from analysis.concrete import (
    ConcretePoly,
    SlotSubstitution,
    apply_permutation,
    elementary_tuple,
    is_invariant,
    monomials_of_multidegree,
    orbit_sum,
    project_slots,
    substitute_slot,
    symmetrize_monomial,
    to_orbit_basis,
)

EXAMPLE_N3 = "x1(1)*x1(2)*x2(3) + x1(1)*x2(2)*x1(3) + x2(1)*x1(2)*x1(3)"


def concrete(text, n, m, coeff=None):
    return parse(text, "concrete", m=m, n=n, coeff=coeff)


def test_substitute_slot(poly):
    assert substitute_slot(poly("y1*y2"), 2, 3).to_text() == "x1(2)*x2(2)"
    assert substitute_slot(poly("y1 + 1"), 1, 1).to_text() == "x1(1) + 1"
    assert substitute_slot(poly("0", m=2), 1, 2).is_zero()
    with pytest.raises(DomainError, match="slot 4 out of range"):
        substitute_slot(poly("y1"), 4, 3)


def test_slot_substitution_uses_only_its_slot_variables(poly):
    image = SlotSubstitution(poly("y1^2*y2 + y2"), 3).apply(4)
    for exps in image.exponent_terms():
        assert not any(exps[:4]) and not any(exps[6:])
    assert image == substitute_slot(poly("y1^2*y2 + y2"), 3, 4)
    with pytest.raises(DomainError):
        SlotSubstitution(poly("y1"), 0).apply(2)


def test_apply_permutation():
    p = concrete("x1(1)*x2(2)", 2, 2)
    assert apply_permutation(p, (2, 1)) == concrete("x1(2)*x2(1)", 2, 2)
    assert apply_permutation(p, (1, 2)) == p
    invariant = concrete("x1(1) + x1(2)", 2, 1)
    assert apply_permutation(invariant, (2, 1)) == invariant
    with pytest.raises(DomainError):
        apply_permutation(p, (1, 1))


def test_is_invariant():
    assert is_invariant(concrete("x1(1) + x1(2)", 2, 1))
    assert not is_invariant(concrete("x1(1)", 2, 1))
    assert is_invariant(orbit_sum(parse("E{y1^2:1, y1*y2:1}", "orbit-index"), 3))


def test_elementary_tuple(poly):
    y1, y2 = poly("y1", m=2), poly("y2", m=2)
    assert elementary_tuple([y1, y2], [2, 1], 3).to_text() == EXAMPLE_N3
    assert len(elementary_tuple([y1, y2], [2, 1], 4)) == 12
    assert elementary_tuple([poly("y1")], [1], 2).to_text() == "x1(1) + x1(2)"
    assert elementary_tuple([y1, y2], [2, 2], 3).is_zero()
    with pytest.raises(DomainError, match="length mismatch"):
        elementary_tuple([y1, y2], [1], 3)


def test_elementary_tuple_collapses_repeated_arguments(poly):
    f, g = poly("y1", m=2), poly("y1*y2 + y2", m=2)
    for n in (4, 5):
        assert elementary_tuple([f, f, g], [1, 2, 1], n) == elementary_tuple([f, g], [3, 1], n).scale(3)


def test_elementary_tuple_is_symmetric_in_its_arguments(poly):
    f, g, h = poly("y1", m=2), poly("y2^2", m=2), poly("y1 + 2*y2", m=2)
    base = elementary_tuple([f, g, h], [1, 2, 1], 4)
    assert elementary_tuple([h, f, g], [1, 1, 2], 4) == base
    assert elementary_tuple([g, h, f], [2, 1, 1], 4) == base


def test_elementary_tuple_of_non_monomial_arguments(poly):
    f = poly("y1 + y2", m=2)
    slots = [substitute_slot(f, i, 3) for i in (1, 2, 3)]
    assert elementary_tuple([f], [1], 3) == slots[0] + slots[1] + slots[2]
    assert elementary_tuple([f], [2], 3) == slots[0] * slots[1] + slots[0] * slots[2] + slots[1] * slots[2]
    assert elementary_tuple([f], [3], 3) == slots[0] * slots[1] * slots[2]


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_single_argument_matches_orbit_sum(poly, orbit, k):
    mu = poly("y1*y2^2", m=2)
    assert elementary_tuple([mu], [k], 4) == orbit_sum(orbit(f"E{{y1*y2^2:{k}}}", m=2), 4)


def test_orbit_sum(orbit, zz):
    assert orbit_sum(orbit("E{y1:2, y2:1}"), 3).to_text() == EXAMPLE_N3
    assert orbit_sum(orbit("E{y1:3}"), 2).is_zero()
    assert orbit_sum(orbit("E{}", m=1), 2) == ConcretePoly.one(2, 1, zz)


def test_orbit_sum_matches_elementary_tuple_at_n4(poly, orbit):
    y1, y2 = poly("y1", m=2), poly("y2", m=2)
    assert orbit_sum(orbit("E{y1:2, y2:1}"), 4) == elementary_tuple([y1, y2], [2, 1], 4)


def test_to_orbit_basis(orbit):
    alpha = orbit("E{y1:2, y2:1}")
    x = to_orbit_basis(orbit_sum(alpha, 3))
    assert x.to_text() == "E{y1:2, y2:1}"
    p1 = concrete("x1(1) + x1(2)", 2, 1)
    assert to_orbit_basis(p1 ** 2).to_text() == "E{y1^2:1} + 2*E{y1:2}"
    with pytest.raises(DomainError, match="not S_n-invariant"):
        to_orbit_basis(concrete("x1(1)", 2, 1))


def test_project_slots(orbit):
    alpha = orbit("E{y1:1, y2:1}")
    assert project_slots(orbit_sum(alpha, 3), 2) == orbit_sum(alpha, 2)
    assert project_slots(orbit_sum(orbit("E{y1:3}"), 3), 2).is_zero()


def test_monomials_of_multidegree_and_symmetrize():
    found = monomials_of_multidegree(2, 1, (2,))
    assert found == [(2, 0), (1, 1), (0, 2)]
    assert symmetrize_monomial((2, 0), 2, 1).to_text() == "x1(1)^2 + x1(2)^2"
    assert len(monomials_of_multidegree(2, 2, (1, 1))) == 4
