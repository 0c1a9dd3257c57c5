# tests/test_orbitring.py
import pytest

from core.errors import DomainError, RingMismatchError
from core.grammar import parse
from core.ringcore import CoeffRing, Monomial
from analysis.concrete import orbit_sum, to_orbit_basis
from analysis.orbitring import (
    MultiSymElement,
    OrbitIndex,
    TaggedTuple,
    basis_product,
    canonicalize,
    enumerate_basis,
    expand_e_k_of,
    multidegrees_up_to,
    multiply,
    project_n,
)

ZZ = CoeffRing.integers()


def element(text, m):
    return parse(text, "orbit-element", m=m)


def test_canonicalize():
    f, g = Monomial((1, 0)), Monomial((0, 1))
    assert canonicalize(TaggedTuple(((f, 1), (f, 1)))) == (2, OrbitIndex.of({f: 2}, 2))
    assert canonicalize([(f, 2), (g, 1)]) == (1, OrbitIndex.of({f: 2, g: 1}, 2))
    assert canonicalize([(f, 1), (f, 1), (f, 1)]) == (6, OrbitIndex.of({f: 3}, 2))
    assert not TaggedTuple(((f, 1), (f, 1))).is_reduced


def test_orbit_index_validation():
    with pytest.raises(DomainError):
        OrbitIndex.of({Monomial((0, 0)): 1}, 2)
    with pytest.raises(RingMismatchError):
        OrbitIndex.of({Monomial((1,)): 1}, 2)


def test_multiply_example_projected_to_two_slots():
    x = element("E{y1:1, y2:1}", 3)
    y = element("E{y3:2}", 3)
    assert project_n(multiply(x, y), 2) == element("E{y1*y3:1, y2*y3:1}", 3)


def test_multiply_unit_and_square():
    x = element("3*E{y1:1, y2:1} - E{y1*y2:1}", 2)
    assert multiply(MultiSymElement.one(2, ZZ), x) == x
    e1 = element("E{y1:1}", 1)
    assert (e1 * e1).to_text() == "E{y1^2:1} + 2*E{y1:2}"


def test_product_agrees_with_concrete_multiplication():
    alpha = parse("E{y1:1, y1*y2:1}", "orbit-index")
    beta = parse("E{y2:2}", "orbit-index")
    n = alpha.size + beta.size
    expected = to_orbit_basis(orbit_sum(alpha, n) * orbit_sum(beta, n))
    product = multiply(MultiSymElement.basis(alpha, ZZ), MultiSymElement.basis(beta, ZZ))
    assert product == expected


def test_product_is_associative_after_projection():
    x = element("E{y1:1}", 2)
    y = element("E{y2:1} + E{y1:1}", 2)
    z = element("E{y1*y2:1}", 2)
    for n in (1, 2, 3, 4):
        assert project_n((x * y) * z, n) == project_n(x * (y * z), n)


def test_basis_product_terms_grow():
    alpha = parse("E{y1:2}", "orbit-index")
    beta = parse("E{y1:1}", "orbit-index")
    expansion = basis_product(alpha, beta)
    assert expansion == {parse("E{y1:3}", "orbit-index"): 3, parse("E{y1^2:1, y1:1}", "orbit-index"): 1}


def test_project_n():
    x = element("E{y1:3} + E{y1^3:1}", 1)
    assert project_n(x, 2) == element("E{y1^3:1}", 1)
    assert project_n(x, 3) == x


def test_enumerate_basis():
    assert [a.to_text() for a in enumerate_basis((2,))] == ["E{y1^2:1}", "E{y1:2}"]
    assert [a.to_text() for a in enumerate_basis((2,), 1)] == ["E{y1^2:1}"]
    assert [a.to_text() for a in enumerate_basis((1, 1), 2)] == ["E{y1*y2:1}", "E{y1:1, y2:1}"]
    assert len(enumerate_basis((4,))) == 5


def test_multidegrees_up_to():
    assert multidegrees_up_to(2, 2) == [(1, 0), (0, 1), (2, 0), (1, 1), (0, 2)]


def test_expand_e_k_of(poly):
    assert expand_e_k_of(poly("y1 + y2"), 2).to_text() == "E{y1:2} + E{y1:1, y2:1} + E{y2:2}"
    mu = Monomial((1, 2))
    f = poly("y1*y2^2")
    assert expand_e_k_of(f, 3) == MultiSymElement.basis(OrbitIndex.single(mu, 3), ZZ)
    assert expand_e_k_of(f, 0) == MultiSymElement.one(2, ZZ)
    with pytest.raises(DomainError):
        expand_e_k_of(poly("y1 + 1"), 2)


def test_homogeneous_component_and_coordinates():
    x = element("E{y1:2} + 5*E{y1*y2:1} - E{y2:1}", 2)
    assert x.homogeneous_component((1, 1)) == element("5*E{y1*y2:1}", 2)
    basis = enumerate_basis((2, 0))
    assert x.homogeneous_component((2, 0)).coordinates(basis) == [0, 1]
    with pytest.raises(DomainError):
        x.coordinates(basis)
