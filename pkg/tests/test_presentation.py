# tests/test_presentation.py
import pytest

from core.errors import DomainError
from core.grammar import parse
from core.ringcore import CoeffRing, Monomial
from analysis.concrete import ConcretePoly, orbit_sum
from analysis.orbitring import MultiSymElement, sigma
from analysis.presentation import (
    GeneratorPoly,
    RankCertificate,
    RewriteTable,
    certify_basis,
    certify_freeness,
    certify_generation_piece,
    certify_presentation,
    certify_product_formula,
    certify_projection,
    certify_rational_generation,
    certify_relation_span,
    certify_rewrite,
    eval_generator_poly,
    generation_bound,
    generation_sharpness,
    generator_symbols,
    invariant_rank,
    rational_rewrite_to_e1,
    rewrite_to_generators,
)

ZZ = CoeffRing.integers()
QQ = CoeffRing.rationals()
F2 = CoeffRing.prime_field(2)

EXAMPLE_REWRITE = "e[2;y1]*e[1;y2] - e[1;y1]*e[1;y1*y2] + e[1;y1^2*y2]"


def generator(text, m):
    return parse(text, "generator-poly", m=m)


def test_rewrite_examples(orbit):
    table = RewriteTable()
    assert rewrite_to_generators(orbit("E{y1:2, y2:1}"), table=table).to_text() == EXAMPLE_REWRITE
    assert rewrite_to_generators(orbit("E{y1*y2^2:3}"), table=table).to_text() == "e[3;y1*y2^2]"
    assert rewrite_to_generators(orbit("E{y1^2:1}"), table=table).to_text() == "e[1;y1]^2 - 2*e[2;y1]"
    assert rewrite_to_generators(orbit("E{}", m=2), table=table) == GeneratorPoly.unit()
    assert orbit("E{y1:2, y2:1}") in table


def test_rewrite_is_inverse_of_sigma(orbit):
    for text in ["E{y1:2, y2:1}", "E{y1^2:2}", "E{y1^2*y2^2:1, y1:1}", "E{y1:1, y2:1, y1*y2:1}"]:
        alpha = orbit(text, m=2)
        assert sigma(rewrite_to_generators(alpha), 2) == MultiSymElement.basis(alpha, ZZ)


def test_eval_generator_poly(orbit):
    G = generator(EXAMPLE_REWRITE, 2)
    assert eval_generator_poly(G, 3, 2) == orbit_sum(orbit("E{y1:2, y2:1}"), 3)
    assert eval_generator_poly(generator("e[3;y1]", 1), 2, 1).is_zero()
    assert eval_generator_poly(GeneratorPoly.unit(), 2, 1) == ConcretePoly.one(2, 1, ZZ)


def test_rational_rewrite(orbit):
    assert rational_rewrite_to_e1(orbit("E{y1:2}")).to_text() == "(1/2)*e1[y1]^2 - (1/2)*e1[y1^2]"
    assert rational_rewrite_to_e1(orbit("E{y1*y2:1}")).to_text() == "e1[y1*y2]"
    assert rational_rewrite_to_e1(orbit("E{y1:1, y2:1}")).to_text() == "e1[y1]*e1[y2] - e1[y1*y2]"
    G = rational_rewrite_to_e1(orbit("E{y1:2}"))
    assert eval_generator_poly(G, 2, 1) == orbit_sum(orbit("E{y1:2}"), 2, QQ)
    with pytest.raises(DomainError, match="requires rational coefficients"):
        rational_rewrite_to_e1(orbit("E{y1:2}"), ZZ)


def test_generator_symbols():
    symbols = generator_symbols((2,))
    assert [s.to_text() for s in symbols] == ["e[2;y1]", "e[1;y1]"]
    assert generation_bound(2, 3) == 4
    assert generation_bound(3, 1) == 3


def test_certify_basis():
    cert = certify_basis(2, 1, (2,))
    assert cert.passed and cert.ranks["basis"] == 2
    cert = certify_basis(1, 2, (1, 1))
    assert cert.passed and cert.ranks["basis"] == 1
    cert = certify_basis(2, 2, (1, 1))
    assert cert.passed and cert.ranks["invariant"] == 2
    assert invariant_rank(3, 1, (3,)) == 3


def test_certify_relation_span():
    assert certify_relation_span(1, 1, (2,), 2).passed
    assert certify_relation_span(2, 2, (2, 1), 3).passed
    vacuous = certify_relation_span(1, 1, (1,), 2)
    assert vacuous.passed and vacuous.ranks["span"] == 0
    with pytest.raises(DomainError):
        certify_relation_span(2, 1, (2,), 2)


def test_certify_presentation():
    for d in range(1, 4):
        assert certify_presentation(3, 1, (d,)).passed
    cert = certify_presentation(1, 2, (1, 1))
    assert cert.passed
    assert (cert.ranks["generators"], cert.ranks["ideal"], cert.ranks["invariant"]) == (2, 1, 1)
    assert certify_presentation(2, 2, (2, 2)).passed
    assert certify_presentation(2, 2, (2, 1), F2).passed


def test_certify_generation_piece():
    cert = certify_generation_piece(2, 2, (2, 1))
    assert cert.passed and cert.ranks["bound"] == 2
    assert certify_generation_piece(3, 1, (4,)).passed
    cert = certify_generation_piece(2, 2, (1, 1), ZZ)
    assert cert.details["z_spans"] in ("yes", "no")


def test_generation_sharpness():
    certs = [RankCertificate("degree-bound", 2, 3, (1, 1, 1), "fp:2", ranks={"minimal_degree": 3}),
             RankCertificate("degree-bound", 2, 3, (2, 2, 0), "fp:2", ranks={"minimal_degree": 4}),
             RankCertificate("degree-bound", 2, 3, (1, 0, 0), "fp:2")]
    assert generation_sharpness(certs) == 4
    assert generation_sharpness([]) == 0


def test_certify_freeness():
    for d in range(1, 5):
        cert = certify_freeness(1, (d,))
        assert cert.passed
    assert certify_freeness(2, (1, 1)).ranks["generators"] == 2
    assert certify_freeness(2, (2, 1)).passed


def test_small_soundness_suites():
    assert certify_rewrite(2, 2, (2, 1)).passed
    assert certify_projection(1, 3, 2, (1, 1)).passed
    assert certify_rational_generation(2, 2, (2, 1)).passed
    assert certify_product_formula(2, 10, seed=7).passed
    with pytest.raises(DomainError):
        certify_projection(2, 2, 1, (1,))


def test_certificate_record_round_trip():
    cert = certify_basis(2, 2, (1, 1))
    record = cert.to_record()
    assert record["kind"] == "certificate"
    assert all(isinstance(v, str) for v in record["ranks"].values())
    again = RankCertificate.from_record(record)
    assert again.to_record() == record
    assert cert.to_line().startswith("PASS basis n=2 m=2 a=(1,1) coeff=q")
    assert "time=" not in cert.to_line()
    assert "time=" in cert.to_line(timings=True)


def test_generator_monomial_multidegree():
    G = generator(EXAMPLE_REWRITE, 2)
    assert G.multidegrees(2) == {(2, 1)}
    assert Monomial((1, 1)).is_primitive
