"""Congruence elimination sieve: trace candidates, resultant sets, outcomes."""

import pytest

from qfermat.errors import InvalidInputError, MethodInapplicableError
from qfermat.newforms import fetch_level
from qfermat.polynomials import IntPolynomial
from qfermat.primes import PrimeSet
from qfermat.sieve import (
    allowed_trace_scalars,
    candidate_poly,
    outcome_to_report,
    sieve_form,
    sieve_level,
    survivors_at,
)

from conftest import make_form


def test_allowed_trace_scalars():
    assert allowed_trace_scalars(3).scalars == (-2, -1, 0, 1, 2)
    assert allowed_trace_scalars(7).scalars == tuple(range(-3, 4))
    assert allowed_trace_scalars(11).scalars == tuple(range(-4, 5))
    assert allowed_trace_scalars(19).scalars == tuple(range(-6, 7))
    for bad in (5, 9, 2):
        with pytest.raises(InvalidInputError):
            allowed_trace_scalars(bad)


def test_candidate_poly():
    assert candidate_poly(0) == IntPolynomial.make([0, 1])
    assert candidate_poly(1) == IntPolynomial.make([-2, 0, 1])
    assert candidate_poly(-3) == IntPolynomial.make([-18, 0, 1])


def test_survivors_rational_a3():
    # a_3 = 3: resultants 3 (c=0), 7 (|c|=1), 1 (|c|=2); plus t itself
    f = make_form(2336, "s1", [0, 1], {3: [3]})
    assert survivors_at(f, 3) == PrimeSet.of((3, 7))


def test_survivors_quadratic_a3():
    # a_3 = 1 + sqrt(2), char poly x^2-2x-1: resultants -1, -7, 17
    f = make_form(2336, "s2", [-1, -2, 1], {3: [0, 1]})
    assert survivors_at(f, 3) == PrimeSet.of((3, 7, 17))


def test_survivors_obstructed_form_is_all_primes():
    # a_3 = sqrt(2) is itself of the c sqrt(2) shape: zero resultant at |c|=1
    f = make_form(2336, "s3", [-2, 0, 1], {3: [0, 1]})
    assert survivors_at(f, 3).is_all


def test_survivors_validation():
    f = make_form(2336, "s4", [0, 1], {3: [1]})
    with pytest.raises(InvalidInputError):
        survivors_at(f, 5)  # 5 = 1 (mod 4)
    with pytest.raises(InvalidInputError):
        survivors_at(f, 73)  # divides the level


def test_sieve_form_intersects_across_t():
    # t=3: {3, 7}; t=7: a_7 = 1 gives resultants 1, -1, -7, -17: {7, 17}
    f = make_form(2336, "s5", [0, 1], {3: [3], 7: [1]}, num_an=24)
    rep3 = sieve_form(f, (3,), p_min=2)
    rep37 = sieve_form(f, (3, 7), p_min=2)
    assert rep3.survivors == PrimeSet.of((3, 7))
    assert rep37.survivors == PrimeSet.of((7,))
    assert rep37.per_t[7] == PrimeSet.of((7, 17))


def test_sieve_form_monotone_in_tset():
    f = make_form(2336, "s6", [-1, -2, 1], {3: [1, 1], 7: [2], 11: [0, 1], 19: [4]})
    prev = None
    for tset in [(3,), (3, 7), (3, 7, 11), (3, 7, 11, 19)]:
        cur = sieve_form(f, tset, p_min=2).survivors
        if prev is not None:
            assert set(cur.finite) <= set(prev.finite)
            assert cur.is_finite >= prev.is_finite
        prev = cur


def test_sieve_form_p_min_partition():
    f = make_form(2336, "s7", [0, 1], {3: [3]})
    rep = sieve_form(f, (3,), p_min=14)
    assert rep.survivors.is_empty
    assert rep.outside_hypotheses == (3, 7)
    rep_all = sieve_form(f, (3,), p_min=2)
    assert rep_all.survivors == PrimeSet.of((3, 7))
    assert rep_all.outside_hypotheses == ()


def test_sieve_form_audit_records_resultants():
    f = make_form(2336, "s8", [0, 1], {3: [3]})
    rep = sieve_form(f, (3,))
    by_c = {e["c"]: e for e in rep.audit}
    assert sorted(by_c) == [0, 1, 2]
    assert abs(by_c[0]["resultant"]) == 3
    assert abs(by_c[1]["resultant"]) == 7
    assert abs(by_c[2]["resultant"]) == 1
    with pytest.raises(InvalidInputError):
        sieve_form(f, ())


def test_sieve_level_rejects_inapplicable_q():
    for q in (7, 17, 41, 97):
        with pytest.raises(MethodInapplicableError):
            sieve_level(q, [])


def test_sieve_level_validates_tset_and_levels():
    f = make_form(2336, "s9", [0, 1], {3: [1]})
    with pytest.raises(InvalidInputError):
        sieve_level(73, [f], (3, 5))
    with pytest.raises(InvalidInputError):
        sieve_level(73, [f], (3, 73))
    wrong = make_form(2848, "w", [0, 1], {3: [1]})
    with pytest.raises(InvalidInputError):
        sieve_level(73, [f, wrong])


def test_sieve_level_aggregation_and_workers():
    clean = make_form(2336, "2336.2.a.x", [0, 1], {3: [3], 7: [1]})
    stuck = make_form(2336, "2336.2.a.y", [-2, 0, 1], {3: [0, 1], 7: [0, 1], 11: [0, 1], 19: [0, 1]})
    out = sieve_level(73, [clean, stuck], (3, 7, 11, 19))
    assert not out.proved
    assert out.global_survivors == ()
    assert out.unresolved == ("2336.2.a.y",)
    out2 = sieve_level(73, [clean, stuck], (3, 7, 11, 19), workers=4)
    assert out2.global_survivors == out.global_survivors
    assert out2.unresolved == out.unresolved
    assert [r.label for r in out2.reports] == [r.label for r in out.reports]


@pytest.fixture(scope="module")
def level_2336(tmp_path_factory):
    return fetch_level(2336, cache_dir=tmp_path_factory.mktemp("cache"))


def test_q73_survivor_is_17_on_one_form(level_2336):
    out = sieve_level(73, level_2336)
    assert out.global_survivors == (("2336.2.a.l", 17),)
    assert out.unresolved == ()
    assert not out.proved


@pytest.mark.parametrize("tset", [(3,), (3, 7), (7, 11, 19), (3, 7, 11, 19, 23, 31)])
def test_q73_17_survives_any_valid_tset(level_2336, tset):
    out = sieve_level(73, level_2336, tset)
    assert ("2336.2.a.l", 17) in out.global_survivors


def test_obstructed_level_544_form_survives_everywhere(tmp_path):
    # q = 41 = (2*1)^4 + 5^2: its level hosts a form with a_t = c sqrt(2)
    # at every inert t, the structural reason the sieve refuses such q
    recs = fetch_level(544, cache_dir=tmp_path)
    g = next(r for r in recs if r.label == "544.2.a.g")
    for t in (3, 7, 11, 19):
        assert survivors_at(g, t).is_all


def test_outcome_report_shape(level_2336):
    out = sieve_level(73, level_2336)
    doc = outcome_to_report(out)
    assert list(doc) == [
        "q", "tset", "p_min", "forms", "global_survivors", "proved", "assumptions",
    ]
    assert doc["q"] == 73 and doc["tset"] == [3, 7, 11, 19]
    assert doc["global_survivors"] == [{"label": "2336.2.a.l", "p": 17}]
    assert len(doc["forms"]) == len(level_2336)
    for form_doc in doc["forms"]:
        assert list(form_doc["per_t"]) == ["3", "7", "11", "19"]
