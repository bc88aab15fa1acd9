from __future__ import annotations

import dataclasses

import pytest

from bqform.arith import jacobi
from bqform.criteria import (
    CriterionSpec,
    Frobenius,
    Hypothesis,
    UnitNorm,
    builtin_spec,
    criterion_example1,
    criterion_example2,
    evaluate,
    frobenius_class,
    load_spec,
    parse_spec,
    theorem_hypotheses,
    unit_norm_check,
)
from bqform.errors import DomainError, RamifiedPrimeError
from bqform.localsolve import QuadForm, local_profile, overall_solvable
from oracles import brute_poly_pattern, is_prime_trial

SPEC1_TEXT = """
# comment line
name = custom
form = 3 2 5
d_hat = 14
l_poly = 1 -1 0 1 1   # trailing comment
galois_order = 4
symbol_arg = -14
special_primes = 2 2, 7 2
"""


def test_builtin_specs():
    s1, s2 = builtin_spec(1), builtin_spec(2)
    assert (s1.form, s1.d_hat, s1.galois_order) == ((3, 2, 5), 14, 4)
    assert (s2.form, s2.d_hat, s2.galois_order) == ((5, 14, -6), -79, 3)
    assert s1.odd_ramified == [7] and s2.odd_ramified == [79]
    with pytest.raises(DomainError):
        builtin_spec(3)


def test_parse_and_load(tmp_path):
    spec = parse_spec(SPEC1_TEXT)
    assert dataclasses.replace(spec, name="example1") == builtin_spec(1)
    path = tmp_path / "s.cfg"
    path.write_text(SPEC1_TEXT)
    assert load_spec(path) == spec


@pytest.mark.parametrize("edit,msg", [
    (("d_hat = 14", "d_hat = 15"), "does not match"),
    (("galois_order = 4", "galois_order = 3"), "degree"),
    (("special_primes = 2 2, 7 2", "special_primes = 2 2, 9 2"), "not prime"),
    (("form = 3 2 5", "form = 3 2"), "three integers"),
    (("name = custom\n", ""), "missing keys"),
    (("d_hat = 14", "d_hat = fourteen"), "malformed"),
    (("d_hat = 14", "d_hat 14"), "key = value"),
])
def test_parse_errors(edit, msg):
    with pytest.raises(DomainError, match=msg):
        parse_spec(SPEC1_TEXT.replace(*edit))


def test_frobenius_examples():
    s1, s2 = builtin_spec(1), builtin_spec(2)
    assert frobenius_class(s1, 3) is Frobenius.GENERATOR
    assert frobenius_class(s2, 5) is Frobenius.GENERATOR
    assert frobenius_class(s1, 11) is Frobenius.INERT  # (-14/11) = -1
    assert frobenius_class(s1, 2) is Frobenius.RAMIFIED
    assert frobenius_class(s1, 7) is Frobenius.RAMIFIED
    assert frobenius_class(s2, 79) is Frobenius.RAMIFIED


def test_frobenius_against_brute_patterns():
    s1, s2 = builtin_spec(1), builtin_spec(2)
    seen = set()
    for p in range(3, 150):
        if not is_prime_trial(p):
            continue
        for spec, order in ((s1, 4), (s2, 3)):
            cls = frobenius_class(spec, p)
            if cls in (Frobenius.RAMIFIED, Frobenius.INERT):
                continue
            pattern = brute_poly_pattern(list(spec.l_poly), p)
            expected = {1: Frobenius.TRIVIAL, order: Frobenius.GENERATOR, 2: Frobenius.ORDER2}[pattern[0]]
            assert cls is expected, (spec.name, p, pattern)
            seen.add((spec.name, cls))
    assert len(seen) == 5  # trivial/order2/generator for Z/4, trivial/generator for Z/3


def test_frobenius_rejects_polynomial_ramification():
    odd = CriterionSpec("odd", (1, 0, 14), 14, (1, 0, 3, 0, 1), 4, ((2, 2), (7, 2)), -14)
    # x^4 + 3x^2 + 1 has a repeated factor modulo 5, which splits in Q(sqrt(-14))
    assert jacobi(-14, 5) == 1
    with pytest.raises(RamifiedPrimeError):
        frobenius_class(odd, 5)


def test_example1_spot_values():
    r = criterion_example1(-3)
    assert r.verdict and r.compact() == "1:T 2:T 3:T 4:T"
    r = criterion_example1(-11)
    assert not r.verdict and "2" in r.failing()
    assert criterion_example1(-10).verdict == bool(
        [(x, y) for x in range(-5, 6) for y in range(-5, 6) if 3 * x * x + 2 * x * y + 5 * y * y == 10])
    with pytest.raises(DomainError):
        criterion_example1(3)


def test_example2_spot_values():
    assert criterion_example2(-5).verdict
    r = criterion_example2(5)
    assert not r.verdict and r.failing() == ["1"] and r.conditions[0].detail["symbol"] == 1
    r = criterion_example2(2)
    assert not r.verdict and "1" in r.failing()
    with pytest.raises(DomainError):
        criterion_example2(0)


def test_report_serialisation():
    d = criterion_example1(-3).to_dict()
    assert d["verdict"] and [c["label"] for c in d["conditions"]] == ["1", "2", "3", "4"]
    assert d["conditions"][3]["detail"]["D"] == [3]


def test_evaluate_dispatch():
    assert evaluate(builtin_spec(1), -3).example == "example1"
    assert evaluate(builtin_spec(2), 5).example == "example2"


def test_criterion_implies_local_profile():
    for g in range(-1500, 0):
        if criterion_example1(g).verdict:
            assert overall_solvable(local_profile(QuadForm(3, 2, 5, g))), g


@pytest.mark.parametrize("form,hyp", [
    ((5, 14, -6, 1), Hypothesis.D_NEG_CASE1),
    ((1, 0, -65, 1), Hypothesis.D_NEG_CASE2),
    ((1, 0, -5, 1), Hypothesis.NOT_COVERED),
    ((3, 2, 5, -3), Hypothesis.D_POSITIVE),
    ((1, 0, -5 * 13 * 17, 1), Hypothesis.NOT_COVERED),
    ((1, 0, -2 * 5 * 13, 1), Hypothesis.NOT_COVERED),
])
def test_theorem_hypotheses(form, hyp):
    assert theorem_hypotheses(QuadForm(*form)) is hyp


@pytest.mark.parametrize("d_hat,status", [
    (14, UnitNorm.LOCALLY_OBSTRUCTED),
    (-65, UnitNorm.SOLVABLE_OVER_Z),
    (-79, UnitNorm.LOCALLY_OBSTRUCTED),
    (-34, UnitNorm.UNKNOWN),  # x^2 - 34y^2 = -1 has no solution, no local obstruction
])
def test_unit_norm_check(d_hat, status):
    assert unit_norm_check(d_hat) is status
