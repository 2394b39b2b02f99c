import pytest

from bockstein.closedform import thh_mod_p_algebra
from bockstein.formulas import (
    FormulaError,
    LambdaFamily,
    V1_P2_PATTERNS,
    d_deg,
    d_deg_explicit,
    deg_lambda,
    deg_mu,
    degree_identity_v1,
    degree_identity_v2,
    lambda_expand,
    nu_p,
    r_conj,
    r_len,
)

PRIMES = (2, 3, 5, 7)


def test_nu_p():
    assert nu_p(3, 9) == 2
    assert nu_p(2, 12) == 2
    assert nu_p(5, 7) == 0
    with pytest.raises(FormulaError):
        nu_p(3, 0)
    with pytest.raises(FormulaError):
        nu_p(3, -3)


def test_generator_degrees():
    assert deg_lambda(2, 3) == 15
    assert deg_mu(2, 2) == 16
    assert deg_lambda(3, 1) == 5


def test_d_deg_displayed_values():
    for p in PRIMES:
        assert d_deg(p, 4, 1) == 2 * p**4 - 2 * p**3 + 2 * p**2 - 1
        assert d_deg(p, 4, 2) == 2 * p**4 - 2 * p**3 + 2 * p - 1
        assert d_deg(p, 5, 1) == 2 * p**5 - 2 * p**4 + 2 * p**3 - 1


def test_d_deg_recursive_equals_explicit():
    for p in PRIMES:
        for m in (1, 2):
            for n in range(1, 41):
                assert d_deg(p, n, m) == d_deg_explicit(p, n, m)


def test_r_len_displayed_values():
    assert r_len(3, 1, 1) == 9
    assert r_len(3, 3, 1) == 90
    assert r_len(3, 4, 2) == 84
    assert [r_len(2, n, 2) for n in range(1, 5)] == [2, 4, 8, 18]


def test_r_conj_specializes_to_r_len():
    for p in PRIMES:
        for s in range(1, 31):
            assert r_conj(p, 2, 1, s) == r_len(p, s, 1)
            assert r_conj(p, 2, 2, s) == r_len(p, s, 2)
    assert r_conj(3, 2, 1, 1) == 9
    with pytest.raises(FormulaError):
        r_conj(3, 2, 3, 1)


def test_lambda_expand_examples():
    for p in (3, 5):
        A = thh_mod_p_algebra(p, 2)
        v1 = LambdaFamily("v1", p)
        v2 = LambdaFamily("v2", p)
        assert lambda_expand(v1, 4) == A.monomial(**{"λ2": 1, "μ3": p - 1})
        assert lambda_expand(v2, 4) == A.monomial(**{"λ1": 1, "μ3": p - 1})
        assert lambda_expand(v2, 6) == A.monomial(**{"λ3": 1, "μ3": p * p * (p - 1)})


def test_lambda_expand_degrees_match_d_deg():
    for p in PRIMES:
        for case, m in (("v1", 1), ("v2", 2)):
            fam = LambdaFamily(case, p)
            for s in range(1, 26):
                assert fam.degree(s) == d_deg(p, s, m)


def test_conjecture_family_specializes():
    for p in (3, 5):
        for case, m in (("v1", 1), ("v2", 2)):
            fam = LambdaFamily(case, p)
            conj = LambdaFamily("conj", p, n=2, m=m)
            for s in range(1, 20):
                assert fam.entry(s) == conj.entry(s)


def test_degree_identities():
    for p in PRIMES:
        for n in range(1, 31):
            assert degree_identity_v1(p, n)
            assert degree_identity_v2(p, n)


def test_p2_patterns_exposed_as_data():
    assert set(V1_P2_PATTERNS) == {"A", "B"}
    assert V1_P2_PATTERNS["A"]["extra_rules"] == ()
    (rule,) = V1_P2_PATTERNS["B"]["extra_rules"]
    assert rule == {"page": 2, "source": 3, "targets": (1, 2)}
