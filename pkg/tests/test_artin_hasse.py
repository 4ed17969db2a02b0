from fractions import Fraction
from itertools import permutations
from math import factorial, lcm

import pytest

from ahlab.artin_hasse import (
    closed_form_akp,
    compute_sk,
    compute_table,
    g_series,
    u_digit_oracle,
    verify_closed_forms,
    verify_sk_relation,
)
from ahlab.errors import OutOfRange, TableTooShallow
from ahlab.exact_arith import wilson_quotient
from ahlab.fp_algebra import FpPoly, poly_mul_trunc, poly_negate_var


def perm_order(perm):
    seen, order = set(), 1
    for start in range(len(perm)):
        length, j = 0, start
        while j not in seen:
            seen.add(j)
            j = perm[j]
            length += 1
        if length:
            order = lcm(order, length)
    return order


def is_power_of(n, p):
    while n % p == 0:
        n //= p
    return n == 1


@pytest.mark.parametrize("p", [3, 5, 7])
def test_h_counts_p_power_order_permutations(p):
    table = compute_table(p, 7)
    for n in range(8):
        count = sum(is_power_of(perm_order(s), p) for s in permutations(range(n)))
        assert table.h[n] == count
        assert table.u(n) == Fraction(count, factorial(n))


def test_table_examples():
    t5 = compute_table(5, 5)
    assert t5.u_values == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24), Fraction(5, 24)]
    assert t5.u(5) == Fraction(1, factorial(5)) + Fraction(1, 5)
    t3 = compute_table(3, 3)
    assert t3.u(3) == Fraction(1, 2) and t3.a[3] == 2
    assert t3.a[3] == -wilson_quotient(3) % 3
    assert compute_table(7, 7).a[7] == 2


@pytest.mark.parametrize("p", [3, 5, 7])
def test_recursion_matches_digit_formula(p):
    table = compute_table(p, 60)
    for n in range(61):
        assert table.u(n) == u_digit_oracle(p, n)


def test_digit_oracle_examples():
    assert u_digit_oracle(5, 5) == Fraction(1, 120) + Fraction(1, 5) == Fraction(5, 24)
    assert u_digit_oracle(11, 0) == 1
    assert u_digit_oracle(5, 3) == Fraction(1, 6)


def test_u_p_and_wilson_quotient():
    from ahlab.fp_algebra import primes_between

    for p in primes_between(3, 31):
        table = compute_table(p, p)
        assert table.u(p) == Fraction(1, factorial(p)) + Fraction(1, p)
        assert table.u(p) == Fraction(wilson_quotient(p), factorial(p - 1))
        assert table.a[p] == -wilson_quotient(p) % p


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_mod_p_recursion_closure(p):
    table = compute_table(p, 6 * p)
    for n in range(1, table.N + 1):
        if n % p:
            rhs = sum(table.a[n - q] for q in (1, p, p * p) if q <= n)
            assert n * table.a[n] % p == rhs % p


def test_g_series_examples():
    t7 = compute_table(7, 21)
    assert g_series(t7, 4) == FpPoly([1, -2, 2, -1], 7)
    assert g_series(t7, 1) == FpPoly([1], 7)
    assert g_series(compute_table(5, 5), 2) == FpPoly([1], 5)
    with pytest.raises(TableTooShallow):
        g_series(t7, 5)


@pytest.mark.parametrize("p", [3, 5, 7])
def test_g_times_g_minus_geometric(p):
    M = p * p
    table = compute_table(p, (M - 1) * p)
    G = g_series(table, M)
    GG = poly_mul_trunc(G, poly_negate_var(G), M)
    # Two-term geometric factor is exact only below X^{p^2-1}.
    two_terms = FpPoly.monomial(p, p - 1) + 1
    assert poly_mul_trunc(GG, two_terms, M - 1) == FpPoly([1], p)
    three_terms = two_terms + FpPoly.monomial(p, M - 1)
    assert poly_mul_trunc(GG, three_terms, M) == FpPoly([1], p)
    assert poly_mul_trunc(GG, two_terms, M) != FpPoly([1], p)


def test_sk_examples():
    t7 = compute_table(7, 7 * 7)
    sk = compute_sk(t7, 7)
    assert sk[0] == 1
    assert sk[6] == 6
    assert sk[3] == 0


def test_sk_relation_ranges():
    assert verify_sk_relation(compute_sk(compute_table(5, 100), 20)).status == "pass"
    assert verify_sk_relation(compute_sk(compute_table(7, 280), 40)).status == "pass"


def test_sk_relation_detects_corruption():
    sk = compute_sk(compute_table(5, 100), 20)
    sk.s[3] = 1
    result = verify_sk_relation(sk)
    assert result.status == "fail" and result.witness["k"] == 3


def test_closed_form_examples():
    t7 = compute_table(7, 49)
    cf2 = closed_form_akp(7, 2, t7)
    assert cf2.predicted == cf2.actual == 2
    cf3 = closed_form_akp(7, 3, t7)
    assert cf3.predicted == cf3.actual == 1
    cf = closed_form_akp(3, 2, compute_table(3, 6))
    assert cf.predicted == cf.actual == 0
    with pytest.raises(OutOfRange):
        closed_form_akp(7, 5, t7)


def test_closed_forms_report_conditional_section():
    result = verify_closed_forms(compute_table(11, 77))
    assert result.status == "pass"
    assert result.params["conditional"] == {"a_7p": "match"}
    assert set(result.params["proved"]) == {f"a_{k}p" for k in range(2, 7)}


def test_csv_export():
    lines = compute_table(5, 5).to_csv().splitlines()
    assert lines[0] == "n,num,den,a_n"
    assert lines[-1] == "5,5,24,0"
