from fractions import Fraction
from math import prod

import pytest
from hypothesis import assume, given, strategies as st

from ahlab.errors import NotPIntegral, OutOfRange
from ahlab.exact_arith import (
    bernoulli_exact,
    binomial,
    factorial,
    reduce_mod_p,
    verify_lehmer,
    verify_wolstenholme,
    verify_zagier_identity,
    wilson_quotient,
    x_times_fermat_quotient,
)
from ahlab.fp_algebra import primes_between


def akiyama_tanigawa(n):
    """B_n by the Akiyama-Tanigawa transform (gives B_1 = +1/2)."""
    A = [Fraction(0)] * (n + 1)
    for m in range(n + 1):
        A[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            A[j - 1] = j * (A[j - 1] - A[j])
    return A[0]


def test_factorial():
    assert factorial(0) == 1
    assert factorial(4) == 24
    assert factorial(6) == prod(range(1, 7)) == 720


def test_binomial():
    assert binomial(9, 4) == 126
    assert binomial(7, 0) == 1
    assert binomial(9, 4) % 125 == 1
    with pytest.raises(ValueError):
        binomial(3, 4)


@pytest.mark.parametrize("n,expected", [(0, 1), (1, Fraction(-1, 2)), (2, Fraction(1, 6)), (3, 0), (4, Fraction(-1, 30))])
def test_bernoulli_small(n, expected):
    assert bernoulli_exact(n) == expected


def test_bernoulli_against_akiyama_tanigawa():
    for n in range(0, 80):
        oracle = akiyama_tanigawa(n)
        if n == 1:
            oracle = -oracle
        assert bernoulli_exact(n) == oracle


def test_odd_bernoulli_vanish():
    assert all(bernoulli_exact(2 * m + 1) == 0 for m in range(1, 100))


def test_von_staudt_clausen_denominators():
    for n in range(2, 201, 2):
        den = bernoulli_exact(n).denominator
        expected = prod(q for q in primes_between(2, n + 1) if n % (q - 1) == 0)
        assert den == expected


def test_small_bernoulli_are_p_integral():
    for p in primes_between(3, 97):
        for n in range(1, p - 1):
            reduce_mod_p(bernoulli_exact(n), p)


@pytest.mark.parametrize("p,w", [(3, 1), (5, 5), (7, 103)])
def test_wilson_quotient(p, w):
    assert wilson_quotient(p) == w


def test_wilson_rejects_composite():
    with pytest.raises(ValueError):
        wilson_quotient(9)


def test_x_times_fermat_quotient():
    assert x_times_fermat_quotient(5, 2) == 6
    assert x_times_fermat_quotient(5, 7) == 3360
    assert x_times_fermat_quotient(11, 1) == 0
    assert x_times_fermat_quotient(5, 10) == (10**5 - 10) // 5


@given(st.sampled_from([3, 5, 7, 11, 13]), st.integers(-10**4, 10**4))
def test_fermat_quotient_shift(p, x):
    assert (x_times_fermat_quotient(p, x + p) - x_times_fermat_quotient(p, x) + 1) % p == 0


def test_reduce_mod_p():
    assert reduce_mod_p(Fraction(5, 24), 5).value == 0
    assert reduce_mod_p(Fraction(-1, 2), 5).value == 2
    with pytest.raises(NotPIntegral):
        reduce_mod_p(Fraction(1, 6), 3)


@given(st.fractions(), st.fractions())
def test_reduce_mod_p_is_a_ring_map(x, y):
    p = 7
    assume(x.denominator % p and y.denominator % p)
    rx, ry = reduce_mod_p(x, p), reduce_mod_p(y, p)
    assert reduce_mod_p(x + y, p) == rx + ry
    assert reduce_mod_p(x * y, p) == rx * ry


def test_zagier_identity_small_cases():
    # k = 2: C(1,0) B_1 = -1/2; k = 3: -1/2 + 2 (1/6)/2 = -1/3
    assert binomial(1, 0) * bernoulli_exact(1) == Fraction(-1, 2)
    assert bernoulli_exact(1) + 2 * bernoulli_exact(2) / 2 == Fraction(-1, 3)
    assert verify_zagier_identity(200).status == "pass"


def test_wolstenholme():
    for p in (5, 7, 13):
        assert verify_wolstenholme(p).status == "pass"
    with pytest.raises(OutOfRange):
        verify_wolstenholme(3)


def test_lehmer_worked_values():
    # p = 5: (1 + 5 (-1/30))/5 = 1/6 = 1 mod 5 and w_5 + 1 = 6 = 1
    assert (1 + 5 * bernoulli_exact(4)) / 5 == Fraction(1, 6)
    # p = 3: (1 + 3/6)/3 = 1/2 = 2 mod 3 and w_3 + 1 = 2
    assert reduce_mod_p((1 + 3 * bernoulli_exact(2)) / 3, 3).value == 2
    for p in (3, 5, 7):
        assert verify_lehmer(p).status == "pass"
