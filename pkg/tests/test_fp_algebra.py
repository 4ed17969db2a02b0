import random

import pytest
from hypothesis import given, settings, strategies as st

from ahlab.errors import FieldMismatch, NotInvertible
from ahlab.fp_algebra import (
    GF,
    Fp2Elem,
    FpPoly,
    build_quadratic_extension,
    construct_root,
    finite_polylog,
    fp_inverse,
    lagrange_interpolate,
    poly_compose_trunc,
    poly_derivative,
    poly_eval,
    poly_mul_trunc,
    poly_shift,
    series_inverse_trunc,
)

PRIMES = [3, 5, 7, 11, 13, 199]


def naive_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return [c % p for c in out]


def polys(p, max_len=40):
    return st.lists(st.integers(0, p - 1), max_size=max_len).map(lambda c: FpPoly(c, p))


def test_fp_inverse():
    assert fp_inverse(GF(5)(2)).value == 3
    assert fp_inverse(GF(7)(6)).value == 6
    assert fp_inverse(GF(13)(1)).value == 1
    with pytest.raises(ZeroDivisionError):
        fp_inverse(GF(7)(0))


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(5)(1) + GF(7)(1)
    with pytest.raises(FieldMismatch):
        FpPoly([1], 5) * FpPoly([1], 7)


def test_mul_trunc_examples():
    assert poly_mul_trunc(FpPoly([1, 1], 5), FpPoly([1, -1], 5), 2) == FpPoly([1], 5)
    assert poly_mul_trunc(FpPoly([1, 2, 3], 5), FpPoly([], 5), 10).is_zero()


@settings(max_examples=60)
@given(st.sampled_from(PRIMES), st.data())
def test_mul_matches_schoolbook(p, data):
    # long enough inputs to exercise the packed-integer path
    a = data.draw(st.lists(st.integers(0, p - 1), max_size=90))
    b = data.draw(st.lists(st.integers(0, p - 1), max_size=90))
    assert (FpPoly(a, p) * FpPoly(b, p)).coeffs == FpPoly(naive_mul(a, b, p), p).coeffs


def test_series_inverse_examples():
    p = 5
    inv = series_inverse_trunc(FpPoly.monomial(p, p - 1) + 1, 25)
    expected = [0] * 25
    for j in range(0, 25, 4):
        expected[j] = (-1) ** (j // 4)
    assert inv == FpPoly(expected, p)
    assert series_inverse_trunc(FpPoly([2], 5), 4) == FpPoly([3], 5)
    assert series_inverse_trunc(FpPoly([1, 1], 7), 3) == FpPoly([1, -1, 1], 7)
    with pytest.raises(NotInvertible):
        series_inverse_trunc(FpPoly([0, 1], 7), 3)


@pytest.mark.parametrize("p", [5, 7])
def test_series_inverse_property(p):
    rng = random.Random(p)
    for M in (8, p, p * p):
        for _ in range(5):
            f = FpPoly([rng.randrange(1, p)] + [rng.randrange(p) for _ in range(M + 3)], p)
            assert poly_mul_trunc(f, series_inverse_trunc(f, M), M) == FpPoly([1], p)


def test_derivative():
    assert poly_derivative(FpPoly.monomial(7, 7)).is_zero()
    assert poly_derivative(FpPoly([0, 0, 0, 3, 2], 5)) == FpPoly([0, 0, 4, 3], 5)
    assert poly_derivative(FpPoly([4], 5)).is_zero()


def test_compose_examples():
    p = 11
    assert poly_compose_trunc(FpPoly([0, 0, 1], p), FpPoly([1, 1], p), 3) == FpPoly([1, 2, 1], p)
    f = FpPoly([3, 1, 4, 1, 5, 9, 2, 6], p)
    assert poly_compose_trunc(f, FpPoly([0, 1], p), 5) == f.truncate(5)


def test_pound0_of_unit_series_with_nonzero_slope():
    p = 5
    L0 = finite_polylog(GF(p), 0)
    assert poly_compose_trunc(L0, FpPoly([1, 1], p), p) == FpPoly.monomial(p, p - 1) - 1


def test_shift_examples():
    assert poly_shift(FpPoly([0, 0, 1], 7), -1) == FpPoly([1, -2, 1], 7)
    gamma5 = FpPoly([0, 0, 0, 3, 2], 5)
    assert poly_eval(poly_shift(gamma5, -1), 1).value == 0
    assert poly_shift(gamma5, 0) == gamma5


@given(st.sampled_from(PRIMES[:5]), st.data())
def test_shift_roundtrip(p, data):
    f = data.draw(polys(p))
    c = data.draw(st.integers(0, p - 1))
    assert poly_shift(poly_shift(f, c), -c) == f


@given(st.sampled_from(PRIMES[:5]), st.data())
def test_shift_agrees_with_evaluation(p, data):
    f = data.draw(polys(p, 12))
    c = data.draw(st.integers(0, p - 1))
    g = poly_shift(f, c)
    for x in range(p):
        assert poly_eval(g, x) == poly_eval(f, x + c)


def test_finite_polylog_examples():
    F5 = GF(5)
    assert finite_polylog(F5, 1) == FpPoly([0, 1, 3, 2, 4], 5)
    assert finite_polylog(F5, 0) == FpPoly([0, 1, 1, 1, 1], 5)
    assert poly_eval(finite_polylog(F5, 1), 1).value == 0


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_polylog_identities(p):
    F = GF(p)
    X = FpPoly([0, 1], p)
    L0 = finite_polylog(F, 0)
    assert (X - 1) * (L0 + 1) == FpPoly.monomial(p, p) - 1
    for r in (1, 2):
        assert X * poly_derivative(finite_polylog(F, r)) == finite_polylog(F, r - 1)
    L1 = finite_polylog(F, 1)
    assert poly_compose_trunc(L1, FpPoly([1, -1], p), None) == L1
    for x in range(1, p):
        lhs = pow(x, p, p) * poly_eval(L1, 1 / F(x)).value
        assert (lhs + poly_eval(L1, x).value) % p == 0


def test_eval_examples():
    gamma5 = FpPoly([0, 0, 0, 3, 2], 5)
    assert poly_eval(gamma5, 1).value == 0
    assert poly_eval(gamma5, -1).value == 4
    assert poly_eval(FpPoly([], 5), 3).value == 0


@pytest.mark.parametrize("p,d", [(3, 2), (5, 2), (7, 3)])
def test_quadratic_extension_nonresidue(p, d):
    assert build_quadratic_extension(GF(p)).d == d


def test_roots_examples():
    i5 = construct_root(GF(5), "sqrt_minus_one")
    assert i5.value in (2, 3)
    i7 = construct_root(GF(7), "sqrt_minus_one")
    assert isinstance(i7, Fp2Elem) and i7 * i7 == -1
    z7 = construct_root(GF(7), "primitive_sixth_root")
    assert z7.value in (3, 5)


@pytest.mark.parametrize("p", [5, 7, 11, 13, 17, 19, 23, 29, 31, 199])
def test_roots_satisfy_minimal_polynomials(p):
    F = GF(p)
    i = construct_root(F, "sqrt_minus_one")
    z = construct_root(F, "primitive_sixth_root")
    assert i * i == -1
    assert z * z - z + 1 == 0
    assert z**6 == 1 and z**2 != 1 and z**3 != 1
    for root, splits in ((i, p % 4 == 1), (z, p % 3 == 1)):
        assert isinstance(root, Fp2Elem) != splits
        if isinstance(root, Fp2Elem):
            # Frobenius swaps the two conjugate roots.
            assert root**p == root.conjugate()


@given(st.sampled_from([7, 11, 19]), st.data())
def test_fp2_field_axioms(p, data):
    ext = build_quadratic_extension(GF(p))
    elems = st.tuples(st.integers(0, p - 1), st.integers(0, p - 1)).map(lambda ab: ext(*ab))
    x, y, z = data.draw(elems), data.draw(elems), data.draw(elems)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    if x != 0:
        assert x * x.inverse() == 1
    assert x**p == x.conjugate()


def test_lagrange_recovers_polynomial():
    rng = random.Random(3)
    for p in (5, 7, 13, 31):
        f = FpPoly([rng.randrange(p) for _ in range(p)], p)
        pts = [(x, poly_eval(f, x).value) for x in range(p)]
        rng.shuffle(pts)
        assert lagrange_interpolate(pts, p) == f
