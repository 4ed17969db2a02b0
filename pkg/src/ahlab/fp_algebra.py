"""Arithmetic in F_p and F_{p^2}, and dense polynomials / truncated series over F_p.

Polynomials store plain integer coefficient tuples, lowest degree first, with
trailing zeros trimmed.  A polynomial may carry a truncation order ``trunc``
meaning it stands for a power series known modulo X^trunc; ``None`` marks an
exact polynomial.  Every series operation takes its truncation order
explicitly.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import FieldMismatch, NotInvertible


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    return [n for n in range(max(lo, 2), hi + 1) if is_prime(n)]


@dataclass(frozen=True)
class PrimeField:
    p: int

    def __post_init__(self):
        if self.p < 3 or not is_prime(self.p):
            raise ValueError(f"modulus must be an odd prime, got {self.p}")

    def __call__(self, value: int) -> FpElem:
        return FpElem(value % self.p, self)

    @property
    def zero(self) -> FpElem:
        return FpElem(0, self)

    @property
    def one(self) -> FpElem:
        return FpElem(1, self)

    def elements(self):
        return (FpElem(v, self) for v in range(self.p))


@functools.cache
def GF(p: int) -> PrimeField:
    return PrimeField(p)


def _same_field(x, y):
    if x.field != y.field:
        raise FieldMismatch(f"F_{x.field.p} vs F_{y.field.p}")


@dataclass(frozen=True)
class FpElem:
    value: int
    field: PrimeField

    def __post_init__(self):
        if not 0 <= self.value < self.field.p:
            raise ValueError(f"{self.value} is not reduced mod {self.field.p}")

    @property
    def p(self) -> int:
        return self.field.p

    def _coerce(self, other):
        if isinstance(other, FpElem):
            _same_field(self, other)
            return other.value
        if isinstance(other, int):
            return other
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field(o - self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.field(self.value * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self.field(-self.value)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * fp_inverse(self.field(o))

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return fp_inverse(self) * o

    def __pow__(self, e: int):
        if e < 0:
            return fp_inverse(self) ** -e
        return self.field(pow(self.value, e, self.p))

    def __eq__(self, other):
        if isinstance(other, FpElem):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return (self.value - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


def fp_inverse(x: FpElem) -> FpElem:
    if x.value == 0:
        raise ZeroDivisionError(f"0 has no inverse in F_{x.p}")
    return FpElem(pow(x.value, -1, x.p), x.field)


def inv_mod(a: int, p: int) -> int:
    if a % p == 0:
        raise ZeroDivisionError(f"{a} has no inverse mod {p}")
    return pow(a, -1, p)


def legendre(a: int, p: int) -> int:
    """Legendre symbol (a/p) by Euler's criterion."""
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else t


# ---------------------------------------------------------------------------
# Quadratic extension F_p[t]/(t^2 - d)


@dataclass(frozen=True)
class QuadraticExtension:
    field: PrimeField
    d: int

    @property
    def p(self) -> int:
        return self.field.p

    def __call__(self, a: int, b: int = 0) -> Fp2Elem:
        return Fp2Elem(a % self.p, b % self.p, self)

    @property
    def t(self) -> Fp2Elem:
        return self(0, 1)


@functools.cache
def build_quadratic_extension(field: PrimeField) -> QuadraticExtension:
    """F_{p^2} presented with the smallest non-residue d >= 2."""
    p = field.p
    d = 2
    while legendre(d, p) != -1:
        d += 1
    return QuadraticExtension(field, d)


@dataclass(frozen=True)
class Fp2Elem:
    """a + b*t with t^2 = d."""

    a: int
    b: int
    ext: QuadraticExtension

    @property
    def p(self) -> int:
        return self.ext.p

    def _coerce(self, other):
        if isinstance(other, Fp2Elem):
            if other.ext != self.ext:
                raise FieldMismatch("different quadratic extensions")
            return other.a, other.b
        if isinstance(other, FpElem):
            if other.field != self.ext.field:
                raise FieldMismatch(f"F_{other.p} vs F_{self.p}^2")
            return other.value, 0
        if isinstance(other, int):
            return other, 0
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.ext(self.a + o[0], self.b + o[1])

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.ext(self.a - o[0], self.b - o[1])

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.ext(o[0] - self.a, o[1] - self.b)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        c, e = o
        return self.ext(self.a * c + self.b * e * self.ext.d, self.a * e + self.b * c)

    __rmul__ = __mul__

    def __neg__(self):
        return self.ext(-self.a, -self.b)

    def conjugate(self) -> Fp2Elem:
        return self.ext(self.a, -self.b)

    def norm(self) -> int:
        return (self.a * self.a - self.ext.d * self.b * self.b) % self.p

    def inverse(self) -> Fp2Elem:
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("0 has no inverse in F_p^2")
        ninv = pow(n, -1, self.p)
        return self.ext(self.a * ninv, -self.b * ninv)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * self.ext(*o).inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.ext(*o) * self.inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** -e
        result, base = self.ext(1), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def in_base_field(self) -> bool:
        return self.b == 0

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return (self.a - o[0]) % self.p == 0 and (self.b - o[1]) % self.p == 0

    def __hash__(self):
        return hash((self.a, self.b, self.p, self.ext.d))

    def __repr__(self):
        return f"{self.a} + {self.b}*t (t^2={self.ext.d}, mod {self.p})"


Scalar = Union[FpElem, Fp2Elem]


def construct_root(field: PrimeField, which: str) -> Scalar:
    """A square root of -1 or a primitive sixth root of unity.

    The root is taken in F_p when its minimal polynomial splits there, and in
    F_{p^2} otherwise.  Among candidates the smallest representative wins, so
    the choice is reproducible.
    """
    p = field.p
    if which == "sqrt_minus_one":
        coeffs = (1, 0, 1)  # z^2 + 1
    elif which == "primitive_sixth_root":
        if p <= 3:
            raise ValueError("primitive sixth roots need p > 3")
        coeffs = (1, p - 1, 1)  # z^2 - z + 1
    else:
        raise ValueError(f"unknown root kind {which!r}")
    c0, c1, _ = coeffs
    for z in range(p):
        if (z * z + c1 * z + c0) % p == 0:
            return field(z)
    # Roots are (-c1 +- sqrt(c1^2 - 4 c0)) / 2 with a non-residue discriminant.
    ext = build_quadratic_extension(field)
    disc = (c1 * c1 - 4 * c0) % p
    # disc = d * s^2 for some s in F_p, since both disc and d are non-residues.
    ratio = disc * pow(ext.d, -1, p) % p
    s = next(s for s in range(1, p) if s * s % p == ratio)
    half = pow(2, -1, p)
    return ext(-c1 * half, s * half)


# ---------------------------------------------------------------------------
# Polynomials and truncated series


def _trim(coeffs: list[int]) -> tuple[int, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


class FpPoly:
    """Dense polynomial over F_p, optionally a series truncated mod X^trunc."""

    __slots__ = ("coeffs", "p", "trunc")

    def __init__(self, coeffs: Iterable[int], p: int, trunc: int | None = None):
        c = [int(x) % p for x in coeffs]
        if trunc is not None:
            if trunc < 1:
                raise ValueError("truncation order must be positive")
            del c[trunc:]
        self.coeffs = _trim(c)
        self.p = p
        self.trunc = trunc

    @classmethod
    def monomial(cls, p: int, degree: int, coeff: int = 1, trunc: int | None = None) -> FpPoly:
        return cls([0] * degree + [coeff], p, trunc)

    @property
    def field(self) -> PrimeField:
        return GF(self.p)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def is_zero(self) -> bool:
        return not self.coeffs

    def _check(self, other: FpPoly):
        if other.p != self.p:
            raise FieldMismatch(f"F_{self.p}[X] vs F_{other.p}[X]")

    def _lift(self, other) -> FpPoly:
        if isinstance(other, FpPoly):
            self._check(other)
            return other
        if isinstance(other, FpElem):
            if other.p != self.p:
                raise FieldMismatch(f"F_{self.p}[X] vs F_{other.p}")
            return FpPoly([other.value], self.p)
        if isinstance(other, int):
            return FpPoly([other], self.p)
        return None

    def _join_trunc(self, other: FpPoly) -> int | None:
        orders = [t for t in (self.trunc, other.trunc) if t is not None]
        return min(orders) if orders else None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        n = max(len(self.coeffs), len(o.coeffs))
        return FpPoly([self[k] + o[k] for k in range(n)], self.p, self._join_trunc(o))

    __radd__ = __add__

    def __neg__(self):
        return FpPoly([-c for c in self.coeffs], self.p, self.trunc)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return poly_mul_trunc(self, o, self._join_trunc(o))

    __rmul__ = __mul__

    def scale(self, c: int) -> FpPoly:
        return FpPoly([c * x for x in self.coeffs], self.p, self.trunc)

    def truncate(self, order: int) -> FpPoly:
        return FpPoly(self.coeffs, self.p, order)

    def exact(self) -> FpPoly:
        """Drop the truncation marker."""
        return FpPoly(self.coeffs, self.p)

    def __call__(self, x):
        return poly_eval(self, x)

    def __eq__(self, other):
        if isinstance(other, FpPoly):
            return self.p == other.p and self.coeffs == other.coeffs
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self.coeffs == o.coeffs

    def __hash__(self):
        return hash((self.coeffs, self.p))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            terms = []
            for k, c in enumerate(self.coeffs):
                if c:
                    terms.append(str(c) if k == 0 else f"{c}*X" if k == 1 else f"{c}*X^{k}")
            body = " + ".join(terms)
        tail = f" + O(X^{self.trunc})" if self.trunc is not None else ""
        return f"FpPoly[{self.p}]({body}{tail})"


def poly_mul_trunc(f: FpPoly, g: FpPoly, order: int | None) -> FpPoly:
    """f*g with all terms of degree >= order dropped (order None keeps all)."""
    if f.p != g.p:
        raise FieldMismatch(f"F_{f.p}[X] vs F_{g.p}[X]")
    p = f.p
    a, b = f.coeffs, g.coeffs
    if order is not None:
        a, b = a[:order], b[:order]
    if not a or not b:
        return FpPoly([], p, order)
    if min(len(a), len(b)) < 16:
        n = len(a) + len(b) - 1
        out = [0] * n
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
    else:
        out = _kronecker_mul(a, b, p)
    if order is not None:
        del out[order:]
    return FpPoly(out, p, order)


def _kronecker_mul(a, b, p):
    # Pack both coefficient vectors into one integer each, with slots wide
    # enough that no convolution sum overflows into its neighbour.
    bound = min(len(a), len(b)) * (p - 1) ** 2
    width = (bound.bit_length() + 7) // 8
    A = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in a), "little")
    B = int.from_bytes(b"".join(c.to_bytes(width, "little") for c in b), "little")
    n = len(a) + len(b) - 1
    raw = (A * B).to_bytes(n * width, "little")
    return [int.from_bytes(raw[k * width:(k + 1) * width], "little") for k in range(n)]


def series_inverse_trunc(f: FpPoly, order: int) -> FpPoly:
    """The series h with f*h = 1 mod X^order."""
    p = f.p
    if f[0] == 0:
        raise NotInvertible("constant term is zero")
    c0inv = pow(f[0], -1, p)
    a = f.coeffs
    h = [0] * order
    h[0] = c0inv
    for n in range(1, order):
        s = 0
        for k in range(1, min(n, len(a) - 1) + 1):
            s += a[k] * h[n - k]
        h[n] = (-s * c0inv) % p
    return FpPoly(h, p, order)


def poly_derivative(f: FpPoly) -> FpPoly:
    trunc = None if f.trunc is None else max(f.trunc - 1, 1)
    return FpPoly([k * c for k, c in enumerate(f.coeffs)][1:], f.p, trunc)


def poly_pow_trunc(f: FpPoly, e: int, order: int | None) -> FpPoly:
    result = FpPoly([1], f.p, order)
    base = f if order is None else f.truncate(order)
    while e:
        if e & 1:
            result = poly_mul_trunc(result, base, order)
        base = poly_mul_trunc(base, base, order)
        e >>= 1
    return result


def poly_compose_trunc(f: FpPoly, g: FpPoly, order: int | None) -> FpPoly:
    """f(g(X)) mod X^order, by Horner's rule with truncated products."""
    if f.p != g.p:
        raise FieldMismatch(f"F_{f.p}[X] vs F_{g.p}[X]")
    acc = FpPoly([], f.p, order)
    gt = g if order is None else g.truncate(order)
    for c in reversed(f.coeffs):
        acc = poly_mul_trunc(acc, gt, order) + FpPoly([c], f.p, order)
    return acc


def poly_shift(f: FpPoly, c) -> FpPoly:
    """f(X + c), expanded exactly."""
    p = f.p
    c = int(c) % p
    n = len(f.coeffs)
    out = [0] * n
    # Horner: acc <- acc*(X + c) + a_k
    for a in reversed(f.coeffs):
        for k in range(n - 1, 0, -1):
            out[k] = (out[k - 1] + c * out[k]) % p
        out[0] = (c * out[0] + a) % p
    return FpPoly(out, p, f.trunc)


def poly_negate_var(f: FpPoly) -> FpPoly:
    """f(-X)."""
    return FpPoly([-c if k & 1 else c for k, c in enumerate(f.coeffs)], f.p, f.trunc)


def poly_reverse(f: FpPoly, n: int) -> FpPoly:
    """X^n f(1/X); requires deg f <= n."""
    if f.degree > n:
        raise ValueError(f"degree {f.degree} exceeds {n}")
    padded = list(f.coeffs) + [0] * (n + 1 - len(f.coeffs))
    return FpPoly(padded[::-1], f.p)


def finite_polylog(field: PrimeField, r: int) -> FpPoly:
    """sum_{k=1}^{p-1} X^k / k^r over F_p."""
    p = field.p
    return FpPoly([0] + [pow(pow(k, r, p), -1, p) if r > 0 else pow(k, -r, p) for k in range(1, p)], p)


def poly_eval(f: FpPoly, x):
    """Horner evaluation at x in F_p (int or FpElem) or F_{p^2}."""
    if isinstance(x, int):
        x = GF(f.p)(x)
    if x.p != f.p:
        raise FieldMismatch(f"F_{f.p}[X] evaluated at an element mod {x.p}")
    acc = x * 0
    for c in reversed(f.coeffs):
        acc = acc * x + c
    return acc


def lagrange_interpolate(points: list[tuple[int, int]], p: int) -> FpPoly:
    """The polynomial of degree < len(points) through the given (x, y) pairs mod p."""
    xs = [x % p for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("interpolation nodes must be distinct mod p")
    n = len(xs)
    # master(X) = prod (X - x_j), lowest degree first
    master = [1]
    for xj in xs:
        master = [(below - xj * here) % p for below, here in zip([0] + master, master + [0])]
    out = [0] * n
    for xi, (_, yi) in zip(xs, points):
        if yi % p == 0:
            continue
        # quotient master / (X - xi) by synthetic division, high to low
        quot = [0] * n
        carry = 0
        for k in range(n, 0, -1):
            carry = (master[k] + xi * carry) % p if k < n else master[k]
            quot[k - 1] = carry
        denom = 0
        for c in reversed(quot):
            denom = (denom * xi + c) % p
        scale = yi * pow(denom, -1, p) % p
        for k in range(n):
            out[k] += scale * quot[k]
    return FpPoly(out, p)
