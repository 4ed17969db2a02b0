"""Exact integer and rational arithmetic: Bernoulli numbers, factorials,
Wilson and Fermat quotients, and the identities that hold over Q.

Python's ``int`` and ``fractions.Fraction`` are the big-integer and
big-rational types; both are canonical by construction.
"""

from __future__ import annotations

import functools
import math
import threading
from fractions import Fraction

from .errors import NotPIntegral, OutOfRange
from .fp_algebra import GF, FpElem, is_prime
from .results import outcome

BigRational = Fraction


def factorial(n: int) -> int:
    if n < 0:
        raise ValueError("factorial of a negative number")
    return math.factorial(n)


def binomial(n: int, k: int) -> int:
    if n < 0 or not 0 <= k <= n:
        raise ValueError(f"binomial({n}, {k}) out of range")
    return math.comb(n, k)


class _BernoulliTable:
    """Initialize-once, append-only memo of B_0, B_1, ... (B_1 = -1/2)."""

    def __init__(self):
        self._values = [Fraction(1)]
        self._lock = threading.Lock()

    def get(self, n: int) -> Fraction:
        values = self._values
        if n < len(values):
            return values[n]
        with self._lock:
            while len(values) <= n:
                m = len(values)
                # sum_{j=0}^{m} C(m+1, j) B_j = 0
                acc = Fraction(0)
                row = 1  # C(m+1, j)
                for j in range(m):
                    if values[j]:
                        acc += row * values[j]
                    row = row * (m + 1 - j) // (j + 1)
                values.append(-acc / (m + 1))
        return values[n]


_bernoulli = _BernoulliTable()


def bernoulli_exact(n: int) -> Fraction:
    if n < 0:
        raise ValueError("Bernoulli index must be non-negative")
    return _bernoulli.get(n)


def _require_prime(p: int):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def wilson_quotient(p: int) -> int:
    _require_prime(p)
    q, r = divmod(factorial(p - 1) + 1, p)
    assert r == 0
    return q


def x_times_fermat_quotient(p: int, x: int) -> int:
    """(x^p - x)/p, which is x*q_p(x) and an integer for every integer x."""
    _require_prime(p)
    q, r = divmod(x**p - x, p)
    assert r == 0
    return q


def fermat_quotient_mod(p: int, x: int) -> int:
    """q_p(x) = (x^{p-1} - 1)/p reduced mod p, for x prime to p."""
    if x % p == 0:
        raise ValueError("Fermat quotient needs x prime to p")
    return (pow(x, p - 1, p * p) - 1) // p % p


def reduce_mod_p(r, p: int) -> FpElem:
    r = Fraction(r)
    if r.denominator % p == 0:
        raise NotPIntegral(r, p)
    return GF(p)(r.numerator * pow(r.denominator, -1, p))


def residue(r, p: int) -> int:
    """Integer residue in [0, p) of a p-integral rational."""
    return reduce_mod_p(r, p).value


def bernoulli_mod(n: int, p: int) -> int:
    return residue(bernoulli_exact(n), p)


def verify_zagier_identity(kmax: int, prime: int = 0):
    """sum_{n=1}^{k-1} C(k-1, n-1) B_n/n = -1/k for 2 <= k <= kmax, exactly."""
    if kmax < 2:
        raise ValueError("kmax must be at least 2")
    return outcome("zagier-identity", prime, {"kmax": kmax}, _zagier_first_failure(kmax))


@functools.lru_cache(maxsize=8)
def _zagier_first_failure(kmax: int):
    divided = [None] + [bernoulli_exact(n) / n for n in range(1, kmax)]
    for k in range(2, kmax + 1):
        lhs = sum(binomial(k - 1, n - 1) * divided[n] for n in range(1, k) if divided[n])
        if lhs != Fraction(-1, k):
            return {"k": k, "lhs": str(lhs), "rhs": str(Fraction(-1, k))}
    return None


def verify_wolstenholme(p: int):
    if p <= 3:
        raise OutOfRange("Wolstenholme's congruence needs p > 3")
    _require_prime(p)
    value = binomial(2 * p - 1, p - 1) % p**3
    witness = None if value == 1 else {"residue_mod_p3": value}
    return outcome("wolstenholme", p, {}, witness)


def verify_lehmer(p: int):
    """(1 + p B_{p-1})/p = w_p + 1 mod p, computed over Q then reduced."""
    _require_prime(p)
    lhs = residue((1 + p * bernoulli_exact(p - 1)) / p, p)
    rhs = (wilson_quotient(p) + 1) % p
    witness = None if lhs == rhs else {"lhs": lhs, "rhs": rhs}
    return outcome("lehmer", p, {}, witness)
