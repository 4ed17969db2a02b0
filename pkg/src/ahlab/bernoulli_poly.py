"""The polynomials built from divided Bernoulli numbers B_n/n over F_p, and
checks of their functional equations and the congruences derived from them.

    gamma(X)      = sum_{n=1}^{p-2} (B_n/n)   X^{p-n}
    gamma_star(X) = sum_{n=1}^{p-2} (B_n/n)   X^n      = X^p gamma(1/X)
    rho(X)        = sum_{n=1}^{p-2} (B_n/n^2) X^{p-n}
"""

from __future__ import annotations

import functools
import math
import random
from dataclasses import dataclass
from fractions import Fraction

from .exact_arith import (
    bernoulli_exact,
    bernoulli_mod,
    binomial,
    fermat_quotient_mod,
    residue,
    wilson_quotient,
    x_times_fermat_quotient,
)
from .fp_algebra import (
    GF,
    FpPoly,
    construct_root,
    finite_polylog,
    inv_mod,
    lagrange_interpolate,
    poly_compose_trunc,
    poly_eval,
    poly_negate_var,
    poly_pow_trunc,
    poly_shift,
)
from .results import checkpoint, outcome


@dataclass(frozen=True)
class GammaPolys:
    p: int
    gamma: FpPoly
    gamma_star: FpPoly
    rho: FpPoly


def divided_bernoulli_mod(n: int, p: int, power: int = 1) -> int:
    """B_n / n^power reduced mod p."""
    return residue(bernoulli_exact(n) / n**power, p)


@functools.lru_cache(maxsize=64)
def build_gamma_polys(p: int) -> GammaPolys:
    gamma = [0] * p
    gamma_star = [0] * p
    rho = [0] * p
    for n in range(1, p - 1):
        c = divided_bernoulli_mod(n, p)
        gamma[p - n] = c
        gamma_star[n] = c
        rho[p - n] = divided_bernoulli_mod(n, p, 2)
    return GammaPolys(p, FpPoly(gamma, p), FpPoly(gamma_star, p), FpPoly(rho, p))


def _x_power(p: int, k: int) -> FpPoly:
    return FpPoly.monomial(p, k)


def feq_rhs(p: int) -> FpPoly:
    """pounds_1(X) + X^{p-1} - w_p - 1."""
    return finite_polylog(GF(p), 1) + _x_power(p, p - 1) - (wilson_quotient(p) + 1)


def _poly_witness(lhs: FpPoly, rhs: FpPoly):
    if lhs == rhs:
        return None
    n = max(len(lhs), len(rhs))
    k = next(k for k in range(n) if lhs[k] != rhs[k])
    return {"degree": k, "lhs": lhs[k], "rhs": rhs[k]}


def verify_feq_gamma(p: int):
    """gamma(X-1) - gamma(X) = pounds_1(X) + X^{p-1} - w_p - 1 in F_p[X]."""
    g = build_gamma_polys(p).gamma
    lhs = poly_shift(g, -1) - g
    return outcome("feq-gamma", p, {}, _poly_witness(lhs, feq_rhs(p)))


def verify_feq_gamma_sym(p: int):
    """gamma(X) + gamma(1-X) = -pounds_1(X) - X^{p-1} - (1-X)^{p-1} + w_p + 1."""
    g = build_gamma_polys(p).gamma
    one_minus_x = FpPoly([1, -1], p)
    lhs = g + poly_compose_trunc(g, one_minus_x, None)
    rhs = (
        -finite_polylog(GF(p), 1)
        - _x_power(p, p - 1)
        - poly_pow_trunc(one_minus_x, p - 1, None)
        + (wilson_quotient(p) + 1)
    )
    return outcome("feq-gamma-sym", p, {}, _poly_witness(lhs, rhs))


def verify_gamma_parity(p: int):
    """gamma(X) + X^{p-1}/2 is odd, and gamma(X) + gamma(-X) = -X^{p-1}."""
    g = build_gamma_polys(p).gamma
    shifted = g + _x_power(p, p - 1).scale(inv_mod(2, p))
    for k in range(0, len(shifted), 2):
        if shifted[k]:
            return outcome("gamma-parity", p, {}, {"form": "odd", "degree": k, "lhs": shifted[k], "rhs": 0})
    w = _poly_witness(g + poly_negate_var(g), -_x_power(p, p - 1))
    if w is not None:
        w = {"form": "sum", **w}
    return outcome("gamma-parity", p, {}, w)


def reconstruct_gamma_from_feq(p: int) -> FpPoly:
    """Recover gamma from gamma(0) = 0 and the shift equation alone.

    Walks x = 0, -1, -2, ... using gamma(x-1) = gamma(x) + R(x), then
    interpolates the unique polynomial of degree < p through the p values.
    """
    R = feq_rhs(p)
    values = {0: 0}
    x, gx = 0, 0
    for _ in range(p - 1):
        gx = (gx + poly_eval(R, x).value) % p
        x -= 1
        values[x % p] = gx
    return lagrange_interpolate(sorted(values.items()), p)


def verify_gamma_reconstruction(p: int):
    direct = build_gamma_polys(p).gamma
    return outcome("gamma-reconstruction", p, {}, _poly_witness(reconstruct_gamma_from_feq(p), direct))


def verify_granville_pol(p: int):
    """(1 - X^p - (1-X)^p)/p with exact integer binomials, against pounds_1."""
    coeffs = []
    for k in range(p + 1):
        c = (1 if k == 0 else 0) - (1 if k == p else 0) - (-1) ** k * binomial(p, k)
        q, r = divmod(c, p)
        if r:
            raise ArithmeticError(f"coefficient {c} of X^{k} not divisible by {p}")
        coeffs.append(q)
    lhs = FpPoly(coeffs, p)
    return outcome("granville-pol", p, {}, _poly_witness(lhs, finite_polylog(GF(p), 1)))


def verify_nielsen(p: int, xmin: int, xmax: int):
    """sum_{k=1}^{p-2} (B_k/k) x^{p-k} = x q_p(x) + w_p x + floor(x/p) mod p."""
    if xmin > xmax:
        raise ValueError("xmin must not exceed xmax")
    coeffs = [divided_bernoulli_mod(k, p) for k in range(1, p - 1)]
    w = wilson_quotient(p)
    params = {"xmin": xmin, "xmax": xmax}
    for x in range(xmin, xmax + 1):
        checkpoint()
        lhs = sum(c * pow(x, p - k, p) for k, c in enumerate(coeffs, start=1)) % p
        rhs = (x_times_fermat_quotient(p, x) + w * x + x // p) % p
        if lhs != rhs:
            return outcome("nielsen", p, params, {"x": x, "lhs": lhs, "rhs": rhs})
    return outcome("nielsen", p, params)


def faulhaber_integer_coeffs(p: int) -> tuple[list[int], int]:
    """Integer c_j and D with sum_{k=1}^{x} k^{p-1} = sum_j c_j x^{p-j} / (p D)."""
    terms = [(-1) ** j * binomial(p, j) * bernoulli_exact(j) for j in range(p)]
    D = math.lcm(*(t.denominator for t in terms))
    return [int(t * D) for t in terms], D


def verify_faulhaber_check(p: int):
    """Power sums sum_{k<=x} k^{p-1} for 0 <= x < p: the exact Faulhaber
    expansion, the reduction to x q_p(x) + (w_p+1)x - gamma(x), and the value x."""
    w = wilson_quotient(p)
    g = build_gamma_polys(p).gamma
    coeffs, D = faulhaber_integer_coeffs(p)
    power_sum = 0
    for x in range(p):
        if x:
            power_sum += x ** (p - 1)
        faulhaber = sum(c * x ** (p - j) for j, c in enumerate(coeffs))
        if faulhaber != p * D * power_sum:
            exact = Fraction(faulhaber, p * D)
            return outcome("faulhaber", p, {}, {"x": x, "form": "exact", "lhs": str(power_sum), "rhs": str(exact)})
        chain = (x_times_fermat_quotient(p, x) + (w + 1) * x - poly_eval(g, x).value) % p
        for form, rhs in (("chain", chain), ("value", x % p)):
            if power_sum % p != rhs:
                return outcome("faulhaber", p, {}, {"x": x, "form": form, "lhs": power_sum % p, "rhs": rhs})
    return outcome("faulhaber", p, {})


def verify_polylog_special_values(p: int):
    field = GF(p)
    L1 = finite_polylog(field, 1)
    q2 = fermat_quotient_mod(p, 2)
    g = build_gamma_polys(p).gamma
    i = construct_root(field, "sqrt_minus_one")
    minus_omega = construct_root(field, "primitive_sixth_root")
    checks = [
        ("L1(1)", poly_eval(L1, field.one), 0),
        ("L1(1/2)", poly_eval(L1, field(inv_mod(2, p))), q2),
        ("L1(-omega)", poly_eval(L1, minus_omega), 0),
        ("L1(i)+L1(-i)", poly_eval(L1, i) + poly_eval(L1, -i), -q2),
        ("gamma(i)+gamma(-i)", poly_eval(g, i) + poly_eval(g, -i), (-1) ** ((p + 1) // 2)),
    ]
    params = {"i_in_Fp": _in_base(i), "omega_in_Fp": _in_base(minus_omega)}
    for label, lhs, rhs in checks:
        if lhs != rhs:
            return outcome("polylog-special-values", p, params, {"value": label, "lhs": _show(lhs), "rhs": rhs % p})
    return outcome("polylog-special-values", p, params)


def _in_base(z) -> bool:
    return getattr(z, "b", 0) == 0


def _show(z):
    if hasattr(z, "b"):
        return [z.a, z.b]
    return z.value


def verify_numeric_sums(p: int):
    """sum B_n/n = w_p and sum 2^n B_n/n = -q_p(2) + w_p - 1, mod p."""
    divided = [divided_bernoulli_mod(n, p) for n in range(1, p - 1)]
    w = wilson_quotient(p)
    plain = sum(divided) % p
    weighted = sum(pow(2, n, p) * c for n, c in enumerate(divided, start=1)) % p
    expected = [("sum B_n/n", plain, w % p), ("sum 2^n B_n/n", weighted, (-fermat_quotient_mod(p, 2) + w - 1) % p)]
    for label, lhs, rhs in expected:
        if lhs != rhs:
            return outcome("numeric-sums", p, {}, {"sum": label, "lhs": lhs, "rhs": rhs})
    return outcome("numeric-sums", p, {})


def sixth_root_sum(p: int) -> int:
    return sum(bernoulli_mod(p - 6 * m - 3, p) * inv_mod(2 * m + 1, p) for m in range((p - 5) // 6 + 1)) % p


def verify_corollary_sixth(p: int):
    """sum_m B_{p-6m-3}/(2m+1) = 1/4 - (3/4)(p/3), i.e. 1 or -1/2 as p = -1 or 1 mod 3."""
    lhs = sixth_root_sum(p)
    symbol = 1 if p % 3 == 1 else -1
    rhs = (1 - 3 * symbol) * inv_mod(4, p) % p
    restated = (1 if p % 3 == 2 else -inv_mod(2, p)) % p
    params = {"legendre_p_3": symbol}
    if lhs != rhs or rhs != restated:
        return outcome("corollary-sixth", p, params, {"lhs": lhs, "rhs": rhs, "restated": restated})
    return outcome("corollary-sixth", p, params)


def eighth_root_sum(p: int) -> int:
    total = 0
    for n in range(3, p - 1):
        if n % 2 == 0:
            # B_{p-n} has odd index >= 3 here.
            assert bernoulli_exact(p - n) == 0
            continue
        sign = -1 if ((n * n - 1) // 8) % 2 else 1
        total += bernoulli_mod(p - n, p) * inv_mod(n, p) * sign * pow(2, (n + 1) // 2, p)
    return -total % p


def verify_corollary_eighth(p: int):
    lhs = eighth_root_sum(p)
    chi = (-1) ** ((p - 1) // 2)
    rhs = (fermat_quotient_mod(p, 2) + 2 * wilson_quotient(p) + 3 * (1 - chi) // 2) % p
    witness = None if lhs == rhs else {"lhs": lhs, "rhs": rhs}
    return outcome("corollary-eighth", p, {}, witness)


def random_unit_series(p: int, order: int, rng: random.Random, flat: bool) -> FpPoly:
    """Random g in 1 + X F_p[[X]] mod X^order; g'(0) = 0 when ``flat``."""
    coeffs = [1] + [rng.randrange(p) for _ in range(order - 1)]
    if flat:
        coeffs[1] = 0
    elif coeffs[1] == 0:
        coeffs[1] = rng.randrange(1, p)
    return FpPoly(coeffs, p, order)


def verify_lemma_pound0(p: int, trials: int, seed: int):
    """pounds_0(g) = X^{p-1} - 1 mod X^p if g'(0) != 0, else -1 mod X^{2p-2}.

    pounds_0(g) is computed by composition and cross-checked against
    (g - 1)^{p-1} - 1.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = random.Random(seed)
    order = 2 * p
    L0 = finite_polylog(GF(p), 0)
    params = {"trials": trials, "seed": seed}
    for t in range(trials):
        checkpoint()
        flat = t % 2 == 1
        g = random_unit_series(p, order, rng, flat)
        composed = poly_compose_trunc(L0, g, order)
        via_power = poly_pow_trunc(g - 1, p - 1, order) - 1
        if composed != via_power:
            return outcome("lemma-pound0", p, params, {"trial": t, "form": "cross-check", **_poly_witness(composed, via_power)})
        if flat:
            m = 2 * p - 2
            expected = FpPoly([-1], p, m)
        else:
            m = p
            expected = FpPoly.monomial(p, p - 1, 1, m) - 1
        w = _poly_witness(composed.truncate(m), expected)
        if w is not None:
            return outcome("lemma-pound0", p, params, {"trial": t, "flat": flat, **w})
    return outcome("lemma-pound0", p, params)
