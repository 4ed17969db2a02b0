"""Per-prime orchestration of every check, and the conjecture in all its forms."""

from __future__ import annotations

import concurrent.futures
import dataclasses
import time
from dataclasses import dataclass

from . import bernoulli_poly as bp
from .artin_hasse import (
    AHTable,
    _p_powers,
    compute_sk,
    compute_table,
    first_digit_mismatch,
    g_series,
    verify_closed_forms,
    verify_sk_relation,
)
from .errors import BudgetExceeded, NotPIntegral, OutOfRange, TableTooShallow
from .exact_arith import (
    bernoulli_mod,
    verify_lehmer,
    verify_wolstenholme,
    verify_zagier_identity,
    wilson_quotient,
)
from .fp_algebra import (
    GF,
    FpPoly,
    finite_polylog,
    inv_mod,
    poly_compose_trunc,
    poly_derivative,
    poly_mul_trunc,
    poly_negate_var,
    primes_between,
    series_inverse_trunc,
)
from .results import (
    FAIL,
    PASS,
    REFUTED,
    REGISTRY,
    SKIPPED,
    CheckResult,
    VerificationReport,
    budget,
    outcome,
    skipped,
)

TABLE_CHECKS = ("u-recursion", "p-integrality", "digit-oracle", "mod-p-recursion")
SK_CHECKS = ("prop-even-sum", "sk-relation")
CONJECTURE_CHECKS = ("closed-forms", "conjecture-k-odd", "conjecture-poly-forms")
NEEDS_TABLE = frozenset(TABLE_CHECKS + SK_CHECKS + CONJECTURE_CHECKS)
NEEDS_P5 = frozenset(
    {"polylog-special-values", "numeric-sums", "corollary-sixth", "corollary-eighth", "wolstenholme"}
)
POLY_CHECKS = frozenset(
    {
        "lemma-pound0",
        "feq-gamma",
        "feq-gamma-sym",
        "gamma-parity",
        "gamma-reconstruction",
        "granville-pol",
        "nielsen",
        "faulhaber",
        "polylog-special-values",
        "numeric-sums",
        "corollary-sixth",
        "corollary-eighth",
    }
)


@dataclass
class VerifyConfig:
    pmin: int = 3
    pmax: int = 31
    checks: tuple[str, ...] = REGISTRY
    max_n: int | None = None  # table depth override
    kmax: int | None = None  # s_k range override
    xmin: int | None = None  # Nielsen range override
    xmax: int | None = None
    seed: int = 0
    parallel: int = 1
    budget_s: float | None = None
    lemma_trials: int = 8
    zagier_kmax: int = 200
    digit_nmax: int = 60
    conj_pmax: int = 31
    conj_kcap: int | None = None  # record conjecture LHS for p-1 < k <= cap
    even_full_pmax: int = 7
    even_capped_pmax: int = 13
    even_cap: int = 200
    poly_pmax: int = 199
    nielsen_halfwidth_cap: int = 3000

    def __post_init__(self):
        self.checks = tuple(self.checks)
        unknown = [c for c in self.checks if c not in REGISTRY]
        if unknown:
            raise ValueError(f"unknown checks {unknown}; valid names: {', '.join(REGISTRY)}")
        if self.pmin < 3 or self.pmin > self.pmax:
            raise ValueError("need 3 <= pmin <= pmax")
        if self.parallel < 1:
            raise ValueError("parallel must be at least 1")
        if (self.xmin is None) != (self.xmax is None):
            raise ValueError("xmin and xmax go together")
        if self.xmin is not None and self.xmin > self.xmax:
            raise ValueError("xmin must not exceed xmax")

    def echo(self) -> dict:
        d = dataclasses.asdict(self)
        d["checks"] = list(self.checks)
        return d


# ---------------------------------------------------------------------------
# Depth policy


def sk_range(p: int, config: VerifyConfig) -> int | None:
    """Largest k for the s_k checks at p, or None when out of policy."""
    full = p * p - 2
    if config.kmax is not None:
        return min(config.kmax, full)
    if p <= config.even_full_pmax:
        return full
    if p <= config.even_capped_pmax:
        return min(config.even_cap, full)
    return None


def conjecture_in_policy(p: int, config: VerifyConfig) -> bool:
    return p <= config.conj_pmax


def nielsen_range(p: int, config: VerifyConfig) -> tuple[int, int]:
    if config.xmin is not None:
        return config.xmin, config.xmax
    half = min(3 * p * p, config.nielsen_halfwidth_cap)
    return -half, half


def table_depth(p: int, config: VerifyConfig) -> int:
    selected = set(config.checks)
    needs = [config.max_n if config.max_n is not None else 4 * p]
    if selected & set(SK_CHECKS):
        k = sk_range(p, config)
        if k is not None:
            needs.append(k * p)
            if p <= config.even_full_pmax and config.kmax is None:
                needs.append((p * p - 1) * p)  # to observe s_{p^2-1}
    if selected & set(CONJECTURE_CHECKS) and conjecture_in_policy(p, config):
        needs.append(max(7, p - 1, config.conj_kcap or 0) * p)
    return max(needs)


# ---------------------------------------------------------------------------
# Table checks


def verify_u_recursion(table: AHTable):
    p = table.p
    for n in range(1, table.N + 1):
        lhs = n * table.u(n)
        rhs = sum(table.u(n - q) for q in _p_powers(p, n))
        if lhs != rhs:
            return outcome("u-recursion", p, {"N": table.N}, {"n": n, "lhs": str(lhs), "rhs": str(rhs)})
    return outcome("u-recursion", p, {"N": table.N})


def verify_p_integrality(table: AHTable):
    p = table.p
    for n in range(table.N + 1):
        if table.u(n).denominator % p == 0:
            return outcome("p-integrality", p, {"N": table.N}, {"n": n, "den": str(table.u(n).denominator)})
    return outcome("p-integrality", p, {"N": table.N})


def verify_digit_oracle(table: AHTable, nmax: int):
    n = first_digit_mismatch(table, nmax)
    params = {"nmax": min(nmax, table.N)}
    if n is None:
        return outcome("digit-oracle", table.p, params)
    return outcome("digit-oracle", table.p, params, {"n": n, "recursion": str(table.u(n))})


def verify_mod_p_recursion(table: AHTable):
    p, a = table.p, table.a
    for n in range(1, table.N + 1):
        if n % p == 0:
            continue
        lhs = n * a[n] % p
        rhs = sum(a[n - q] for q in _p_powers(p, n)) % p
        if lhs != rhs:
            return outcome("mod-p-recursion", p, {"N": table.N}, {"n": n, "lhs": lhs, "rhs": rhs})
    return outcome("mod-p-recursion", p, {"N": table.N})


def verify_prop_even(table: AHTable, kmax: int):
    """s_k = (-1)^j when k = j(p-1), else 0, for 0 <= k <= kmax < p^2 - 1."""
    p = table.p
    if kmax >= p * p - 1:
        raise OutOfRange(f"kmax must be below p^2-1 = {p * p - 1}")
    observe = table.N >= (p * p - 1) * p
    sk = compute_sk(table, p * p - 1 if observe else kmax)
    params = {"kmax": kmax}
    if observe:
        # Beyond the stated range; recorded, not asserted.
        params["observed_s_p2_minus_1"] = sk[p * p - 1]
    for k in range(kmax + 1):
        j, r = divmod(k, p - 1)
        expected = (-1) ** j % p if r == 0 else 0
        if sk[k] != expected:
            return outcome("prop-even-sum", p, params, {"k": k, "lhs": sk[k], "rhs": expected})
    return outcome("prop-even-sum", p, params)


# ---------------------------------------------------------------------------
# The conjecture


def conjecture_lhs(table: AHTable, k: int) -> int:
    """sum_{r=0}^{k} (-1)^r r a_{rp} a_{(k-r)p} mod p."""
    p = table.p
    total = 0
    for r in range(1, k + 1):
        term = r * table.akp(r) * table.akp(k - r)
        total += -term if r & 1 else term
    return total % p


def conjecture_rhs(p: int, k: int) -> int:
    return bernoulli_mod(p - k, p) * inv_mod(k, p) % p


def verify_conjecture_numeric(table: AHTable, kcap: int | None = None):
    p = table.p
    table.require((p - 1) * p)
    violations = []
    for k in range(2, p):
        lhs, rhs = conjecture_lhs(table, k), conjecture_rhs(p, k)
        if lhs != rhs:
            kind = REFUTED if k % 2 else FAIL
            violations.append((kind, {"p": p, "k": k, "lhs": lhs, "rhs": rhs, "parity": "odd" if k % 2 else "even"}))
    # k = 1: the left side is -a_p, which should be w_p.
    lhs1, w = -table.akp(1) % p, wilson_quotient(p) % p
    if lhs1 != w:
        violations.append((FAIL, {"p": p, "k": 1, "lhs": lhs1, "rhs": w, "parity": "boundary"}))
    # k = p-1: the sum equals -B_1 = 1/2.
    lhs_top, half = conjecture_lhs(table, p - 1), inv_mod(2, p)
    if lhs_top != half:
        violations.append((FAIL, {"p": p, "k": p - 1, "lhs": lhs_top, "rhs": half, "parity": "boundary"}))
    params = {"k_range": [2, p - 1]}
    if kcap is not None and kcap >= p:
        top = min(kcap, table.N // p)
        # Outside the conjectured range; values recorded without expectation.
        params["beyond_range_lhs"] = [[k, conjecture_lhs(table, k)] for k in range(p, top + 1)]
    if not violations:
        return outcome("conjecture-k-odd", p, params)
    status = FAIL if any(kind == FAIL for kind, _ in violations) else REFUTED
    first = next(w for kind, w in violations if kind == status)
    params["violations"] = len(violations)
    return CheckResult("conjecture-k-odd", p, params, status, first)


def conjecture_poly_forms(table: AHTable) -> dict[str, tuple[FpPoly, FpPoly]]:
    """(lhs, rhs) mod X^p for each of the four equivalent forms."""
    p = table.p
    G = g_series(table, p)
    polys = bp.build_gamma_polys(p)
    gamma, rho = polys.gamma.truncate(p), polys.rho.truncate(p)
    w = wilson_quotient(p) % p
    wX = FpPoly([0, w], p, p)

    def times_x(f: FpPoly) -> FpPoly:
        return FpPoly((0, *f.coeffs), p, p)

    dG = poly_derivative(G)
    L1_of_G = poly_compose_trunc(finite_polylog(GF(p), 1), G, p)
    return {
        "A": (times_x(poly_mul_trunc(dG, poly_negate_var(G), p)), wX - gamma),
        "B": (times_x(poly_mul_trunc(dG, series_inverse_trunc(G, p), p)), wX - gamma),
        "C": (times_x(poly_derivative(L1_of_G)), gamma - wX),
        "D": (L1_of_G, -wX - rho),
    }


def verify_conjecture_poly_forms(table: AHTable):
    p = table.p
    forms = conjecture_poly_forms(table)
    params, witness = {}, None
    for name, (lhs, rhs) in forms.items():
        w = bp._poly_witness(lhs, rhs)
        params[name] = PASS if w is None else FAIL
        if w is not None and witness is None:
            witness = {"p": p, "form": name, **w}
    outcomes = set(params.values())
    params["consistent"] = len(outcomes) == 1
    if witness is None:
        return outcome("conjecture-poly-forms", p, params)
    # All forms failing together is a counterexample; disagreement between
    # provably equivalent forms is a defect.
    status = REFUTED if params["consistent"] else FAIL
    return CheckResult("conjecture-poly-forms", p, params, status, witness)


# ---------------------------------------------------------------------------
# Sweep


def _dispatch(name: str, p: int, config: VerifyConfig, table: AHTable | None) -> CheckResult:
    if name in NEEDS_P5 and p < 5:
        return skipped(name, p, "stated for p > 3")
    if name in POLY_CHECKS and p > config.poly_pmax:
        return skipped(name, p, f"p above poly_pmax={config.poly_pmax}")
    if name == "zagier-identity":
        return verify_zagier_identity(config.zagier_kmax, prime=p)
    if name == "wolstenholme":
        return verify_wolstenholme(p)
    if name == "lehmer":
        return verify_lehmer(p)
    if name == "lemma-pound0":
        return bp.verify_lemma_pound0(p, config.lemma_trials, config.seed)
    if name == "nielsen":
        return bp.verify_nielsen(p, *nielsen_range(p, config))
    simple = {
        "feq-gamma": bp.verify_feq_gamma,
        "feq-gamma-sym": bp.verify_feq_gamma_sym,
        "gamma-parity": bp.verify_gamma_parity,
        "gamma-reconstruction": bp.verify_gamma_reconstruction,
        "granville-pol": bp.verify_granville_pol,
        "faulhaber": bp.verify_faulhaber_check,
        "polylog-special-values": bp.verify_polylog_special_values,
        "numeric-sums": bp.verify_numeric_sums,
        "corollary-sixth": bp.verify_corollary_sixth,
        "corollary-eighth": bp.verify_corollary_eighth,
    }
    if name in simple:
        return simple[name](p)
    # Everything below reads the coefficient table.
    if name in SK_CHECKS:
        kmax = sk_range(p, config)
        if kmax is None:
            return skipped(name, p, "s_k range not in depth policy")
        if name == "prop-even-sum":
            return verify_prop_even(table, kmax)
        return verify_sk_relation(compute_sk(table, kmax))
    if name in CONJECTURE_CHECKS:
        if not conjecture_in_policy(p, config):
            return skipped(name, p, f"p above conj_pmax={config.conj_pmax}")
        if name == "closed-forms":
            return verify_closed_forms(table)
        if name == "conjecture-k-odd":
            return verify_conjecture_numeric(table, config.conj_kcap)
        return verify_conjecture_poly_forms(table)
    if name == "u-recursion":
        return verify_u_recursion(table)
    if name == "p-integrality":
        return verify_p_integrality(table)
    if name == "digit-oracle":
        return verify_digit_oracle(table, config.digit_nmax)
    if name == "mod-p-recursion":
        return verify_mod_p_recursion(table)
    raise AssertionError(f"unhandled check {name}")


def _run_one(name: str, p: int, config: VerifyConfig, table: AHTable | None) -> CheckResult:
    start = time.perf_counter()
    try:
        with budget(config.budget_s):
            result = _dispatch(name, p, config, table)
    except BudgetExceeded:
        result = skipped(name, p, f"exceeded budget of {config.budget_s}s")
    except (TableTooShallow, OutOfRange) as exc:
        result = skipped(name, p, str(exc))
    except NotPIntegral as exc:
        result = CheckResult(name, p, {}, FAIL, {"not_p_integral": str(exc.value), "index": exc.index})
    except Exception as exc:  # a single check must never abort the sweep
        result = CheckResult(name, p, {}, FAIL, {"error": f"{type(exc).__name__}: {exc}"})
    result.elapsed_ms = int((time.perf_counter() - start) * 1000)
    return result


def run_prime(p: int, config: VerifyConfig) -> list[CheckResult]:
    selected = [name for name in REGISTRY if name in config.checks]
    table, table_problem = None, None
    if NEEDS_TABLE & set(selected):
        depth = table_depth(p, config)
        try:
            with budget(config.budget_s):
                table = compute_table(p, depth)
        except BudgetExceeded:
            table_problem = SKIPPED, f"table to N={depth} exceeded budget of {config.budget_s}s"
        except NotPIntegral as exc:
            table_problem = FAIL, {"not_p_integral": str(exc.value), "index": exc.index}
    results = []
    for name in selected:
        if name in NEEDS_TABLE and table is None:
            kind, info = table_problem
            if kind == FAIL:
                # Loss of p-integrality falsifies the premise of every table check.
                results.append(CheckResult(name, p, {}, FAIL, dict(info)))
            else:
                results.append(skipped(name, p, info))
            continue
        results.append(_run_one(name, p, config, table))
    return results


def _run_prime_args(args):
    return run_prime(*args)


def run_all(config: VerifyConfig) -> VerificationReport:
    primes = [p for p in primes_between(config.pmin, config.pmax) if p >= 3]
    if config.parallel == 1 or len(primes) < 2:
        per_prime = [run_prime(p, config) for p in primes]
    else:
        with concurrent.futures.ProcessPoolExecutor(max_workers=config.parallel) as pool:
            per_prime = list(pool.map(_run_prime_args, [(p, config) for p in primes]))
    return VerificationReport(config.echo(), list(zip(primes, per_prime)))


def exit_code(report: VerificationReport) -> int:
    totals = report.totals
    return 1 if totals[FAIL] or totals[REFUTED] else 0

