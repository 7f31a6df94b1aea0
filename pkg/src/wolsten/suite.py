"""One verifier per congruence claim, each returning a CongruenceReport.

Ratio congruences are decided on exact rationals via padic_congruent;
integer congruences may take the prime-power modular route when the
binomial arguments are too large to expand, with the difference valuation
still computed exactly by precision escalation.  Negative controls (the
p = 5 failures) run through the same verifiers and report the failing
residues rather than raising.
"""

from __future__ import annotations

import itertools
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

from .bernoulli import (
    DEFAULT_EXACT_BOUND,
    bernoulli_exact,
    wolstenholme_quotient,
)
from .binomial import binom, binom_factor, binom_mod, ratio, rising_factor
from .errors import BudgetExceededError, PreconditionError
from .harmonic import (
    Composition,
    composition_sum,
    composition_sum_exact,
    genwols_check,
    h12_checks,
    mhs_exact,
)
from .padic import (
    PrimePower,
    _int_valuation,
    is_prime,
    padic_congruent,
    reduce_mod,
    valuation,
)
from .parallel import parallel_map
from .report import CongruenceReport, verdict_of

__all__ = [
    "QuadrupleHit",
    "check_wolstenholme",
    "check_bailey4",
    "check_bailey5",
    "check_kazandzidis",
    "check_main",
    "check_main_exp",
    "check_thm2_case1",
    "check_thm2_case2",
    "check_prop_ijk",
    "check_cor_ijk",
    "check_ji_zhoucai",
    "find_exact_quadruples",
    "thm2_c_value",
    "run_check",
    "grid_reports",
    "CLAIM_PARAMS",
]

# Largest top argument for which integer congruences expand the exact
# binomial (roughly 600 decimal digits); beyond it the modular route runs.
_EXACT_ARG_LIMIT = 2_000

# Exhaustive quadruple search keeps exact binomials up to this argument.
DEFAULT_SEARCH_BUDGET = 30_000

DEFAULT_EXP_BUDGET = 10**6

_h1_cache: list[Fraction] = [Fraction(0)]
_w_cache: dict[int, int] = {}
_cache_lock = threading.Lock()


def _h1(n: int) -> Fraction:
    """Harmonic number H(1;n), cached progressively."""
    with _cache_lock:
        while len(_h1_cache) <= n:
            _h1_cache.append(_h1_cache[-1] + Fraction(1, len(_h1_cache)))
        return _h1_cache[n]


def _wp(p: int) -> int:
    w = _w_cache.get(p)
    if w is None:
        w = wolstenholme_quotient(p).value
        _w_cache[p] = w
    return w


def _require_prime(p: int, minimum: int) -> None:
    if not is_prime(p) or p < minimum:
        raise PreconditionError(f"p={p} must be a prime >= {minimum}")


def _ratio_report(
    claim_id: str,
    p: int,
    precision: int,
    lhs: Fraction,
    rhs: Fraction,
    params: dict,
) -> CongruenceReport:
    ok, v = padic_congruent(lhs, rhs, p, precision)
    mod = PrimePower(p, precision)
    return CongruenceReport(
        claim_id=claim_id,
        p=p,
        precision=precision,
        lhs_residue=reduce_mod(lhs, mod).value,
        rhs_residue=reduce_mod(rhs, mod).value,
        diff_valuation=v,
        verdict=verdict_of(ok),
        lhs_exact=lhs,
        rhs_exact=rhs,
        params=params,
    )


def _escalated_valuation(a: int, b: int, rhs: int, p: int, start: int) -> int:
    # The difference is known nonzero; raise the modulus until it shows.
    k = start + 2
    while k <= 64:
        d = (binom_mod(a, b, PrimePower(p, k)) - rhs) % p**k
        if d:
            return _int_valuation(d, p)
        k += 2
    raise BudgetExceededError(
        f"difference valuation for binom({a},{b}) exceeds p^64"
    )


def _integer_congruence(
    claim_id: str,
    p: int,
    precision: int,
    a: int,
    b: int,
    rhs: int,
    params: dict,
) -> CongruenceReport:
    """Report for the integer congruence binom(a, b) == rhs mod p^precision."""
    mod = PrimePower(p, precision)
    q = mod.modulus
    if b < 0 or b > a or b <= 1 or b >= a - 1 or a <= _EXACT_ARG_LIMIT:
        lhs = binom(a, b)
        v = valuation(lhs - rhs, p)
        lhs_exact: Fraction | None = Fraction(lhs)
        lhs_res = lhs % q
    else:
        lhs_exact = None
        lhs_res = binom_mod(a, b, mod)
        d = (lhs_res - rhs) % q
        v = _int_valuation(d, p) if d else _escalated_valuation(a, b, rhs, p, precision)
    return CongruenceReport(
        claim_id=claim_id,
        p=p,
        precision=precision,
        lhs_residue=lhs_res,
        rhs_residue=rhs % q,
        diff_valuation=v,
        verdict=verdict_of(v >= precision),
        lhs_exact=lhs_exact,
        rhs_exact=Fraction(rhs),
        params=params,
    )


def check_wolstenholme(p: int, precision: int | None = None) -> CongruenceReport:
    """H(1;p-1) == 0 mod p^2 for primes p >= 5."""
    _require_prime(p, 5)
    m = 2 if precision is None else precision
    h = mhs_exact(Composition.of(1), p - 1)
    return _ratio_report("wolstenholme", p, m, h, Fraction(0), {})


def check_bailey4(
    p: int, n: int, r: int, precision: int | None = None
) -> CongruenceReport:
    """binom(np, rp) == binom(n, r) mod p^3, with binom(n, r) = 0 when n < r."""
    _require_prime(p, 5)
    if n < 0 or r < 0:
        raise PreconditionError("n and r must be non-negative")
    m = 3 if precision is None else precision
    return _integer_congruence(
        "bailey4", p, m, n * p, r * p, binom(n, r), {"n": n, "r": r}
    )


def check_bailey5(
    p: int, N: int, R: int, n: int, r: int, precision: int | None = None
) -> CongruenceReport:
    """binom(N p^3 + n, R p^3 + r) == binom(N, R) binom(n, r) mod p^3 for n, r < p."""
    _require_prime(p, 5)
    if min(N, R, n, r) < 0:
        raise PreconditionError("all parameters must be non-negative")
    if n >= p or r >= p:
        raise PreconditionError(f"requires n, r < p, got n={n}, r={r}, p={p}")
    m = 3 if precision is None else precision
    p3 = p**3
    return _integer_congruence(
        "bailey5",
        p,
        m,
        N * p3 + n,
        R * p3 + r,
        binom(N, R) * binom(n, r),
        {"N": N, "R": R, "n": n, "r": r},
    )


def check_kazandzidis(
    p: int, n: int, r: int, form: str = "K2", precision: int | None = None
) -> CongruenceReport:
    """The rising-factorial (K1) and plain (K2) ratio congruences.

    For p > 3 the ratio is == 1 mod p^3; for p = 3 the right side carries
    the correction term 1 - p^2 n r (n+r) for K1 and 1 - p^2 n r (n-r)
    for K2.  K1 accepts any integer n (r >= 1); K2 needs n >= r >= 0.
    """
    _require_prime(p, 3)
    m = 3 if precision is None else precision
    if form == "K1":
        if r < 1:
            raise PreconditionError(f"K1 needs r >= 1, got {r}")
        lhs = ratio(
            [rising_factor(n * p, r * p)], [rising_factor(n, r)]
        ).value
        correction = n * r * (n + r)
    elif form == "K2":
        if not 0 <= r <= n:
            raise PreconditionError(f"K2 needs n >= r >= 0, got n={n}, r={r}")
        lhs = ratio([binom_factor(n * p, r * p)], [binom_factor(n, r)]).value
        correction = n * r * (n - r)
    else:
        raise PreconditionError(f"form must be 'K1' or 'K2', got {form!r}")
    rhs = Fraction(1 - p * p * correction) if p == 3 else Fraction(1)
    claim = "kazandzidis_k1" if form == "K1" else "kazandzidis_k2"
    return _ratio_report(claim, p, m, lhs, rhs, {"n": n, "r": r})


def check_main(
    p: int, n: int, r: int, precision: int | None = None
) -> CongruenceReport:
    """binom(np, rp) / binom(n, r) == 1 + w_p n r (n-r) p^3 mod p^5.

    The theorem holds for primes >= 7; p = 5 is accepted so the failing
    residues (751 vs 126 at n=4, r=1) can be reported.  n < r is an
    error, not a vacuous pass.
    """
    _require_prime(p, 5)
    if n < 0 or r < 0:
        raise PreconditionError("n and r must be non-negative")
    m = 5 if precision is None else precision
    # n < r surfaces as ZeroDenominatorError from the vanishing binom(n, r).
    lhs = ratio([binom_factor(n * p, r * p)], [binom_factor(n, r)]).value
    rhs = Fraction(1 + _wp(p) * n * r * (n - r) * p**3)
    return _ratio_report("main_p5", p, m, lhs, rhs, {"n": n, "r": r})


def check_main_exp(
    p: int,
    n: int,
    r: int,
    e: int,
    precision: int | None = None,
    budget: int = DEFAULT_EXP_BUDGET,
) -> CongruenceReport:
    """The same mod-p^5 congruence with p replaced by p^e, any e >= 1."""
    _require_prime(p, 5)
    if e < 1:
        raise PreconditionError(f"e must be >= 1, got {e}")
    if n * p**e > budget:
        raise BudgetExceededError(f"n*p^e = {n * p**e} exceeds budget {budget}")
    m = 5 if precision is None else precision
    pe = p**e
    lhs = ratio([binom_factor(n * pe, r * pe)], [binom_factor(n, r)]).value
    rhs = Fraction(1 + _wp(p) * n * r * (n - r) * p**3)
    return _ratio_report("main_exp", p, m, lhs, rhs, {"n": n, "r": r, "e": e})


def thm2_c_value(p: int, N: int, R: int, n: int, r: int) -> Fraction:
    """The correction coefficient H1(n)N - H1(r)R + (w_p N R - H1(n-r))(N - R)."""
    return (
        _h1(n) * N
        - _h1(r) * R
        + (Fraction(_wp(p)) * N * R - _h1(n - r)) * (N - R)
    )


def check_thm2_case1(
    p: int, N: int, R: int, n: int, r: int, precision: int | None = None
) -> CongruenceReport:
    """binom(Np^3+n, Rp^3+r) / [binom(N,R) binom(n,r)] == 1 + c p^3 mod p^5.

    Requires r <= n < p and N >= R >= 0.  Valid as a theorem for p >= 7;
    p = 5 runs as a negative control (2501 vs 1 at N=3, R=1, n=4, r=1).
    """
    _require_prime(p, 5)
    if not (0 <= r <= n < p):
        raise PreconditionError(f"requires 0 <= r <= n < p, got n={n}, r={r}")
    if not 0 <= R <= N:
        raise PreconditionError(f"requires N >= R >= 0, got N={N}, R={R}")
    m = 5 if precision is None else precision
    p3 = p**3
    lhs = ratio(
        [binom_factor(N * p3 + n, R * p3 + r)],
        [binom_factor(N, R), binom_factor(n, r)],
    ).value
    c = thm2_c_value(p, N, R, n, r)
    rhs = 1 + c * p3
    params = {"N": N, "R": R, "n": n, "r": r, "c": f"{c.numerator}/{c.denominator}"}
    return _ratio_report("thm2_case1", p, m, lhs, rhs, params)


def check_thm2_case2(
    p: int, N: int, R: int, n: int, r: int, precision: int | None = None
) -> CongruenceReport:
    """binom(Np^3+n, Rp^3+r) / binom(N,R) == (-1)^(r-n+1) ((N-R)/r) binom(r-1,n)^-1 p^3.

    Mod p^5, for 1 <= n < r < p and N >= R >= 0.  Valid for p >= 7; at
    p = 5 the verdicts are exploratory observations, not assertions.
    """
    _require_prime(p, 5)
    if not (1 <= n < r < p):
        raise PreconditionError(f"requires 1 <= n < r < p, got n={n}, r={r}")
    if not 0 <= R <= N:
        raise PreconditionError(f"requires N >= R >= 0, got N={N}, R={R}")
    m = 5 if precision is None else precision
    p3 = p**3
    lhs = ratio([binom_factor(N * p3 + n, R * p3 + r)], [binom_factor(N, R)]).value
    sign = -1 if (r - n + 1) % 2 else 1
    rhs = sign * Fraction(N - R, r) * Fraction(1, binom(r - 1, n)) * p3
    return _ratio_report(
        "thm2_case2", p, m, lhs, rhs, {"N": N, "R": R, "n": n, "r": r}
    )


def check_prop_ijk(p: int) -> CongruenceReport:
    """2H(2,1;p-1) == -2H(1,2;p-1) == sum 1/(ijk) over i+j+k=p, mod p."""
    if not is_prime(p) or p < 3:
        raise PreconditionError(f"p={p} must be an odd prime")
    h21 = mhs_exact(Composition.of(2, 1), p - 1)
    h12 = mhs_exact(Composition.of(1, 2), p - 1)
    comp = composition_sum_exact(3, p)
    ok1, v1 = padic_congruent(2 * h21, -2 * h12, p, 1)
    lhs = 2 * h12 + comp
    ok2, v2 = padic_congruent(lhs, 0, p, 1)
    mod = PrimePower(p, 1)
    return CongruenceReport(
        claim_id="prop_ijk",
        p=p,
        precision=1,
        lhs_residue=reduce_mod(lhs, mod).value,
        rhs_residue=0,
        diff_valuation=v2,
        verdict=verdict_of(ok1 and ok2),
        lhs_exact=lhs,
        rhs_exact=Fraction(0),
        params={"first_link_valuation": int(v1)},
    )


def check_cor_ijk(
    p: int, exact_bound: int = DEFAULT_EXACT_BOUND
) -> CongruenceReport:
    """sum 1/(ijk) over i+j+k=p == -2 B_{p-3} mod p, for primes p >= 5.

    The right side always comes from the quotient route (-2 B == 6 w_p);
    when p is within the exact Bernoulli bound the exact route must agree
    or the verdict fails.  Beyond the bound the reported valuation is the
    residue-level lower bound (1 when congruent).
    """
    _require_prime(p, 5)
    mod = PrimePower(p, 1)
    w = _wp(p)
    rhs_res = 6 * w % p
    if p - 3 <= exact_bound:
        lhs = composition_sum_exact(3, p)
        rhs = -2 * bernoulli_exact(p - 3, bound=exact_bound)
        ok, v = padic_congruent(lhs, rhs, p, 1)
        routes_agree = reduce_mod(rhs, mod).value == rhs_res
        return CongruenceReport(
            claim_id="cor_ijk",
            p=p,
            precision=1,
            lhs_residue=reduce_mod(lhs, mod).value,
            rhs_residue=rhs_res,
            diff_valuation=v,
            verdict=verdict_of(ok and routes_agree),
            lhs_exact=lhs,
            rhs_exact=rhs,
            params={},
        )
    lhs_res = composition_sum(3, p, mod).value
    ok = lhs_res == rhs_res
    return CongruenceReport(
        claim_id="cor_ijk",
        p=p,
        precision=1,
        lhs_residue=lhs_res,
        rhs_residue=rhs_res,
        diff_valuation=1 if ok else 0,
        verdict=verdict_of(ok),
        params={},
    )


def check_ji_zhoucai(
    p: int, n_parts: int, exact_bound: int = DEFAULT_EXACT_BOUND
) -> CongruenceReport:
    """Arbitrary-length composition sums against Bernoulli numbers.

    Odd n:  sum == -(n-1)! B_{p-n}                   mod p.
    Even n: sum == -(n! n p / (2(n+1))) B_{p-n-1}    mod p^2.
    """
    _require_prime(p, 5)
    if not 2 <= n_parts <= p - 2:
        raise PreconditionError(f"requires 2 <= n_parts <= p-2, got {n_parts}")
    n = n_parts
    if n % 2:
        precision = 1
        rhs = -math.factorial(n - 1) * bernoulli_exact(p - n, bound=exact_bound)
    else:
        precision = 2
        rhs = -Fraction(math.factorial(n) * n * p, 2 * (n + 1)) * bernoulli_exact(
            p - n - 1, bound=exact_bound
        )
    lhs = composition_sum_exact(n, p)
    return _ratio_report(
        "ji_zhoucai", p, precision, lhs, Fraction(rhs), {"n_parts": n}
    )


# --------------------------------------------------------------------------
# Quadruple search


@dataclass(frozen=True)
class QuadrupleHit:
    """A tuple with binom(Np^3+n, Rp^3+r) == binom(N,R) binom(n,r) mod p^5."""

    N: int
    R: int
    n: int
    r: int
    nontrivial: bool


def _search_rows(args: tuple[int, str, tuple[int, ...]]) -> list[QuadrupleHit]:
    p, method, n_values = args
    p3, p5 = p**3, p**5
    mod5 = PrimePower(p, 5)
    hits: list[QuadrupleHit] = []
    for N in n_values:
        for R in range(1, p):
            bNR = binom(N, R)
            if bNR == 0:
                continue
            for n in range(1, p):
                a_top = N * p3 + n
                for r in range(1, p):
                    rhs = bNR * binom(n, r)
                    if rhs == 0:
                        continue
                    b_bot = R * p3 + r
                    if method == "exact":
                        lhs_res = binom(a_top, b_bot) % p5
                    else:
                        lhs_res = binom_mod(a_top, b_bot, mod5)
                    if lhs_res == rhs % p5:
                        hits.append(
                            QuadrupleHit(N, R, n, r, nontrivial=(N != R or n != r))
                        )
    return hits


def find_exact_quadruples(
    p: int,
    method: str = "exact",
    budget: int = DEFAULT_SEARCH_BUDGET,
    workers: int = 1,
) -> list[QuadrupleHit]:
    """Exhaustive search of 1 <= N, R, n, r <= p-1 for mod-p^5 coincidences.

    Records every tuple whose two sides agree mod p^5 with a nonzero
    right side (tuples where both sides vanish identically are not
    coincidences), in lexicographic order.  The "exact" method expands
    big integers and is capped by `budget` on the top argument; the
    "modular" method uses the prime-power reduction and has no cap.
    """
    _require_prime(p, 7)
    if method not in ("exact", "modular"):
        raise PreconditionError(f"method must be 'exact' or 'modular', got {method!r}")
    if method == "exact" and (p - 1) * (p**3 + 1) > budget:
        raise BudgetExceededError(
            f"exact search at p={p} needs binomials of size "
            f"{(p - 1) * (p**3 + 1)} > budget {budget}; use method='modular'"
        )
    tasks = [(p, method, (N,)) for N in range(1, p)]
    results = parallel_map(_search_rows, tasks, workers)
    return [hit for rows in results for hit in rows]


# --------------------------------------------------------------------------
# Claim registry and grid driver

CLAIM_PARAMS: dict[str, tuple[str, ...]] = {
    "wolstenholme": (),
    "bailey4": ("n", "r"),
    "bailey5": ("N", "R", "n", "r"),
    "kazandzidis_k1": ("n", "r"),
    "kazandzidis_k2": ("n", "r"),
    "main_p5": ("n", "r"),
    "main_exp": ("n", "r", "e"),
    "thm2_case1": ("N", "R", "n", "r"),
    "thm2_case2": ("N", "R", "n", "r"),
    "prop_ijk": (),
    "cor_ijk": (),
    "ji_zhoucai": ("n_parts",),
    "h12": (),
    "genwols": ("s", "d"),
}

_GRID_FILTERS = {
    "bailey5": lambda p, N, R, n, r: n < p and r < p,
    "kazandzidis_k1": lambda p, n, r: 1 <= r <= n,
    "kazandzidis_k2": lambda p, n, r: 0 <= r <= n,
    "main_p5": lambda p, n, r: r <= n,
    "main_exp": lambda p, n, r, e: r <= n,
    "thm2_case1": lambda p, N, R, n, r: R <= N and r <= n < p,
    "thm2_case2": lambda p, N, R, n, r: R <= N and 1 <= n < r < p,
    "ji_zhoucai": lambda p, n_parts: 2 <= n_parts <= p - 2,
    "genwols": lambda p, s, d: p >= s * d + 3,
}


def run_check(
    claim_id: str, p: int, params: dict, precision: int | None = None
) -> list[CongruenceReport]:
    """Dispatch one claim instance; h12 yields its two linked reports."""
    if claim_id == "wolstenholme":
        return [check_wolstenholme(p, precision=precision)]
    if claim_id == "bailey4":
        return [check_bailey4(p, params["n"], params["r"], precision=precision)]
    if claim_id == "bailey5":
        return [
            check_bailey5(
                p, params["N"], params["R"], params["n"], params["r"],
                precision=precision,
            )
        ]
    if claim_id in ("kazandzidis_k1", "kazandzidis_k2"):
        form = "K1" if claim_id.endswith("k1") else "K2"
        return [
            check_kazandzidis(p, params["n"], params["r"], form=form, precision=precision)
        ]
    if claim_id == "main_p5":
        return [check_main(p, params["n"], params["r"], precision=precision)]
    if claim_id == "main_exp":
        return [
            check_main_exp(p, params["n"], params["r"], params["e"], precision=precision)
        ]
    if claim_id == "thm2_case1":
        return [
            check_thm2_case1(
                p, params["N"], params["R"], params["n"], params["r"],
                precision=precision,
            )
        ]
    if claim_id == "thm2_case2":
        return [
            check_thm2_case2(
                p, params["N"], params["R"], params["n"], params["r"],
                precision=precision,
            )
        ]
    if claim_id == "prop_ijk":
        return [check_prop_ijk(p)]
    if claim_id == "cor_ijk":
        return [check_cor_ijk(p)]
    if claim_id == "ji_zhoucai":
        return [check_ji_zhoucai(p, params["n_parts"])]
    if claim_id == "h12":
        return list(h12_checks(p))
    if claim_id == "genwols":
        return [genwols_check(params["s"], params["d"], p)]
    raise PreconditionError(f"unknown claim id {claim_id!r}")


def _grid_one(task: tuple) -> list[CongruenceReport]:
    claim_id, p, items, precision = task
    return run_check(claim_id, p, dict(items), precision=precision)


def grid_reports(
    claim_id: str,
    p: int,
    ranges: dict[str, range],
    precision: int | None = None,
    workers: int = 1,
) -> list[CongruenceReport]:
    """Run a claim over the cartesian product of parameter ranges.

    Tuples violating the claim's domain constraints are skipped, the rest
    are enumerated in lexicographic order; output order is deterministic
    for any worker count.
    """
    names = CLAIM_PARAMS[claim_id]
    for name in names:
        if name not in ranges:
            raise PreconditionError(f"claim {claim_id} needs parameter {name!r}")
    flt = _GRID_FILTERS.get(claim_id)
    tasks = []
    for combo in itertools.product(*(ranges[name] for name in names)):
        params = dict(zip(names, combo))
        if flt is not None and not flt(p, **params):
            continue
        tasks.append((claim_id, p, tuple(params.items()), precision))
    results = parallel_map(_grid_one, tasks, workers)
    return [rep for group in results for rep in group]
