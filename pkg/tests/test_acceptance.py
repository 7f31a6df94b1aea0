"""Acceptance gate: every criterion at its stated tolerance and budget.

Run with `pytest tests/test_acceptance.py -v -s` to see one line per
criterion.  All comparisons are exact integer/rational identities; the
only tolerances are the runtime budgets stated alongside each criterion.
"""

import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

from wolsten.bernoulli import irregular_scan, records_to_jsonl, wolstenholme_quotient
from wolsten.binomial import binom, kummer_valuation_check, rising_binom
from wolsten.harmonic import (
    Composition,
    composition_sum,
    composition_sum_bruteforce,
    composition_sum_exact,
    fp_polynomial_coeffs,
    genwols_check,
    h12_checks,
    mhs_exact,
    mhs_mod,
    shuffle_check,
    stirling_mhs_check,
)
from wolsten.padic import (
    PrimePower,
    Residue,
    batch_inverse,
    inverse_mod,
    primes_in_range,
    reduce_mod,
)
from wolsten.suite import (
    check_bailey4,
    check_bailey5,
    check_cor_ijk,
    check_ji_zhoucai,
    check_kazandzidis,
    check_main,
    check_main_exp,
    check_prop_ijk,
    check_thm2_case1,
    check_thm2_case2,
    find_exact_quadruples,
    thm2_c_value,
)


@contextmanager
def criterion(number, label, budget_seconds):
    start = time.perf_counter()
    failed = True
    try:
        yield
        failed = False
    finally:
        elapsed = time.perf_counter() - start
        status = "FAIL" if failed else "PASS"
        print(f"{status}  criterion {number}: {label} ({elapsed:.1f}s / {budget_seconds}s)")
    assert elapsed < budget_seconds, f"criterion {number} exceeded {budget_seconds}s"


def test_criterion_1_paper_constants():
    with criterion(1, "paper constants reproduced exactly", 1.0):
        assert wolstenholme_quotient(5).value == 23
        assert mhs_exact(Composition.of(1), 4) == Fraction(25, 12)

        assert binom(20, 5) // binom(4, 1) == 3876
        assert 3876 % 5**5 == 751
        assert (1 + 23 * 4 * 1 * 3 * 5**3) % 5**5 == 126
        rep = check_main(5, 4, 1)
        assert not rep.ok
        assert rep.lhs_residue == 751 and rep.rhs_residue == 126

        assert thm2_c_value(5, 3, 1, 4, 1) == Fraction(1675, 12)
        assert math.comb(3 * 5**3 + 4, 5**3 + 1) * pow(12, -1, 5**5) % 5**5 == 2501
        rep2 = check_thm2_case1(5, 3, 1, 4, 1)
        assert not rep2.ok
        assert rep2.lhs_residue == 2501 and rep2.rhs_residue == 1


def test_criterion_2_quadruple_search_p7():
    with criterion(2, "p=7 search finds exactly the seven nontrivial quadruples", 30.0):
        hits = find_exact_quadruples(7)
        nontrivial = sorted((h.N, h.R, h.n, h.r) for h in hits if h.nontrivial)
        assert nontrivial == sorted(
            [
                (4, 2, 5, 2),
                (4, 2, 5, 3),
                (5, 2, 6, 1),
                (4, 2, 6, 3),
                (5, 1, 6, 3),
                (5, 4, 6, 3),
                (5, 3, 6, 5),
            ]
        )
        # the highlighted instance holds at full p^5 precision
        assert check_bailey5(7, 4, 2, 5, 2, precision=5).ok


def test_criterion_3_main_grid():
    with criterion(3, "mod-p^5 ratio congruence on 7 <= p <= 31, r <= n <= 12", 120.0):
        for p in primes_in_range(7, 31):
            for n in range(0, 13):
                for r in range(0, n + 1):
                    assert check_main(p, n, r).ok, (p, n, r)
        for p in (7, 11):
            for n in range(0, 5):
                for r in range(0, n + 1):
                    assert check_main_exp(p, n, r, 2).ok, (p, n, r)


def test_criterion_4_thm2_grids():
    with criterion(4, "mod-p^5 base-p^3 grids, both cases, 7 <= p <= 13", 300.0):
        for p in primes_in_range(7, 13):
            for N in range(0, 7):
                for R in range(0, N + 1):
                    for n in range(0, p):
                        for r in range(0, n + 1):
                            assert check_thm2_case1(p, N, R, n, r).ok, (p, N, R, n, r)
                    for n in range(1, p):
                        for r in range(n + 1, p):
                            assert check_thm2_case2(p, N, R, n, r).ok, (p, N, R, n, r)


def test_criterion_5_backward_compatibility():
    with criterion(5, "mod-p^3 grids and the p=3 correction branch", 60.0):
        for p in primes_in_range(5, 31):
            for n in range(0, 13):
                for r in range(0, 13):
                    assert check_bailey4(p, n, r).ok, (p, n, r)
            cap = min(12, p - 1)
            for N in range(0, 7):
                for R in range(0, 7):
                    for n in range(0, cap + 1):
                        for r in range(0, cap + 1):
                            assert check_bailey5(p, N, R, n, r).ok, (p, N, R, n, r)
        for n in range(1, 9):
            for r in range(1, n + 1):
                k1 = check_kazandzidis(3, n, r, form="K1")
                assert k1.ok and k1.rhs_exact == 1 - 9 * n * r * (n + r)
                k2 = check_kazandzidis(3, n, r, form="K2")
                assert k2.ok and k2.rhs_exact == 1 - 9 * n * r * (n - r)
        for p in (3, 5, 7, 11):
            for n in range(1, 9):
                for r in range(1, n + 1):
                    bridged = check_kazandzidis(p, n + r, r, form="K2")
                    assert check_kazandzidis(p, n, r, form="K1").verdict == bridged.verdict


def test_criterion_6_section4_suite():
    with criterion(6, "composition-sum congruences up to 199 with route agreement", 120.0):
        for p in primes_in_range(3, 199):
            assert check_prop_ijk(p).ok, p
        assert check_prop_ijk(3).lhs_exact == Fraction(3, 2)
        assert check_prop_ijk(5).lhs_exact == Fraction(45, 16)
        for p in primes_in_range(5, 199):
            assert check_cor_ijk(p).ok, p  # verdict includes route agreement
        for n in range(2, 7):
            for p in primes_in_range(n + 3, 50):
                assert check_ji_zhoucai(p, n).ok, (p, n)
                if p <= 13:
                    assert composition_sum_exact(n, p) == composition_sum_bruteforce(n, p)


def test_criterion_7_irregular_scan():
    with criterion(7, "scan to 20000 finds exactly p=16843, worker-independent", 60.0):
        baseline = irregular_scan(5, 20000, workers=1)
        assert [r.p for r in baseline if r.irregular] == [16843]
        base_bytes = records_to_jsonl(baseline)
        for workers in (2, 8):
            again = records_to_jsonl(irregular_scan(5, 20000, workers=workers))
            assert again == base_bytes, f"workers={workers} changed scan output"


def test_criterion_8_property_suites():
    with criterion(8, "identity and oracle-equivalence property grids", 120.0):
        # shuffle relation, exact, full stated grid
        for s in range(1, 5):
            for t in range(1, 5):
                for n in range(0, 31):
                    assert shuffle_check(s, t, n)

        # generalized Wolstenholme divisibilities
        for s in range(1, 9):
            for d in range(1, 9):
                if s * d <= 8:
                    for p in primes_in_range(s * d + 3, 31):
                        assert genwols_check(s, d, p).ok

        # Stirling / nested-harmonic identity
        for n in range(1, 15):
            for j in range(1, n + 1):
                assert stirling_mhs_check(n, j)

        # the two harmonic identities behind the refinement
        for p in primes_in_range(7, 31):
            rep_a, rep_b = h12_checks(p)
            assert rep_a.ok and rep_b.ok

        # falling factorial at x = p recovers p!
        for p in primes_in_range(2, 31):
            coeffs = fp_polynomial_coeffs(p)
            assert sum(c * p**i for i, c in enumerate(coeffs)) == math.factorial(p)

        # modular harmonic sums agree with reduced exact values
        comps = [
            Composition.of(1), Composition.of(3), Composition.of(1, 2),
            Composition.of(2, 2, 2), Composition.of(1, 1, 1, 1),
        ]
        for m in (PrimePower(5, 3), PrimePower(7, 3), PrimePower(11, 2)):
            for c in comps:
                for n in range(0, min(30, m.p - 1) + 1):
                    assert mhs_mod(c, n, m) == reduce_mod(mhs_exact(c, n), m)

        # composition sums: identity route == brute force at p and p^2
        for n_parts in (2, 3, 4):
            for p in (5, 7, 11, 13):
                brute = composition_sum_bruteforce(n_parts, p)
                for k in (1, 2):
                    mod = PrimePower(p, k)
                    assert composition_sum(n_parts, p, mod) == reduce_mod(brute, mod)

        # rising binomial bridges to the shifted binomial
        for n in range(1, 21):
            for r in range(0, 21):
                assert rising_binom(n, r) == binom(n + r - 1, r)

        # Kummer valuation equality
        for p in primes_in_range(2, 31):
            for n in range(0, 25):
                for r in range(0, n + 1):
                    assert kummer_valuation_check(p, n, r)

        # batched inversion is pointwise inversion
        rng = random.Random(8128)
        mod = PrimePower(10007, 2)
        values = []
        while len(values) < 10**4:
            v = rng.randrange(1, mod.modulus)
            if v % 10007:
                values.append(Residue(v, mod))
        assert batch_inverse(values) == [inverse_mod(v) for v in values]
