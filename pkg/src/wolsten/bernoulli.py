"""Bernoulli numbers, Wolstenholme quotients, and the irregular-pair scan.

Two independent routes reach B_{p-3} mod p: exact reduction of the
rational Bernoulli number, and -3 * w_p mod p through the Wolstenholme
quotient.  Their agreement is a tested invariant, not an assumption.
The scanner flags primes with H(1;p-1) == 0 mod p^3, equivalently primes
dividing the numerator of B_{p-3}.
"""

from __future__ import annotations

import csv
import io
import json
import math
import threading
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import PreconditionError, WolstenError
from .harmonic import Composition, mhs_mod
from .padic import PrimePower, Residue, is_prime, primes_in_range, reduce_mod
from .parallel import parallel_map

DEFAULT_EXACT_BOUND = 400

_bernoulli_cache: list[Fraction] = [Fraction(1)]
_bernoulli_lock = threading.Lock()


def bernoulli_exact(k: int, bound: int = DEFAULT_EXACT_BOUND) -> Fraction:
    """Exact B_k from the recurrence sum_{j<=m} C(m+1, j) B_j = 0.

    The recurrence is forced by the defining series of x/(e^x - 1); cost
    grows quadratically, hence the configurable bound (default 400).
    """
    if k < 0:
        raise PreconditionError(f"k must be >= 0, got {k}")
    if k > bound:
        raise PreconditionError(f"k={k} exceeds the exact-route bound {bound}")
    with _bernoulli_lock:
        while len(_bernoulli_cache) <= k:
            m = len(_bernoulli_cache)
            acc = Fraction(0)
            for j in range(m):
                acc += math.comb(m + 1, j) * _bernoulli_cache[j]
            _bernoulli_cache.append(-acc / (m + 1))
        return _bernoulli_cache[k]


@dataclass(frozen=True)
class WolstenholmeQuotient:
    """The unique w_p < p^2 with H(1;p-1) == w_p * p^2 (mod p^4)."""

    p: int
    w: Residue

    @property
    def value(self) -> int:
        return self.w.value


def wolstenholme_quotient(p: int) -> WolstenholmeQuotient:
    """Compute w_p from H(1;p-1) mod p^4 divided by p^2."""
    if not is_prime(p) or p < 5:
        raise PreconditionError(f"p={p} must be a prime >= 5")
    h = mhs_mod(Composition.of(1), p - 1, PrimePower(p, 4)).value
    if h % (p * p):
        raise WolstenError(
            f"H(1;{p - 1}) has {p}-adic valuation < 2; impossible for a prime >= 5"
        )
    return WolstenholmeQuotient(p, Residue(h // (p * p), PrimePower(p, 2)))


def bernoulli_pm3_mod_p(
    p: int, route: str = "exact", bound: int = DEFAULT_EXACT_BOUND
) -> Residue:
    """B_{p-3} mod p, by exact reduction or through the quotient w_p.

    The exact route reduces the rational B_{p-3} (its denominator is
    coprime to p by von Staudt-Clausen since (p-1) does not divide (p-3));
    the quotient route returns -3 * w_p mod p.
    """
    if not is_prime(p) or p < 5:
        raise PreconditionError(f"p={p} must be a prime >= 5")
    if route == "exact":
        return reduce_mod(bernoulli_exact(p - 3, bound=bound), PrimePower(p, 1))
    if route == "quotient":
        w = wolstenholme_quotient(p).value
        return Residue(-3 * w, PrimePower(p, 1))
    raise PreconditionError(f"unknown route {route!r}; use 'exact' or 'quotient'")


# --------------------------------------------------------------------------
# Irregular-pair scan

# Above this the int64 kernel would overflow (products reach p^4); the
# arbitrary-precision kernel takes over transparently.
_NUMPY_KERNEL_MAX_P = 50_000

SCAN_BLOCK_SIZE = 64


@dataclass(frozen=True)
class IrregularRecord:
    """Per-prime scan result; irregular means p | numerator(B_{p-3})."""

    p: int
    w_mod_p: Residue
    b_pm3_mod_p: Residue
    irregular: bool


def _half_sum_numpy(p: int) -> int:
    # S = sum_{k=1}^{(p-1)/2} 1/(k(p-k)) mod p^2, whence H(1;p-1) = p*S.
    p2 = p * p
    half = (p - 1) // 2
    inv = [0] * (half + 1)
    inv[1] = 1
    for i in range(2, half + 1):
        inv[i] = (p - p // i) * inv[p % i] % p
    k = np.arange(1, half + 1, dtype=np.int64)
    i1 = np.array(inv[1:], dtype=np.int64)
    i2 = i1 * ((2 - k * i1) % p2) % p2  # Hensel lift of 1/k to mod p^2
    ipk = (p2 - (i2 + i2 * i2 % p2 * p) % p2) % p2  # 1/(p-k) = -(1/k + p/k^2)
    return int((i2 * ipk % p2).sum()) % p2


def _half_sum_python(p: int) -> int:
    p2 = p * p
    half = (p - 1) // 2
    inv = [0] * (half + 1)
    inv[1] = 1
    for i in range(2, half + 1):
        inv[i] = (p - p // i) * inv[p % i] % p
    s = 0
    for k in range(1, half + 1):
        i1 = inv[k]
        i2 = i1 * (2 - k * i1) % p2
        ipk = (p2 - (i2 + i2 * i2 % p2 * p) % p2) % p2
        s += i2 * ipk % p2
    return s % p2


def _w_mod_p(p: int) -> int:
    s = _half_sum_numpy(p) if p <= _NUMPY_KERNEL_MAX_P else _half_sum_python(p)
    if s % p:
        raise WolstenError(f"H(1;{p - 1}) not divisible by {p}^2: scan inconsistency")
    return s // p % p


def _scan_block(primes: tuple[int, ...]) -> list[tuple[int, int]]:
    return [(p, _w_mod_p(p)) for p in primes]


def irregular_scan(
    p_min: int,
    p_max: int,
    workers: int = 1,
    checkpoint_path: str | None = None,
) -> list[IrregularRecord]:
    """Scan every prime in [p_min, p_max] for the irregular pair (p, p-3).

    Computes H(1;p-1) mod p^3 in O(p) per prime and flags primes where it
    vanishes.  Work is split into contiguous blocks of ~64 primes across
    worker processes; output is sorted by p and independent of the worker
    count.  If checkpoint_path is given, the file is rewritten with the
    last block completed in order.
    """
    if p_min < 5:
        p_min = 5
    if workers < 1:
        raise PreconditionError(f"workers must be >= 1, got {workers}")
    primes = primes_in_range(p_min, p_max)
    blocks = [
        tuple(primes[i : i + SCAN_BLOCK_SIZE])
        for i in range(0, len(primes), SCAN_BLOCK_SIZE)
    ]
    records: list[IrregularRecord] = []
    for block_result in parallel_map(_scan_block, blocks, workers):
        for p, w in block_result:
            one = PrimePower(p, 1)
            records.append(
                IrregularRecord(
                    p=p,
                    w_mod_p=Residue(w, one),
                    b_pm3_mod_p=Residue(-3 * w, one),
                    irregular=(w == 0),
                )
            )
        if checkpoint_path is not None:
            _write_checkpoint(checkpoint_path, p_min, p_max, records[-1].p)
    return records


def _write_checkpoint(path: str, p_min: int, p_max: int, last_p: int) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump({"p_min": p_min, "p_max": p_max, "last_p": last_p}, fh)
        fh.write("\n")


def read_checkpoint(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        return json.load(fh)


def records_to_jsonl(records: list[IrregularRecord]) -> str:
    lines = []
    for r in records:
        obj = {
            "p": r.p,
            "w_mod_p": str(r.w_mod_p),
            "b_pm3_mod_p": str(r.b_pm3_mod_p),
            "irregular": r.irregular,
        }
        lines.append(json.dumps(obj, separators=(",", ":")))
    return "".join(line + "\n" for line in lines)


def records_to_csv(records: list[IrregularRecord]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["p", "w_mod_p", "b_pm3_mod_p", "irregular"])
    for r in records:
        w.writerow(
            [r.p, str(r.w_mod_p), str(r.b_pm3_mod_p), "true" if r.irregular else "false"]
        )
    return buf.getvalue()
