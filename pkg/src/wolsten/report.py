"""Structured verdicts of congruence checks and their serialization.

One CongruenceReport is produced per checked claim instance.  JSON is the
canonical format (one object per check, fixed key order, deterministic
bytes); CSV is a lossy projection with params flattened to "k=v;k=v".
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .padic import format_rational

CLAIM_IDS = (
    "wolstenholme",
    "bailey4",
    "bailey5",
    "kazandzidis_k1",
    "kazandzidis_k2",
    "main_p5",
    "main_exp",
    "thm2_case1",
    "thm2_case2",
    "prop_ijk",
    "cor_ijk",
    "ji_zhoucai",
    "h12",
    "h12p",
    "genwols",
)

PASS = "pass"
FAIL = "fail"


@dataclass(frozen=True)
class CongruenceReport:
    """Verdict of one congruence check.

    ``lhs_exact``/``rhs_exact`` are exact rationals when the check ran an
    exact route, or None when only a modular route was feasible; the
    residues are always present.  ``diff_valuation`` is the true p-adic
    valuation of lhs - rhs (INFINITE when they are equal), so a report can
    show e.g. "passes mod p^3 but fails mod p^5" in one number.
    """

    claim_id: str
    p: int
    precision: int
    lhs_residue: int
    rhs_residue: int
    diff_valuation: int | float
    verdict: str
    lhs_exact: Fraction | None = None
    rhs_exact: Fraction | None = None
    params: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.claim_id not in CLAIM_IDS:
            raise ValueError(f"unknown claim id {self.claim_id!r}")

    @property
    def ok(self) -> bool:
        return self.verdict == PASS

    def to_obj(self) -> dict:
        """JSON-ready dict with the fixed schema and key order."""
        dv = self.diff_valuation
        return {
            "claim_id": self.claim_id,
            "p": self.p,
            "params": {k: self.params[k] for k in sorted(self.params)},
            "precision": self.precision,
            "lhs": {
                "exact": None if self.lhs_exact is None else format_rational(self.lhs_exact),
                "residue": str(self.lhs_residue),
            },
            "rhs": {
                "exact": None if self.rhs_exact is None else format_rational(self.rhs_exact),
                "residue": str(self.rhs_residue),
            },
            "diff_valuation": "inf" if dv == math.inf else int(dv),
            "verdict": self.verdict,
        }


def verdict_of(passed: bool) -> str:
    return PASS if passed else FAIL


def reports_to_jsonl(reports: list[CongruenceReport]) -> str:
    return "".join(
        json.dumps(r.to_obj(), separators=(",", ":")) + "\n" for r in reports
    )


CSV_COLUMNS = (
    "claim_id",
    "p",
    "params",
    "precision",
    "lhs_exact",
    "lhs_residue",
    "rhs_exact",
    "rhs_residue",
    "diff_valuation",
    "verdict",
)


def reports_to_csv(reports: list[CongruenceReport]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for r in reports:
        obj = r.to_obj()
        w.writerow(
            [
                obj["claim_id"],
                obj["p"],
                ";".join(f"{k}={v}" for k, v in obj["params"].items()),
                obj["precision"],
                obj["lhs"]["exact"] or "",
                obj["lhs"]["residue"],
                obj["rhs"]["exact"] or "",
                obj["rhs"]["residue"],
                obj["diff_valuation"],
                obj["verdict"],
            ]
        )
    return buf.getvalue()


def render_table(objs: list[dict]) -> str:
    """Human-readable table for the `report` subcommand."""
    rows = [("claim", "p", "params", "prec", "lhs", "rhs", "v(diff)", "verdict")]
    for o in objs:
        rows.append(
            (
                o["claim_id"],
                str(o["p"]),
                ";".join(f"{k}={v}" for k, v in o.get("params", {}).items()),
                str(o["precision"]),
                o["lhs"]["residue"],
                o["rhs"]["residue"],
                str(o["diff_valuation"]),
                o["verdict"],
            )
        )
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in rows]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
