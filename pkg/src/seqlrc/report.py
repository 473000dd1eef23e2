"""Catalog of product constructions, the locality-2 rate comparison, and emitters.

Each catalog row is rebuilt from its expression and measured: exact
``[n, k, d]``, ``t = d - 1``, and the alternativity by enumeration when the
dual search fits the budget (the product formula otherwise, tagged
``lower-bound``).  Rows carry the published values so mismatches are flagged.
"""

from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Iterable, Sequence

from . import expr
from .codes import bch_design
from .errors import BudgetExceeded, SlrcError
from .slrc import (
    ProductCode,
    RecoveryTable,
    alternativity,
    dual_enumeration_cost,
    locality,
)

DEFAULT_CATALOG_DUAL_BUDGET = 3 * 10**8

# BCH dimensions implied by the product dimensions in the published tables.
EXPECTED_BCH_DIMENSION = {(3, 8, 4): 4, (5, 8, 3): 5}


class UnknownFormat(SlrcError, ValueError):
    pass


@dataclass(frozen=True)
class PublishedRow:
    table: int
    q: int
    k: int
    r: int
    ell: int
    n: int
    dim: int
    d: int
    t: int
    a: int
    construction: str


def _rows(table: int, q: int, k: int, r: int, ell: int, items) -> list[PublishedRow]:
    return [PublishedRow(table, q, k, r, ell, n, kk, d, t, a, e) for (n, kk, d, t, a, e) in items]


CATALOG: tuple[PublishedRow, ...] = tuple(
    _rows(1, 3, 4, 2, 2, [
        (16, 4, 9, 8, 6, "P(3) x P(3)"),
        (12, 4, 6, 5, 4, "P(3) x D(3,3)"),
        (9, 4, 4, 3, 2, "D(3,3) x D(3,3)"),
    ])
    + _rows(1, 3, 6, 3, 2, [
        (16, 6, 6, 5, 4, "P(3) x D(3,4)"),
        (12, 6, 4, 3, 2, "D(3,4) x D(3,3)"),
    ])
    + _rows(1, 3, 8, 4, 2, [
        (20, 8, 6, 5, 4, "P(3) x D(3,5)"),
        (15, 8, 4, 3, 2, "D(3,5) x D(3,3)"),
    ])
    + _rows(1, 3, 8, 3, 2, [
        (32, 8, 12, 11, 8, "P(3) x B(3,8,4)"),
        (28, 8, 9, 8, 5, "P(3) x punct(B(3,8,4); 1)"),
        (24, 8, 8, 7, 6, "D(3,3) x B(3,8,4)"),
        (21, 8, 6, 5, 3, "D(3,3) x punct(B(3,8,4); 1)"),
        (18, 8, 4, 3, 3, "D(3,3) x punct(B(3,8,4); 1,5)"),
    ])
    + _rows(1, 3, 8, 2, 3, [
        (64, 8, 27, 26, 9, "P(3) x P(3) x P(3)"),
        (48, 8, 18, 17, 7, "P(3) x P(3) x D(3,3)"),
        (36, 8, 12, 11, 5, "P(3) x D(3,3) x D(3,3)"),
        (27, 8, 8, 7, 3, "D(3,3) x D(3,3) x D(3,3)"),
    ])
    + _rows(1, 3, 9, 3, 2, [(16, 9, 4, 3, 2, "D(3,4) x D(3,4)")])
    + _rows(1, 3, 10, 5, 2, [
        (24, 10, 6, 5, 4, "P(3) x D(3,6)"),
        (18, 10, 4, 3, 2, "D(3,6) x D(3,3)"),
    ])
    + _rows(2, 5, 4, 2, 2, [
        (36, 4, 25, 24, 20, "P(5) x P(5)"),
        (30, 4, 20, 19, 16, "P(5) x R(5,5,2)"),
        (25, 4, 16, 15, 12, "R(5,5,2) x R(5,5,2)"),
        (24, 4, 15, 14, 13, "P(5) x R(5,4,2)"),
        (20, 4, 12, 11, 9, "R(5,5,2) x R(5,4,2)"),
        (18, 4, 10, 9, 11, "P(5) x D(5,3)"),
        (16, 4, 9, 8, 6, "R(5,4,2) x R(5,4,2)"),
        (15, 4, 8, 7, 7, "R(5,5,2) x D(5,3)"),
        (12, 4, 6, 5, 4, "R(5,4,2) x D(5,3)"),
        (9, 4, 4, 3, 2, "D(5,3) x D(5,3)"),
    ])
    + _rows(2, 5, 6, 3, 2, [
        (30, 6, 15, 14, 14, "P(5) x R(5,5,3)"),
        (25, 6, 12, 11, 10, "R(5,5,3) x R(5,5,2)"),
        (24, 6, 10, 9, 11, "P(5) x D(5,4)"),
        (20, 6, 9, 8, 7, "R(5,5,3) x R(5,4,2)"),
        (15, 6, 6, 5, 5, "R(5,5,3) x D(5,3)"),
        (12, 6, 4, 3, 2, "D(5,4) x D(5,3)"),
    ])
    + _rows(3, 5, 8, 4, 2, [
        (30, 8, 10, 9, 11, "P(5) x D(5,5)"),
        (25, 8, 8, 7, 7, "R(5,5,2) x D(5,5)"),
        (20, 8, 6, 5, 4, "R(5,4,2) x D(5,5)"),
        (15, 8, 4, 3, 2, "D(5,5) x D(5,3)"),
    ])
    + _rows(3, 5, 8, 2, 3, [
        (100, 8, 48, 47, 15, "R(5,5,2) x R(5,5,2) x R(5,4,2)"),
        (96, 8, 45, 44, 19, "P(5) x R(5,5,2) x R(5,4,2)"),
        (90, 8, 40, 39, 17, "P(5) x R(5,5,2) x D(5,3)"),
        (80, 8, 36, 35, 12, "R(5,5,2) x R(5,4,2) x R(5,4,2)"),
        (75, 8, 32, 31, 13, "R(5,5,2) x R(5,5,2) x D(5,3)"),
        (72, 8, 30, 29, 14, "P(5) x R(5,4,2) x D(5,3)"),
        (64, 8, 27, 26, 9, "R(5,4,2) x R(5,4,2) x R(5,4,2)"),
        (60, 8, 24, 23, 10, "R(5,5,2) x R(5,4,2) x D(5,3)"),
        (54, 8, 20, 19, 12, "P(5) x D(5,3) x D(5,3)"),
        (48, 8, 18, 17, 7, "R(5,4,2) x R(5,4,2) x D(5,3)"),
        (45, 8, 16, 15, 8, "R(5,5,2) x D(5,3) x D(5,3)"),
        (36, 8, 12, 11, 5, "R(5,4,2) x D(5,3) x D(5,3)"),
        (27, 8, 8, 7, 3, "D(5,3) x D(5,3) x D(5,3)"),
    ])
    + _rows(4, 5, 9, 3, 2, [
        (25, 9, 9, 8, 8, "R(5,5,3) x R(5,5,3)"),
        (20, 9, 6, 5, 5, "R(5,5,3) x D(5,4)"),
        (16, 9, 4, 3, 2, "D(5,4) x D(5,4)"),
    ])
    + _rows(4, 5, 10, 5, 2, [
        (42, 10, 10, 9, 13, "P(5) x punct(B(5,8,3); 1)"),
        (36, 10, 10, 9, 11, "P(5) x D(5,6)"),
        (35, 10, 8, 7, 9, "R(5,5,2) x punct(B(5,8,3); 1)"),
        (30, 10, 8, 7, 7, "R(5,5,2) x D(5,6)"),
        (28, 10, 6, 5, 6, "R(5,4,2) x punct(B(5,8,3); 1)"),
        (24, 10, 6, 5, 4, "R(5,4,2) x D(5,6)"),
        (21, 10, 4, 3, 4, "D(5,3) x punct(B(5,8,3); 1)"),
        (18, 10, 4, 3, 2, "D(5,6) x D(5,3)"),
    ])
)

CATALOG_TABLES = (1, 2, 3, 4)

# Published locality-2 rate comparison, t = 2..10.
PUBLISHED_RATES = {
    "this_work": dict(zip(range(2, 11), (0.5, 0.44, 0.39, 0.33, 0.32, 0.30, 0.25, 0.26, 0.22))),
    "r_over_r_plus_t": dict(zip(range(2, 11), (0.5, 0.4, 0.33, 0.29, 0.28, 0.22, 0.2, 0.18, 0.17))),
    "power": dict(zip(range(2, 11), (0.44, 0.30, 0.20, 0.13, 0.09, 0.06, 0.04, 0.03, 0.02))),
}


@dataclass
class CatalogEntry:
    table: int
    q: int
    k: int
    r: int
    ell: int
    n: int
    dim: int
    d: int
    t: int
    a: int
    a_tag: str
    construction: str
    a_formula: int | None = None
    a_circuits: int | None = None
    d_tag: str = "exact"
    published: dict = dc_field(default_factory=dict)
    mismatches: list[str] = dc_field(default_factory=list)
    error: str | None = None

    @property
    def match(self) -> bool:
        return self.error is None and not self.mismatches

    @property
    def rate(self) -> Fraction:
        return Fraction(self.dim, self.n) if self.n else Fraction(0)

    def to_json(self) -> dict:
        out = asdict(self)
        out["rate"] = f"{self.rate.numerator}/{self.rate.denominator}"
        out["match"] = self.match
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "CatalogEntry":
        obj = {k: v for k, v in obj.items() if k not in ("rate", "match")}
        return cls(**obj)


def _bch_leaves(node) -> list[tuple[int, int, int]]:
    if isinstance(node, expr.Ctor):
        return [node.args] if node.kind == "B" else []
    if isinstance(node, expr.Punct):
        return _bch_leaves(node.inner)
    return [x for f in node.factors for x in _bch_leaves(f)]


def build_entry(
    row: PublishedRow, dual_budget: int | None = DEFAULT_CATALOG_DUAL_BUDGET
) -> CatalogEntry:
    """Measure one catalog row; construction failures become an ``error`` entry."""
    published = {"n": row.n, "k": row.dim, "d": row.d, "t": row.t, "a": row.a}
    try:
        node = expr.parse(row.construction)
        code = expr.build(node)
    except (SlrcError, ValueError) as exc:
        return CatalogEntry(row.table, row.q, row.k, row.r, row.ell, 0, 0, 0, 0, 0, "none",
                            row.construction, published=published, error=str(exc))
    mismatches = []
    for q, n, dd in _bch_leaves(node):
        want = EXPECTED_BCH_DIMENSION.get((q, n, dd))
        got = bch_design(q, n, dd).k
        if want is not None and got != want:
            mismatches.append(f"B({q},{n},{dd}) has dimension {got}, tables imply {want}")
    dist = code.min_distance()
    r = row.r
    factors = code.factors if isinstance(code, ProductCode) else [code]
    a_formula = sum(alternativity(c, locality(c)) for c in factors)
    a_exact = None
    a_circuits = None
    if dual_budget is None or dual_enumeration_cost(code, r + 1) <= dual_budget:
        try:
            table = RecoveryTable(code, r, budget=dual_budget)
            a_exact = int(table.alternativity_profile().min())
            a_circuits = int(table.circuit_profile().min())
        except BudgetExceeded:
            pass
    a = a_exact if a_exact is not None else a_formula
    entry = CatalogEntry(
        table=row.table, q=row.q, k=row.k, r=r, ell=row.ell,
        n=code.n, dim=code.k, d=dist.d, t=dist.d - 1,
        a=a, a_tag="exact" if a_exact is not None else "lower-bound",
        construction=expr.canonical(row.construction),
        a_formula=a_formula, a_circuits=a_circuits, d_tag=dist.tag,
        published=published, mismatches=mismatches,
    )
    for key, got in (("n", entry.n), ("k", entry.dim), ("d", entry.d), ("t", entry.t), ("a", entry.a)):
        if got != published[key]:
            entry.mismatches.append(f"{key}={got} (published {published[key]})")
    if not dist.exact:
        entry.mismatches.append("distance is only a lower bound")
    return entry


def catalog_rows(which: Iterable[int] | None = None) -> list[PublishedRow]:
    tables = set(CATALOG_TABLES if which is None else which)
    return [r for r in CATALOG if r.table in tables]


def build_catalog(
    which: Iterable[int] | None = None,
    dual_budget: int | None = DEFAULT_CATALOG_DUAL_BUDGET,
) -> list[CatalogEntry]:
    return [build_entry(r, dual_budget) for r in catalog_rows(which)]


# --- rate comparison -----------------------------------------------------------


@dataclass(frozen=True)
class RateRow:
    t: int
    this_work: Fraction | None
    witness: str | None
    witness_t: int | None
    r_over_r_plus_t: Fraction
    power: Fraction
    published: bool

    def to_json(self) -> dict:
        def fr(x):
            return None if x is None else f"{x.numerator}/{x.denominator}"

        return {
            "t": self.t,
            "this_work": fr(self.this_work),
            "witness": self.witness,
            "witness_t": self.witness_t,
            "r_over_r_plus_t": fr(self.r_over_r_plus_t),
            "power": fr(self.power),
            "published": self.published,
        }


def catalog_rates(
    entries: Sequence[CatalogEntry] | None = None, r: int | None = None
) -> list[tuple[int, int, Fraction, str]]:
    """``(r, t, rate, construction)`` for catalog codes, measured from the constructions."""
    if entries is not None:
        return [(e.r, e.t, e.rate, e.construction) for e in entries
                if e.error is None and (r is None or e.r == r)]
    out = []
    for row in CATALOG:
        if r is not None and row.r != r:
            continue
        code = expr.build(row.construction)
        d = code.min_distance().d
        out.append((row.r, d - 1, Fraction(code.k, code.n), expr.canonical(row.construction)))
    return out


def rate_table(r: int, t_max: int, entries: Sequence[CatalogEntry] | None = None) -> list[RateRow]:
    """Best catalog rate for each ``t`` next to ``r/(r+t)`` and ``(r/(r+1))^t``.

    A code tolerating ``t' >= t`` erasures also handles ``t``, so each cell is
    the best rate among catalog codes of locality ``r`` with ``t' >= t``.
    """
    if r < 1 or t_max < 1:
        raise ValueError("need r >= 1 and t_max >= 1")
    pool = catalog_rates(entries, r)
    rows = []
    for t in range(1, t_max + 1):
        cands = [x for x in pool if x[1] >= t]
        best = max(cands, key=lambda x: (x[2], -x[1]), default=None)
        rows.append(RateRow(
            t=t,
            this_work=best[2] if best else None,
            witness=best[3] if best else None,
            witness_t=best[1] if best else None,
            r_over_r_plus_t=Fraction(r, r + t),
            power=Fraction(r, r + 1) ** t,
            published=r == 2 and t in PUBLISHED_RATES["this_work"],
        ))
    return rows


def round2(x: Fraction | float) -> float:
    """Half-up rounding to two decimals, done exactly on rationals."""
    f = Fraction(x) * 100
    return math.floor(f + Fraction(1, 2)) / 100


def rate_mismatches(rows: Sequence[RateRow]) -> list[str]:
    out = []
    for row in rows:
        if not row.published:
            continue
        for key in ("this_work", "r_over_r_plus_t", "power"):
            got = getattr(row, key)
            want = PUBLISHED_RATES[key][row.t]
            if got is None or round2(got) != want:
                shown = "none" if got is None else f"{round2(got):.2f}"
                out.append(f"t={row.t} {key}: {shown} (published {want:.2f})")
    return out


# --- emitters -----------------------------------------------------------------

CSV_COLUMNS = ("q", "k", "r", "ell", "n", "dim", "d", "t", "a", "a_tag", "rate", "construction", "match")
FORMATS = ("markdown", "csv", "json")


def emit(entries: Sequence[CatalogEntry], fmt: str) -> str:
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for e in entries:
            w.writerow([e.q, e.k, e.r, e.ell, e.n, e.dim, e.d, e.t, e.a, e.a_tag,
                        f"{e.rate.numerator}/{e.rate.denominator}", e.construction,
                        "yes" if e.match else "no"])
        return buf.getvalue()
    if fmt == "json":
        return json.dumps([e.to_json() for e in entries], indent=2, sort_keys=True) + "\n"
    if fmt == "markdown":
        lines = ["| q | k | r | ℓ | Code | t | a | Construction |",
                 "|---:|---:|---:|---:|:---|---:|---:|:---|"]
        for e in entries:
            a = f"{e.a}" if e.a_tag == "exact" else f"≥{e.a}"
            lines.append(
                f"| {e.q} | {e.k} | {e.r} | {e.ell} | [{e.n}, {e.dim}, {e.d}] | {e.t} | {a} | "
                f"{e.construction} |"
            )
        return "\n".join(lines) + "\n"
    raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")


def emit_rates(rows: Sequence[RateRow], fmt: str) -> str:
    if fmt == "json":
        return json.dumps([r.to_json() for r in rows], indent=2, sort_keys=True) + "\n"
    labels = (("this_work", "this work"), ("r_over_r_plus_t", "r/(r+t)"), ("power", "(r/(r+1))^t"))

    def cell(x):
        return "-" if x is None else f"{round2(x):.2f}"

    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "this_work", "witness", "witness_t", "r_over_r_plus_t", "power"])
        for r in rows:
            j = r.to_json()
            w.writerow([r.t, j["this_work"] or "", r.witness or "", r.witness_t or "",
                        j["r_over_r_plus_t"], j["power"]])
        return buf.getvalue()
    if fmt == "markdown":
        head = "| rate \\ t | " + " | ".join(str(r.t) for r in rows) + " |"
        sep = "|:---|" + "---:|" * len(rows)
        body = [f"| {label} | " + " | ".join(cell(getattr(r, key)) for r in rows) + " |"
                for key, label in labels]
        return "\n".join([head, sep, *body]) + "\n"
    raise UnknownFormat(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
