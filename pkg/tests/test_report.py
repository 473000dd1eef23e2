from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

import pytest

from seqlrc import report
from seqlrc.report import (
    CATALOG,
    CatalogEntry,
    UnknownFormat,
    build_entry,
    emit,
    emit_rates,
    rate_mismatches,
    rate_table,
    round2,
)


def _row(construction):
    return next(r for r in CATALOG if r.construction == construction)


@pytest.fixture(scope="module")
def entries():
    names = ["P(3) x D(3,3)", "P(3) x P(3)", "P(3) x D(3,6)", "D(3,3) x D(3,3) x D(3,3)"]
    return [build_entry(_row(n)) for n in names]


def test_catalog_shape():
    sizes = {t: sum(r.table == t for r in CATALOG) for t in report.CATALOG_TABLES}
    assert sizes == {1: 19, 2: 16, 3: 17, 4: 11}
    for r in CATALOG:
        assert r.t == r.d - 1
        assert r.q in (3, 5)


def test_matching_entry(entries):
    e = entries[0]
    assert (e.n, e.dim, e.d, e.t, e.a) == (12, 4, 6, 5, 4)
    assert e.a_tag == "exact" and e.match
    assert e.rate == Fraction(1, 3)


def test_mixed_dimension_entry_is_flagged(entries):
    e = entries[2]
    assert e.a == 64 and e.a_formula == 4 and e.a_circuits == 4
    assert not e.match
    assert e.mismatches == ["a=64 (published 4)"]


def test_budget_falls_back_to_formula():
    e = build_entry(_row("P(3) x D(3,6)"), dual_budget=10)
    assert e.a_tag == "lower-bound" and e.a == e.a_formula == 4


def test_bad_construction_becomes_error():
    bad = report.PublishedRow(1, 3, 2, 2, 2, 12, 4, 6, 5, 4, "P(3) x Q(3)")
    e = build_entry(bad)
    assert e.error and not e.match


def test_emit_is_deterministic(entries):
    for fmt in report.FORMATS:
        assert emit(entries, fmt) == emit(list(entries), fmt)


def test_emit_csv(entries):
    rows = list(csv.reader(io.StringIO(emit(entries, "csv"))))
    assert tuple(rows[0]) == report.CSV_COLUMNS
    assert rows[1][rows[0].index("rate")] == "1/3"
    assert rows[1][rows[0].index("match")] == "yes"
    assert emit([], "csv") == ",".join(report.CSV_COLUMNS) + "\n"


def test_emit_markdown(entries):
    lines = emit(entries, "markdown").splitlines()
    assert lines[0] == "| q | k | r | ℓ | Code | t | a | Construction |"
    assert lines[2] == "| 3 | 4 | 2 | 2 | [12, 4, 6] | 5 | 4 | P(3) x D(3,3) |"
    low = build_entry(_row("P(3) x D(3,6)"), dual_budget=10)
    assert "| ≥4 |" in emit([low], "markdown")


def test_json_round_trip(entries):
    data = json.loads(emit(entries, "json"))
    back = [CatalogEntry.from_json(obj) for obj in data]
    assert back == list(entries)
    assert data[0]["rate"] == "1/3" and data[0]["match"] is True


def test_unknown_format(entries):
    with pytest.raises(UnknownFormat):
        emit(entries, "xml")
    with pytest.raises(UnknownFormat):
        emit_rates(rate_table(2, 3), "yaml")


def test_round2_is_half_up():
    assert round2(Fraction(1, 8)) == 0.13
    assert round2(Fraction(5, 8)) == 0.63
    assert round2(Fraction(4, 9)) == 0.44
    assert round2(Fraction(2, 7)) == 0.29


def test_rate_table_cells():
    rows = {r.t: r for r in rate_table(2, 10)}
    assert rows[1].r_over_r_plus_t == Fraction(2, 3) and not rows[1].published
    assert round2(rows[1].power) == 0.67
    assert rows[2].r_over_r_plus_t == Fraction(1, 2)
    assert rows[2].power == Fraction(4, 9)
    assert rows[8].this_work == Fraction(1, 4)
    assert rows[8].witness == "P(3) x P(3)"
    for r in rows.values():
        assert r.witness_t >= r.t


def test_rate_table_is_monotone():
    rows = rate_table(2, 10)
    ours = [r.this_work for r in rows]
    assert ours == sorted(ours, reverse=True)
    assert all(a.r_over_r_plus_t > b.r_over_r_plus_t for a, b in zip(rows, rows[1:]))
    assert all(a.power > b.power for a, b in zip(rows, rows[1:]))


def test_rate_mismatches_are_reported():
    bad = rate_mismatches(rate_table(2, 10))
    assert "t=6 r_over_r_plus_t: 0.25 (published 0.28)" in bad
    assert not [m for m in bad if "power" in m]


def test_rate_emitters():
    rows = rate_table(2, 4)
    md = emit_rates(rows, "markdown").splitlines()
    assert md[0] == "| rate \\ t | 1 | 2 | 3 | 4 |"
    assert md[3] == "| r/(r+t) | 0.67 | 0.50 | 0.40 | 0.33 |"
    parsed = list(csv.DictReader(io.StringIO(emit_rates(rows, "csv"))))
    assert parsed[1]["r_over_r_plus_t"] == "1/2"
    data = json.loads(emit_rates(rows, "json"))
    assert data[0]["t"] == 1 and data[0]["published"] is False


def test_rate_table_rejects_bad_input():
    with pytest.raises(ValueError):
        rate_table(0, 5)
