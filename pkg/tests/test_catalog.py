"""Table generation: closed-form complex rows, computed real rows, emitters."""

import csv
import io
import json

from lieorbits import catalog
from lieorbits.catalog import (
    DEFAULT_REAL_ENTRIES,
    EXCEPTIONAL_REAL_ROWS,
    complex_table,
    compute_real_row,
    emit,
    real_table,
)

# (dim_R, rank_R, dim_omega, dim_n) for each complex simple algebra viewed as real
COMPLEX_EXPECTED = {
    "A1: sl(2,C)": (6, 2, 4, 2),
    "A2: sl(3,C)": (16, 4, 12, 6),
    "A3: sl(4,C)": (30, 6, 24, 12),
    "B2: so(5,C)": (20, 4, 16, 8),
    "C3: sp(3,C)": (42, 6, 36, 18),
    "D4: so(8,C)": (56, 8, 48, 24),
    "E6: E6": (156, 12, 144, 72),
    "E7: E7": (266, 14, 252, 126),
    "E8: E8": (496, 16, 480, 240),
    "F4: F4": (104, 8, 96, 48),
    "G2: G2": (28, 4, 24, 12),
}


def test_complex_table_values():
    rows = {r.label: r for r in complex_table(4)}
    for label, (dim, rank, dim_omega, dim_n) in COMPLEX_EXPECTED.items():
        assert label in rows, label
        cols = rows[label].columns
        assert cols["dim"] == dim
        assert cols["rank"] == rank
        assert cols["dim_omega"] == dim_omega
        assert cols["dim_n"] == dim_n


def test_complex_table_exceptionals_always_present():
    labels = {r.label for r in complex_table(2)}
    assert {"E6: E6", "E7: E7", "E8: E8", "F4: F4", "G2: G2"} <= labels


def test_real_row_split_form():
    row = compute_real_row("sl_R", (4,))
    c = row.columns
    assert (c["dim"], c["rank"], c["dim_omega"]) == (15, 3, 12)
    assert c["rrank"] == 3 and c["split"] is True
    assert c["dim_n"] == 6
    assert c["f_max"] == 2
    assert not row.unexpected_flags


def test_real_row_su_is_expected_flagged():
    """The su(p,q) printed dimension columns disagree with the computed ones,
    but that disagreement is a known property of the reference table."""
    row = compute_real_row("su", (2, 1))
    assert row.flagged
    assert not row.unexpected_flags
    assert row.columns["dim"] == 8
    assert row.expected  # the printed values are retained alongside


def test_real_row_sigma_synonyms_not_flagged():
    # rank-1 and low-rank label coincidences (A1=B1=C1 etc.) are not discrepancies
    for family, params in [("sp_R", (1,)), ("sp", (1, 1)), ("so", (1, 2))]:
        row = compute_real_row(family, params)
        assert "sigma" not in row.unexpected_flags, (family, params)


def test_default_real_table_no_unexpected_flags():
    rows = real_table(DEFAULT_REAL_ENTRIES)
    assert len(rows) == len(DEFAULT_REAL_ENTRIES)
    for row in rows:
        assert not row.unexpected_flags, (row.label, row.unexpected_flags)


def test_exceptional_rows():
    labels = [r.label for r in EXCEPTIONAL_REAL_ROWS]
    assert len(labels) == 12
    g = next(r for r in EXCEPTIONAL_REAL_ROWS if r.label.startswith("G"))
    assert g.columns["dim"] == 14 and g.columns["dim_n"] == 6
    rows = real_table([("sl_R", (2,))], include_exceptional=True)
    assert len(rows) == 13


def test_emit_csv_parses_back():
    rows = real_table([("sl_R", (2,)), ("su", (2, 1))])
    text = emit(rows, "csv")
    parsed = list(csv.DictReader(io.StringIO(text)))
    assert len(parsed) == 2
    assert parsed[0]["label"] == rows[0].label
    assert parsed[0]["dim"] == "3"
    assert "\r" not in text


def test_emit_json_schema():
    rows = real_table([("su", (2, 1))])
    doc = json.loads(emit(rows, "json"))
    assert doc["schema"] == "foliation-table/1"
    (row,) = doc["rows"]
    assert row["columns"]["dim"] == 8
    assert "expected" in row  # flagged rows carry the printed values


def test_emit_markdown_annotates_flags():
    rows = real_table([("su", (2, 1))])
    text = emit(rows, "markdown")
    assert "|" in text
    assert "printed:" in text


def test_emit_deterministic():
    rows1 = real_table([("sl_R", (3,)), ("so", (2, 3))])
    rows2 = real_table([("sl_R", (3,)), ("so", (2, 3))])
    for fmt in ("csv", "json", "markdown"):
        assert emit(rows1, fmt) == emit(rows2, fmt)
