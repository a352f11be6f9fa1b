"""Characteristic factors, bias tables, the entry-point census, and the
factor-table file format."""

import os

import pytest

from lucasdual.bias import (
    INCOMPLETE,
    BiasRow,
    FactorTableError,
    bias_table,
    bias_term,
    census_build,
    characteristic_factors,
    characteristic_partial,
    export_bias_csv,
    import_factor_table,
    read_bias_csv,
)
from lucasdual.lucas import LucasParams, u_term

# internal-route values for the cumulative counts at n = 29..36
LATE_ROWS = {
    29: (13, 13),
    30: (14, 13),
    31: (14, 15),
    32: (14, 16),
    33: (15, 16),
    34: (16, 16),
    35: (17, 16),
    36: (17, 17),
}


def test_characteristic_factors_fibonacci(fibonacci):
    assert characteristic_factors(fibonacci, 3) == {(2, 1)}
    assert characteristic_factors(fibonacci, 5) == {(5, 1)}
    assert characteristic_factors(fibonacci, 12) == set()  # F_12 = 2^4 3^2
    assert characteristic_factors(fibonacci, 10) == {(11, 1)}
    assert characteristic_factors(fibonacci, 25) == {(3001, 1)}


def test_characteristic_factors_fibonacci_216(fibonacci):
    factors = characteristic_factors(fibonacci, 216)
    assert factors == {(6263, 1), (177962167367, 1)}


def test_characteristic_factors_respects_budget(fibonacci):
    # a tiny budget cannot split the 25-digit cofactors of F_101
    result = characteristic_factors(fibonacci, 101, budget=10)
    assert result is INCOMPLETE


def test_characteristic_partial_merges_table(fibonacci, tmp_path):
    path = tmp_path / "partial.txt"
    path.write_text("lucas-factors v1 P=1 Q=-1\n15: 2 5 C61\n")
    table = import_factor_table(str(path), fibonacci)
    factors, complete = characteristic_partial(fibonacci, 15, 10**5, table)
    assert complete
    assert factors == {(61, 1)}


def test_bias_rows_match_reference_counts(fibonacci):
    rows = bias_table(fibonacci, 36)
    by_n = {row.n: row for row in rows}
    assert (by_n[1].count_r, by_n[1].count_n) == (0, 0)
    assert (by_n[2].count_r, by_n[2].count_n) == (0, 0)
    assert (by_n[3].count_r, by_n[3].count_n) == (0, 1)
    for n in range(4, 29):
        assert by_n[n].count_r < by_n[n].count_n
    for n, expected in LATE_ROWS.items():
        assert (by_n[n].count_r, by_n[n].count_n) == expected
        assert by_n[n].exact


def test_bias_term_counts_lead_changes(fibonacci):
    rows = bias_table(fibonacci, 36)
    assert bias_term(rows, 36) == 2  # residues lead only at n = 30, 35
    assert bias_term(rows, 29) == 0
    with pytest.raises(ValueError):
        bias_term(rows, 37)


def test_bias_term_rejects_inexact_rows():
    rows = [BiasRow(1, 0, 0, True), BiasRow(2, 1, 0, False)]
    with pytest.raises(ValueError):
        bias_term(rows, 2)


def test_bias_csv_round_trip(fibonacci, tmp_path):
    rows = bias_table(fibonacci, 20)
    path = tmp_path / "bias.csv"
    export_bias_csv(rows, str(path))
    text = path.read_text()
    assert text.splitlines()[0] == "n,count_r,count_n,exact"
    assert read_bias_csv(str(path)) == rows


def test_census_fibonacci_goldens(fibonacci, tmp_path):
    census = census_build(fibonacci, 20)
    values = {p: z.value for p, z in census.records.items()}
    assert values == {2: 3, 3: 4, 5: 5, 7: 8, 11: 10, 13: 7, 17: 9, 19: 18}
    assert census.finite_records()[0] == (2, 3)


def test_census_respects_limit_boundary(fibonacci):
    census = census_build(fibonacci, 13)
    assert sorted(census.records) == [2, 3, 5, 7, 11, 13]


def test_census_infinite_entries():
    census = census_build(LucasParams(1, 2), 20)
    assert not census.records[2].finite
    assert (2, 3) not in census.finite_records()


def test_census_cache_round_trip(fibonacci, tmp_path):
    cache = str(tmp_path)
    census_build(fibonacci, 100, cache_dir=cache)
    files = os.listdir(cache)
    assert files == ["census-P1-Q-1.csv"]
    before = (tmp_path / files[0]).read_text()
    again = census_build(fibonacci, 100, cache_dir=cache)
    assert (tmp_path / files[0]).read_text() == before
    assert {p: z.value for p, z in again.records.items()}[97] == 49
    # a corrupt cache is ignored, not fatal
    (tmp_path / files[0]).write_text("p,z\nnot,numbers\n")
    rebuilt = census_build(fibonacci, 100, cache_dir=cache)
    assert rebuilt.records[97].value == 49


def test_census_parallel_matches_serial(fibonacci):
    serial = census_build(fibonacci, 500, jobs=1)
    parallel = census_build(fibonacci, 500, jobs=2)
    assert serial.records == parallel.records


def test_factor_table_parses_exponents_and_cofactors(fibonacci, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text(
        "# comment line\n"
        "lucas-factors v1 P=1 Q=-1\n"
        "10: 5 11\n"
        "12: 2^4 3^2  # trailing comment\n"
        "15: 2 5 C61\n"
        "\n"
    )
    table = import_factor_table(str(path), fibonacci)
    assert sorted(table.entries) == [10, 12, 15]
    assert table.entries[12].factors == ((2, 4), (3, 2))
    assert table.entries[12].complete
    assert table.entries[15].unfactored_cofactor == 61
    assert not table.entries[15].complete


def test_factor_table_rejects_missing_or_foreign_header(fibonacci, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("10: 5 11\n")
    with pytest.raises(FactorTableError):
        import_factor_table(str(path), fibonacci)
    path.write_text("lucas-factors v1 P=3 Q=2\n10: 5 11\n")
    with pytest.raises(FactorTableError):
        import_factor_table(str(path), fibonacci)


def test_factor_table_reports_line_numbers(fibonacci, tmp_path):
    path = tmp_path / "bad.txt"
    path.write_text("lucas-factors v1 P=1 Q=-1\n10: 5 11\nnot a line\n")
    with pytest.raises(FactorTableError, match="line 3"):
        import_factor_table(str(path), fibonacci)


def test_factor_table_skips_invalid_entries(fibonacci, tmp_path, caplog):
    path = tmp_path / "mixed.txt"
    path.write_text(
        "lucas-factors v1 P=1 Q=-1\n"
        "10: 5 11\n"
        "11: 88\n"  # wrong value: U_11 = 89
        "12: 2^4 3^2\n"
        "10: 5 11\n"  # duplicate
    )
    with caplog.at_level("WARNING"):
        table = import_factor_table(str(path), fibonacci)
    assert sorted(table.entries) == [10, 12]
    assert "11" in caplog.text


def test_factor_table_recombination_on_huge_index(fibonacci, tmp_path):
    # n > 500 entries are validated modularly instead of exactly
    n = 720
    value = u_term(fibonacci, n)
    path = tmp_path / "big.txt"
    path.write_text(f"lucas-factors v1 P=1 Q=-1\n{n}: C{value}\n")
    table = import_factor_table(str(path), fibonacci)
    assert table.entries[n].unfactored_cofactor == value
    # and a wrong value is rejected by the modular check
    path.write_text(f"lucas-factors v1 P=1 Q=-1\n{n}: C{value + 2}\n")
    table = import_factor_table(str(path), fibonacci)
    assert n not in table.entries


def test_factor_table_cofactor_must_be_last(fibonacci, tmp_path):
    path = tmp_path / "order.txt"
    path.write_text("lucas-factors v1 P=1 Q=-1\n15: C61 2 5\n")
    with pytest.raises(FactorTableError, match="line 2"):
        import_factor_table(str(path), fibonacci)


def test_bias_with_factor_table_marks_exact(fibonacci):
    # a table entry lets an over-budget index stay exact
    assert u_term(fibonacci, 101) == 743519377 * 770857978613
    rows_without = bias_table(fibonacci, 101, budget=10**3)
    assert not rows_without[-1].exact


def test_bias_with_factor_table_completes(fibonacci, tmp_path):
    path = tmp_path / "t.txt"
    path.write_text("lucas-factors v1 P=1 Q=-1\n101: 743519377 770857978613\n")
    table = import_factor_table(str(path), fibonacci)
    factors, complete = characteristic_partial(fibonacci, 101, 10**3, table)
    assert complete
    assert factors == {(743519377, 1), (770857978613, 1)}
