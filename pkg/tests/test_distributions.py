"""Distribution tables: year, authorship, page-length, subject."""

import pytest

from scientoscope import (
    authorship_pattern,
    page_length_distribution,
    parse_aggregates,
    subject_distribution,
    subject_table,
    year_distribution,
    year_distribution_table,
)

AGG_HEADER = ("year,papers,a1,a2,a3,a4,a5plus,total_authors,p1to5,p6to10,pabove10,"
              "subj:A,subj:B")


def _tiny(rows: list[str]):
    return parse_aggregates(AGG_HEADER + "\n" + "\n".join(rows) + "\n")


def test_year_distribution_demo(demo_dataset):
    rows = {r.year: r for r in year_distribution(demo_dataset)}
    assert rows[2014].papers == 63
    assert rows[2014].percent_of_total == pytest.approx(27.7, abs=0.1)
    assert rows[2014].cumulative_papers == 96
    assert rows[2014].cumulative_percent == pytest.approx(42.29, abs=0.01)
    assert rows[2013].cumulative_papers is None
    assert rows[2013].cumulative_percent is None
    assert rows[2017].cumulative_papers == 227
    assert rows[2017].cumulative_percent == pytest.approx(100.0)


def test_year_distribution_single_year():
    rows = year_distribution(_tiny(["2013,33,14,14,5,0,0,57,4,26,3,20,13"]))
    (row,) = rows
    assert row.percent_of_total == pytest.approx(100.0)
    assert row.cumulative_papers is None


def test_year_distribution_cumulative_and_percent_invariants(demo_dataset):
    rows = year_distribution(demo_dataset)
    total = sum(r.papers for r in rows)
    cums = [r.cumulative_papers for r in rows if r.cumulative_papers is not None]
    assert cums == sorted(cums) and len(set(cums)) == len(cums)
    assert cums[-1] == total
    running = 0
    for row in rows:
        running += row.papers
        if row.cumulative_papers is not None:
            assert row.cumulative_papers == running
    assert sum(r.percent_of_total for r in rows) == pytest.approx(100.0, abs=0.2)


def test_year_distribution_additivity(demo_dataset):
    # Tabulating two disjoint-year halves yields the same per-year paper
    # counts as tabulating the merged dataset.
    aggs = demo_dataset.aggregates
    import dataclasses
    first = dataclasses.replace(demo_dataset, aggregates=aggs[:2],
                                study_window=(aggs[0].year, aggs[1].year))
    second = dataclasses.replace(demo_dataset, aggregates=aggs[2:],
                                 study_window=(aggs[2].year, aggs[-1].year))
    merged_counts = [(r.year, r.papers) for r in year_distribution(demo_dataset)]
    split_counts = ([(r.year, r.papers) for r in year_distribution(first)]
                    + [(r.year, r.papers) for r in year_distribution(second)])
    assert merged_counts == split_counts


def test_authorship_pattern_demo(demo_dataset):
    rows, footer = authorship_pattern(demo_dataset)
    by_year = {r.year: r for r in rows}
    assert by_year[2013].bin_counts == (14, 14, 5, 0, 0)
    for got, want in zip(by_year[2013].bin_row_percents, (42.42, 42.42, 15.15, 0.0, 0.0)):
        assert got == pytest.approx(want, abs=0.01)
    # 2017 percentages divide by the declared 51 papers, not the bin sum of 50.
    assert by_year[2017].bin_row_percents[0] == pytest.approx(23.53, abs=0.01)
    assert footer.bin_counts == (70, 111, 34, 8, 3)  # exact column sums
    assert footer.papers == 227


def test_authorship_zero_papers_year_yields_zero_percents():
    rows, _ = authorship_pattern(_tiny(["2013,0,0,0,0,0,0,0,0,0,0,0,0"]))
    assert rows[0].bin_row_percents == (0.0, 0.0, 0.0, 0.0, 0.0)


def test_footer_counts_equal_column_sums(demo_dataset):
    rows, footer = authorship_pattern(demo_dataset)
    for i in range(5):
        assert footer.bin_counts[i] == sum(r.bin_counts[i] for r in rows)
    page_rows, totals = page_length_distribution(demo_dataset)
    for i in range(3):
        assert totals[i] == sum(r.bin_counts[i] for r in page_rows)


def test_page_length_demo(demo_dataset):
    rows, totals = page_length_distribution(demo_dataset)
    by_year = {r.year: r for r in rows}
    assert by_year[2014].bin_counts == (13, 45, 5)
    for got, want in zip(by_year[2014].bin_column_percents, (35.14, 25.71, 33.33)):
        assert got == pytest.approx(want, abs=0.01)
    assert by_year[2013].bin_column_percents[0] == pytest.approx(10.81, abs=0.01)  # 4/37
    assert totals == (37, 175, 15)
    assert sum(totals) == 227


def test_page_length_degenerate_single_bin():
    rows, totals = page_length_distribution(_tiny(["2013,2,2,0,0,0,0,2,0,2,0,1,1"]))
    assert totals == (0, 2, 0)
    assert rows[0].bin_column_percents[0] == 0.0  # empty column: 0, not NaN


def test_subject_distribution_demo(demo_dataset):
    rows = subject_distribution(demo_dataset)
    by_subject = {r.subject: r for r in rows}
    assert by_subject["Scientometrics, Bibliometrics"].counts_by_year == (11, 18, 10, 1, 11)
    assert by_subject["Scientometrics, Bibliometrics"].total == 51
    assert by_subject["Search Engines"].total == 2
    assert [r.subject for r in rows][0] == "Scientometrics, Bibliometrics"
    assert [r.subject for r in rows][-1] == "Others"
    # Column sums equal the yearly paper counts.
    years = [a.year for a in demo_dataset.aggregates]
    for i, year in enumerate(years):
        column = sum(r.counts_by_year[i] for r in rows)
        assert column == demo_dataset.aggregates[i].papers, year


def test_subject_distribution_rejects_unknown_label():
    ds = _tiny(["2013,1,1,0,0,0,0,1,1,0,0,1,0"])
    with pytest.raises(ValueError, match="unknown subject label"):
        subject_distribution(ds, taxonomy=("A",))  # data also carries B


def test_subject_table_footer(demo_dataset):
    table = subject_table(demo_dataset)
    assert table.footer == ["Total", 33, 63, 44, 36, 51, 227]
    zero_cells = [row for row in table.rows if 0 in row]
    assert zero_cells  # zero cells present as 0, not blank


def test_year_table_footer(demo_dataset):
    table = year_distribution_table(demo_dataset)
    assert table.footer[1] == 227
    assert table.footer[3] is None and table.footer[4] is None
