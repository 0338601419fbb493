"""Descriptive distribution tables over per-year aggregates.

Covers the year-wise article distribution, the authorship pattern, the
page-length distribution, and the subject-by-year matrix. Counts are
tabulated at full precision; every footer count is the exact sum of its
column. Percent denominators differ by table on purpose: authorship
rows use the year's paper count, page-length cells use the column
total, year shares use the grand total.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import AnalysisConfig
from .model import AUTHORSHIP_BIN_LABELS, Dataset, YearAggregate
from .report import ColumnSpec, ReportTable

PAGE_BIN_LABELS = ("1-5 pages", "6-10 pages", "Above 10 pages")


def _pct(part: float, whole: float) -> float:
    """part/whole as a percentage; 0 when the denominator is 0."""
    return part / whole * 100.0 if whole else 0.0


def _require_aggregates(dataset: Dataset) -> tuple[YearAggregate, ...]:
    if dataset.granularity != "aggregates":
        raise ValueError("this table requires aggregate granularity "
                         "(run aggregate_records on record data first)")
    return dataset.aggregates


# ---------------------------------------------------------------------------
# Year-wise distribution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class YearDistributionRow:
    year: int
    papers: int
    percent_of_total: float
    cumulative_papers: int | None  # absent for the first year
    cumulative_percent: float | None


def year_distribution(dataset: Dataset) -> list[YearDistributionRow]:
    """Papers per year with running cumulative counts and shares.

    The first year's cumulative cells are absent; the cumulative series
    starts at the second year and ends at the grand total.
    """
    aggregates = _require_aggregates(dataset)
    total = sum(a.papers for a in aggregates)
    rows = []
    running = 0
    for i, agg in enumerate(aggregates):
        running += agg.papers
        first = i == 0
        rows.append(YearDistributionRow(
            year=agg.year,
            papers=agg.papers,
            percent_of_total=_pct(agg.papers, total),
            cumulative_papers=None if first else running,
            cumulative_percent=None if first else _pct(running, total),
        ))
    return rows


def year_distribution_table(dataset: Dataset) -> ReportTable:
    rows = year_distribution(dataset)
    total = sum(r.papers for r in rows)
    return ReportTable(
        title="Articles published per year",
        columns=[
            ColumnSpec("Year", "year"),
            ColumnSpec("Papers", "count"),
            ColumnSpec("%", "percent", 1),
            ColumnSpec("Cum. papers", "count"),
            ColumnSpec("Cum. %", "percent", 2),
        ],
        rows=[[r.year, r.papers, r.percent_of_total,
               r.cumulative_papers, r.cumulative_percent] for r in rows],
        footer=["Total", total, 100.0 if total else 0.0, None, None],
    )


# ---------------------------------------------------------------------------
# Authorship pattern
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AuthorshipRow:
    year: int
    bin_counts: tuple[int, ...]
    bin_row_percents: tuple[float, ...]  # each bin over the year's papers
    papers: int
    percent_of_total: float


def authorship_pattern(dataset: Dataset) -> tuple[list[AuthorshipRow], AuthorshipRow]:
    """Per-year authorship bins with row percentages, plus a totals row.

    Row percentages divide by the year's paper count (not the bin sum),
    so they reflect the declared output even when the bins undercount.
    The totals row sums each bin column exactly.
    """
    aggregates = _require_aggregates(dataset)
    total_papers = sum(a.papers for a in aggregates)
    rows = []
    for agg in aggregates:
        rows.append(AuthorshipRow(
            year=agg.year,
            bin_counts=agg.authorship_bins,
            bin_row_percents=tuple(_pct(n, agg.papers) for n in agg.authorship_bins),
            papers=agg.papers,
            percent_of_total=_pct(agg.papers, total_papers),
        ))
    bin_totals = tuple(sum(a.authorship_bins[i] for a in aggregates) for i in range(5))
    footer = AuthorshipRow(
        year=0,
        bin_counts=bin_totals,
        bin_row_percents=tuple(_pct(n, total_papers) for n in bin_totals),
        papers=total_papers,
        percent_of_total=100.0 if total_papers else 0.0,
    )
    return rows, footer


def authorship_table(dataset: Dataset) -> ReportTable:
    rows, footer = authorship_pattern(dataset)
    columns = [ColumnSpec("Year", "year")]
    for label in AUTHORSHIP_BIN_LABELS:
        columns.append(ColumnSpec(label, "count"))
        columns.append(ColumnSpec(f"{label} %", "percent", 2))
    columns.append(ColumnSpec("Papers", "count"))
    columns.append(ColumnSpec("Papers %", "percent", 1))

    def cells(row: AuthorshipRow, label: object) -> list:
        out: list = [label]
        for count, percent in zip(row.bin_counts, row.bin_row_percents):
            out.extend([count, percent])
        out.extend([row.papers, row.percent_of_total])
        return out

    return ReportTable(
        title="Authorship pattern by year",
        columns=columns,
        rows=[cells(r, r.year) for r in rows],
        footer=cells(footer, "Total"),
    )


# ---------------------------------------------------------------------------
# Page-length distribution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PageLengthRow:
    year: int
    bin_counts: tuple[int, ...]
    bin_column_percents: tuple[float, ...]  # each cell over its column total
    papers: int
    percent_of_total: float


def page_length_distribution(dataset: Dataset) -> tuple[list[PageLengthRow], tuple[int, ...]]:
    """Per-year page bins with column percentages and the column totals."""
    aggregates = _require_aggregates(dataset)
    total_papers = sum(a.papers for a in aggregates)
    n_bins = len(aggregates[0].page_bins) if aggregates else 0
    column_totals = tuple(sum(a.page_bins[i] for a in aggregates) for i in range(n_bins))
    rows = []
    for agg in aggregates:
        rows.append(PageLengthRow(
            year=agg.year,
            bin_counts=agg.page_bins,
            bin_column_percents=tuple(
                _pct(n, column_totals[i]) for i, n in enumerate(agg.page_bins)
            ),
            papers=agg.papers,
            percent_of_total=_pct(agg.papers, total_papers),
        ))
    return rows, column_totals


def page_length_table(dataset: Dataset) -> ReportTable:
    rows, column_totals = page_length_distribution(dataset)
    total_papers = sum(r.papers for r in rows)
    labels = PAGE_BIN_LABELS[:len(column_totals)]
    columns = [ColumnSpec("Year", "year")]
    for label in labels:
        columns.append(ColumnSpec(label, "count"))
        columns.append(ColumnSpec(f"{label} %", "percent", 2))
    columns.append(ColumnSpec("Papers", "count"))
    columns.append(ColumnSpec("Papers %", "percent", 1))

    table_rows = []
    for row in rows:
        cells: list = [row.year]
        for count, percent in zip(row.bin_counts, row.bin_column_percents):
            cells.extend([count, percent])
        cells.extend([row.papers, row.percent_of_total])
        table_rows.append(cells)
    footer: list = ["Total"]
    for total in column_totals:
        footer.extend([total, None])
    footer.extend([total_papers, 100.0 if total_papers else 0.0])

    return ReportTable(
        title="Page-length distribution of articles",
        columns=columns,
        rows=table_rows,
        footer=footer,
    )


# ---------------------------------------------------------------------------
# Subject distribution
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SubjectRow:
    subject: str
    counts_by_year: tuple[int, ...]
    total: int


def subject_distribution(dataset: Dataset,
                         taxonomy: tuple[str, ...] | None = None) -> list[SubjectRow]:
    """Subject-by-year count matrix in taxonomy order, zero-filled.

    Labels present in the data but missing from the taxonomy are an
    internal error: ingest maps unknown labels to "Others" before data
    reaches this stage.
    """
    aggregates = _require_aggregates(dataset)
    taxonomy = taxonomy or AnalysisConfig().taxonomy
    known = set(taxonomy)
    for agg in aggregates:
        for label in agg.subject_counts:
            if label not in known:
                raise ValueError(f"unknown subject label {label!r} in year {agg.year}; "
                                 "ingest should have mapped it to 'Others'")
    rows = []
    for label in taxonomy:
        counts = tuple(agg.subject_counts.get(label, 0) for agg in aggregates)
        rows.append(SubjectRow(subject=label, counts_by_year=counts, total=sum(counts)))
    return rows


def subject_table(dataset: Dataset, taxonomy: tuple[str, ...] | None = None) -> ReportTable:
    rows = subject_distribution(dataset, taxonomy)
    years = [a.year for a in dataset.aggregates]
    columns = [ColumnSpec("Subject", "label")]
    columns.extend(ColumnSpec(str(year), "count") for year in years)
    columns.append(ColumnSpec("Total", "count"))
    column_totals = [sum(r.counts_by_year[i] for r in rows) for i in range(len(years))]
    return ReportTable(
        title="Subject distribution of articles",
        columns=columns,
        rows=[[r.subject, *r.counts_by_year, r.total] for r in rows],
        footer=["Total", *column_totals, sum(column_totals)],
    )
