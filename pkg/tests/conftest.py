import pytest

from scientoscope import AnalysisConfig, parse_aggregates, parse_records
from scientoscope.cli import demo_aggregates_path, demo_records_path


@pytest.fixture(scope="session")
def demo_dataset():
    """The bundled five-year aggregate dataset (227 articles)."""
    return parse_aggregates(demo_aggregates_path().read_bytes())


@pytest.fixture(scope="session")
def demo_records():
    """The bundled 12-record synthetic record set."""
    return parse_records(demo_records_path().read_bytes())


@pytest.fixture(scope="session")
def paper_config():
    return AnalysisConfig(mode="paper")


@pytest.fixture(scope="session")
def standard_config():
    return AnalysisConfig(mode="standard")
