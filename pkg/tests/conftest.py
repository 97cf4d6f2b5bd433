import json
from pathlib import Path

import pytest

REPO_ROOT = Path(__file__).resolve().parent.parent
CACHE_DIR = REPO_ROOT / ".cache"
SWEEP_CSV = CACHE_DIR / "sweep_500000.csv"


def pytest_runtest_logreport(report):
    # One visible pass/fail line per acceptance criterion.
    if report.when == "call" and "test_acceptance" in report.nodeid:
        name = report.nodeid.split("::")[-1]
        print(f"\nACCEPTANCE {name}: {'PASS' if report.passed else 'FAIL'}")


@pytest.fixture(scope="session")
def class_table_2m():
    from curvecensus.cli import get_table

    return get_table(2_000_000, CACHE_DIR)


@pytest.fixture(scope="session")
def full_sweep_rows(class_table_2m):
    """Rows for all primes p <= 500000; also writes the CLI-format CSV artifact
    consumed by the plotting frontend's full-sweep tests."""
    from curvecensus.census import sweep
    from curvecensus.cli import SWEEP_COMMENT, SWEEP_HEADER, format_sweep_row, sweep_summary

    rows = list(sweep(2, 500_000, class_table_2m))
    CACHE_DIR.mkdir(exist_ok=True)
    with open(SWEEP_CSV, "w") as f:
        f.write(SWEEP_COMMENT + "\n")
        f.write(SWEEP_HEADER + "\n")
        for row in rows:
            f.write(format_sweep_row(row) + "\n")
    summary = sweep_summary(rows)
    SWEEP_CSV.with_suffix(".csv.summary.json").write_text(json.dumps(summary, indent=2) + "\n")
    return rows
