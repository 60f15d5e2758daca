"""Bundled reading-speed dataset and CSV parsing for user-supplied files.

Two CSV schemas are understood:

    raw:     subject,gap_ms,accuracy_pct     (one row per subject per gap)
    summary: gap_ms,mean,sd,n                (one row per gap)

The bundled dataset covers seven character gaps, ten subjects each; it is a
reconstruction that is exactly consistent with the study's summary table
(see scripts/build_reading_dataset.py in the repository).
"""

from __future__ import annotations

import csv
from importlib import resources
from pathlib import Path
from typing import IO, Iterable

from .stats import SampleSummary

RAW_RESOURCE = "reading_speed_raw.csv"
SUMMARY_RESOURCE = "reading_speed_summary.csv"


class DatasetFormatError(ValueError):
    """CSV file does not match the raw or summary schema."""


def _open_resource(name: str) -> IO[str]:
    return (resources.files(__package__) / "data" / name).open("r", encoding="utf-8")


def parse_summary_csv(lines: Iterable[str]) -> list[SampleSummary]:
    reader = csv.DictReader(lines)
    expected = {"gap_ms", "mean", "sd", "n"}
    if reader.fieldnames is None or not expected <= set(reader.fieldnames):
        raise DatasetFormatError(f"summary CSV needs columns {sorted(expected)}")
    groups = []
    for row in reader:
        try:
            groups.append(
                SampleSummary(
                    treatment=int(row["gap_ms"]),
                    mean=float(row["mean"]),
                    sd=float(row["sd"]),
                    n=int(row["n"]),
                )
            )
        except ValueError as exc:
            raise DatasetFormatError(f"bad summary row {row!r}: {exc}") from exc
    if not groups:
        raise DatasetFormatError("summary CSV has no data rows")
    return groups


def parse_raw_csv(lines: Iterable[str]) -> dict[int, list[float]]:
    reader = csv.DictReader(lines)
    expected = {"subject", "gap_ms", "accuracy_pct"}
    if reader.fieldnames is None or not expected <= set(reader.fieldnames):
        raise DatasetFormatError(f"raw CSV needs columns {sorted(expected)}")
    data: dict[int, list[float]] = {}
    for row in reader:
        try:
            data.setdefault(int(row["gap_ms"]), []).append(float(row["accuracy_pct"]))
        except ValueError as exc:
            raise DatasetFormatError(f"bad raw row {row!r}: {exc}") from exc
    if not data:
        raise DatasetFormatError("raw CSV has no data rows")
    return data


def load_summary(path: str | Path | None = None) -> list[SampleSummary]:
    """Per-gap summaries from a file, or the bundled dataset when path is None."""
    if path is None:
        with _open_resource(SUMMARY_RESOURCE) as fh:
            return parse_summary_csv(fh)
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_summary_csv(fh)


def load_raw(path: str | Path | None = None) -> dict[int, list[float]]:
    """Per-gap raw accuracies from a file, or the bundled dataset."""
    if path is None:
        with _open_resource(RAW_RESOURCE) as fh:
            return parse_raw_csv(fh)
    with open(path, newline="", encoding="utf-8") as fh:
        return parse_raw_csv(fh)
