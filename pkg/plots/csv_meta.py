"""Shared CSV access for the figure scripts.

The CSVs carry a '#'-prefixed metadata block of ``key = value`` lines
written by the magicforge CLI; the scripts here are read-only consumers
and never recompute any physics.  Schema mismatches fail loudly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np


class SchemaError(ValueError):
    """The CSV does not match the schema the figure kind expects."""


@dataclass(frozen=True)
class FigureSpec:
    """One figure job: input CSV, figure kind, output image path."""

    csv_path: str
    kind: str
    out_path: str


def read_csv(path: str, expect_command: str, required_columns: tuple):
    """Parse metadata, header, and string-valued columns from a CLI CSV.

    Raises SchemaError when the metadata's command tag or the header does
    not match what the figure expects, or when the file carries no rows.
    """
    meta = {}
    header = None
    rows = []
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            if line.startswith("#"):
                if "=" in line:
                    k, v = line[1:].split("=", 1)
                    meta[k.strip()] = v.strip()
                continue
            if header is None:
                header = [c.strip() for c in line.split(",")]
                continue
            rows.append(line.split(","))
    if header is None or not rows:
        raise SchemaError(f"{path}: no data rows")
    if expect_command is not None and meta.get("command") != expect_command:
        raise SchemaError(
            f"{path}: produced by command {meta.get('command')!r}, "
            f"expected {expect_command!r}")
    missing = [c for c in required_columns if c not in header]
    if missing:
        raise SchemaError(f"{path}: missing columns {missing} in {header}")
    if any(len(r) != len(header) for r in rows):
        raise SchemaError(f"{path}: ragged rows do not match the header")
    columns = {name: [r[i] for r in rows] for i, name in enumerate(header)}
    return meta, columns


def numeric(column, default=np.nan) -> np.ndarray:
    """Column of strings to floats; blanks map to the default."""
    out = []
    for c in column:
        try:
            out.append(float(c))
        except ValueError:
            out.append(default)
    return np.array(out)
