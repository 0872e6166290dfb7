"""Shipped reference data: fixed Bloch vectors for oracle cross-checks."""
from __future__ import annotations

from importlib import resources

import numpy as np


def reference_bloch_vectors() -> np.ndarray:
    """The 100 fixed Bloch-ball vectors used for map/circuit equivalence.

    Shipped as package data so the cross-check is deterministic; see the
    file header for the generation recipe.
    """
    path = resources.files("magicforge").joinpath("data/oracle_bloch_vectors.csv")
    with path.open("r", encoding="utf-8") as fh:
        rows = [line.split(",") for line in fh
                if line.strip() and not line.startswith("#")]
    arr = np.array([[float(c) for c in row] for row in rows])
    if arr.shape != (100, 3):
        raise ValueError(f"corrupt reference data, shape {arr.shape}")
    return arr
