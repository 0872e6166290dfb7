#!/usr/bin/env python3
"""Gate-count comparison from a ``magicforge cost`` CSV.

Blue dots: expected two-qubit gates with faulty Clifford gates.  Red
dots: the zero-noise count, a lower bound on fault-tolerant logical
gates.  The y-axis is logarithmic so the factor-of-five step growth per
added round reads as equal spacing; unreachable grid points are skipped.

Usage: python plot_cost.py <cost.csv> -o <image.png>
"""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from csv_meta import FigureSpec, SchemaError, numeric, read_csv


def build_figure(csv_path: str):
    meta, cols = read_csv(csv_path, "cost",
                          ("f_in", "gates_faulty", "gates_ideal_logical"))
    f_in = numeric(cols["f_in"])
    faulty = numeric(cols["gates_faulty"])
    ideal = numeric(cols["gates_ideal_logical"])
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    ok_f = np.isfinite(faulty)
    ok_i = np.isfinite(ideal)
    ax.plot(f_in[ok_f], faulty[ok_f], "o", ms=4, color="#1f77b4",
            label=f"faulty gates (E = {meta.get('e')})")
    ax.plot(f_in[ok_i], ideal[ok_i], "o", ms=4, color="#d62728",
            label="perfect gates (logical lower bound)")
    ax.set_yscale("log")
    ax.set_xlabel("input fidelity")
    ax.set_ylabel("expected two-qubit gates")
    ax.set_title(f"Gates to reach F = {meta.get('target')} "
                 f"(B2 = {meta.get('b2')} per round)")
    ax.legend(fontsize=8)
    return fig, ax


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, kind="cost", out_path=args.out)
    try:
        fig, _ = build_figure(spec.csv_path)
    except (SchemaError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    fig.savefig(spec.out_path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return 0


if __name__ == "__main__":
    sys.exit(main())
