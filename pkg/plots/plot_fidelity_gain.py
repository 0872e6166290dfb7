#!/usr/bin/env python3
"""One-round fidelity gain from a ``magicforge gain`` CSV.

Plots d = F_out - F_in against whichever coordinate the CSV sweeps
(radial distance from the magic axis, or angle at fixed radius), with a
zero reference line.

Usage: python plot_fidelity_gain.py <gain.csv> -o <image.png>
"""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from csv_meta import FigureSpec, SchemaError, numeric, read_csv


def build_figure(csv_path: str):
    meta, cols = read_csv(csv_path, "gain", ("r", "theta", "d"))
    r = numeric(cols["r"])
    theta = numeric(cols["theta"])
    d = numeric(cols["d"])
    sweep = meta.get("sweep")
    if sweep not in ("r", "theta"):
        sweep = "r" if np.ptp(r) >= np.ptp(theta) else "theta"
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    if sweep == "r":
        ax.plot(r, d, lw=1.5)
        ax.set_xlabel("distance r from the magic axis")
        title = (f"Fidelity gain vs r at F = {meta.get('fidelity')}, "
                 f"theta = {meta.get('theta')}")
    else:
        ax.plot(theta, d, lw=1.5)
        ax.set_xlabel("angle theta [rad]")
        ax.set_xticks(np.arange(0, 2 * np.pi + 0.1, np.pi / 3))
        ax.set_xticklabels(["0", "pi/3", "2pi/3", "pi", "4pi/3", "5pi/3", "2pi"])
        title = (f"Fidelity gain vs theta at F = {meta.get('fidelity')}, "
                 f"r = {meta.get('r')}")
    ax.axhline(0.0, color="k", lw=0.8, ls=":")
    ax.set_ylabel("d = F_out - F_in")
    ax.set_title(title)
    return fig, ax


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, kind="fidelity-gain", out_path=args.out)
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
