#!/usr/bin/env python3
"""Basin map of a constant-fidelity plane from a ``magicforge basin`` CSV.

Color legend is fixed: red for convergence to the magic state, pink for
its orthogonal complement, black for the maximally mixed state, and blue
shades (lighter to darker) by the number of corner sign flips; unresolved
cells are gray.

Usage: python plot_basin.py <basin.csv> -o <image.png>
"""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from csv_meta import FigureSpec, SchemaError, numeric, read_csv

#: Fixed attractor-class colors.
CLASS_COLORS = {
    "MagicT0": "#d62728",          # red
    "OrthogonalT1": "#f7b6d2",     # pink
    "MaximallyMixed": "#000000",   # black
    "flips1": "#9ecae1",           # light blue: one sign flip
    "flips2": "#2171b5",           # dark blue: two sign flips
    "Unresolved": "#bdbdbd",
}


def _color(label: str) -> str:
    if label.startswith("Corner("):
        flips = label.count("-")
        return CLASS_COLORS[f"flips{flips}"]
    return CLASS_COLORS.get(label, CLASS_COLORS["Unresolved"])


def build_figure(csv_path: str):
    meta, cols = read_csv(csv_path, "basin",
                          ("r", "theta", "class", "in_ball"))
    r = numeric(cols["r"])
    theta = numeric(cols["theta"])
    in_ball = numeric(cols["in_ball"]) > 0.5
    labels = np.array(cols["class"])
    fig, ax = plt.subplots(figsize=(6.4, 6.0))
    keep = in_ball
    colors = [_color(l) for l in labels[keep]]
    ax.scatter(r[keep] * np.cos(theta[keep]), r[keep] * np.sin(theta[keep]),
               c=colors, s=14, marker="s", linewidths=0)
    handles = [plt.Line2D([], [], marker="s", linestyle="", color=c, label=l)
               for l, c in (("magic state", CLASS_COLORS["MagicT0"]),
                            ("1 sign flip", CLASS_COLORS["flips1"]),
                            ("2 sign flips", CLASS_COLORS["flips2"]),
                            ("orthogonal", CLASS_COLORS["OrthogonalT1"]),
                            ("maximally mixed", CLASS_COLORS["MaximallyMixed"]))]
    ax.legend(handles=handles, loc="upper right", fontsize=8)
    ax.set_xlabel("r cos(theta)")
    ax.set_ylabel("r sin(theta)")
    ax.set_title(f"Convergence basins on the F = {meta.get('fidelity')} plane")
    ax.set_aspect("equal")
    return fig, ax


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, kind="basin", out_path=args.out)
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
