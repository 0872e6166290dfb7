#!/usr/bin/env python3
"""Output-fidelity curves from a ``magicforge curve`` CSV.

One solid line per noise setting for the single-round output fidelity
(dashed for the iterated limit), plus the F_out = F_in diagonal as a
visual reference.  The noiseless setting is always the top curve.

Usage: python plot_curves.py <curve.csv> -o <image.png>
"""
import argparse
import sys

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt

from csv_meta import FigureSpec, SchemaError, numeric, read_csv


def build_figure(csv_path: str):
    meta, cols = read_csv(csv_path, "curve", ("f_in",))
    f_in = numeric(cols["f_in"])
    settings = []
    i = 0
    while f"f_out_s{i}" in cols:
        label = meta.get(f"setting_s{i}", f"setting {i}").replace(";", ", ")
        settings.append((label, numeric(cols[f"f_out_s{i}"]),
                         numeric(cols.get(f"f_limit_s{i}", []))))
        i += 1
    if not settings:
        raise SchemaError(f"{csv_path}: no f_out_s<i> columns found")
    fig, ax = plt.subplots(figsize=(6.4, 4.8))
    for label, one, lim in settings:
        line, = ax.plot(f_in, one, lw=1.6, label=label)
        if lim.size:
            ax.plot(f_in, lim, lw=1.0, ls="--", color=line.get_color())
    ax.plot(f_in, f_in, color="k", lw=0.8, ls=":", label="F_out = F_in")
    ax.set_xlabel("input fidelity")
    ax.set_ylabel("output fidelity (solid: one round, dashed: limit)")
    ax.set_title("Distillation output fidelity under gate noise")
    ax.legend(fontsize=8, loc="lower right")
    return fig, ax


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csv")
    ap.add_argument("-o", "--out", required=True)
    args = ap.parse_args(argv)
    spec = FigureSpec(csv_path=args.csv, kind="curves", out_path=args.out)
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
