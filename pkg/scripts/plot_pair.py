#!/usr/bin/env python3
"""Render one or two solution CSVs (as written by `bsym solve`) to a figure.

Typical use, visualizing a symmetric pair:

    bsym pair --problem p1.json --case T2i --out p2.json
    bsym solve --problem p1.json --t-min -2 --t-max 2 --out y1.csv
    bsym solve --problem p2.json --t-min -2 --t-max 2 --out y2.csv
    python scripts/plot_pair.py y1.csv y2.csv --out pair.png
"""

import argparse
import csv
import sys


def read_solution_csv(path):
    ts, ys = [], []
    with open(path, newline="") as fh:
        for row in csv.reader(fh):
            if not row or row[0].startswith("#") or row[0] == "t":
                continue
            ts.append(float(row[0]))
            ys.append(float(row[1]))
    return ts, ys


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("csvs", nargs="+", help="solution CSV files")
    ap.add_argument("--out", default="pair.png", help="output image path")
    args = ap.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required for plotting", file=sys.stderr)
        return 1

    fig, ax = plt.subplots(figsize=(7, 4.5))
    for path in args.csvs:
        ts, ys = read_solution_csv(path)
        ax.plot(ts, ys, label=path, linewidth=1.6)
    ax.axhline(0.0, color="gray", linewidth=0.6)
    ax.axvline(0.0, color="gray", linewidth=0.6)
    ax.set_xlabel("t")
    ax.set_ylabel("y")
    ax.legend()
    ax.grid(alpha=0.25)
    fig.tight_layout()
    fig.savefig(args.out, dpi=150)
    print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
