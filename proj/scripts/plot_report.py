#!/usr/bin/env python3
"""Plot a pipeline run's per-frame squared errors and staged MSE bars.

Usage: plot_report.py <run-output-dir> [--out report.png]

Reads errors_per_frame.csv and report.csv as written by `trackfuse
pipeline` and renders one figure: per-frame error curves per stage on the
left, the stage MSE summary on the right.
"""
import argparse
import csv
import sys
from collections import defaultdict
from pathlib import Path


def read_per_frame(path):
    series = defaultdict(list)
    with open(path, newline="") as f:
        for row in csv.DictReader(f):
            series[row["stage"]].append((int(row["frame"]), float(row["sq_error"])))
    return {stage: sorted(points) for stage, points in series.items()}


def read_report(path):
    with open(path, newline="") as f:
        return [(row["stage"], float(row["mse"])) for row in csv.DictReader(f)]


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("run_dir", type=Path, help="pipeline output directory")
    parser.add_argument("--out", type=Path, default=None, help="output image path")
    args = parser.parse_args()

    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError:
        print("matplotlib is required: pip install matplotlib", file=sys.stderr)
        return 1

    per_frame = read_per_frame(args.run_dir / "errors_per_frame.csv")
    report = read_report(args.run_dir / "report.csv")
    if not report:
        print("report.csv has no stages (missing ground truth?)", file=sys.stderr)
        return 1

    fig, (left, right) = plt.subplots(
        1, 2, figsize=(12, 4.5), gridspec_kw={"width_ratios": [2, 1]}
    )
    for stage, points in sorted(per_frame.items()):
        frames = [f for f, _ in points]
        errors = [e for _, e in points]
        left.plot(frames, errors, label=stage, linewidth=1)
    left.set_xlabel("frame")
    left.set_ylabel("squared error")
    left.set_yscale("log")
    left.legend(fontsize=8)
    left.set_title("per-frame squared error")

    stages = [s for s, _ in report]
    values = [v for _, v in report]
    right.bar(range(len(stages)), values)
    right.set_xticks(range(len(stages)))
    right.set_xticklabels(stages, rotation=30, ha="right", fontsize=8)
    right.set_ylabel("MSE")
    right.set_title("staged MSE")

    fig.tight_layout()
    out = args.out or args.run_dir / "report.png"
    fig.savefig(out, dpi=120)
    print(f"wrote {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
