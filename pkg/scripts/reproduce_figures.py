#!/usr/bin/env python3
"""Regenerate the standard artifacts for every bundled system config.

For each config in configs/ this emits, under out/ (or --outdir):
  <label>.svg          graph of f (4096-point adaptive grid + extremum refinement)
  <label>.csv          the same samples as x,f,error_bound rows
  <label>.json         full analysis report
  <label>_cantor.svg   maximum-set construction bands (only in the closed-form regime)

Everything is deterministic: running twice produces byte-identical files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from qsaffine.cli import EXIT_CONDITIONS, main

CONFIGS = (
    "cantor_max",
    "level_sets",
    "singular_s3",
    "rough_s3",
    "deep_min_s3",
    "identity",
)


def run(argv: list[str]) -> int:
    rc = main(argv)
    if rc not in (0, EXIT_CONDITIONS):
        raise SystemExit(f"command failed with exit code {rc}: {' '.join(argv)}")
    return rc


def build(outdir: Path, points: int, steps: int) -> None:
    root = Path(__file__).resolve().parent.parent
    outdir.mkdir(parents=True, exist_ok=True)
    for name in CONFIGS:
        config = str(root / "configs" / f"{name}.cfg")
        run(["sample", "--config", config, "--points", str(points),
             "--format", "svg", "--out", str(outdir / f"{name}.svg")])
        run(["sample", "--config", config, "--points", str(points),
             "--format", "csv", "--out", str(outdir / f"{name}.csv")])
        run(["analyze", "--config", config, "--format", "json",
             "--out", str(outdir / f"{name}.json")])
        rc = run(["cantor", "--config", config, "--steps", str(steps),
                  "--format", "svg", "--out", str(outdir / f"{name}_cantor.svg")])
        if rc == EXIT_CONDITIONS:
            print(f"{name}: no closed-form regime, skipped construction bands")
        print(f"{name}: done")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--outdir", default="out", type=Path)
    ap.add_argument("--points", default=4096, type=int)
    ap.add_argument("--steps", default=5, type=int)
    ns = ap.parse_args()
    build(ns.outdir, ns.points, ns.steps)
    sys.exit(0)
