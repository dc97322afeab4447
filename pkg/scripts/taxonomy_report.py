#!/usr/bin/env python3
"""Dark-mode taxonomy of the network-coupled four-mode system.

Enumerates the 14 coupling configurations (closed-channel subsets of
{J, eta, Gs1, Gs2} of sizes 1-3), evaluates the analytical dark-mode
condition for each, and solves for the final phonon numbers at the
default decay rate.  Prints a summary table and writes the full CSV.

Usage: python scripts/taxonomy_report.py [--kappa 0.05:1.0:100]
       [--outdir results]
"""

import argparse
from pathlib import Path

import numpy as np

from omcool.presets import network4_config
from omcool.results import write_csv
from omcool.sweep import run_taxonomy


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--kappa", default=None, metavar="MIN:MAX:POINTS",
                        help="optional decay-rate sweep per configuration")
    parser.add_argument("--outdir", default="results")
    args = parser.parse_args()

    base = network4_config()
    kappas = None
    if args.kappa:
        lo, hi, n = args.kappa.split(":")
        kappas = np.linspace(float(lo), float(hi), int(n))

    summary = run_taxonomy(base)
    print(f"{'closed':<14} {'dark':<6} {'n_f_1':>10} {'n_f_2':>10}")
    for row in summary.rows:
        label, _, dark, _, _, _, n1, n2 = row
        print(f"{label:<14} {str(dark):<6} {n1:>10.4f} {n2:>10.4f}")
    dark_count = sum(1 for row in summary.rows if row[2])
    print(f"\n{dark_count} dark / {len(summary.rows) - dark_count} broken")

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    table = run_taxonomy(base, kappas) if kappas is not None else summary
    path = outdir / "taxonomy.csv"
    write_csv(table, path)
    print(f"wrote {path}")


if __name__ == "__main__":
    main()
