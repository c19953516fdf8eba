#!/usr/bin/env python3
"""Analyze every .branch file in branches/ and print a one-line summary each."""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from branchinv.berger import verdict
from branchinv.cli import read_branch_file
from branchinv.branch import analyze
from branchinv.differentials import compute


def main() -> int:
    root = pathlib.Path(__file__).resolve().parents[1] / "branches"
    rows = []
    for path in sorted(root.glob("*.branch")):
        spec = read_branch_file(str(path))
        ring = analyze(spec)
        diff = compute(ring)
        vd = verdict(diff)
        rows.append((
            spec.name or path.stem, ring.embdim_n, ring.order_s, ring.delta,
            ring.conductor_c, diff.h_omega, diff.v_Dinv,
            vd.status + (f"({vd.rule})" if vd.rule else ""),
        ))
    header = ("branch", "n", "s", "delta", "c", "h", "v(D^-1)", "verdict")
    widths = [max(len(str(r[i])) for r in rows + [header]) for i in range(len(header))]
    for row in [header] + rows:
        print("  ".join(str(x).ljust(w) for x, w in zip(row, widths)))
    return 0


if __name__ == "__main__":
    sys.exit(main())
