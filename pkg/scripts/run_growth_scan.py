#!/usr/bin/env python3
"""Scan growth exponents across the built-in families.

Example:
    python scripts/run_growth_scan.py --kinds squares,geometric --sizes 32,64,128
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from convexlab.families import ALL_KINDS, growth_scan, scan_to_tsv
from convexlab.functions import fn_by_name


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--kinds", default="AP,squares,geometric,random-convex")
    parser.add_argument("--sizes", default="16,32,64,128")
    parser.add_argument("--fn", default="square")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    sizes = [int(s) for s in args.sizes.split(",")]
    fn = fn_by_name(args.fn)
    for kind in args.kinds.split(","):
        if kind not in ALL_KINDS:
            parser.error(f"unknown kind {kind!r}")
        result = growth_scan(kind, fn, sizes, seed=args.seed)
        sys.stdout.write(scan_to_tsv(result, digits=12))
        sys.stdout.write("\n")
    return 0


if __name__ == "__main__":
    sys.exit(main())
