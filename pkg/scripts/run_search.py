#!/usr/bin/env python3
"""Anneal toward sets minimizing a normalized growth objective.

Example:
    python scripts/run_search.py --objective diffProdRatio --size 10 \
        --iterations 400 --restarts 4 --seed 2
"""
import argparse
import sys
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from convexlab.families import FamilySpec
from convexlab.search import OBJECTIVES, SearchConfig, extremal_search
from convexlab.sets import format_scalar


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--objective", choices=OBJECTIVES, default="diffProdRatio")
    parser.add_argument("--size", type=int, default=8)
    parser.add_argument("--iterations", type=int, default=300)
    parser.add_argument("--restarts", type=int, default=2)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--initial", default="geometric",
                        help="initial family kind (geometric, AP, squares, random-convex)")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()

    cfg = SearchConfig(
        objective=args.objective,
        set_size=args.size,
        iterations=args.iterations,
        seed=args.seed,
        restarts=args.restarts,
        initial=FamilySpec(args.initial, args.size, ratio=Fraction(2)),
    )
    outcome = extremal_search(cfg, workers=args.workers)
    accepted = sum(1 for t in outcome.traces if t["accepted"])
    print(f"objective {args.objective}, n={args.size}: best = {outcome.best_objective_decimal(12)}")
    print(f"accepted {accepted}/{len(outcome.traces)} moves across {args.restarts} restarts")
    print("best set:")
    for q in outcome.best_set:
        print(f"  {format_scalar(q)}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
