#!/usr/bin/env python3
"""Regenerate the committed regression fixtures in fixtures/.

Run after an intentional change to audited quantities, then review the diff:
the values are deterministic, so any change is a real behavioural change.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from convexlab.corpus import DEFAULT_FIXTURES_DIR, write_fixtures


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--directory", default=str(DEFAULT_FIXTURES_DIR))
    args = parser.parse_args()
    for path in write_fixtures(args.directory):
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
