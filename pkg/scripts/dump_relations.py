#!/usr/bin/env python3
"""Dump the criterion-relation map and spot-check a few queries.

Usage: python scripts/dump_relations.py [--output relations.json]
"""

from __future__ import annotations

import argparse
import json

from limitlab.canonical import relations_map

SPOT_CHECKS = [
    ("Psd-Mon-Bc", "G-Mon-Bc"),
    ("Sd-Mon-Ex", "Psd-Mon-Ex"),
    ("tau(Mon)-G-Ex", "tau(SMon)-G-Ex"),
    ("Sd-SMon-Bc", "G-SMon-Bc"),
    ("R-Psd-Mon-Ex", "Psd-Mon-Ex"),
]


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--output", default=None)
    args = parser.parse_args()

    rel = relations_map()
    dump = json.dumps(rel.to_json(), sort_keys=True, indent=2)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(dump + "\n")
        print(f"wrote {args.output}")
    else:
        print(dump)

    print(f"\nquotient DAG: {rel.is_quotient_dag()}")
    for lower, upper in SPOT_CHECKS:
        print(f"{lower:18s} vs {upper:18s} -> {rel.query(lower, upper)}")


if __name__ == "__main__":
    main()
