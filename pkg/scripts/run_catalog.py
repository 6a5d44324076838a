"""Emit the homogeneous-family catalog over a range of dimensions.

Example:
    python scripts/run_catalog.py --min-n 2 --max-n 5 --out catalog.json
"""

from __future__ import annotations

import argparse
import json
import sys

from chgeo.cli import SCHEMA, _entry_doc
from chgeo.families import catalog


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--min-n", type=int, default=2)
    parser.add_argument("--max-n", type=int, default=5)
    parser.add_argument("--r", type=float, default=1.0, help="representative radius")
    parser.add_argument("--out", default=None, help="output path (default stdout)")
    args = parser.parse_args()

    documents = []
    for n in range(args.min_n, args.max_n + 1):
        entries, notes = catalog(n, r=args.r)
        documents.append(
            {
                "n": n,
                "entries": [_entry_doc(e) for e in entries],
                "notes": notes,
            }
        )
    payload = json.dumps({"schema": SCHEMA, "catalogs": documents}, indent=2, sort_keys=True)
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(payload + "\n")
        print(f"wrote {args.out}", file=sys.stderr)
    else:
        print(payload)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
