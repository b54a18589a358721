#!/usr/bin/env python3
"""Run the acceptance criteria and print one line per criterion.

Exit status is 0 when all pass, 2 otherwise.  ``--json`` writes the details.
"""

import argparse
import json
import sys

from relhom.acceptance import run_all


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--json", metavar="OUT")
    args = ap.parse_args()
    results = run_all(args.seed, echo=print)
    passed = sum(r.passed for r in results)
    print(f"{passed}/{len(results)} criteria passed")
    if args.json:
        body = [{"id": r.cid, "title": r.title, "passed": r.passed, "checked": r.checked,
                 "seconds": round(r.seconds, 3), "detail": r.detail} for r in results]
        with open(args.json, "w") as fh:
            json.dump(body, fh, indent=2, default=str)
    return 0 if passed == len(results) else 2


if __name__ == "__main__":
    sys.exit(main())
