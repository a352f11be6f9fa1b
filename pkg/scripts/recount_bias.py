#!/usr/bin/env python3
"""Recount the bias statistic from an emitted bias CSV.

Reads `n,count_r,count_n,exact` rows and prints #{n <= x : count_n < count_r}
computed from the CSV contents alone, without importing the library. Serves
as an independent cross-check of the library's own count.

Usage: recount_bias.py CSV [x]

Exits 1 if any row inside the range is not exact or the range has gaps.
"""

import csv
import sys


def main() -> int:
    if len(sys.argv) not in (2, 3):
        print(__doc__.strip(), file=sys.stderr)
        return 2
    path = sys.argv[1]
    limit = int(sys.argv[2]) if len(sys.argv) == 3 else None
    count = 0
    seen: set[int] = set()
    with open(path, newline="", encoding="utf-8") as handle:
        for row in csv.DictReader(handle):
            n = int(row["n"])
            if limit is not None and n > limit:
                continue
            if row["exact"] != "true":
                print(f"row {n} is not exact", file=sys.stderr)
                return 1
            seen.add(n)
            if int(row["count_n"]) < int(row["count_r"]):
                count += 1
    if not seen or seen != set(range(1, max(seen) + 1)):
        print("rows do not cover 1..x without gaps", file=sys.stderr)
        return 1
    print(count)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
