#!/usr/bin/env python3
"""Entry-point census and the symbol bias it exhibits.

Every prime p (not dividing Q) eventually divides some F_n; the least
such n is its entry point z(p), and z(p) divides p - (5/p). Splitting
primes by that Kronecker symbol and counting cumulatively reveals a
persistent early bias toward the -1 side that later flips.
"""

import subprocess
import sys
import tempfile
from pathlib import Path

from lucasdual import (
    LucasParams,
    bias_table,
    bias_term,
    census_build,
    characteristic_factors,
    export_bias_csv,
    kronecker,
)

fib = LucasParams(1, -1)

census = census_build(fib, 1000)
finite = census.finite_records()
print(f"census to 1000: {len(finite)} primes enter, first:",
      ", ".join(f"z({p})={z}" for p, z in finite[:6]))
for p, z in finite:
    if p not in (2, 5):  # 2 | D or p | D behave by their own rules
        assert (p - kronecker(fib.D, p)) % z == 0
print("z(p) | p - (5/p) checked for every odd unramified prime")

print("\ncharacteristic factors (entry point exactly n):")
for n in (10, 25, 216):
    print(f"  n={n}:", sorted(q for q, _ in characteristic_factors(fib, n)))

rows = bias_table(fib, 36)
print("\n n  count_r  count_n")
for row in rows[-8:]:
    marker = "<" if row.count_r < row.count_n else (">" if row.count_r > row.count_n else "=")
    print(f"{row.n:3d}  {row.count_r:7d}  {row.count_n:7d}  {marker}")
print("indices with count_r > count_n so far:", bias_term(rows, 36))

# The CSV is the plotting/recount interface; an independent script agrees.
recount = Path(__file__).resolve().parents[1] / "scripts" / "recount_bias.py"
with tempfile.TemporaryDirectory() as tmp:
    csv_path = Path(tmp) / "bias36.csv"
    export_bias_csv(rows, csv_path)
    out = subprocess.run(
        [sys.executable, str(recount), str(csv_path)],
        capture_output=True, text=True, check=True,
    )
    assert int(out.stdout) == bias_term(rows, 36)
print("independent recount from the CSV agrees")
