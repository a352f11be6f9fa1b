#!/usr/bin/env python3
"""Terms, duals, and the identities connecting them.

Walks the Fibonacci pair (1,-1) and the Mersenne pair (3,2): closed
forms, the Mobius round trip U_n = prod M^U_d, the doubling identity,
and the valuation formula against honest factoring.
"""

from fractions import Fraction

from lucasdual import (
    LucasParams,
    check_doubling,
    divisors,
    dual_u,
    dual_v,
    predicted_valuation_u,
    u_term,
    v_term,
    valuation,
)

fib = LucasParams(1, -1)
mersenne = LucasParams(3, 2)

print("Fibonacci U_1..U_12: ", [u_term(fib, n) for n in range(1, 13)])
print("Lucas     V_1..V_12: ", [v_term(fib, n) for n in range(1, 13)])
print("Mersenne  U_n = 2^n - 1:", [u_term(mersenne, n) for n in range(1, 8)])
assert all(u_term(mersenne, n) == 2**n - 1 for n in range(1, 60))

print("\nduals of F_12:", {d: dual_u(fib, d) for d in divisors(12)})
for n in range(1, 200):
    product = 1
    for d in divisors(n):
        product *= dual_u(fib, d)
    assert product == u_term(fib, n)
print("round trip prod_{d|n} M^U_d = F_n holds for n < 200")

print("\nM^V_12 =", dual_v(fib, 12), "(duals of V may be proper fractions)")
assert dual_v(fib, 12) == Fraction(23, 3)

# M^U_{2n} factors through M^V_n; the report carries the checked identity.
print("\ndoubling:", check_doubling(fib, 24).to_line())

# The dual of 2^n - 1 is the primitive part: new prime content only.
print("\nMersenne primitive parts:")
for n in (6, 11, 12, 20, 21):
    m = dual_u(mersenne, n)
    print(f"  M^U_{n} = {m}")
assert dual_u(mersenne, 11) == 2047  # = 23 * 89, all of it new at n = 11

# Valuations of duals follow a closed form; compare against factoring.
for p in (2, 3, 5, 7):
    for n in range(1, 100):
        assert predicted_valuation_u(fib, p, n) == valuation(abs(dual_u(fib, n)), p)
print("\nvaluation formula matches factored duals for p <= 7, n < 100")
