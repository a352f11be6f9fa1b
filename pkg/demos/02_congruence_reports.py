#!/usr/bin/env python3
"""The congruence verifiers and how to read their reports.

Each verifier checks one family of p-adic statements about dual values
or term ratios and emits tab-separated report lines; this script runs a
handful of instructive instances.
"""

from lucasdual import (
    LucasParams,
    Status,
    verify_cor_lift,
    verify_cor_modn,
    verify_cor_mult,
    verify_thm_mu,
    verify_thm_mv,
)

fib = LucasParams(1, -1)

print("# dual values at ramified p pin the prime itself: M^U_{5^k} ~ 5")
for report in verify_thm_mu(fib, 5, 1, kmax=3):
    print(report.to_line())

print("\n# at the entry point the symbol shows up: z_U(2) = 3 for (1,-1)")
for report in verify_thm_mu(fib, 2, 3, kmax=2):
    print(report.to_line())

print("\n# second-kind duals can fail p-integrality entirely (branch 'never')")
for report in verify_thm_mv(fib, 3, 4, kmax=2):
    print(report.to_line(), "|", report.branch)

print("\n# term ratios U_{pn}/U_n lift through prime powers")
for report in verify_cor_lift(fib, 5, 1, kmax=3):
    print(report.to_line())

weak = LucasParams(2, -2)  # 2 | (P,Q) with 2 v_2(P) > v_2(Q): weak 2-adic bound
print("\n# p | (P,Q) only bounds the valuation; (2,-2) attains the weak bound")
for report in verify_cor_lift(weak, 2, 1, kmax=4):
    print(report.to_line(), "|", report.branch)

print("\n# composite-modulus and sign statements")
print(verify_cor_modn(fib, 12).to_line())
print(verify_cor_mult(fib, 24).to_line())

# UNCONSTRAINED is an honest outcome: the statement excludes the instance.
report = verify_cor_mult(fib, 12)
assert report.status is Status.UNCONSTRAINED
print(report.to_line())
