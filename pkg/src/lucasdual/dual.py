"""Mobius dual sequences M^U, M^V as exact rationals.

M^X_n = prod_{d | n} X_d^{mu(n/d)}. M^U is always an integer for
nondegenerate parameters (asserted); M^V is an exact rational, integral for
all odd n. Rationals are fractions.Fraction: always reduced, numerator and
denominator exposed.

predicted_valuation_u implements the closed-form v_p(M^U_n) case table:

  p coprime to (P,Q):
    (a) p | Q: 0
    (b) p | D: v_p(U_p) at n=p, 1 at n=p^k (k>1), else 0
    (c) p coprime to QD, z = z_U(p): v_p(U_z) at n=z,
        v_p(U_{pz}) - v_p(U_z) at n=pz, 1 at n=p^k z (k>1), else 0
  p | (P,Q), a = v_p(P), b = v_p(Q):
    (d) b >= 2a: 0 at n=1, else phi(n)*a + recursion on (P/p^a, Q/p^{2a})
    (e) b < 2a: a at n=2; (phi(n)/2)*b + 1 at n = 2p^k (k>=1);
        floor(phi(n)/2)*b otherwise; except b = 2a-1, p in {2,3}, n = 2p,
        where the value is b + 1 + v_p((P/p^a)^2 - Q/p^b)

The case (d) recursion divides Q by p^{2a}, not by p^{v_p(Q)}: that keeps
alpha/beta (hence nondegeneracy) intact and matches computed valuations
for every b > 2a; the p-free reduction would not.
"""

from __future__ import annotations

from fractions import Fraction

from .arith import divisors, euler_phi, mobius, valuation_and_pfree
from .lucas import LucasParams, entry_point, u_term, v_term
from .reports import Statement, Status, VerificationReport, Witness

ExactRatio = Fraction


def _dual(params: LucasParams, n: int, kind: str) -> Fraction:
    if n < 1:
        raise ValueError("n must be >= 1")
    if not params.nondegenerate:
        raise ValueError("dual sequences need nondegenerate parameters")
    term = u_term if kind == "U" else v_term
    num = 1
    den = 1
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            num *= term(params, d)
        elif mu == -1:
            den *= term(params, d)
    return Fraction(num, den)


def dual_u(params: LucasParams, n: int) -> int:
    """M^U_n, asserted integral."""
    value = _dual(params, n, "U")
    if value.denominator != 1:
        raise ArithmeticError(f"M^U_{n}{params} is not an integer: {value}")
    return value.numerator


def dual_v(params: LucasParams, n: int) -> Fraction:
    """M^V_n as an exact reduced rational (not integral in general)."""
    return _dual(params, n, "V")


def _is_two_times_p_power(n: int, p: int) -> bool:
    if n % 2 != 0:
        return False
    m = n // 2
    if m < p:
        return False
    while m % p == 0:
        m //= p
    return m == 1


def predicted_valuation_u(params: LucasParams, p: int, n: int) -> int:
    """Closed-form v_p(M^U_n); see the module docstring for the case table."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if not params.nondegenerate:
        raise ValueError("degenerate parameters")
    P, Q = params.P, params.Q
    if P % p != 0 or Q % p != 0:
        if Q % p == 0:  # (a)
            return 0
        if params.D % p == 0:  # (b)
            if n == p:
                return valuation_and_pfree(u_term(params, p), p)[0]
            m = n
            while m % p == 0:
                m //= p
            return 1 if m == 1 and n > p else 0
        # (c)
        z = entry_point(params, p).value  # finite: p coprime to Q
        if n == z:
            return valuation_and_pfree(u_term(params, z), p)[0]
        if n == p * z:
            return (
                valuation_and_pfree(u_term(params, p * z), p)[0]
                - valuation_and_pfree(u_term(params, z), p)[0]
            )
        m, r = divmod(n, z)
        if r == 0:
            while m % p == 0:
                m //= p
            if m == 1 and n > p * z:
                return 1
        return 0
    a = valuation_and_pfree(P, p)[0]
    b = valuation_and_pfree(Q, p)[0]
    if b >= 2 * a:  # (d)
        if n == 1:
            return 0
        reduced = LucasParams(P // p**a, Q // p ** (2 * a))
        assert reduced.P % p != 0, "reduction must remove p from P"
        return euler_phi(n) * a + predicted_valuation_u(reduced, p, n)
    # (e)
    if 2 * a == b + 1 and p in (2, 3) and n == 2 * p:
        dP = P // p**a
        dQ = Q // p**b
        return b + 1 + valuation_and_pfree(dP * dP - dQ, p)[0]
    if n == 2:
        return a
    if _is_two_times_p_power(n, p):
        return euler_phi(n) // 2 * b + 1
    return euler_phi(n) // 2 * b


def check_doubling(params: LucasParams, n: int) -> VerificationReport:
    """M^U_{2n} = M^V_n for odd n, M^U_{2n} = M^V_n * M^U_n for even n."""
    left = Fraction(dual_u(params, 2 * n))
    right = dual_v(params, n)
    if n % 2 == 0:
        right *= dual_u(params, n)
    return VerificationReport(
        statement=Statement.DOUBLING,
        instance=(("P", params.P), ("Q", params.Q), ("n", n)),
        status=Status.VERIFIED if left == right else Status.VIOLATED,
        witnesses=(Witness(left, "exact", right),),
        branch="odd" if n % 2 else "even",
    )
