"""Cyclotomic polynomials over Z, their evaluation identities, and the
rational congruence check on values Phi_{p^k n}(z).

Coefficients come from the Mobius product Phi_n = prod (X^d - 1)^{mu(n/d)}
computed with exact polynomial division. Values at huge indices p^k * n are
never expanded coefficient-wise; the tower identity

    Phi_{p^k n}(X) = Phi_n(X^{p^k}) / Phi_n(X^{p^{k-1}})

reduces them to two small evaluations, performed modulo p^G with valuation
stripping (see padic.strip_valuation), which is exact for the congruences
being checked. For small indices the quotient route is cross-checked against
direct coefficient evaluation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .arith import divisors, euler_phi, factorize, mobius
from .lucas import LucasParams
from .padic import strip_valuation
from .reports import Statement, Status, VerificationReport, Witness


@dataclass(frozen=True)
class CyclotomicPoly:
    n: int
    coefficients: tuple[int, ...]  # constant term first, length phi(n)+1

    def __post_init__(self) -> None:
        if len(self.coefficients) != euler_phi(self.n) + 1 or self.coefficients[-1] != 1:
            raise ValueError("coefficient list must have degree phi(n), monic")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def eval_at(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coefficients):
            acc = (acc * x + c) % m
        return acc


def _mul_binomial(coeffs: list[int], d: int) -> list[int]:
    """Multiply by (X^d - 1)."""
    out = [0] * (len(coeffs) + d)
    for i, c in enumerate(coeffs):
        out[i + d] += c
        out[i] -= c
    return out


def _div_binomial(coeffs: list[int], d: int) -> list[int]:
    """Exact division by (X^d - 1); raises if the division leaves a remainder."""
    m = len(coeffs) - 1
    out = [0] * (m - d + 1)
    for i in range(m, d - 1, -1):
        out[i - d] = coeffs[i] + (out[i] if i <= m - d else 0)
    for i in range(d):
        expected = -out[i] if i <= m - d else 0
        if coeffs[i] != expected:
            raise ArithmeticError("division by X^d - 1 is not exact")
    return out


@lru_cache(maxsize=None)
def _coeffs(n: int) -> tuple[int, ...]:
    if n == 1:
        return (-1, 1)
    poly = [1]
    denominators = []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            poly = _mul_binomial(poly, d)
        elif mu == -1:
            denominators.append(d)
    for d in denominators:
        poly = _div_binomial(poly, d)
    return tuple(poly)


def cyclotomic_coeffs(n: int) -> CyclotomicPoly:
    """The n-th cyclotomic polynomial, exact integer coefficients."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return CyclotomicPoly(n, _coeffs(n))


def homogeneous_eval(params: LucasParams, n: int) -> int:
    """The homogenized cyclotomic value beta^phi(n) * Phi_n(alpha/beta) in
    pure integer arithmetic, for n > 1.

    Pairing the palindromic coefficients c_i = c_{phi-i} turns the sum
    sum c_i alpha^i beta^{phi-i} into sum_{i<phi/2} c_i Q^i V_{phi-2i}
    plus, for even phi, the middle term c_{phi/2} Q^{phi/2}.
    """
    if n <= 1:
        raise ValueError("homogeneous evaluation needs n > 1")
    if not params.nondegenerate:
        raise ValueError("degenerate parameters")
    c = _coeffs(n)
    phi = len(c) - 1
    P, Q = params.P, params.Q
    # V_0..V_phi by the plain recurrence; indices used are phi-2i.
    vs = [2, P]
    for _ in range(phi - 1):
        vs.append(P * vs[-1] - Q * vs[-2])
    total = 0
    qpow = 1
    # i < phi - i pairs into Q^i * V_{phi-2i}; phi odd only happens at n = 2.
    for i in range((phi + 1) // 2):
        total += c[i] * qpow * vs[phi - 2 * i]
        qpow *= Q
    if phi % 2 == 0:
        total += c[phi // 2] * qpow
    return total


def order_mod(z: int, p: int) -> int:
    """Multiplicative order of z mod p."""
    if z % p == 0:
        raise ValueError("z must be a unit mod p")
    order = p - 1
    if p > 2:
        for q in factorize(p - 1).primes():
            while order % q == 0 and pow(z, order // q, p) == 1:
                order //= q
    return order


def _quotient_eval_padic(
    n: int, z: int, p: int, k: int, prec: int
) -> tuple[int, int]:
    """(v_p, unit mod p^prec) of Phi_{p^k n}(z) via the tower identity."""
    coeffs = cyclotomic_coeffs(n)
    num_v, num_u = strip_valuation(
        lambda m: coeffs.eval_mod(pow(z, p**k, m), m), p, prec
    )
    den_v, den_u = strip_valuation(
        lambda m: coeffs.eval_mod(pow(z, p ** (k - 1), m), m), p, prec
    )
    modulus = p**prec
    return num_v - den_v, num_u * pow(den_u, -1, modulus) % modulus


def _unit_point_value(m: int, x: int) -> int:
    """Phi_m(x) for x in {1, -1}: zero at the literal root, the base prime
    at prime powers (respectively twice an odd prime power), else 1."""
    if x == 1:
        if m == 1:
            return 0
        primes = factorize(m).primes()
        return primes[0] if len(primes) == 1 else 1
    if m == 1:
        return -2
    if m == 2:
        return 0
    if m % 2 == 1 or m % 4 == 0:
        return 1
    primes = factorize(m // 2).primes()
    return primes[0] if len(primes) == 1 else 1


def verify_ratcon(z: int, p: int, n: int, kmax: int) -> VerificationReport:
    """Check the congruences satisfied by Phi_{p^k n}(z) for k = 1..kmax:
    value 1 when n differs from the order of z mod p, value p when they
    agree, each to its stated p-power modulus (strengthened for p = 2 or
    for the order branch)."""
    if gcd(z, p) != 1 or gcd(n, p) != 1:
        raise ValueError("z and n must be coprime to p")
    if n < 1 or kmax < 1:
        raise ValueError("n and kmax must be >= 1")
    ord_z = order_mod(z, p)
    witnesses = []
    ok = True
    for k in range(1, kmax + 1):
        if n == ord_z:
            expected = p
            mod_exp = k if (p == 2 and k == 1) else k + 1
        else:
            expected = 1
            mod_exp = k + 1 if (p == 2 and k > 1) else k
        modulus = p**mod_exp
        if z in (1, -1):
            # The tower quotient hits 0/0 at literal roots of unity; the
            # classical closed form replaces it there.
            residue = _unit_point_value(p**k * n, z) % modulus
        else:
            val, unit = _quotient_eval_padic(n, z, p, k, mod_exp)
            residue = 0 if val >= mod_exp else p**val * unit % modulus
        if p**k * n <= 1000:
            # Small enough to evaluate from the coefficients directly.
            direct = cyclotomic_coeffs(p**k * n).eval_at(z) % modulus
            if direct != residue:
                raise AssertionError("independent cyclotomic evaluations disagree")
        witnesses.append(Witness(residue, modulus, expected % modulus))
        ok = ok and residue == expected % modulus
    return VerificationReport(
        statement=Statement.RATCON,
        instance=(("z", z), ("p", p), ("n", n), ("kmax", kmax)),
        status=Status.VERIFIED if ok else Status.VIOLATED,
        witnesses=tuple(witnesses),
        branch="order" if n == ord_z else "generic",
    )
