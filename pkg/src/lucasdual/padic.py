"""p-adic helpers.

Two layers:

* exact-rational layer: valuations and congruences on Fraction values,
  where x = a (mod p^k) means v_p(x - a) >= k (denominators are never
  cleared);
* modular layer: valuation/unit decomposition x = p^v * u computed from
  residues alone, so theorem instances at indices in the millions never
  materialize the full integers. Residues are computed modulo p^G with G
  grown until the valuation is resolved and the unit is known to the
  requested precision, which makes the decomposition exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .arith import mobius, divisors, valuation_and_pfree
from .lucas import LucasParams, term_mod

_GROWTH_CAP = 1_000_000


class ZeroTermError(ValueError):
    """A vanishing sequence term (degenerate parameters) blocks the value."""


def fraction_valuation(x: Fraction | int, p: int) -> int:
    """v_p(x) for a nonzero rational."""
    x = Fraction(x)
    if x == 0:
        raise ValueError("valuation of 0 is undefined")
    return valuation_and_pfree(x.numerator, p)[0] - valuation_and_pfree(x.denominator, p)[0]


def is_p_integral(x: Fraction | int, p: int) -> bool:
    """x in Z_(p): nonnegative p-adic valuation (0 counts as integral)."""
    x = Fraction(x)
    return x == 0 or fraction_valuation(x, p) >= 0


def padic_congruent(x: Fraction | int, a: Fraction | int, p: int, k: int) -> bool:
    """x = a (mod p^k) in the p-adic sense: v_p(x - a) >= k."""
    diff = Fraction(x) - Fraction(a)
    return diff == 0 or fraction_valuation(diff, p) >= k


def rational_mod(x: Fraction | int, m: int) -> int:
    """The residue of x mod m when the reduced denominator is a unit mod m."""
    x = Fraction(x)
    if gcd(x.denominator, m) != 1:
        raise ValueError(f"{x} has no residue mod {m}")
    return x.numerator * pow(x.denominator, -1, m) % m


@dataclass(frozen=True)
class PadicValue:
    """x = p^val * u with u = unit (mod p^prec), p not dividing unit."""

    p: int
    val: int
    unit: int
    prec: int

    def residue(self, k: int) -> int:
        """x mod p^k as an integer in [0, p^k). Requires val >= 0."""
        if self.val < 0:
            raise ValueError("negative valuation: value is not p-integral")
        if self.val >= k:
            return 0
        if self.prec < k - self.val:
            raise ValueError("insufficient unit precision")
        return self.p**self.val * (self.unit % self.p ** (k - self.val)) % self.p**k

    def congruent(self, a: int, k: int) -> bool:
        """Whether x = a (mod p^k); False when x is not p-integral."""
        if self.val < 0:
            return False
        return self.residue(k) == a % self.p**k


def strip_valuation(
    residue_fn: Callable[[int], int], p: int, prec: int, initial: int | None = None
) -> tuple[int, int]:
    """(v_p(x), unit mod p^prec) for the nonzero value behind residue_fn,
    where residue_fn(m) must return x mod m. The working exponent G grows
    until x mod p^G is nonzero and the unit precision is reached."""
    G = max(initial or 0, prec + 10)
    while True:
        if G > _GROWTH_CAP:
            raise RuntimeError("valuation did not resolve below the growth cap")
        r = residue_fn(p**G)
        if r == 0:
            G *= 2
            continue
        v, pfree = valuation_and_pfree(r, p)
        if G - v < prec:
            G = v + prec + 10
            continue
        return v, pfree % p**prec


def _term_guess(params: LucasParams, n: int, p: int, prec: int) -> int:
    # Heuristic starting exponent; only matters for speed, not correctness.
    if params.P % p == 0 and params.Q % p == 0:
        a = valuation_and_pfree(params.P, p)[0]
        b = valuation_and_pfree(params.Q, p)[0]
        # Crude upper bound on v_p(U_n) under p | (P,Q).
        return prec + 10 + (n // 2 + 2) * (a + b)
    return prec + 12


def term_padic(params: LucasParams, kind: str, n: int, p: int, prec: int) -> PadicValue:
    """U_n or V_n as a PadicValue. Raises ZeroTermError if the term is 0."""
    if n < 1 and kind == "U":
        raise ValueError("n must be >= 1 for a p-adic Lucas term")
    if (kind == "U" and params.u_is_zero(n)) or (kind == "V" and params.v_is_zero(n)):
        raise ZeroTermError(f"{kind}_{n}{params} = 0")
    v, unit = strip_valuation(
        lambda m: term_mod(params, n, m, kind),
        p,
        prec,
        initial=_term_guess(params, n, p, prec),
    )
    return PadicValue(p, v, unit, prec)


def dual_padic(params: LucasParams, kind: str, n: int, p: int, prec: int) -> PadicValue:
    """M^U_n or M^V_n as a PadicValue, composed over the Mobius divisors.

    Works for arbitrarily large n because only residues of the U_d or V_d
    are ever computed.
    """
    modulus = p**prec
    val = 0
    unit = 1 % modulus
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 0:
            continue
        t = term_padic(params, kind, d, p, prec)
        val += mu * t.val
        unit = unit * (t.unit if mu == 1 else pow(t.unit, -1, modulus)) % modulus
    return PadicValue(p, val, unit, prec)


def ratio_padic(
    params: LucasParams, kind: str, num_index: int, den_index: int, p: int, prec: int
) -> PadicValue:
    """The term ratio X_{num_index}/X_{den_index} as a PadicValue."""
    modulus = p**prec
    num = term_padic(params, kind, num_index, p, prec)
    den = term_padic(params, kind, den_index, p, prec)
    unit = num.unit * pow(den.unit, -1, modulus) % modulus
    return PadicValue(p, num.val - den.val, unit, prec)
