"""Lucas sequences U(P,Q), V(P,Q): exact and modular terms, entry points.

The roots alpha, beta of X^2 - PX + Q are never materialized; every identity
is restated over the integers. Fast doubling works on the pair (U_k, U_{k+1})
with

    U_{2k}   = U_k * (2*U_{k+1} - P*U_k)
    U_{2k+1} = U_{k+1}^2 - Q*U_k^2
    V_k      = 2*U_{k+1} - P*U_k

which avoids halving steps entirely, so the same code runs exactly and
modulo any m >= 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import divisors, kronecker


@dataclass(frozen=True)
class LucasParams:
    """The parameter pair (P,Q) with discriminant D = P^2 - 4Q.

    regular means gcd(P,Q) = 1. nondegenerate means alpha/beta is not a
    root of unity; with D != 0 that is the integer condition
    NOT (Q | P^2 and P^2/Q in {0,1,2,3}). Degenerate parameters are
    constructible (term arithmetic stays valid) but dual-sequence
    operations refuse them.
    """

    P: int
    Q: int

    def __post_init__(self) -> None:
        if self.P == 0 or self.Q == 0:
            raise ValueError("P and Q must be nonzero")
        if self.D == 0:
            raise ValueError("discriminant P^2 - 4Q must be nonzero")

    @property
    def D(self) -> int:
        return self.P * self.P - 4 * self.Q

    @property
    def regular(self) -> bool:
        return gcd(self.P, self.Q) == 1

    @property
    def nondegenerate(self) -> bool:
        return self.degenerate_order is None

    @property
    def degenerate_order(self) -> int | None:
        """Order of alpha/beta as a root of unity, or None if nondegenerate.

        P^2/Q = zeta + 1/zeta + 2 maps the possible orders 2,3,4,6 to
        P^2/Q = 0,1,2,3 (order 1 would force D = 0).
        """
        ratio, rem = divmod(self.P * self.P, self.Q)
        if rem != 0:
            return None
        return {0: 2, 1: 3, 2: 4, 3: 6}.get(ratio)

    def u_is_zero(self, n: int) -> bool:
        """Whether U_n = 0 (only possible for degenerate parameters, n > 0)."""
        if n == 0:
            return True
        r = self.degenerate_order
        return r is not None and n % r == 0

    def v_is_zero(self, n: int) -> bool:
        """Whether V_n = 0: needs alpha/beta of even order r with n = r/2 mod r."""
        r = self.degenerate_order
        return r is not None and r % 2 == 0 and n % r == r // 2

    def __str__(self) -> str:
        return f"({self.P},{self.Q})"


def _u_pair(params: LucasParams, n: int) -> tuple[int, int]:
    """(U_n, U_{n+1}) by binary fast doubling, exact."""
    P, Q = params.P, params.Q
    a, b = 0, 1  # (U_0, U_1)
    for bit in bin(n)[2:]:
        a, b = a * (2 * b - P * a), b * b - Q * a * a
        if bit == "1":
            a, b = b, P * b - Q * a
    return a, b


def _u_pair_mod(params: LucasParams, n: int, m: int) -> tuple[int, int]:
    """(U_n, U_{n+1}) mod m by the same ladder."""
    P, Q = params.P % m, params.Q % m
    a, b = 0, 1 % m
    for bit in bin(n)[2:]:
        a, b = a * (2 * b - P * a) % m, (b * b - Q * a * a) % m
        if bit == "1":
            a, b = b, (P * b - Q * a) % m
    return a, b


def u_term(params: LucasParams, n: int) -> int:
    """Exact U_n. Agrees with the recurrence U_{n+1} = P*U_n - Q*U_{n-1}."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return _u_pair(params, n)[0]


def v_term(params: LucasParams, n: int) -> int:
    """Exact V_n (V_0 = 2, V_1 = P, same recurrence)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    a, b = _u_pair(params, n)
    return 2 * b - params.P * a


def term_mod(params: LucasParams, n: int, m: int, kind: str = "U") -> int:
    """U_n mod m or V_n mod m in O(log n) modular steps."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if kind not in ("U", "V"):
        raise ValueError("kind must be 'U' or 'V'")
    a, b = _u_pair_mod(params, n, m)
    if kind == "U":
        return a
    return (2 * b - params.P * a) % m


class _Infinite:
    """Sentinel class for an infinite entry point."""

    _instance = None

    def __new__(cls) -> "_Infinite":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITE"


INFINITE = _Infinite()


@dataclass(frozen=True)
class EntryPoint:
    """z_U(p): least n >= 1 with p | U_n, or INFINITE (p | Q, p coprime to P)."""

    value: int | _Infinite

    def __post_init__(self) -> None:
        if self.value is not INFINITE and (
            not isinstance(self.value, int) or self.value < 1
        ):
            raise ValueError("entry point must be a positive integer or INFINITE")

    @property
    def finite(self) -> bool:
        return self.value is not INFINITE

    def __str__(self) -> str:
        return "inf" if not self.finite else str(self.value)


class NotFound:
    """Oracle outcome: no hit within the scanned range (weaker than INFINITE)."""

    _instance = None

    def __new__(cls) -> "NotFound":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_FOUND"


NOT_FOUND = NotFound()


def entry_point(params: LucasParams, p: int) -> EntryPoint:
    """z_U(p) by case analysis on (p | P, p | Q, p | D), with the generic case
    searching the divisors of p - (D/p) ascending by term_mod."""
    P, Q, D = params.P, params.Q, params.D
    if p % 2 == 0 and p != 2:
        raise ValueError(f"{p} is not prime")
    if P % p == 0 and Q % p == 0:
        return EntryPoint(2)
    if Q % p == 0:
        return EntryPoint(INFINITE)
    if D % p == 0:
        return EntryPoint(2 if p == 2 else p)
    if p == 2:
        # 2 coprime to Q and D, so P and Q are odd: U_3 = P^2 - Q is even.
        for n in (1, 2, 3):
            if u_term(params, n) % 2 == 0:
                return EntryPoint(n)
        raise AssertionError("unreachable: U_3 must be even here")
    for d in divisors(p - kronecker(D, p)):
        if term_mod(params, d, p) == 0:
            return EntryPoint(d)
    raise AssertionError(f"no entry point among divisors of p - (D/p) for p={p}")


def entry_point_oracle(
    params: LucasParams, p: int, limit: int
) -> EntryPoint | NotFound:
    """Linear scan of U_n mod p for n = 1..limit; first hit or NOT_FOUND."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    P, Q = params.P % p, params.Q % p
    a, b = 0, 1 % p  # (U_0, U_1)
    for n in range(1, limit + 1):
        if b == 0:
            return EntryPoint(n)
        a, b = b, (P * b - Q * a) % p
    return NOT_FOUND
