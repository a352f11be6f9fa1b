"""Exact integer utilities: arithmetic functions, Kronecker symbol, valuations,
primality testing, sieving, and general-purpose factoring.

Everything here is exact; no floating point is used anywhere in the package.
Big-integer inner loops (Miller-Rabin, Pollard rho) run on gmpy2.mpz for speed
but all public functions accept and return plain Python ints.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import gmpy2

TRIAL_BOUND = 100_000
DEFAULT_RHO_ITERATIONS = 10_000_000

# Deterministic Miller-Rabin witnesses for all m < 3.317e24 (covers 64-bit range).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_DETERMINISTIC_BELOW = 1 << 64
_MR_EXTRA_ROUNDS = 30

_trial_primes: list[int] | None = None


def sieve_primes(limit: int) -> list[int]:
    """All primes <= limit, ascending, by sieve of Eratosthenes."""
    if limit < 2:
        raise ValueError("limit must be >= 2")
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for i in range(2, int(gmpy2.isqrt(limit)) + 1):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(range(i * i, limit + 1, i)))
    return [i for i in range(2, limit + 1) if sieve[i]]


def _get_trial_primes() -> list[int]:
    global _trial_primes
    if _trial_primes is None:
        _trial_primes = sieve_primes(TRIAL_BOUND)
    return _trial_primes


def is_probable_prime(m: int) -> bool:
    """Primality test: deterministic below 2^64 via a fixed witness set,
    strong-probable-prime with 30 extra pseudorandom rounds above."""
    if m < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if m % p == 0:
            return m == p
    n = gmpy2.mpz(m)
    d = n - 1
    r = 0
    while d % 2 == 0:
        d >>= 1
        r += 1

    def witness(a: int) -> bool:
        # True when a proves m composite.
        x = gmpy2.powmod(a, d, n)
        if x == 1 or x == n - 1:
            return False
        for _ in range(r - 1):
            x = (x * x) % n
            if x == n - 1:
                return False
        return True

    for a in _MR_WITNESSES:
        if witness(a):
            return False
    if m >= _MR_DETERMINISTIC_BELOW:
        rng = random.Random(m & 0xFFFFFFFFFFFFFFFF)
        for _ in range(_MR_EXTRA_ROUNDS):
            if witness(rng.randrange(2, m - 1)):
                return False
    return True


def _brent_rho(n: gmpy2.mpz, max_iterations: int) -> int | None:
    """Brent-cycle Pollard rho. Returns a nontrivial factor of composite n,
    or None if the iteration budget runs out. Deterministic restarts."""
    if n % 2 == 0:
        return 2
    iterations = 0
    for c in range(1, 64):
        y = gmpy2.mpz(c + 1)
        m = 128
        g = gmpy2.mpz(1)
        r = 1
        q = gmpy2.mpz(1)
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = (q * abs(x - y)) % n
                g = gmpy2.gcd(q, n)
                k += m
            r *= 2
            iterations += r
            if iterations > max_iterations:
                return None
        if g == n:
            # Batch gcd overshot; replay one step at a time.
            g = gmpy2.mpz(1)
            while g == 1:
                ys = (ys * ys + c) % n
                g = gmpy2.gcd(abs(x - ys), n)
        if g != n:
            return int(g)
        # Cycle degenerated for this c; try the next polynomial.
    return None


@dataclass(frozen=True)
class Factorization:
    """Signed factorization value = sign * prod(p^e) * unfactored_cofactor.

    complete is True iff unfactored_cofactor == 1. Factors are sorted by
    prime, primes distinct, every listed prime passes is_probable_prime.
    """

    value: int
    factors: tuple[tuple[int, int], ...]
    unfactored_cofactor: int = 1
    complete: bool = field(default=True)

    def __post_init__(self) -> None:
        prod = 1
        for p, e in self.factors:
            prod *= p**e
        prod *= self.unfactored_cofactor
        if prod != abs(self.value):
            raise ValueError("factorization does not recombine to value")
        if list(self.factors) != sorted(self.factors) or len(
            {p for p, _ in self.factors}
        ) != len(self.factors):
            raise ValueError("factors must be sorted and distinct")
        if self.complete != (self.unfactored_cofactor == 1):
            raise ValueError("complete flag inconsistent with cofactor")

    def primes(self) -> list[int]:
        return [p for p, _ in self.factors]

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0


def factorize(m: int, rho_iterations: int = DEFAULT_RHO_ITERATIONS) -> Factorization:
    """Factor m by trial division to 10^5 followed by Brent rho with the given
    per-composite iteration budget. Incompleteness is reported in the result
    (unfactored_cofactor > 1, complete=False), never raised."""
    if m == 0:
        raise ValueError("cannot factor 0")
    n = abs(m)
    counts: dict[int, int] = {}
    for p in _get_trial_primes():
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    cofactor = 1
    pending = [n] if n > 1 else []
    while pending:
        c = pending.pop()
        if c < TRIAL_BOUND * TRIAL_BOUND or is_probable_prime(c):
            # Below the trial square everything surviving is prime.
            counts[c] = counts.get(c, 0) + 1
            continue
        d = _brent_rho(gmpy2.mpz(c), rho_iterations)
        if d is None:
            cofactor *= c
        else:
            pending.append(d)
            pending.append(c // d)
    return Factorization(
        value=m,
        factors=tuple(sorted(counts.items())),
        unfactored_cofactor=cofactor,
        complete=cofactor == 1,
    )


def _factor_index(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization for small index-sized arguments."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mobius(n: int) -> int:
    """Mobius function: 0 on non-squarefree n, else (-1)^(number of primes)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = 1
    for _, e in _factor_index(n):
        if e > 1:
            return 0
        result = -result
    return result


def euler_phi(n: int) -> int:
    """Euler totient."""
    if n < 1:
        raise ValueError("n must be >= 1")
    result = n
    for p, _ in _factor_index(n):
        result = result // p * (p - 1)
    return result


def divisors(n: int) -> list[int]:
    """All divisors of n, ascending. For n beyond the trial range this
    factors n first and requires the factorization to complete."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n < TRIAL_BOUND * TRIAL_BOUND:
        fact = _factor_index(n)
    else:
        full = factorize(n)
        if not full.complete:
            raise ValueError(f"cannot enumerate divisors of {n}: factoring incomplete")
        fact = list(full.factors)
    divs = [1]
    for p, e in fact:
        divs = [d * p**i for d in divs for i in range(e + 1)]
    return sorted(divs)


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n), totalized: (a/1) = (a/-1 for a>=0) = 1,
    (a/-1) = -1 for a < 0, (0/n) = 1 iff |n| = 1, (a/2) = 0, +1, -1 for
    a even, a = +-1 mod 8, a = +-3 mod 8."""
    return int(gmpy2.kronecker(a, n))


def valuation_and_pfree(m: int, p: int) -> tuple[int, int]:
    """(v_p(m), p-free part of m): m = p^v * pfree with p not dividing pfree."""
    if m == 0:
        raise ValueError("valuation of 0 is undefined")
    v = 0
    while m % p == 0:
        m //= p
        v += 1
    return v, m


def valuation(m: int, p: int) -> int:
    return valuation_and_pfree(m, p)[0]
