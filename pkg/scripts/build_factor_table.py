#!/usr/bin/env python3
"""Build a factor table for U_n(P,Q), n <= nmax, as complete as a time
budget allows.

U_n is the product of the duals M^U_d over d | n, so each dual is factored
once and the per-index entries are composed from those factorizations. A
composite dual cofactor is attacked in escalating passes with Brent rho,
Pollard p-1, Williams p+1, residue-class trial division (prime factors
with entry point n sit in t*n +- 1), and elliptic curves, cheapest and
smallest cofactors first, until the wall-clock budget runs out.

Progress is kept in a duals work file next to the output, so repeated runs
resume and deepen the search instead of starting over. Known prime factors
from published tables can be merged with --seeds; every seed prime is
admitted only by primality plus divisibility checks, never trusted.

Whatever remains composite is written as a C<value> cofactor marker; the
output is honest about what was not factored. Indices with U_n = 1 are
omitted (the format has no empty factor list).
"""

from __future__ import annotations

import argparse
import math
import os
import random
import sys
import tempfile
import time
from collections import Counter
from pathlib import Path

import gmpy2

from lucasdual import LucasParams, divisors, dual_u, factorize, is_probable_prime, u_term

try:
    from sympy.ntheory.ecm import _ecm_one_factor
except ImportError:  # pragma: no cover - older sympy
    _ecm_one_factor = None
from sympy.ntheory.factor_ import pollard_pm1

DUALS_HEADER = "lucas-dual-factors v1"
TABLE_HEADER = "lucas-factors v1"


def _perfect_power(m: int) -> tuple[bool, int]:
    z = gmpy2.mpz(m)
    if not gmpy2.is_power(z):
        return False, m
    for e in range(2, z.bit_length() + 1):
        root, exact = gmpy2.iroot(z, e)
        if exact:
            return True, int(root)
    return False, m


class DualState:
    """Factoring progress for one dual: known primes and the leftover."""

    def __init__(self, n: int, value: int):
        self.n = n
        self.value = value
        self.factors: Counter[int] = Counter()
        self.cofactor = value
        self.settle()

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    def absorb(self, q: int) -> bool:
        """Divide a verified prime q out of the cofactor, full multiplicity."""
        if q < 2 or self.cofactor % q != 0:
            return False
        while self.cofactor % q == 0:
            self.factors[q] += 1
            self.cofactor //= q
        self.settle()
        return True

    def settle(self) -> None:
        """Promote the cofactor when it is prime or a power of a prime."""
        if self.cofactor == 1:
            return
        if is_probable_prime(self.cofactor):
            self.factors[self.cofactor] += 1
            self.cofactor = 1
            return
        is_pow, root = _perfect_power(self.cofactor)
        if is_pow and is_probable_prime(root):
            self.absorb(root)


def _render_entry(n: int, factors: Counter[int], cofactor: int) -> str:
    tokens = [f"{q}^{e}" if e > 1 else str(q) for q, e in sorted(factors.items())]
    if cofactor > 1:
        tokens.append(f"C{cofactor}")
    return f"{n}: " + " ".join(tokens)


def _parse_entry(line: str) -> tuple[int, Counter[int], int]:
    head, _, tail = line.partition(":")
    n = int(head.strip())
    factors: Counter[int] = Counter()
    cofactor = 1
    for token in tail.split():
        if token.startswith("C"):
            cofactor = int(token[1:])
            continue
        base, _, exp = token.partition("^")
        factors[int(base)] += int(exp) if exp else 1
    return n, factors, cofactor


def load_duals(path: Path, params: LucasParams, states: dict[int, DualState]) -> int:
    """Merge a previous work file into states; returns entries accepted."""
    if not path.exists():
        return 0
    accepted = 0
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().split("#", 1)[0].strip()
        expected = f"{DUALS_HEADER} P={params.P} Q={params.Q}"
        if header != expected:
            print(f"ignoring {path}: header {header!r} does not match {expected!r}")
            return 0
        for raw in handle:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            n, factors, cofactor = _parse_entry(line)
            state = states.get(n)
            if state is None:
                continue
            value = math.prod(q**e for q, e in factors.items()) * cofactor
            if value != state.value:
                print(f"work file entry {n} does not recombine; dropped")
                continue
            if any(not is_probable_prime(q) for q in factors):
                print(f"work file entry {n} lists a composite as prime; dropped")
                continue
            state.factors = factors
            state.cofactor = cofactor
            state.settle()
            accepted += 1
    return accepted


def _atomic_write(path: Path, text: str) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
    with os.fdopen(fd, "w", encoding="utf-8") as handle:
        handle.write(text)
    os.chmod(tmp, 0o644)
    os.replace(tmp, path)


def save_duals(path: Path, params: LucasParams, states: dict[int, DualState]) -> None:
    lines = [f"{DUALS_HEADER} P={params.P} Q={params.Q}"]
    for n in sorted(states):
        state = states[n]
        if state.value == 1:
            continue
        lines.append(_render_entry(n, state.factors, state.cofactor))
    _atomic_write(path, "\n".join(lines) + "\n")


def compose_table(
    path: Path, params: LucasParams, nmax: int, states: dict[int, DualState]
) -> tuple[int, int]:
    """Write the per-index table; returns (complete, incomplete) counts."""
    lines = [
        f"# prime factorizations of U_n({params.P},{params.Q}); "
        "C<value> marks a composite remainder",
        f"{TABLE_HEADER} P={params.P} Q={params.Q}",
    ]
    complete = incomplete = 0
    for n in range(1, nmax + 1):
        merged: Counter[int] = Counter()
        cofactor = 1
        for d in divisors(n):
            state = states[d]
            merged.update(state.factors)
            cofactor *= state.cofactor
        value = math.prod(q**e for q, e in merged.items()) * cofactor
        if value != u_term(params, n):
            raise AssertionError(f"composed entry {n} does not multiply to U_{n}")
        if value == 1:
            continue
        if cofactor == 1:
            complete += 1
        else:
            incomplete += 1
        lines.append(_render_entry(n, merged, cofactor))
    _atomic_write(path, "\n".join(lines) + "\n")
    return complete, incomplete


_PRIME_CACHE: list[int] = []


def _small_primes(bound: int) -> list[int]:
    global _PRIME_CACHE
    if not _PRIME_CACHE or _PRIME_CACHE[-1] < bound:
        sieve = bytearray([1]) * (bound + 1)
        sieve[0:2] = b"\x00\x00"
        for i in range(2, int(bound**0.5) + 1):
            if sieve[i]:
                sieve[i * i :: i] = bytearray(len(range(i * i, bound + 1, i)))
        _PRIME_CACHE = [i for i, flag in enumerate(sieve) if flag]
    if _PRIME_CACHE[-1] <= bound:
        return _PRIME_CACHE
    return [p for p in _PRIME_CACHE if p <= bound]


def _v_ladder(x: gmpy2.mpz, k: int, m: gmpy2.mpz) -> gmpy2.mpz:
    """V_k(x, 1) mod m by the two-term ladder."""
    v0, v1 = gmpy2.mpz(2), x
    for bit in bin(k)[2:]:
        if bit == "1":
            v0, v1 = (v0 * v1 - x) % m, (v1 * v1 - 2) % m
        else:
            v0, v1 = (v0 * v0 - 2) % m, (v0 * v1 - x) % m
    return v0


def williams_pp1(c: int, bound: int, seed: int, stop_at: float) -> int | None:
    """One factor of c via Williams p+1: catches primes q whose q+1 is
    bound-smooth when the seed lands on the right symbol side."""
    m = gmpy2.mpz(c)
    x = gmpy2.mpz(seed)
    for count, p in enumerate(_small_primes(bound)):
        exponent = int(math.log(bound) / math.log(p))
        for _ in range(max(exponent, 1)):
            x = _v_ladder(x, p, m)
        if count % 2048 == 2047:
            g = gmpy2.gcd(x - 2, m)
            if 1 < g < m:
                return int(g)
            if g == m or time.monotonic() > stop_at:
                return None
    g = gmpy2.gcd(x - 2, m)
    return int(g) if 1 < g < m else None


def residue_trial(state: DualState, t_max: int, stop_at: float) -> None:
    """Trial-divide by q = t*n +- 1: prime factors with entry point n lie in
    those classes, so candidates elsewhere are not worth testing."""
    n = state.n
    if n < 3:
        return
    c = gmpy2.mpz(state.cofactor)
    for t in range(1, t_max + 1):
        if state.complete:
            return
        if t % 65536 == 0 and time.monotonic() > stop_at:
            return
        base = t * n
        for q in (base - 1, base + 1):
            if q < 3 or q % 2 == 0:
                continue
            if c % q == 0 and is_probable_prime(q):
                state.absorb(q)
                c = gmpy2.mpz(state.cofactor)


def rho_pass(state: DualState, iterations: int) -> None:
    fact = factorize(state.cofactor, rho_iterations=iterations)
    for q, _ in fact.factors:
        state.absorb(q)


def pm1_pass(state: DualState, bound: int, rng: random.Random) -> None:
    for _ in range(2):
        if state.complete:
            return
        try:
            q = pollard_pm1(state.cofactor, B=bound, a=rng.randrange(2, 1 << 30))
        except Exception:
            return
        if not q:
            return
        state.absorb(int(q))


def pp1_pass(state: DualState, bound: int, rng: random.Random, stop_at: float) -> None:
    for _ in range(2):
        if state.complete or time.monotonic() > stop_at:
            return
        q = williams_pp1(state.cofactor, bound, rng.randrange(3, 1 << 30), stop_at)
        if q is None:
            continue
        if is_probable_prime(q):
            state.absorb(q)
        else:
            fact = factorize(q, rho_iterations=200_000)
            for prime, _ in fact.factors:
                state.absorb(prime)


def ecm_pass(
    state: DualState, b1: int, curves: int, rng: random.Random, stop_at: float
) -> None:
    """Run ECM in 4-curve chunks so the wall clock stays in charge."""
    if _ecm_one_factor is None:
        return
    done = 0
    while done < curves and not state.complete and time.monotonic() < stop_at:
        try:
            found = _ecm_one_factor(
                state.cofactor,
                B1=b1,
                B2=b1 * 50,
                max_curve=4,
                seed=rng.randrange(1, 1 << 30),
            )
        except Exception:
            return
        done += 4
        if not found:
            continue
        found = int(found)
        if is_probable_prime(found):
            state.absorb(found)
        else:
            fact = factorize(found, rho_iterations=500_000)
            for prime, _ in fact.factors:
                state.absorb(prime)


PASSES = (
    # (residue-class t_max, rho iterations, p+-1 bound, ecm tiers (B1, curves))
    (100_000, 300_000, 200_000, ((2_000, 32), (11_000, 32))),
    (600_000, 2_000_000, 1_000_000, ((50_000, 48),)),
    (2_000_000, 5_000_000, 4_000_000, ((250_000, 64),)),
    (0, 0, 8_000_000, ((1_000_000, 100),)),
)


def run_passes(
    states: dict[int, DualState],
    deadline: float,
    rng: random.Random,
    duals_path: Path,
    params: LucasParams,
    t0: float,
) -> None:
    for index, (t_max, rho_iter, smooth_bound, ecm_tiers) in enumerate(PASSES, start=1):
        open_states = sorted(
            (s for s in states.values() if not s.complete), key=lambda s: s.cofactor
        )
        if not open_states or time.monotonic() > deadline:
            return
        print(
            f"pass {index}: {len(open_states)} cofactors open, smallest "
            f"{len(str(open_states[0].cofactor))} digits",
            flush=True,
        )
        for position, state in enumerate(open_states):
            now = time.monotonic()
            if now > deadline:
                break
            remaining = len(open_states) - position
            stop_at = min(deadline, now + max(6.0, (deadline - now) / remaining))
            if t_max:
                residue_trial(state, t_max, stop_at)
            if not state.complete and rho_iter:
                rho_pass(state, rho_iter)
            if not state.complete:
                pm1_pass(state, smooth_bound, rng)
            if not state.complete:
                pp1_pass(state, smooth_bound, rng, stop_at)
            for b1, curves in ecm_tiers:
                if state.complete:
                    break
                ecm_pass(state, b1, curves, rng, stop_at)
        save_duals(duals_path, params, states)
        done = sum(1 for s in states.values() if s.complete)
        print(
            f"pass {index} done at {time.monotonic() - t0:.0f}s: "
            f"{done}/{len(states)} duals complete",
            flush=True,
        )


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("-P", type=int, default=1)
    parser.add_argument("-Q", type=int, default=-1)
    parser.add_argument("--nmax", type=int, default=1000)
    parser.add_argument(
        "--out", type=Path, default=Path("data/fibonacci-factors-1000.txt")
    )
    parser.add_argument(
        "--duals",
        type=Path,
        default=None,
        help="work file (default: <out stem>-duals.txt beside --out)",
    )
    parser.add_argument(
        "--time-budget",
        type=float,
        default=900.0,
        help="seconds to spend attacking cofactors (0: compose only)",
    )
    parser.add_argument(
        "--seeds",
        type=Path,
        default=None,
        help="file of known primes, lines '<n>: <prime> ...'",
    )
    args = parser.parse_args()

    params = LucasParams(args.P, args.Q)
    duals_path = args.duals or args.out.with_name(args.out.stem + "-duals.txt")
    args.out.parent.mkdir(parents=True, exist_ok=True)

    t0 = time.monotonic()
    states: dict[int, DualState] = {}
    for n in range(1, args.nmax + 1):
        value = dual_u(params, n)
        if value <= 0:
            print(f"dual at {n} is {value}; table format carries no sign", file=sys.stderr)
            return 1
        states[n] = DualState(n, value)
    resumed = load_duals(duals_path, params, states)
    print(
        f"duals 1..{args.nmax} prepared in {time.monotonic() - t0:.1f}s, "
        f"{resumed} resumed from {duals_path}",
        flush=True,
    )

    seed_primes: list[int] = []
    if args.seeds:
        with open(args.seeds, encoding="utf-8") as handle:
            for raw in handle:
                line = raw.split("#", 1)[0].strip()
                if not line or ":" not in line or line.startswith("lucas-"):
                    continue
                _, factors, _ = _parse_entry(line)
                seed_primes.extend(q for q in factors if is_probable_prime(q))
        print(f"{len(seed_primes)} verified seed primes loaded", flush=True)

    deadline = time.monotonic() + args.time_budget
    rng = random.Random(20260814)

    # Cheap first sweep: seeds, package trial division, and a short rho.
    for n in sorted(states):
        state = states[n]
        if state.complete:
            continue
        for q in seed_primes:
            state.absorb(q)
        if time.monotonic() < deadline:
            rho_pass(state, 100_000)
    save_duals(duals_path, params, states)
    done = sum(1 for s in states.values() if s.complete)
    print(f"first sweep done at {time.monotonic() - t0:.0f}s: "
          f"{done}/{len(states)} duals complete", flush=True)

    try:
        run_passes(states, deadline, rng, duals_path, params, t0)
    except KeyboardInterrupt:
        print("interrupted; saving progress", flush=True)

    save_duals(duals_path, params, states)
    complete, incomplete = compose_table(args.out, params, args.nmax, states)
    print(f"{args.out}: {complete} complete entries, {incomplete} with composite cofactors")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
