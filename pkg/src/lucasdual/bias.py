"""Entry-point census, characteristic factors, and the bias counts.

A prime q is a characteristic factor of U_n when its entry point z_U(q)
equals n; every such q divides the dual M^U_n, so the dual is factored
instead of U_n itself (it is far smaller). An ingested factor table for
U_n can substitute for internal factoring.

The bias machinery accumulates, per index n, the set of primes whose entry
point is at most n, split by Kronecker symbol (D/q) = +1 (count_r) or -1
(count_n); symbol-0 primes are counted in neither column. A row is exact
only while every factorization up to that index was complete.

File formats owned by this module:

* factor table: UTF-8 text; '#' starts a comment; first data line is the
  header `lucas-factors v1 P=<int> Q=<int>`; each entry line is
  `<n>: <prime>[^<exp>] ...` with an optional trailing `C<value>` marker
  holding a still-composite cofactor. Complete entries must recombine to
  U_n exactly (checked on import: exact product for n <= 500, else ten
  random 64-bit prime moduli); failing entries are skipped and logged.
* census cache: CSV `p,z` with `inf` for primes that never enter;
  one file per (P,Q), written atomically.
* bias CSV: `n,count_r,count_n,exact` (byte-stable; plotting input).
"""

from __future__ import annotations

import logging
import os
import random
import tempfile
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import gmpy2

from .arith import (
    DEFAULT_RHO_ITERATIONS,
    Factorization,
    divisors,
    factorize,
    kronecker,
    sieve_primes,
)
from .dual import dual_u
from .lucas import INFINITE, EntryPoint, LucasParams, entry_point, term_mod, u_term

logger = logging.getLogger(__name__)


class _Incomplete:
    """Sentinel: a factorization-backed result could not be completed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INCOMPLETE"


INCOMPLETE = _Incomplete()


def _min_entry_divisor(params: LucasParams, q: int, n: int) -> int | None:
    """Least divisor d of n with q | U_d; the entry point of q when q | U_n."""
    for d in divisors(n):
        if term_mod(params, d, q, "U") == 0:
            return d
    return None


def characteristic_partial(
    params: LucasParams,
    n: int,
    budget: int = DEFAULT_RHO_ITERATIONS,
    table: FactorTable | None = None,
) -> tuple[set[tuple[int, int]], bool]:
    """Known characteristic factors of U_n with multiplicity, plus a flag
    telling whether they are provably all of them."""
    if n < 1:
        raise ValueError("n must be >= 1")
    candidates: dict[int, int] = {}
    complete = False
    entry = table.entries.get(n) if table is not None else None
    if entry is not None:
        for q, e in entry.factors:
            candidates[q] = e
        complete = entry.complete
    if not complete:
        m = abs(dual_u(params, n))
        fact = factorize(m, rho_iterations=budget)
        for q, e in fact.factors:
            candidates[q] = e
        complete = fact.complete
    result = {
        (q, e) for q, e in candidates.items() if _min_entry_divisor(params, q, n) == n
    }
    return result, complete


def characteristic_factors(
    params: LucasParams,
    n: int,
    budget: int = DEFAULT_RHO_ITERATIONS,
    table: FactorTable | None = None,
):
    """The set of (prime, multiplicity) with entry point exactly n, or the
    INCOMPLETE sentinel when factoring fell short of certainty."""
    result, complete = characteristic_partial(params, n, budget=budget, table=table)
    return result if complete else INCOMPLETE


@dataclass(frozen=True)
class BiasRow:
    n: int
    count_r: int
    count_n: int
    exact: bool


def bias_table(
    params: LucasParams,
    xmax: int,
    budget: int = DEFAULT_RHO_ITERATIONS,
    table: FactorTable | None = None,
) -> list[BiasRow]:
    """Cumulative counts of primes entered by index n, split by symbol."""
    if xmax < 1:
        raise ValueError("xmax must be >= 1")
    rows = []
    seen_r: set[int] = set()
    seen_n: set[int] = set()
    exact = True
    for n in range(1, xmax + 1):
        factors, complete = characteristic_partial(params, n, budget=budget, table=table)
        exact = exact and complete
        for q, _ in factors:
            symbol = kronecker(params.D, q)
            if symbol == 1:
                seen_r.add(q)
            elif symbol == -1:
                seen_n.add(q)
        rows.append(BiasRow(n, len(seen_r), len(seen_n), exact))
    return rows


def bias_term(rows: list[BiasRow], x: int) -> int:
    """#{n <= x : count_n < count_r}. All rows through x must be exact."""
    by_n = {row.n: row for row in rows}
    count = 0
    for n in range(1, x + 1):
        row = by_n.get(n)
        if row is None:
            raise ValueError(f"missing bias row for n={n}")
        if not row.exact:
            raise ValueError(f"bias row for n={n} is not exact")
        if row.count_n < row.count_r:
            count += 1
    return count


def export_bias_csv(rows: list[BiasRow], path) -> None:
    """Write `n,count_r,count_n,exact` rows; byte-stable for golden tests."""
    if not rows:
        raise ValueError("no rows to export")
    with open(path, "w", encoding="utf-8", newline="") as handle:
        handle.write("n,count_r,count_n,exact\n")
        for row in rows:
            flag = "true" if row.exact else "false"
            handle.write(f"{row.n},{row.count_r},{row.count_n},{flag}\n")


def read_bias_csv(path) -> list[BiasRow]:
    """Inverse of export_bias_csv (used by consistency checks)."""
    rows = []
    with open(path, encoding="utf-8") as handle:
        header = handle.readline().strip()
        if header != "n,count_r,count_n,exact":
            raise ValueError(f"unexpected bias CSV header: {header!r}")
        for line in handle:
            n, count_r, count_n, flag = line.strip().split(",")
            rows.append(BiasRow(int(n), int(count_r), int(count_n), flag == "true"))
    return rows


@dataclass(frozen=True)
class EntryPointCensus:
    params: LucasParams
    records: dict[int, EntryPoint]
    prime_limit: int

    def finite_records(self) -> list[tuple[int, int]]:
        return [(p, z.value) for p, z in sorted(self.records.items()) if z.finite]


def _census_cell(args: tuple[int, int, int]) -> tuple[int, int | str]:
    P, Q, p = args
    z = entry_point(LucasParams(P, Q), p)
    return p, (z.value if z.finite else "inf")


def _census_path(cache_dir, params: LucasParams):
    return os.path.join(cache_dir, f"census-P{params.P}-Q{params.Q}.csv")


def _load_census_cache(path, params: LucasParams) -> dict[int, EntryPoint]:
    records: dict[int, EntryPoint] = {}
    try:
        with open(path, encoding="utf-8") as handle:
            header = handle.readline().strip()
            if header != "p,z":
                logger.warning("census cache %s: bad header, regenerating", path)
                return {}
            for line in handle:
                p_text, z_text = line.strip().split(",")
                value = INFINITE if z_text == "inf" else int(z_text)
                records[int(p_text)] = EntryPoint(value)
    except FileNotFoundError:
        return {}
    except (ValueError, OSError) as exc:
        logger.warning("census cache %s unusable (%s), regenerating", path, exc)
        return {}
    return records


def _store_census_cache(path, records: dict[int, EntryPoint]) -> None:
    directory = os.path.dirname(path) or "."
    fd, tmp_path = tempfile.mkstemp(dir=directory, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write("p,z\n")
            for p, z in sorted(records.items()):
                handle.write(f"{p},{z.value if z.finite else 'inf'}\n")
        os.replace(tmp_path, path)
    except BaseException:
        try:
            os.unlink(tmp_path)
        except OSError:
            pass
        raise


def _spot_check_census(params: LucasParams, records: dict[int, EntryPoint]) -> None:
    # Definitional sample check: p divides U_z but no U_{z/q}.
    sample = [p for p in sorted(records) if p <= 100]
    sample.extend(sorted(records)[::101])
    for p in sample:
        z = records[p]
        if not z.finite:
            if not (params.Q % p == 0 and params.P % p != 0):
                raise AssertionError(f"census records z({p}) infinite wrongly")
            continue
        if term_mod(params, z.value, p, "U") != 0:
            raise AssertionError(f"census records z({p})={z.value} but p does not divide U_z")
        for q in factorize(z.value).primes():
            if term_mod(params, z.value // q, p, "U") == 0:
                raise AssertionError(f"census z({p})={z.value} is not minimal")


def census_build(
    params: LucasParams,
    prime_limit: int,
    jobs: int = 1,
    cache_dir: str | None = None,
) -> EntryPointCensus:
    """entry_point for every prime <= prime_limit, optionally cached on disk
    and evaluated in parallel; the result is order-independent."""
    if prime_limit < 2:
        raise ValueError("prime_limit must be >= 2")
    primes = sieve_primes(prime_limit)
    records: dict[int, EntryPoint] = {}
    cache_path = None
    if cache_dir is not None:
        os.makedirs(cache_dir, exist_ok=True)
        cache_path = _census_path(cache_dir, params)
        records = _load_census_cache(cache_path, params)
    missing = [p for p in primes if p not in records]
    if missing:
        if jobs > 1:
            with ProcessPoolExecutor(max_workers=jobs) as pool:
                cells = pool.map(
                    _census_cell, [(params.P, params.Q, p) for p in missing], chunksize=64
                )
                for p, z_value in cells:
                    records[p] = EntryPoint(INFINITE if z_value == "inf" else z_value)
        else:
            for p in missing:
                records[p] = entry_point(params, p)
        if cache_path is not None:
            _store_census_cache(cache_path, records)
    records = {p: records[p] for p in primes}
    _spot_check_census(params, records)
    return EntryPointCensus(params, records, prime_limit)


@dataclass(frozen=True)
class FactorTable:
    params: LucasParams
    entries: dict[int, Factorization] = field(default_factory=dict)
    source: str = ""


class FactorTableError(ValueError):
    """Unrecoverable syntax problem in a factor table file."""


_HEADER_PREFIX = "lucas-factors v1"


def _parse_factor_line(line: str, lineno: int) -> tuple[int, list[tuple[int, int]], int]:
    head, _, tail = line.partition(":")
    if not tail:
        raise FactorTableError(f"line {lineno}: expected '<n>: factors', got {line!r}")
    try:
        n = int(head.strip())
    except ValueError:
        raise FactorTableError(f"line {lineno}: bad index {head.strip()!r}") from None
    if n < 1:
        raise FactorTableError(f"line {lineno}: index must be positive")
    factors = []
    cofactor = 1
    tokens = tail.split()
    for position, token in enumerate(tokens):
        if token.startswith("C"):
            if position != len(tokens) - 1:
                raise FactorTableError(
                    f"line {lineno}: composite marker must be the last token"
                )
            try:
                cofactor = int(token[1:])
            except ValueError:
                raise FactorTableError(
                    f"line {lineno}: bad composite marker {token!r}"
                ) from None
            if cofactor < 2:
                raise FactorTableError(f"line {lineno}: composite marker must be >= 2")
            continue
        base, caret, exponent = token.partition("^")
        try:
            prime = int(base)
            exp = int(exponent) if caret else 1
        except ValueError:
            raise FactorTableError(f"line {lineno}: bad factor token {token!r}") from None
        if prime < 2 or exp < 1:
            raise FactorTableError(f"line {lineno}: bad factor token {token!r}")
        factors.append((prime, exp))
    return n, factors, cofactor


def _recombination_ok(params: LucasParams, n: int, value: int) -> bool:
    """Does value equal U_n? Exact below 500, ten 64-bit prime moduli above."""
    if n <= 500:
        return value == u_term(params, n)
    rng = random.Random(f"{params.P},{params.Q},{n}")
    for _ in range(10):
        modulus = int(gmpy2.next_prime(rng.getrandbits(64) | (1 << 63)))
        if value % modulus != term_mod(params, n, modulus, "U"):
            return False
    return True


def import_factor_table(path, params: LucasParams) -> FactorTable:
    """Parse and validate a factor table file for U(P,Q).

    Syntax problems raise FactorTableError with the line number; entries
    that fail validation (recombination mismatch, composite listed as
    prime) are skipped with a logged diagnostic.
    """
    entries: dict[int, Factorization] = {}
    header_seen = False
    with open(path, encoding="utf-8") as handle:
        for lineno, raw in enumerate(handle, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if not header_seen:
                if not line.startswith(_HEADER_PREFIX):
                    raise FactorTableError(
                        f"line {lineno}: expected header '{_HEADER_PREFIX} P=<int> Q=<int>'"
                    )
                try:
                    fields = dict(
                        item.split("=", 1) for item in line[len(_HEADER_PREFIX) :].split()
                    )
                    P, Q = int(fields["P"]), int(fields["Q"])
                except (ValueError, KeyError):
                    raise FactorTableError(f"line {lineno}: malformed header") from None
                if (P, Q) != (params.P, params.Q):
                    raise FactorTableError(
                        f"line {lineno}: table is for ({P},{Q}), not {params}"
                    )
                header_seen = True
                continue
            n, factors, cofactor = _parse_factor_line(line, lineno)
            if n in entries:
                logger.warning("factor table %s line %d: duplicate index %d skipped", path, lineno, n)
                continue
            value = cofactor
            for prime, exp in factors:
                value *= prime**exp
            if not _recombination_ok(params, n, value):
                logger.warning(
                    "factor table %s line %d: entry %d does not recombine to U_%d; skipped",
                    path, lineno, n, n,
                )
                continue
            try:
                entries[n] = Factorization(
                    value=value,
                    factors=tuple(sorted(factors)),
                    unfactored_cofactor=cofactor,
                    complete=cofactor == 1,
                )
            except (ValueError, AssertionError) as exc:
                logger.warning(
                    "factor table %s line %d: invalid entry for %d (%s); skipped",
                    path, lineno, n, exc,
                )
    if not header_seen:
        raise FactorTableError("missing 'lucas-factors v1' header line")
    return FactorTable(params=params, entries=entries, source=str(path))
