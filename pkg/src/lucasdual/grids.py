"""The standard (P,Q) parameter grid used by verification sweeps and tests.

The raw list covers split, inert and ramified primes, p | Q, p | (P,Q) with
both valuation shapes, and the exceptional 2v_p(P) = v_p(Q)+1 sub-branch.
Pairs whose discriminant vanishes cannot be constructed at all; degenerate
pairs construct but admit vanishing terms, so dual-sequence sweeps use the
nondegenerate subset while verifier sweeps keep them for the
NOT_APPLICABLE paths.
"""

from __future__ import annotations

from .lucas import LucasParams

PARAMETER_GRID_RAW = (
    (1, -1),
    (1, 2),
    (3, 2),
    (2, -1),
    (1, -2),
    (5, 6),
    (6, 9),
    (2, 4),
    (4, 2),
    (2, 2),
    (3, 3),
    (6, 3),
)

VERIFY_PRIMES = (2, 3, 5, 7, 11, 13)


def constructible_grid() -> list[LucasParams]:
    out = []
    for P, Q in PARAMETER_GRID_RAW:
        try:
            out.append(LucasParams(P, Q))
        except ValueError:
            continue
    return out


def nondegenerate_grid() -> list[LucasParams]:
    return [params for params in constructible_grid() if params.nondegenerate]
