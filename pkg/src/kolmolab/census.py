"""Incompressibility counting and prefix-deficiency profiles.

The census counts, among all 2^n strings of length n, those with a verified
witness shorter than n - c at the given horizon.  Because every reported
bound is an upper bound on the true complexity, the count is a lower bound
on the number of truly c-compressible strings, and the counting theorem's
ceiling 2^(n-c) - 1 holds at every horizon, not just in the limit.

The deficiency profile reports n - H-hat(first n bits) along a sequence;
since H-hat >= H, each entry is a certified lower bound on the true
randomness deficiency of that prefix.  Entries where no witness exists at
the horizon are None ("unknown"), never a claim of incompressibility.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import codec
from .complexity import MAX_SEARCH_LEN, bound_table
from .machines import DEFAULT_CELLS, ExecBudget, ResourceRefusal, universal_run

__all__ = ["CENSUS_MAX_N", "CensusReport", "census", "prefix_bound_table", "deficiency_profile"]

CENSUS_MAX_N = 14


@dataclass(frozen=True)
class CensusReport:
    n: int
    c: int
    horizon: int
    flagged: int
    total: int
    prefix: bool = False


def census(
    n: int, c: int, horizon: int, prefix: bool = False, max_cells: int = DEFAULT_CELLS
) -> CensusReport:
    """Count length-n strings with a witness shorter than n - c at this horizon."""
    if n > CENSUS_MAX_N:
        raise ResourceRefusal(f"census capped at n = {CENSUS_MAX_N}, got {n}")
    if not 0 <= c <= n:
        raise ValueError("need 0 <= c <= n")
    max_len = n - c - 1
    flagged = 0
    if max_len >= 0:
        if prefix:
            table = prefix_bound_table(horizon, max_len, max_cells)
        else:
            table = bound_table(horizon, max_len, max_cells)
        flagged = sum(1 for x in table if len(x) == n)
    return CensusReport(n, c, horizon, flagged, 2**n, prefix)


def prefix_bound_table(
    horizon: int,
    max_framed_len: int,
    max_cells: int = DEFAULT_CELLS,
    search_cap: int = MAX_SEARCH_LEN,
) -> dict[str, int]:
    """Best framed-program length per output, one sweep over frames.

    Inner programs are searched up to length search_cap; missing a longer
    witness only weakens the bounds (they stay upper bounds on H), so tables
    at horizons beyond the cap are sound but not exhaustive.
    """
    budget = ExecBudget(horizon, max_cells)
    best: dict[str, int] = {}
    limit = min(max_framed_len, horizon)
    inner_len = 0
    while inner_len <= search_cap and codec.pair_code_len(2, inner_len, 0) <= limit:
        framed_len = codec.pair_code_len(2, inner_len, 0)
        inners = [""] if inner_len == 0 else (
            format(k, f"0{inner_len}b") for k in range(2**inner_len)
        )
        for q in inners:
            out = universal_run(q, budget)
            if out.halted and out.output not in best:
                best[out.output] = framed_len
        inner_len += 1
    return best


def deficiency_profile(
    source,
    n_max: int,
    horizon: int,
    max_cells: int = DEFAULT_CELLS,
    search_cap: int = MAX_SEARCH_LEN,
) -> list[int | None]:
    """For each n = 1..n_max, n - H-hat(first n bits), or None when unknown.

    ``source`` is any object with a ``prefix(n)`` method returning its first
    n bits (see :mod:`kolmolab.randomness`).  Entries are certified lower
    bounds on the true deficiency n - H wherever they are not None.
    """
    if n_max == 0:
        return []
    bits = source.prefix(n_max)
    if len(bits) < n_max:
        raise ValueError(f"source yielded {len(bits)} < {n_max} bits")
    best = prefix_bound_table(horizon, horizon, max_cells, search_cap)
    out: list[int | None] = []
    for n in range(1, n_max + 1):
        h_hat = best.get(bits[:n])
        out.append(None if h_hat is None else n - h_hat)
    return out
