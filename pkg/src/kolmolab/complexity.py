"""Upper-bound estimators for plain, conditional and pair complexity.

Every estimate is a staged minimum over programs, searched in
length-then-lexicographic order with both program length and step count
capped by a single ``horizon`` (the staged approximation parameter): the
returned bound is min{|q| : |q| <= horizon, U(q) halts on the target within
horizon steps}, and the witness is the first program attaining it.  Bounds
are therefore nonincreasing in the horizon and sound at every horizon.

A failed search is reported as None (not found at this horizon), never as
evidence the target is complex: lower bounds on the complexity of specific
strings are uncomputable and nothing in this package emits one.

``compose_program`` and ``mix_programs`` are the constructive program
transformers behind the standard inequalities K(f(x)) <= K(x) + O(1) and
K(x) <= K(x|y) + K(y) + 2 log min(...) + O(1); the additive constants are
concrete machine indices here, not hidden O(1)s.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import codec
from .dovetail import all_bitstrings
from .machines import (
    DEFAULT_CELLS,
    E_COMP,
    E_MIX,
    ExecBudget,
    ResourceRefusal,
    conditional_run,
    universal_run,
    wrap_program,
)

__all__ = [
    "MAX_SEARCH_LEN",
    "ComplexityBound",
    "estimate_k",
    "estimate_k_given",
    "estimate_k_pair",
    "bound_table",
    "compose_program",
    "mix_programs",
    "mix_program_len",
    "info_estimate",
]

# Exhaustive search is refused beyond this program length (2^23 runs);
# below it, an exhausted search is an honest NotFound at that horizon.
MAX_SEARCH_LEN = 22


@dataclass(frozen=True)
class ComplexityBound:
    """An upper bound on the complexity of ``target``, certified by ``witness``.

    kind is one of "plain", "conditional", "pair", "prefix"; for conditional
    bounds ``given`` carries the conditioning string.  bound == len(witness)
    and replaying the witness within ``horizon`` reproduces the target.
    """

    target: str
    bound: int
    witness: str
    horizon: int
    kind: str = "plain"
    given: str | None = None


def _search(
    x: str, horizon: int, runner, kind: str, given=None, search_cap: int = MAX_SEARCH_LEN
) -> ComplexityBound | None:
    max_len = min(horizon, search_cap)
    for q in all_bitstrings(max_len):
        out = runner(q)
        if out.halted and out.output == x:
            return ComplexityBound(x, len(q), q, horizon, kind, given)
    if horizon > search_cap:
        raise ResourceRefusal(
            f"no witness up to length {search_cap}; refusing to exhaust "
            f"2^{horizon + 1} programs for horizon {horizon}"
        )
    return None


def estimate_k(
    x: str,
    horizon: int,
    max_cells: int = DEFAULT_CELLS,
    search_cap: int = MAX_SEARCH_LEN,
) -> ComplexityBound | None:
    """Staged upper bound on the plain complexity of ``x``."""
    budget = ExecBudget(horizon, max_cells)
    return _search(x, horizon, lambda q: universal_run(q, budget), "plain", search_cap=search_cap)


def estimate_k_given(
    x: str,
    y: str,
    horizon: int,
    max_cells: int = DEFAULT_CELLS,
    search_cap: int = MAX_SEARCH_LEN,
) -> ComplexityBound | None:
    """Staged upper bound on the complexity of ``x`` given ``y`` for free."""
    budget = ExecBudget(horizon, max_cells)
    return _search(
        x, horizon, lambda q: conditional_run(q, y, budget), "conditional", y, search_cap
    )


def estimate_k_pair(
    x: str, y: str, horizon: int, max_cells: int = DEFAULT_CELLS
) -> ComplexityBound | None:
    """Staged upper bound on pair complexity: plain complexity of the level-2 code."""
    got = estimate_k(codec.encode_pair(2, x, y), horizon, max_cells)
    if got is None:
        return None
    return ComplexityBound(got.target, got.bound, got.witness, horizon, "pair")


def bound_table(
    horizon: int, max_len: int, max_cells: int = DEFAULT_CELLS
) -> dict[str, ComplexityBound]:
    """Best bound per output over all programs |q| <= max_len, one sweep.

    Shared fold for the census: equivalent to estimate_k restricted to
    witnesses of length <= max_len, computed for every target at once.
    """
    budget = ExecBudget(horizon, max_cells)
    best: dict[str, ComplexityBound] = {}
    for q in all_bitstrings(min(max_len, horizon)):
        out = universal_run(q, budget)
        if out.halted and out.output not in best:
            best[out.output] = ComplexityBound(out.output, len(q), q, horizon)
    return best


def compose_program(e_f: int, p: str) -> str:
    """Program computing machine e_f applied to U(p); |result| = |p| + e_f + E_COMP + 2.

    Whenever U(p) halts with x and machine e_f halts on x with f(x), the
    returned program halts with f(x).
    """
    return wrap_program(E_COMP, wrap_program(e_f, p))


def mix_programs(p: str, q: str) -> str:
    """Program computing V(q, U(p)): q is run as a conditional program on U(p)'s output.

    The framing stores |p| behind a padded binary numeral, so the overhead
    over |p| + |q| is 2*floor(log2 |p|) + E_MIX + 4 bits (|p| >= 1); see
    :func:`mix_program_len`.
    """
    return wrap_program(E_MIX, codec.pad(codec.bin_nat(len(p))) + "1" + p + q)


def mix_program_len(len_p: int, len_q: int) -> int:
    """Exact length of mix_programs output for component lengths."""
    return E_MIX + 1 + 2 * len(codec.bin_nat(len_p)) + 1 + len_p + len_q


def info_estimate(x: str, y: str, horizon: int, max_cells: int = DEFAULT_CELLS) -> int | None:
    """Heuristic estimate of the information about ``y`` contained in ``x``.

    Difference of two upper bounds, K-hat(y) - K-hat(y|x); since each term is
    only an upper bound the difference is not itself a bound on the mutual
    information, and callers (the CLI included) must report it alongside the
    raw terms.  None when either term is missing at this horizon.
    """
    k_y = estimate_k(y, horizon, max_cells)
    k_y_given_x = estimate_k_given(y, x, horizon, max_cells)
    if k_y is None or k_y_given_x is None:
        return None
    return k_y.bound - k_y_given_x.bound
