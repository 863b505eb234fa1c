"""Fair enumeration of halting programs and level-set reconstruction.

``sweep`` sequentializes the infinite (program, step-count) grid at a finite
horizon: it yields every program q with |q| <= horizon that halts within
horizon steps, each exactly once, with its first-halt step count.  The
emitted set is independent of scheduling order, so consumers must treat the
stream as a set.

``reconstruct_level_set`` is the classic trick for functions approximable
from above: given a staged evaluator f_t >= f and the exact cardinality m of
the level set {x : f(x) <= n}, dovetailing the stages recovers the level set
exactly.  If m overstates the true cardinality the call never returns (the
hypothesis is the caller's responsibility); if m understates it, the result
is an m-subset whose members all genuinely satisfy the bound.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable, Iterator
from dataclasses import dataclass
from itertools import count

from .machines import DEFAULT_CELLS, ExecBudget, universal_run

__all__ = ["HaltingEvent", "sweep", "all_bitstrings", "reconstruct_level_set"]


@dataclass(frozen=True)
class HaltingEvent:
    program: str
    output: str
    steps: int


def all_bitstrings(max_len: int) -> Iterator[str]:
    """Bit strings in length-then-lexicographic order, lengths 0..max_len."""
    yield ""
    for n in range(1, max_len + 1):
        for k in range(2**n):
            yield format(k, f"0{n}b")


def sweep(horizon: int, max_cells: int = DEFAULT_CELLS) -> Iterator[HaltingEvent]:
    """Stream the halting events of all programs |q| <= horizon within horizon steps.

    Each program is run once with step budget = horizon; a halt within the
    budget has a scheduling-independent first-halt step count, so this single
    pass emits exactly the set the triangular (steps x length) schedule would.
    """
    if horizon < 1:
        raise ValueError("horizon must be >= 1")
    budget = ExecBudget(horizon, max_cells)
    for q in all_bitstrings(horizon):
        out = universal_run(q, budget)
        if out.halted:
            yield HaltingEvent(q, out.output, out.steps)


def reconstruct_level_set(
    n: int,
    m: int,
    f_approx: Callable[[int, object], int | None],
    domain: Iterable[object],
) -> set:
    """Recover {x : f(x) <= n} from a staged upper evaluator, knowing its size m.

    ``f_approx(t, x)`` is stage t of a pointwise nonincreasing-in-t evaluator
    whose pointwise limit is f (None where stage t is still undefined).
    Stages are dovetailed until m distinct x with a staged value <= n have
    appeared.  Diverges when m exceeds the true cardinality.
    """
    domain = list(domain)
    if m == 0:
        return set()
    found: set = set()
    for t in count():
        for x in domain:
            if x in found:
                continue
            v = f_approx(t, x)
            if v is not None and v <= n:
                found.add(x)
                if len(found) == m:
                    return found
