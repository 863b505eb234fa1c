"""One-tape palindrome recognizer instrumented for crossing sequences.

The recognizer is the classical zig-zag machine: remember the leftmost
symbol, blank it, run to the right end, compare and blank, run back, repeat.
Two details make it suitable for profiling:

  * a mismatch does not stop the run; the machine switches to a tainted
    track that keeps consuming, so the running time is quadratic on every
    input, not just palindromes (the phenomenon being measured is the
    quadratic lower bound, and this machine exhibits its tightness);
  * before the first comparison the machine plants a 1 at cell -1 (outside
    the output region, which starts at cell 0).  When consumption finishes
    the tape right of the landmark is all blank, so seeking left until the
    landmark locates cell 0 exactly; the verdict bit (1 accept / 0 reject)
    is written there and the final transition steps back onto cell 0.

Crossing sequences are extracted from the recorded trace: boundary i lies
between cells i and i+1, and a step from cell a to b crosses boundary
min(a, b), recording the state entered by that step (-1 for the halting
step).  Every step moves exactly one cell, so the crossing-sequence lengths
over all boundaries sum to exactly the step count.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import log

import numpy as np

from .machines import ExecBudget, run_table, run_table_trace

__all__ = [
    "PAL_TABLE",
    "PAL_STATE_COUNT",
    "Trace",
    "CrossingSequence",
    "run_palindrome_tm",
    "palindrome_accepts",
    "crossing_sequences",
    "QuadraticReport",
    "quadratic_report",
]

HALT = -1
L, R = 0, 1
_B = 2  # blank

# state names
(
    INIT,
    GO_L0,
    GO_L1,
    BACK0,
    BACK1,
    SCAN0,
    SCAN1,
    CHECK0,
    CHECK1,
    RET,
    RET_T,
    SEEK_A,
    W_ACC,
    FIN,
    ST,
    ST_T,
    SCAN_T,
    SEEK_R,
    CHECK_T,
    W_REJ,
) = range(20)

PAL_STATE_COUNT = 20


def _build_table() -> np.ndarray:
    t = {}
    # drift right forever on don't-care entries so accidental reachability
    # shows up as divergence, never as a wrong verdict
    for s in range(PAL_STATE_COUNT):
        for sym in (0, 1, _B):
            t[s, sym] = (s, sym, R)

    t[INIT, 0] = (GO_L0, 0, L)
    t[INIT, 1] = (GO_L1, 1, L)
    t[INIT, _B] = (FIN, 1, R)  # empty input: accept immediately

    t[GO_L0, _B] = (BACK0, 1, R)  # plant landmark at cell -1
    t[GO_L1, _B] = (BACK1, 1, R)
    t[BACK0, 0] = (SCAN0, _B, R)  # consume remembered left symbol
    t[BACK1, 1] = (SCAN1, _B, R)

    for scan, check in ((SCAN0, CHECK0), (SCAN1, CHECK1)):
        t[scan, 0] = (scan, 0, R)
        t[scan, 1] = (scan, 1, R)
        t[scan, _B] = (check, _B, L)

    t[CHECK0, 0] = (RET, _B, L)  # match: consume right end
    t[CHECK0, 1] = (RET_T, _B, L)  # mismatch: consume and taint
    t[CHECK0, _B] = (SEEK_A, _B, L)  # odd middle consumed: accept
    t[CHECK1, 1] = (RET, _B, L)
    t[CHECK1, 0] = (RET_T, _B, L)
    t[CHECK1, _B] = (SEEK_A, _B, L)

    t[RET, 0] = (RET, 0, L)
    t[RET, 1] = (RET, 1, L)
    t[RET, _B] = (ST, _B, R)
    t[RET_T, 0] = (RET_T, 0, L)
    t[RET_T, 1] = (RET_T, 1, L)
    t[RET_T, _B] = (ST_T, _B, R)

    t[ST, 0] = (SCAN0, _B, R)
    t[ST, 1] = (SCAN1, _B, R)
    t[ST, _B] = (SEEK_A, _B, L)  # everything consumed cleanly

    t[ST_T, 0] = (SCAN_T, _B, R)
    t[ST_T, 1] = (SCAN_T, _B, R)
    t[ST_T, _B] = (SEEK_R, _B, L)
    t[SCAN_T, 0] = (SCAN_T, 0, R)
    t[SCAN_T, 1] = (SCAN_T, 1, R)
    t[SCAN_T, _B] = (CHECK_T, _B, L)
    t[CHECK_T, 0] = (RET_T, _B, L)
    t[CHECK_T, 1] = (RET_T, _B, L)
    t[CHECK_T, _B] = (SEEK_R, _B, L)

    t[SEEK_A, _B] = (SEEK_A, _B, L)
    t[SEEK_A, 1] = (W_ACC, _B, R)  # landmark found, erase it
    t[SEEK_R, _B] = (SEEK_R, _B, L)
    t[SEEK_R, 1] = (W_REJ, _B, R)

    t[W_ACC, _B] = (FIN, 1, R)  # verdict at cell 0
    t[W_REJ, _B] = (FIN, 0, R)
    for sym in (0, 1, _B):
        t[FIN, sym] = (HALT, sym, L)  # step back onto cell 0 and halt

    table = np.zeros((PAL_STATE_COUNT * 3, 3), dtype=np.int16)
    for (s, sym), (nxt, wr, mv) in t.items():
        table[s * 3 + sym] = (nxt, wr, mv)
    table.setflags(write=False)
    return table


PAL_TABLE = _build_table()


@dataclass(frozen=True)
class Trace:
    """Full run record: T steps, T+1 head positions and states, verdict."""

    input: str
    steps: int
    head_path: np.ndarray
    state_path: np.ndarray
    accepted: bool


@dataclass(frozen=True)
class CrossingSequence:
    cell: int  # boundary between cell and cell+1
    states: tuple[int, ...]


def _budget_for(n: int) -> ExecBudget:
    # zig-zag cost is about n^2/2 + O(n); leave generous headroom
    return ExecBudget(2 * (n + 4) ** 2 + 64, n + 8)


def run_palindrome_tm(x: str) -> Trace:
    """Run the recognizer on ``x``; always halts, head ends on cell 0."""
    outcome, heads, states = run_table_trace(PAL_TABLE, x, _budget_for(len(x)))
    if not outcome.halted:
        raise AssertionError("palindrome machine failed to halt within its budget")
    return Trace(x, outcome.steps, heads, states, outcome.output == "1")


def palindrome_accepts(x: str) -> bool:
    """Verdict only, skipping trace recording (bulk checks)."""
    out = run_table(PAL_TABLE, x, _budget_for(len(x)))
    return out.output == "1"


def crossing_sequences(trace: Trace) -> list[CrossingSequence]:
    """Crossing sequences of all boundaries the head crossed, by boundary index."""
    crossings: dict[int, list[int]] = {}
    heads = trace.head_path
    states = trace.state_path
    for t in range(1, trace.steps + 1):
        boundary = int(min(heads[t - 1], heads[t]))
        crossings.setdefault(boundary, []).append(int(states[t]))
    return [CrossingSequence(cell, tuple(sts)) for cell, sts in sorted(crossings.items())]


@dataclass(frozen=True)
class QuadraticReport:
    n_values: tuple[int, ...]
    mean_steps: tuple[float, ...]
    doubling_ratios: tuple[float, ...]
    slope: float | None  # log-log least-squares slope; None for a single n


def quadratic_report(n_values, trials: int, seed: int) -> QuadraticReport:
    """Mean running time over random inputs per length, with growth diagnostics."""
    import random

    n_values = tuple(sorted(n_values))
    rng = random.Random(seed)
    means = []
    for n in n_values:
        total = 0
        for _ in range(trials):
            x = "".join(rng.choice("01") for _ in range(n))
            out = run_table(PAL_TABLE, x, _budget_for(n))
            total += out.steps
        means.append(total / trials)
    ratios = tuple(
        means[i + 1] / means[i]
        for i in range(len(n_values) - 1)
        if n_values[i + 1] == 2 * n_values[i]
    )
    slope = None
    if len(n_values) >= 2:
        xs = [log(n) for n in n_values]
        ys = [log(m) for m in means]
        mx, my = sum(xs) / len(xs), sum(ys) / len(ys)
        slope = sum((a - mx) * (b - my) for a, b in zip(xs, ys)) / sum(
            (a - mx) ** 2 for a in xs
        )
    return QuadraticReport(n_values, tuple(means), ratios, slope)
