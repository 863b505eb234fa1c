"""Enumerated family of one-tape machines and the universal wrappers.

Every natural number e names a machine.  Indices 0..7 are reserved builtin
machines with native step-counted semantics; indices >= 8 decode canonically
to transition tables (the bit layout is frozen below and in
docs/machine_model.md).  The decode is total: every index yields a machine,
every table is reached by infinitely many indices.

Builtin zone:

  0  identity   output = input                                 1 step
  1  loop       never halts
  2  pair-snd   decode level-2 pair <p,y>, output y            |input|+1 steps
  3  compose    input 0^e 1 z     -> machine e run on U(z)     1 + inner steps
  4  mix        input pad(bin|p|) 1 p q -> V(q, U(p))          1 + inner steps
  5  flip       output = bitwise complement of input           |input|+1 steps
  6  pair-fst   decode level-2 pair <p,y>, output p            |input|+1 steps
  7  zero-run   input p -> 0^n where n = value of "1"+p        |p|+n+1 steps

Machine model (frozen): deterministic one-tape machines over {0,1,blank} on a
two-way infinite tape.  The input is written left-justified from cell 0, the
head starts on cell 0, and every transition (halting transitions included)
writes one symbol and moves exactly one cell left or right.  The output of a
halted run is the tape content from cell 0 up to the first blank.  Tape use
is capped at max_tape_cells in either direction; exceeding the cap, exhausting
the step budget, running a program the universal wrapper cannot parse, and
exceeding the interpreter nesting cap all surface as a StillRunning outcome
with steps == max_steps.

Only upper-bound machinery is built on top of this module: a StillRunning
outcome never certifies divergence, it only reports that this budget did not
suffice.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import codec, engine
from .engine import BLANK, HALTED

__all__ = [
    "E_ID",
    "E_LOOP",
    "E_SND",
    "E_COMP",
    "E_MIX",
    "E_FLIP",
    "E_FST",
    "E_ZEROS",
    "TABLE_ZONE_START",
    "BUILTIN_NAMES",
    "MAX_STATES",
    "NESTING_CAP",
    "DEFAULT_CELLS",
    "ResourceRefusal",
    "ExecBudget",
    "RunOutcome",
    "Machine",
    "decode_table",
    "enumerate_machine",
    "wrap_program",
    "run",
    "universal_run",
    "conditional_run",
    "run_table",
    "run_table_trace",
    "bits_to_array",
    "array_to_bits",
]

E_ID = 0
E_LOOP = 1
E_SND = 2
E_COMP = 3
E_MIX = 4
E_FLIP = 5
E_FST = 6
E_ZEROS = 7
TABLE_ZONE_START = 8

BUILTIN_NAMES = {
    E_ID: "identity",
    E_LOOP: "loop",
    E_SND: "pair-snd",
    E_COMP: "compose",
    E_MIX: "mix",
    E_FLIP: "flip",
    E_FST: "pair-fst",
    E_ZEROS: "zero-run",
}

MAX_STATES = 4096
NESTING_CAP = 64
DEFAULT_CELLS = 4096


class ResourceRefusal(RuntimeError):
    """A request exceeds a configured desk-scale cap (CLI exit code 2)."""


@dataclass(frozen=True)
class ExecBudget:
    max_steps: int
    max_cells: int = DEFAULT_CELLS

    def __post_init__(self):
        if self.max_steps < 1 or self.max_cells < 1:
            raise ValueError("budget bounds must be strictly positive")


@dataclass(frozen=True)
class RunOutcome:
    halted: bool
    output: str | None
    steps: int

    @staticmethod
    def still_running(budget: ExecBudget) -> "RunOutcome":
        return RunOutcome(False, None, budget.max_steps)


@dataclass(frozen=True)
class Machine:
    index: int
    kind: str  # "builtin" | "table"
    name: str
    n_states: int = 0
    table: np.ndarray | None = None


def bits_to_array(bits: str) -> np.ndarray:
    return np.frombuffer(bits.encode("ascii"), dtype=np.uint8) - ord("0")


def array_to_bits(arr: np.ndarray) -> str:
    return bytes((arr + ord("0")).astype(np.uint8)).decode("ascii")


# ---------------------------------------------------------------------------
# canonical table decode
#
# For e >= TABLE_ZONE_START let m = e - TABLE_ZONE_START and read m as an
# infinite little-endian bit stream (bit i = (m >> i) & 1, zeros beyond the
# binary expansion).  Consume:
#   * 1-bits, one per extra state, until a 0: n_states = (#ones) + 1
#   * then for each state s = 0..n-1 and symbol in (0, 1, blank), one field of
#     w = ceil(log2(6*(n+1))) bits (little-endian), reduced mod 6*(n+1).
# A field value v encodes: next = v//6 (0 = halt, k = state k-1),
# r = v%6, write = r//2 (2 = blank), move = r%2 (0 = L, 1 = R).
# ---------------------------------------------------------------------------


def decode_table(m: int) -> tuple[int, np.ndarray]:
    """Decode the table for table-zone offset ``m`` (total for every m >= 0)."""
    pos = 0
    n = 1
    while (m >> pos) & 1:
        n += 1
        pos += 1
        if n > MAX_STATES:
            raise ResourceRefusal(f"index decodes to more than {MAX_STATES} states")
    pos += 1
    choices = 6 * (n + 1)
    width = (choices - 1).bit_length()
    mask = (1 << width) - 1
    table = np.zeros((n * 3, 3), dtype=np.int16)
    for row in range(n * 3):
        v = ((m >> pos) & mask) % choices
        pos += width
        table[row, 0] = v // 6 - 1
        r = v % 6
        table[row, 1] = r // 2
        table[row, 2] = r % 2
    table.setflags(write=False)
    return n, table


@lru_cache(maxsize=4096)
def enumerate_machine(e: int) -> Machine:
    """Total canonical decode of index ``e`` into a Machine."""
    if e < 0:
        raise ValueError("machine index must be a natural number")
    if e < TABLE_ZONE_START:
        return Machine(index=e, kind="builtin", name=BUILTIN_NAMES[e])
    n, table = decode_table(e - TABLE_ZONE_START)
    return Machine(index=e, kind="table", name=f"table-{e}", n_states=n, table=table)


def wrap_program(e: int, p: str) -> str:
    """Universal program 0^e 1 p selecting machine e on payload p."""
    return "0" * e + "1" + p


# ---------------------------------------------------------------------------
# table execution
# ---------------------------------------------------------------------------


def _make_tape(input_bits: str, budget: ExecBudget):
    # Reachable cells after s steps lie in [-s, s]; the window additionally
    # covers the input so the output scan can cross untouched cells.
    left = min(budget.max_steps, budget.max_cells)
    right = min(max(budget.max_steps, len(input_bits)), budget.max_cells)
    tape = np.full(left + right + 1, BLANK, dtype=np.uint8)
    if input_bits:
        tape[left : left + len(input_bits)] = bits_to_array(input_bits)
    return tape, left


def run_table(table: np.ndarray, input_bits: str, budget: ExecBudget) -> RunOutcome:
    """Run an explicit transition table on ``input_bits``."""
    if len(input_bits) > budget.max_cells:
        return RunOutcome.still_running(budget)
    tape, origin = _make_tape(input_bits, budget)
    status, steps, _head = engine.table_run(table, tape, origin, budget.max_steps)
    if status != HALTED:
        return RunOutcome.still_running(budget)
    n = engine.output_span(tape, origin)
    return RunOutcome(True, array_to_bits(tape[origin : origin + n]), int(steps))


def run_table_trace(
    table: np.ndarray, input_bits: str, budget: ExecBudget
) -> tuple[RunOutcome, np.ndarray, np.ndarray]:
    """Like :func:`run_table` but also returns (head_path, state_path).

    Both arrays have length steps+1; state_path[t] is the state entered after
    step t (-1 once halted), head_path[t] the head position relative to cell 0.
    """
    if len(input_bits) > budget.max_cells:
        raise ResourceRefusal("input exceeds the tape cap; nothing to trace")
    tape, origin = _make_tape(input_bits, budget)
    head_path = np.zeros(budget.max_steps + 1, dtype=np.int64)
    state_path = np.zeros(budget.max_steps + 1, dtype=np.int64)
    status, steps, _head = engine.table_run_trace(
        table, tape, origin, budget.max_steps, head_path, state_path
    )
    steps = int(steps)
    if status != HALTED:
        outcome = RunOutcome.still_running(budget)
    else:
        n = engine.output_span(tape, origin)
        outcome = RunOutcome(True, array_to_bits(tape[origin : origin + n]), steps)
    return outcome, head_path[: steps + 1] - origin, state_path[: steps + 1]


# ---------------------------------------------------------------------------
# builtin execution
# ---------------------------------------------------------------------------


def _parse_universal(q: str) -> tuple[int, str] | None:
    i = q.find("1")
    if i < 0:
        return None
    return i, q[i + 1 :]


def _run_builtin(e: int, input_bits: str, budget: ExecBudget, depth: int) -> RunOutcome:
    diverge = RunOutcome.still_running(budget)
    if len(input_bits) > budget.max_cells:
        return diverge

    if e == E_LOOP:
        return diverge

    if e == E_ID:
        if budget.max_steps < 1:
            return diverge
        return RunOutcome(True, input_bits, 1)

    if e == E_FLIP:
        cost = len(input_bits) + 1
        if budget.max_steps < cost:
            return diverge
        flipped = input_bits.translate(str.maketrans("01", "10"))
        return RunOutcome(True, flipped, cost)

    if e in (E_SND, E_FST):
        try:
            p, y = codec.decode_pair(2, input_bits)
        except codec.DecodeError:
            return diverge
        cost = len(input_bits) + 1
        if budget.max_steps < cost:
            return diverge
        return RunOutcome(True, y if e == E_SND else p, cost)

    if e == E_ZEROS:
        n = int("1" + input_bits, 2)
        cost = len(input_bits) + n + 1
        if n > budget.max_cells or budget.max_steps < cost:
            return diverge
        return RunOutcome(True, "0" * n, cost)

    if e == E_COMP:
        # E(comp, 0^e 1 z) = E(e, U(z)); one parse step, then both stages
        # draw on the remaining step budget.
        parsed = _parse_universal(input_bits)
        if parsed is None or depth >= NESTING_CAP or budget.max_steps < 2:
            return diverge
        inner_e, z = parsed
        first = universal_run(
            z, ExecBudget(budget.max_steps - 1, budget.max_cells), _depth=depth + 1
        )
        if not first.halted:
            return diverge
        rest = budget.max_steps - 1 - first.steps
        if rest < 1:
            return diverge
        second = run(
            inner_e, first.output, ExecBudget(rest, budget.max_cells), _depth=depth + 1
        )
        if not second.halted:
            return diverge
        return RunOutcome(True, second.output, 1 + first.steps + second.steps)

    if e == E_MIX:
        # input pad(bin|p|) 1 p q: run U(p) = y, then the conditional
        # universal on (q, y).
        if depth >= NESTING_CAP or budget.max_steps < 2:
            return diverge
        try:
            padded, rest = codec._split_at_odd_one(input_bits)
            numeral = padded[1::2]
            if not numeral:
                return diverge
            plen = int(numeral, 2)
            if len(rest) < plen:
                return diverge
        except codec.DecodeError:
            return diverge
        p, q = rest[:plen], rest[plen:]
        first = universal_run(
            p, ExecBudget(budget.max_steps - 1, budget.max_cells), _depth=depth + 1
        )
        if not first.halted:
            return diverge
        rest_steps = budget.max_steps - 1 - first.steps
        if rest_steps < 1:
            return diverge
        second = conditional_run(
            q, first.output, ExecBudget(rest_steps, budget.max_cells), _depth=depth + 1
        )
        if not second.halted:
            return diverge
        return RunOutcome(True, second.output, 1 + first.steps + second.steps)

    raise ValueError(f"not a builtin index: {e}")


# ---------------------------------------------------------------------------
# the enumerated family and the universal wrappers
# ---------------------------------------------------------------------------


def run(e: int, input_bits: str, budget: ExecBudget, _depth: int = 0) -> RunOutcome:
    """Run machine ``e`` on ``input_bits`` under ``budget``.

    Deterministic; budget exhaustion is a normal StillRunning outcome.  A
    Halted outcome is stable: re-running with any larger step budget returns
    the same output and step count.
    """
    machine = enumerate_machine(e)
    if machine.kind == "builtin":
        return _run_builtin(e, input_bits, budget, _depth)
    return run_table(machine.table, input_bits, budget)


def iter_table_trace(table: np.ndarray, input_bits: str, budget: ExecBudget):
    """Yield the configuration before each step: dicts with step, state, head, sym.

    Plain-Python replay for interactive tracing; the jitted kernels stay the
    execution path everywhere else.
    """
    if len(input_bits) > budget.max_cells:
        return
    tape = {i: int(c) for i, c in enumerate(input_bits)}
    head, state = 0, 0
    for step in range(1, budget.max_steps + 1):
        sym = tape.get(head, BLANK)
        yield {"step": step, "state": state, "head": head, "sym": "01_"[sym]}
        nxt, wr, mv = (int(v) for v in table[state * 3 + sym])
        tape[head] = wr
        head += 1 if mv == 1 else -1
        if nxt < 0:
            return
        if abs(head) > budget.max_cells:
            return
        state = nxt


def universal_run(q: str, budget: ExecBudget, _depth: int = 0) -> RunOutcome:
    """Parse q as 0^e 1 p and run machine e on p; no 1 in q means divergence.

    The parse is free: outcome, output and step count equal run(e, p, budget).
    """
    parsed = _parse_universal(q)
    if parsed is None:
        return RunOutcome.still_running(budget)
    e, p = parsed
    return run(e, p, budget, _depth)


def conditional_run(q: str, y: str, budget: ExecBudget, _depth: int = 0) -> RunOutcome:
    """Conditional universal: parse q as 0^e 1 p, run machine e on <p, y>.

    The pair argument is passed through the level-2 codec; building it is part
    of the calling convention, not of the step count.
    """
    parsed = _parse_universal(q)
    if parsed is None:
        return RunOutcome.still_running(budget)
    e, p = parsed
    return run(e, codec.encode_pair(2, p, y), budget, _depth)
