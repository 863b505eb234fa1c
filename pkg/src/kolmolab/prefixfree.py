"""Prefix-free lift of the universal machine, Kraft sums and the halting probability.

A program q is lifted to the framed string pad(bin(|q|)) 1 q (the level-2
pair code of (q, "")).  Framed strings are self-delimiting, so the set of
well-formed frames — and hence the halting domain of the lifted machine — is
prefix-free.  The lifted machine behaves exactly like the universal machine
on the inner program and diverges on anything that is not a whole frame.

All measure arithmetic is exact: sums of 2^-|w| are Fractions whose
denominators are powers of two (floats are never used on these paths).  The
halting-probability estimate is a certified lower bound that grows
monotonically with the horizon; its digits are reported only relative to the
horizon that produced them, never as converged.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import codec
from .complexity import MAX_SEARCH_LEN, ComplexityBound
from .machines import DEFAULT_CELLS, ExecBudget, ResourceRefusal, universal_run

__all__ = [
    "PrefixProgram",
    "OmegaEstimate",
    "lift_to_prefix",
    "parse_frame",
    "prefix_universal_run",
    "framed_programs",
    "estimate_h",
    "kraft_sum",
    "omega_estimate",
    "dyadic_digits",
]


@dataclass(frozen=True)
class PrefixProgram:
    framed: str
    inner: str


@dataclass(frozen=True)
class OmegaEstimate:
    """Monotone-from-below partial sum of 2^-|w| over halting framed programs.

    value is an exact, certified lower bound on the machine's halting
    probability (a property of the machine, not of any string's complexity).
    contributing counts the framed programs found halting within the horizon.
    """

    value: Fraction
    horizon: int
    contributing: int


def lift_to_prefix(q: str) -> PrefixProgram:
    """Frame ``q`` self-delimitingly; |framed| = |q| + 2*floor(log2 |q|) + 3 for |q| >= 1."""
    return PrefixProgram(codec.encode_pair(2, q, ""), q)


def parse_frame(w: str) -> str | None:
    """Inner program of a well-formed frame, or None.

    Exactly the canonical frames are accepted: no slack bits after the inner
    program and no leading zeros in the length numeral (the level-2 decoder
    alone would tolerate both, which would enlarge the halting domain beyond
    the lifted set).
    """
    try:
        q, rest = codec.decode_pair(2, w)
    except codec.DecodeError:
        return None
    if rest != "" or codec.encode_pair(2, q, "") != w:
        return None
    return q


def prefix_universal_run(w: str, budget: ExecBudget):
    """Run the prefix-free lift: a whole frame delegates to the universal machine.

    Malformed frames diverge (StillRunning at any budget), which is what
    keeps the halting domain prefix-free.
    """
    from .machines import RunOutcome

    q = parse_frame(w)
    if q is None:
        return RunOutcome.still_running(budget)
    return universal_run(q, budget)


def framed_programs(max_framed_len: int):
    """All (framed, inner) with |framed| <= max_framed_len, shortest inner first."""
    inner_len = 0
    while codec.pair_code_len(2, inner_len, 0) <= max_framed_len:
        if inner_len == 0:
            yield lift_to_prefix("")
        else:
            for k in range(2**inner_len):
                yield lift_to_prefix(format(k, f"0{inner_len}b"))
        inner_len += 1


def estimate_h(
    x: str,
    horizon: int,
    max_cells: int = DEFAULT_CELLS,
    search_cap: int = MAX_SEARCH_LEN,
) -> ComplexityBound | None:
    """Staged upper bound on prefix complexity: min |w| over frames halting on x.

    The witness is the framed program; bound == len(witness).  Framed length
    grows with inner length, so the first hit in inner length-then-lex order
    is the shortest, lexicographically least frame.  As with the plain
    estimator, None means not found at this horizon, never "complex".
    """
    budget = ExecBudget(horizon, max_cells)
    inner_len = 0
    while codec.pair_code_len(2, inner_len, 0) <= horizon:
        if inner_len > search_cap:
            raise ResourceRefusal(
                f"no framed witness with inner length <= {search_cap}; refusing "
                f"to exhaust longer programs for horizon {horizon}"
            )
        inners = [""] if inner_len == 0 else (
            format(k, f"0{inner_len}b") for k in range(2**inner_len)
        )
        for q in inners:
            out = universal_run(q, budget)
            if out.halted and out.output == x:
                w = codec.encode_pair(2, q, "")
                return ComplexityBound(x, len(w), w, horizon, "prefix")
        inner_len += 1
    return None


def kraft_sum(horizon: int, max_cells: int = DEFAULT_CELLS) -> Fraction:
    """Exact sum of 2^-|w| over distinct framed programs halting within the horizon.

    Always < 1: the halting frames are a prefix-free set, so the partial sums
    are dominated by the Kraft bound.
    """
    return omega_estimate(horizon, max_cells).value


def omega_estimate(horizon: int, max_cells: int = DEFAULT_CELLS) -> OmegaEstimate:
    """Lower bound on the lifted machine's halting probability at this horizon."""
    budget = ExecBudget(horizon, max_cells)
    total = Fraction(0)
    contributing = 0
    for prog in framed_programs(horizon):
        out = universal_run(prog.inner, budget)
        if out.halted:
            total += Fraction(1, 2 ** len(prog.framed))
            contributing += 1
    return OmegaEstimate(total, horizon, contributing)


def dyadic_digits(value: Fraction, count: int) -> str:
    """First ``count`` binary digits after the point of a dyadic in [0, 1)."""
    if not 0 <= value < 1:
        raise ValueError("expected a value in [0, 1)")
    num, den = value.numerator, value.denominator
    out = []
    for _ in range(count):
        num *= 2
        out.append("1" if num >= den else "0")
        if num >= den:
            num -= den
    return "".join(out)
