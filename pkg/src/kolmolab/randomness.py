"""Sequence sources, frequency/selection tests, LIL statistic, finite Martin-Löf tests.

Sources are deterministic replayable bit streams (a seeded PRNG, named
computable rules, or a file of ASCII bits) read either by prefix or through a
cursor.  Place-selection rules decide from the prefix a_0..a_k whether the
next bit a_{k+1} joins the selected subsequence, the computable-rule reading
of von Mises' admissibility; rules can also be machine indices run with a
step cap, and a rule that exceeds its cap invalidates the run loudly rather
than guessing.

Finite-stage Martin-Löf tests are word families u_{n,m} (m below a cutoff)
whose level-n union must have exact measure at most 2^-n; the bound is
verified with exact dyadic arithmetic when the test is loaded, and evaluation
returns a per-level verdict: Caught (with the witnessing word), Escaped (no
generated word is compatible with the observed prefix), or Undetermined.
Verdicts are relative to the cutoff and the observed prefix length; nothing
here can certify a source random.
"""

from __future__ import annotations

import json
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .machines import DEFAULT_CELLS, ExecBudget, run

__all__ = [
    "SourceExhausted",
    "RuleStepCapExceeded",
    "MeasureBoundViolation",
    "SequenceSource",
    "PrngSource",
    "RuleSource",
    "FileBitsSource",
    "source_from_spec",
    "SelectionRule",
    "rule_from_spec",
    "frequency_stats",
    "select_subsequence",
    "lil_statistic",
    "cylinder_measure",
    "FiniteMLTest",
    "Verdict",
    "ml_test_eval",
]


class SourceExhausted(ValueError):
    """A finite source was asked for more bits than it holds."""


class RuleStepCapExceeded(RuntimeError):
    """A machine-backed selection rule ran out of steps on some prefix."""


class MeasureBoundViolation(ValueError):
    """A Martin-Löf test level exceeds its 2^-n measure budget."""


# ---------------------------------------------------------------------------
# sources
# ---------------------------------------------------------------------------


class SequenceSource:
    """Deterministic bit stream with prefix access and a read cursor."""

    name = "source"

    def __init__(self):
        self._cache = ""
        self._pos = 0

    def _extend_to(self, n: int) -> None:
        raise NotImplementedError

    def prefix(self, n: int) -> str:
        if len(self._cache) < n:
            self._extend_to(n)
        if len(self._cache) < n:
            raise SourceExhausted(f"{self.name}: only {len(self._cache)} bits available")
        return self._cache[:n]

    def take(self, k: int) -> str:
        out = self.prefix(self._pos + k)[self._pos :]
        self._pos += k
        return out

    def reset(self) -> None:
        self._pos = 0


class PrngSource(SequenceSource):
    """Mersenne-Twister bits; same seed, same stream, forever.

    Bits are drawn in fixed 64-bit blocks so the stream does not depend on
    the access pattern.
    """

    BLOCK = 64

    def __init__(self, seed: int):
        super().__init__()
        self.seed = seed
        self.name = f"prng:{seed}"
        self._rng = random.Random(seed)

    def _extend_to(self, n: int) -> None:
        blocks = [self._cache]
        have = len(self._cache)
        while have < n:
            blocks.append(format(self._rng.getrandbits(self.BLOCK), f"0{self.BLOCK}b"))
            have += self.BLOCK
        self._cache = "".join(blocks)


class RuleSource(SequenceSource):
    """Named computable sequences: alternating, zeros, ones, champernowne."""

    RULES = ("alternating", "zeros", "ones", "champernowne")

    def __init__(self, rule: str):
        super().__init__()
        if rule not in self.RULES:
            raise ValueError(f"unknown rule {rule!r}; known: {', '.join(self.RULES)}")
        self.name = rule
        self._next_int = 1  # champernowne position

    def _extend_to(self, n: int) -> None:
        if self.name == "alternating":
            self._cache = ("01" * (n // 2 + 1))[:n]
        elif self.name == "zeros":
            self._cache = "0" * n
        elif self.name == "ones":
            self._cache = "1" * n
        else:  # binary champernowne: concatenated numerals of 1, 2, 3, ...
            while len(self._cache) < n:
                self._cache += format(self._next_int, "b")
                self._next_int += 1


class FileBitsSource(SequenceSource):
    """ASCII '0'/'1' file (whitespace ignored); finite, may exhaust."""

    def __init__(self, path: str):
        super().__init__()
        self.name = f"file:{path}"
        with open(path) as f:
            text = "".join(f.read().split())
        if text.strip("01"):
            raise ValueError(f"{path}: contains non-bit characters")
        self._cache = text

    def _extend_to(self, n: int) -> None:
        pass  # fully loaded at construction


def source_from_spec(spec: str) -> SequenceSource:
    """Build a source from a CLI spec: prng:SEED, file:PATH, or a rule name."""
    if spec.startswith("prng:"):
        return PrngSource(int(spec.split(":", 1)[1]))
    if spec.startswith("file:"):
        return FileBitsSource(spec.split(":", 1)[1])
    return RuleSource(spec)


# ---------------------------------------------------------------------------
# place-selection rules
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SelectionRule:
    """Total predicate on prefixes: select the next bit iff predicate(prefix)."""

    name: str
    predicate: object  # Callable[[str], bool]

    def __call__(self, prefix: str) -> bool:
        return bool(self.predicate(prefix))


def _machine_rule(e: int, step_cap: int) -> SelectionRule:
    budget = ExecBudget(step_cap, DEFAULT_CELLS)

    def predicate(prefix: str) -> bool:
        out = run(e, prefix, budget)
        if not out.halted:
            raise RuleStepCapExceeded(
                f"machine {e} exceeded {step_cap} steps on a length-{len(prefix)} prefix"
            )
        return out.output == "1"

    return SelectionRule(f"machine:{e}", predicate)


def rule_from_spec(spec: str, step_cap: int = 4096) -> SelectionRule:
    """Rules: always, never, after:PATTERN, parity-even, parity-odd, machine:E[:CAP]."""
    if spec == "always":
        return SelectionRule("always", lambda p: True)
    if spec == "never":
        return SelectionRule("never", lambda p: False)
    if spec.startswith("after:"):
        pattern = spec.split(":", 1)[1]
        if not pattern or pattern.strip("01"):
            raise ValueError("after:PATTERN needs a nonempty bit pattern")
        return SelectionRule(spec, lambda p: p.endswith(pattern))
    if spec == "parity-even":
        return SelectionRule(spec, lambda p: len(p) % 2 == 0)
    if spec == "parity-odd":
        return SelectionRule(spec, lambda p: len(p) % 2 == 1)
    if spec.startswith("machine:"):
        parts = spec.split(":")
        e = int(parts[1])
        cap = int(parts[2]) if len(parts) > 2 else step_cap
        return _machine_rule(e, cap)
    raise ValueError(f"unknown selection rule {spec!r}")


# ---------------------------------------------------------------------------
# statistics
# ---------------------------------------------------------------------------


def frequency_stats(source: SequenceSource, n: int) -> tuple[int, Fraction]:
    """(number of ones among the first n bits, exact ratio)."""
    if n < 1:
        raise ValueError("n must be >= 1")
    ones = source.prefix(n).count("1")
    return ones, Fraction(ones, n)


def select_subsequence(rule: SelectionRule, source: SequenceSource, n: int) -> str:
    """Bits a_{k+1} for exactly those k < n-1 where the rule fires on a_0..a_k."""
    bits = source.prefix(n)
    return "".join(bits[k + 1] for k in range(n - 1) if rule(bits[: k + 1]))


def lil_statistic(source: SequenceSource, n: int) -> tuple[float, float]:
    """Normalized partial sum and its iterated-logarithm ratio.

    s_star = (S_n - n/2) / sqrt(n/4), computed from the exact integer
    2*S_n - n with a single float conversion; ratio = s_star /
    sqrt(2 * ln ln n) with natural logarithms (flagged in CLI output).
    """
    if n < 16:
        raise ValueError("n must be >= 16 so that ln ln n > 0")
    ones = source.prefix(n).count("1")
    s_star = (2 * ones - n) / math.sqrt(n)
    ratio = s_star / math.sqrt(2 * math.log(math.log(n)))
    return s_star, ratio


def cylinder_measure(words) -> Fraction:
    """Exact measure of the union of cylinders I_u over the given words.

    Dominated words (those having another word as a proper prefix, and
    duplicates) are pruned; the survivors are pairwise incomparable, so their
    cylinders are disjoint and the measure is the plain sum of 2^-|u|.
    """
    kept = []
    for w in sorted(set(words), key=len):
        if all(not w.startswith(shorter) for shorter in kept):
            kept.append(w)
    return sum((Fraction(1, 2 ** len(w)) for w in kept), Fraction(0))


# ---------------------------------------------------------------------------
# finite-stage Martin-Löf tests
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    level: int
    status: str  # "caught" | "escaped" | "undetermined"
    witness: str | None = None


@dataclass(frozen=True)
class FiniteMLTest:
    """Finitely many levels of a Martin-Löf test, measure-checked at load.

    words_by_level[n] lists u_{n,m} for m below the cutoff; level n's union
    of cylinders must have exact measure <= 2^-n or the constructor refuses
    the test.  Verdicts drawn from it are cutoff-relative by construction.
    """

    words_by_level: dict[int, tuple[str, ...]]
    cutoff: int
    levels: int = field(default=0)

    def __post_init__(self):
        if not self.levels:
            object.__setattr__(self, "levels", max(self.words_by_level, default=0))
        for n, words in sorted(self.words_by_level.items()):
            if n < 1:
                raise ValueError("levels are numbered from 1")
            if any(w.strip("01") or not w for w in words):
                raise ValueError(f"level {n}: words must be nonempty bit strings")
            measure = cylinder_measure(words[: self.cutoff])
            if measure > Fraction(1, 2**n):
                raise MeasureBoundViolation(
                    f"level {n}: union measure {measure} exceeds 2^-{n}"
                )

    @classmethod
    def from_generator(cls, generator, levels: int, cutoff: int) -> "FiniteMLTest":
        """Materialize u_{n,m} = generator(n, m) for n <= levels, m < cutoff."""
        words = {}
        for n in range(1, levels + 1):
            level_words = []
            for m in range(cutoff):
                w = generator(n, m)
                if w is None:
                    break
                level_words.append(w)
            words[n] = tuple(level_words)
        return cls(words, cutoff)

    @classmethod
    def load(cls, path: str, cutoff: int | None = None) -> "FiniteMLTest":
        """Load the JSON file format {"<level>": ["word", ...], ...}."""
        with open(path) as f:
            raw = json.load(f)
        words = {int(k): tuple(v) for k, v in raw.items()}
        if cutoff is None:
            cutoff = max((len(v) for v in words.values()), default=1)
        return cls(words, cutoff)


def ml_test_eval(test: FiniteMLTest, source: SequenceSource, prefix_len: int) -> list[Verdict]:
    """Per-level verdicts of the test against the source's first prefix_len bits."""
    obs = source.prefix(prefix_len)
    verdicts = []
    for n in range(1, test.levels + 1):
        words = test.words_by_level.get(n, ())[: test.cutoff]
        caught = next((w for w in words if obs.startswith(w)), None)
        if caught is not None:
            verdicts.append(Verdict(n, "caught", caught))
        elif any(w.startswith(obs) for w in words):
            verdicts.append(Verdict(n, "undetermined"))
        else:
            verdicts.append(Verdict(n, "escaped"))
    return verdicts
