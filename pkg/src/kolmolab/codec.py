"""Self-delimiting encodings of bit strings and pairs.

Bit strings are plain Python ``str`` objects over the characters '0' and '1'
(the empty string is allowed).  Three pair-coding schemes are provided, each
turning a pair (u, v) into a single bit string from which both components can
be recovered by a left-to-right scan:

  level 1:  pad(u) 1 v                    cost 2|u| + |v| + 1
  level 2:  pad(bin(|u|)) 1 u v           cost |u| + |v| + 2*floor(log2 |u|) + 3
  level 3:  pad(bin(|bin(|u|)|)) 1 bin(|u|)-sans-leading-1 u v

``pad`` doubles a string by inserting a 0 in front of every symbol, so the
first 1 found at an odd position (1-indexed) marks the end of the padded
region.  Level schemes 2 and 3 shrink the overhead from linear to logarithmic
and log-log by padding length headers instead of the payload.  At level 3 the
numeral bin(|u|) starts with 1 whenever |u| >= 1 and its length is already
known from the header, so the leading 1 is dropped; this makes the level-3
cost exactly |u| + |v| + floor(log2 |u|) + 2*floor(log2(1 + floor(log2 |u|))) + 3.
An empty u is coded with header numeral "0" (no inner numeral follows).

The level-2 code of (q, "") is a prefix-free framing of q; the prefix-free
machinery builds on it.
"""

from __future__ import annotations

__all__ = [
    "DecodeError",
    "check_bits",
    "pad",
    "bin_nat",
    "encode_pair",
    "decode_pair",
    "pair_code_len",
]


class DecodeError(ValueError):
    """Raised when a bit string is not a well-formed pair code."""


def check_bits(s: str) -> str:
    """Validate that ``s`` contains only '0'/'1' characters and return it."""
    if s.strip("01"):
        raise ValueError(f"not a bit string: {s!r}")
    return s


def pad(u: str) -> str:
    """Insert a new 0 in front of every symbol of ``u``.

    pad("01011") == "0001000101"; the result has length 2|u| and carries the
    symbols of u at even positions (1-indexed), with 0 at every odd position.
    """
    return "".join("0" + c for c in u)


def bin_nat(n: int) -> str:
    """MSB-first binary numeral of ``n`` with no leading zeros; bin_nat(0) == "0".

    For n >= 1 the length is 1 + floor(log2 n).
    """
    if n < 0:
        raise ValueError("natural number required")
    return format(n, "b")


def _split_at_odd_one(w: str) -> tuple[str, str]:
    # Returns (padded_region, rest_after_marker).  The marker is the first 1
    # at an odd 1-indexed position, i.e. an even 0-based index.
    for i in range(0, len(w), 2):
        if w[i] == "1":
            return w[:i], w[i + 1 :]
    raise DecodeError("no 1 at an odd position: cannot locate end of padding")


def _unpad(padded: str) -> str:
    # padded region has even length; symbols sit at odd 0-based indices
    return padded[1::2]


def encode_pair(level: int, u: str, v: str) -> str:
    """Encode the pair (u, v) at the given level (1, 2 or 3)."""
    if level == 1:
        return pad(u) + "1" + v
    if level == 2:
        return pad(bin_nat(len(u))) + "1" + u + v
    if level == 3:
        if not u:
            return pad("0") + "1" + v
        nu = bin_nat(len(u))
        return pad(bin_nat(len(nu))) + "1" + nu[1:] + u + v
    raise ValueError(f"level must be 1, 2 or 3, got {level}")


def decode_pair(level: int, w: str) -> tuple[str, str]:
    """Inverse of :func:`encode_pair`; raises :class:`DecodeError` on malformed input."""
    padded, rest = _split_at_odd_one(w)
    if level == 1:
        return _unpad(padded), rest
    if level == 2:
        numeral = _unpad(padded)
        if not numeral:
            raise DecodeError("empty length numeral")
        n = int(numeral, 2)
        if len(rest) < n:
            raise DecodeError(f"declared length {n} exceeds remaining {len(rest)} bits")
        return rest[:n], rest[n:]
    if level == 3:
        outer = _unpad(padded)
        if not outer:
            raise DecodeError("empty length-of-length numeral")
        k = int(outer, 2)
        if k == 0:
            return "", rest
        if len(rest) < k - 1:
            raise DecodeError(f"declared numeral length {k} exceeds remaining bits")
        numeral, rest = "1" + rest[: k - 1], rest[k - 1 :]
        n = int(numeral, 2)
        if len(rest) < n:
            raise DecodeError(f"declared length {n} exceeds remaining {len(rest)} bits")
        return rest[:n], rest[n:]
    raise ValueError(f"level must be 1, 2 or 3, got {level}")


def pair_code_len(level: int, len_u: int, len_v: int) -> int:
    """Exact output length of encode_pair for component lengths (len_u, len_v).

    Matches the closed forms 2|u|+|v|+1, |u|+|v|+2*floor(log2|u|)+3 and
    |u|+|v|+floor(log2|u|)+2*floor(log2(1+floor(log2|u|)))+3 when |u| >= 1;
    the bin_nat(0) == "0" convention covers |u| == 0.
    """
    if level == 1:
        return 2 * len_u + len_v + 1
    if level == 2:
        return 2 * len(bin_nat(len_u)) + 1 + len_u + len_v
    if level == 3:
        if len_u == 0:
            return 3 + len_v
        nu = len(bin_nat(len_u))
        return 2 * len(bin_nat(nu)) + 1 + (nu - 1) + len_u + len_v
    raise ValueError(f"level must be 1, 2 or 3, got {level}")
