"""Cantor pairing, nested tuples, list codes and the tagged code space.

Everything downstream (indices, language codes, learner hypotheses) is a
plain ``int``; this module owns the arithmetic that packs structure into
those ints and gets it back out.
"""

from __future__ import annotations

import enum
import math
from collections.abc import Iterable, Sequence


def pair(x: int, y: int) -> int:
    """Cantor pairing: (x+y)(x+y+1)/2 + y.  Bijective N^2 -> N and strictly
    monotone in each argument."""
    s = x + y
    return s * (s + 1) // 2 + y


def unpair(z: int) -> tuple[int, int]:
    """Inverse of :func:`pair`."""
    w = (math.isqrt(8 * z + 1) - 1) // 2
    y = z - w * (w + 1) // 2
    return w - y, y


def proj1(z: int) -> int:
    return unpair(z)[0]


def proj2(z: int) -> int:
    return unpair(z)[1]


def triple(e: int, p: int, i: int) -> int:
    """Three-component code, right-nested: <e, <p, i>>."""
    return pair(e, pair(p, i))


def components(z: int) -> tuple[int, int, int]:
    """Inverse of :func:`triple`."""
    e, rest = unpair(z)
    p, i = unpair(rest)
    return e, p, i


def encode_list(items: Sequence[int]) -> int:
    """Injective code for finite int tuples; 0 is the empty tuple.

    Each element's binary digits are doubled (0 -> 00, 1 -> 11) and closed
    with the terminator 01; a leading 1 preserves the digit stream.  Unlike
    iterated pairing, the code grows linearly in the total bit length, so
    large sets stay tractable.
    """
    if not items:
        return 0
    bits = ["1"]
    for x in items:
        for b in format(x, "b"):
            bits.append("00" if b == "0" else "11")
        bits.append("01")
    return int("".join(bits), 2)


def decode_list(code: int) -> tuple[int, ...]:
    """Left inverse of :func:`encode_list`; total (malformed digit pairs
    act as element terminators, dangling bits are dropped)."""
    if code <= 0:
        return ()
    stream = format(code, "b")[1:]
    out: list[int] = []
    digits = ""
    for k in range(0, len(stream) - len(stream) % 2, 2):
        d = stream[k:k + 2]
        if d == "00":
            digits += "0"
        elif d == "11":
            digits += "1"
        else:
            out.append(int(digits, 2) if digits else 0)
            digits = ""
    if digits:
        out.append(int(digits, 2))
    return tuple(out)


def encode_set(elements: Iterable[int]) -> int:
    """Canonical code for a finite set: the list code of its sorted
    elements.  Injective on finite sets."""
    return encode_list(sorted(set(elements)))


def decode_set(code: int) -> frozenset[int]:
    return frozenset(decode_list(code))


class Tag(enum.IntEnum):
    """Partition of the code space.  Values are part of the trace format
    and must never change."""

    FIN = 0
    PAD = 1
    REG = 2
    PROG = 3
    PLAIN = 4


def encode(tag: Tag, payload: int) -> int:
    return pair(int(tag), payload)


def decode(code: int) -> tuple[Tag, int]:
    """Inverse of :func:`encode`.  Raises ValueError off the tagged range."""
    t, payload = unpair(code)
    if t > max(Tag):
        raise ValueError(f"code {code} carries unknown tag {t}")
    return Tag(t), payload


def tag_of(code: int) -> Tag:
    t, _ = unpair(code)
    return Tag(t) if t <= max(Tag) else Tag.PLAIN
