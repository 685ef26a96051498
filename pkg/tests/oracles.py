"""Independent oracles the test suite checks the library against.

These deliberately avoid the library's own closed forms: the reachability
oracle enumerates presentations outright, and the pairing oracle inverts by
linear search.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from limitlab.textkit import PAUSE, content

ALPHABET = (0, 1, 2, 3, PAUSE)
MAX_LEN = 6


@lru_cache(maxsize=1)
def reachable_state_pairs() -> frozenset[tuple]:
    """All ((D,t),(D',t')) with some presentation over {0..3,#} of length
    <= 6 whose length-t prefix has content D and length-t' prefix content D'."""
    found = set()
    for t2 in range(MAX_LEN + 1):
        for seq in itertools.product(ALPHABET, repeat=t2):
            c2 = content(seq)
            for t in range(t2 + 1):
                found.add((content(seq[:t]), t, c2, t2))
    return frozenset(found)


def pair_by_search(z: int, limit: int = 2000) -> tuple[int, int]:
    """Invert the diagonal pairing by walking the diagonals."""
    for s in range(limit):
        base = s * (s + 1) // 2
        if base <= z <= base + s:
            y = z - base
            return s - y, y
    raise ValueError(f"no preimage below diagonal {limit}")


def all_states(max_t: int = MAX_LEN):
    for t in range(max_t + 1):
        for bits in itertools.product((0, 1), repeat=4):
            yield frozenset(i for i, b in enumerate(bits) if b), t
