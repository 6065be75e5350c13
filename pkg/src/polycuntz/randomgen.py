"""Seeded random unitaries for cross-validation corpora."""

from __future__ import annotations

import random

from .errors import InfeasibleSizeError
from .poly import PolyMap, PolyUnitary, check_unitary
from .words import Word


def feasible_size(n: int, r: int) -> int:
    """Smallest size >= r a complete prefix code over n letters can have."""
    if r <= 1:
        return 1
    while (r - 1) % (n - 1):
        r += 1
    return r


def random_code(n: int, r: int, max_len: int, rng: random.Random) -> list[Word]:
    """Grow a complete prefix code of size r by splitting random leaves."""
    leaves: list[Word] = [()]
    while len(leaves) < r:
        open_ = [w for w in leaves if len(w) < max_len]
        w = rng.choice(open_)
        leaves.remove(w)
        leaves.extend(w + (i,) for i in range(1, n + 1))
    return sorted(leaves)


def random_unitary(n: int, r: int, max_len: int, seed: int) -> PolyUnitary:
    r = feasible_size(n, max(r, 1))
    if r > n**max_len:
        raise InfeasibleSizeError(f"no complete code of size {r} within length {max_len} over {n} letters")
    rng = random.Random(seed)
    left = random_code(n, r, max_len, rng)
    right = random_code(n, r, max_len, rng)
    rng.shuffle(right)
    return check_unitary(PolyMap(n, list(zip(left, right))))
