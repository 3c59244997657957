"""Seeded random inputs shared by the verify suites and the tests."""

from __future__ import annotations

import random
from typing import Tuple

from .freegroup import (
    Word,
    conjugate,
    is_cyclically_reduced,
    primitive_root,
    reduce,
)


def random_reduced_word(rng: random.Random, rank: int, length: int) -> Word:
    """Uniform-ish reduced word of exactly ``length`` letters."""
    out = []
    while len(out) < length:
        a = rng.choice([s * k for k in range(1, rank + 1) for s in (1, -1)])
        if out and out[-1] == -a:
            continue
        out.append(a)
    return tuple(out)


def random_cyclic_word(rng: random.Random, rank: int, max_len: int,
                       primitive: bool = False, min_len: int = 1) -> Word:
    """Nontrivial cyclically reduced word with ``min_len <= |w| <= max_len``."""
    while True:
        w = random_reduced_word(rng, rank, rng.randint(min_len, max_len))
        if not is_cyclically_reduced(w):
            continue
        if primitive and primitive_root(w)[1] != 1:
            continue
        return w


def conjugacy_instance(rng: random.Random, rank: int = 2, max_len: int = 5,
                       conj_len: int = 6) -> Tuple[Word, Word, Word, Word]:
    """``(x, y, x2, y2)`` with nontrivial entries of length <= ``max_len``.

    A third are planted positives (``x2, y2`` are a common conjugate of
    ``x, y`` by a word of length <= ``conj_len``), a third keep ``x2``
    conjugate to ``x`` but pair it with an unrelated ``y2``, and the rest are
    unconstrained.
    """
    def word():
        while True:
            w = random_reduced_word(rng, rank, rng.randint(1, max_len))
            if w:
                return w

    x, y = word(), word()
    kind = rng.randrange(3)
    if kind == 0:
        g = random_reduced_word(rng, rank, rng.randint(0, conj_len))
        return x, y, conjugate(g, x), conjugate(g, y)
    if kind == 1:
        g = random_reduced_word(rng, rank, rng.randint(0, conj_len // 2))
        h = random_reduced_word(rng, rank, rng.randint(0, conj_len // 2))
        return x, y, conjugate(g, x), conjugate(h, y)
    return x, y, word(), word()


def random_conjugator(rng: random.Random, rank: int, max_len: int) -> Word:
    return reduce(random_reduced_word(rng, rank, rng.randint(0, max_len)))
