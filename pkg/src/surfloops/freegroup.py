"""Words in a finitely generated free group.

A letter is a nonzero int: ``k`` stands for the generator ``a<k>`` and ``-k``
for its inverse ``A<k>``. A word is a tuple of letters. Functions that return
words always return freely reduced tuples.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Tuple

Word = Tuple[int, ...]

EMPTY: Word = ()


class FreeGroupError(ValueError):
    pass


def letter_key(letter: int) -> int:
    # a1 < A1 < a2 < A2 < ...
    return 2 * abs(letter) + (letter < 0)


def reduce(raw: Iterable[int], rank: Optional[int] = None) -> Word:
    """Freely reduce a sequence of letters.

    >>> reduce([1, -1, 2])
    (2,)
    >>> reduce([3, 1, -2, 2, -1])
    (3,)
    """
    out: list = []
    for letter in raw:
        if letter == 0 or (rank is not None and abs(letter) > rank):
            raise FreeGroupError(f"letter {letter} outside rank {rank}")
        if out and out[-1] == -letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def invert(w: Sequence[int]) -> Word:
    return tuple(-x for x in reversed(w))


def multiply(*words: Sequence[int]) -> Word:
    out: list = []
    for w in words:
        for letter in w:
            if out and out[-1] == -letter:
                out.pop()
            else:
                out.append(letter)
    return tuple(out)


def conjugate(g: Sequence[int], w: Sequence[int]) -> Word:
    """Return ``g w g^-1``."""
    return multiply(g, w, invert(g))


def power(w: Sequence[int], k: int) -> Word:
    if k < 0:
        w, k = invert(w), -k
    return multiply(*([w] * k))


def is_cyclically_reduced(w: Sequence[int]) -> bool:
    if any(w[i] == -w[i + 1] for i in range(len(w) - 1)):
        return False
    return len(w) < 2 or w[0] != -w[-1]


def least_rotation(w: Sequence[int]) -> int:
    """Index of the lexicographically least rotation under ``letter_key``."""
    if not w:
        return 0
    keys = [letter_key(x) for x in w]
    n = len(keys)
    return min(range(n), key=lambda r: keys[r:] + keys[:r])


@dataclass(frozen=True, order=True)
class CyclicWord:
    """A conjugacy class, stored as the least rotation of its cyclic core.

    Build these with :func:`cyclic_word`; the constructor does not normalise.
    """

    letters: Word

    def __len__(self):
        return len(self.letters)

    def __str__(self):
        return format_word(self.letters)

    def sort_key(self):
        return (len(self.letters), [letter_key(x) for x in self.letters])


def cyclic_reduce(w: Sequence[int]) -> Tuple[CyclicWord, Word]:
    """Split ``w`` as ``conjugator * core * conjugator^-1``.

    The core is cyclically reduced and rotated into canonical position.
    """
    w = reduce(w)
    lo, hi = 0, len(w)
    while hi - lo >= 2 and w[lo] == -w[hi - 1]:
        lo += 1
        hi -= 1
    core = w[lo:hi]
    r = least_rotation(core)
    canon = core[r:] + core[:r]
    return CyclicWord(canon), multiply(w[:lo], core[:r])


def cyclic_word(w: Sequence[int]) -> CyclicWord:
    return cyclic_reduce(w)[0]


def abelianize(w: Sequence[int], rank: int) -> Tuple[int, ...]:
    vec = [0] * rank
    for letter in w:
        if abs(letter) > rank:
            raise FreeGroupError(f"letter {letter} outside rank {rank}")
        vec[abs(letter) - 1] += 1 if letter > 0 else -1
    return tuple(vec)


def are_conjugate(x: Sequence[int], y: Sequence[int]) -> Optional[Word]:
    """Return some ``d`` with ``d x d^-1 == y``, or None."""
    cx, gx = cyclic_reduce(x)
    cy, gy = cyclic_reduce(y)
    if cx != cy:
        return None
    return multiply(gy, invert(gx))


def _period(core: Word) -> int:
    n = len(core)
    for d in range(1, n + 1):
        if n % d == 0 and core == core[:d] * (n // d):
            return d
    return n


def primitive_root(x: Sequence[int]) -> Tuple[Word, int]:
    """Return ``(root, n)`` with ``x == root**n`` and ``root`` not a proper power."""
    core, c = cyclic_reduce(x)
    if not core.letters:
        raise FreeGroupError("the identity has no primitive root")
    d = _period(core.letters)
    return conjugate(c, core.letters[:d]), len(core) // d


def is_proper_power(x: Sequence[int]) -> bool:
    return primitive_root(x)[1] > 1


def power_conjugation_search(r: Sequence[int], y: Sequence[int],
                             y2: Sequence[int]) -> Optional[int]:
    """Find ``k`` with ``r^k y r^-k == y2``.

    ``r`` must be nontrivial and primitive. The search works in the frame
    where ``r`` is cyclically reduced and stops once ``|k|`` exceeds both
    ``|y| + |y2| + 1`` and the same bound measured in that frame, past which
    conjugation by a further power only lengthens the word.
    """
    r, y, y2 = reduce(r), reduce(y), reduce(y2)
    if not r:
        raise FreeGroupError("power_conjugation_search needs a nontrivial r")
    core, c = cyclic_reduce(r)
    if _period(core.letters) != len(core):
        raise FreeGroupError("power_conjugation_search needs a primitive r")
    w = core.letters
    ci = invert(c)
    yc = conjugate(ci, y)
    y2c = conjugate(ci, y2)
    bound = max(len(y) + len(y2), len(yc) + len(y2c)) + 1
    if yc == y2c:
        return 0
    up = down = yc
    wi = invert(w)
    for k in range(1, bound + 1):
        up = multiply(w, up, wi)
        if up == y2c:
            return k
        down = multiply(wi, down, w)
        if down == y2c:
            return -k
    return None


def simultaneous_conjugacy(x: Sequence[int], y: Sequence[int],
                           x2: Sequence[int], y2: Sequence[int]) -> Optional[Word]:
    """Return ``g`` with ``g x g^-1 == x2`` and ``g y g^-1 == y2``, or None."""
    return simultaneous_conjugacy_many((x, y), (x2, y2))


def simultaneous_conjugacy_many(xs: Sequence[Sequence[int]],
                                ys: Sequence[Sequence[int]]) -> Optional[Word]:
    """Tuple version of :func:`simultaneous_conjugacy`.

    A trivial entry only matches a trivial entry and imposes nothing else.
    The centraliser of the first nontrivial entry is
    cyclic, generated by its primitive root ``m``, so every candidate has the
    form ``d m^k``; the first entry not commuting with ``m`` pins ``k``.
    """
    xs = [reduce(x) for x in xs]
    ys = [reduce(y) for y in ys]
    if len(xs) != len(ys):
        return None
    if any(bool(x) != bool(y) for x, y in zip(xs, ys)):
        return None
    pairs = [(x, y) for x, y in zip(xs, ys) if x]
    xs, ys = [x for x, _ in pairs], [y for _, y in pairs]
    if not xs:
        return EMPTY
    # cheap necessary conditions: abelian image and length parity
    rank = max(abs(a) for w in xs + ys for a in w)
    for x, y in zip(xs, ys):
        if len(x) % 2 != len(y) % 2 or abelianize(x, rank) != abelianize(y, rank):
            return None
    d = are_conjugate(xs[0], ys[0])
    if d is None:
        return None
    m, _ = primitive_root(xs[0])
    k = 0
    di = invert(d)
    for x, y in zip(xs[1:], ys[1:]):
        target = conjugate(di, y)
        if multiply(m, x) == multiply(x, m):
            continue
        found = power_conjugation_search(m, x, target)
        if found is None:
            return None
        k = found
        break
    g = multiply(d, power(m, k))
    if all(conjugate(g, x) == y for x, y in zip(xs, ys)):
        return g
    return None


_TOKEN = re.compile(r"^([aA])(\d+)$")


def parse_word(text: str, rank: Optional[int] = None) -> Word:
    """Parse ``a3.a1.A2`` (dots or whitespace between tokens) and reduce.

    >>> parse_word("a3.a1.A2")
    (3, 1, -2)
    """
    return reduce(parse_letters(text), rank)


def parse_letters(text: str) -> Word:
    """Parse a letter sequence without reducing it."""
    letters = []
    for tok in re.split(r"[.,\s]+", text.strip()):
        if not tok:
            continue
        m = _TOKEN.match(tok)
        if m is None or int(m.group(2)) == 0:
            raise FreeGroupError(f"bad token {tok!r}")
        k = int(m.group(2))
        letters.append(k if m.group(1) == "a" else -k)
    return tuple(letters)


def format_letter(letter: int) -> str:
    return ("a" if letter > 0 else "A") + str(abs(letter))


def format_word(w: Sequence[int]) -> str:
    return ".".join(format_letter(x) for x in w)


def reduced_words(rank: int, max_len: int):
    """All reduced words of length <= max_len, shortest first."""
    letters = [s * k for k in range(1, rank + 1) for s in (1, -1)]
    layer = [EMPTY]
    yield EMPTY
    for _ in range(max_len):
        nxt = []
        for w in layer:
            for a in letters:
                if w and w[-1] == -a:
                    continue
                nxt.append(w + (a,))
        yield from nxt
        layer = nxt


def brute_force_conjugator(xs: Sequence[Sequence[int]], ys: Sequence[Sequence[int]],
                           rank: int, max_len: int) -> Optional[Word]:
    """Exhaustive search for ``g`` (``|g| <= max_len``) with ``g x g^-1 == y``
    for every pair. Slow; meant as a test oracle."""
    xs = [reduce(x) for x in xs]
    ys = [reduce(y) for y in ys]
    for g in reduced_words(rank, max_len):
        if all(conjugate(g, x) == y for x, y in zip(xs, ys)):
            return g
    return None


def shortest_common_conjugator(g: Sequence[int], x: Sequence[int], y: Sequence[int],
                               spread: int = 12) -> int:
    """Length of the shortest element of ``g C``, with ``C`` the common
    centraliser of ``x`` and ``y``; used to compare against bounded search.

    Noncommuting ``x, y`` have trivial common centraliser. Commuting ones
    are powers of a common primitive ``m``, and the coset is ``g m^k``.
    """
    if multiply(x, y) != multiply(y, x):
        return len(reduce(g))
    m, _ = primitive_root(x)
    return min(len(multiply(g, power(m, k))) for k in range(-spread, spread + 1))
