"""Crossings of taut curves, found combinatorially.

A cyclically reduced word ``w`` of length ``L`` passes through the vertex of
the ribbon graph ``L`` times. Passage ``k`` sits between letters ``w[k-1]``
and ``w[k]``. Lift the curve to the universal cover (a planar tree): at
passage ``k`` the lifted line has two ends, the incoming ray reading
``inv(w[k-1]) inv(w[k-2]) ...`` and the outgoing ray reading
``w[k] w[k+1] ...``. Ends of the tree carry a circular order, and two lines
cross exactly when their ends alternate.

Two lines that run together along a segment are seen at every passage pair
along that segment, so only the pair sitting at a canonical end of the
segment is reported.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .freegroup import (
    CyclicWord,
    Word,
    cyclic_word,
    is_cyclically_reduced,
    primitive_root,
)
from .surface import SurfaceModel

# Global chirality: +1 reads the vertex order counterclockwise. With this
# choice the genus-two class a3a1A2a3a1A2a3a1A2A2A2 has the reference mu term
# list checked in the test suite, signs included.
SIGN_CONVENTION = 1


class IntersectionError(RuntimeError):
    """Raised when two distinct rays cannot be separated (tangential strands)."""


@dataclass(frozen=True)
class Ray:
    word: Word
    start: int
    outgoing: bool

    def letters(self, count: int) -> List[int]:
        w, n = self.word, len(self.word)
        if self.outgoing:
            return [w[(self.start + t) % n] for t in range(count)]
        return [-w[(self.start - 1 - t) % n] for t in range(count)]


@dataclass(frozen=True, order=True)
class LinkedPair:
    i: int
    j: int
    sign: int


def ray_key(ray: Ray, model: SurfaceModel, length: int) -> Tuple[int, ...]:
    """Position of the ray's end in the linear order obtained by cutting the
    circle at infinity just before ``vertex_order[0]``.

    The first entry is the germ's index in the vertex order; each later entry
    is the index of the next germ counted counterclockwise from just after the
    germ we arrived through.
    """
    letters = ray.letters(length)
    deg = model.degree
    key = [model.position(letters[0])]
    for prev, cur in zip(letters, letters[1:]):
        key.append((model.position(cur) - model.position(-prev) - 1) % deg)
    return tuple(key)


def _cyclic_sign(a: int, b: int, c: int) -> int:
    # +1 when a, b, c appear in this cyclic order along an increasing scale
    if a < b < c or b < c < a or c < a < b:
        return 1
    return -1


def orient_triple(r1: Ray, r2: Ray, r3: Ray, model: SurfaceModel) -> int:
    """Circular orientation (+1 counterclockwise) of three ray ends."""
    cap = max(2, 2 * sum(len(w) for w in {r1.word, r2.word, r3.word}))
    keys = [ray_key(r, model, cap) for r in (r1, r2, r3)]
    if len(set(keys)) < 3:
        raise IntersectionError("rays agree beyond the divergence cap")
    return _cyclic_sign(*keys)


class StrandSystem:
    """Ranks of all ray ends for one or two cyclically reduced words."""

    def __init__(self, words: Sequence[Sequence[int]], model: SurfaceModel):
        self.words = [tuple(w) for w in words]
        self.model = model
        cap = 2 * (sum(len(w) for w in self.words) if len(self.words) > 1
                   else 2 * len(self.words[0]))
        entries = []
        for wi, w in enumerate(self.words):
            for k in range(len(w)):
                for outgoing in (False, True):
                    key = ray_key(Ray(w, k, outgoing), model, cap)
                    entries.append((key, (wi, k, outgoing)))
        entries.sort()
        for (k1, _), (k2, _) in zip(entries, entries[1:]):
            if k1 == k2:
                raise IntersectionError(
                    "two distinct strands share a ray beyond the divergence cap")
        self.rank: Dict[Tuple[int, int, bool], int] = {
            label: r for r, (_, label) in enumerate(entries)}
        self.size = len(entries)

    def ends(self, wi: int, k: int) -> Tuple[int, int]:
        return self.rank[(wi, k, False)], self.rank[(wi, k, True)]

    def linked(self, a: Tuple[int, int], b: Tuple[int, int]) -> bool:
        ia, oa = self.ends(*a)
        ib, ob = self.ends(*b)
        return _cyclic_sign(ia, ib, oa) != _cyclic_sign(ia, ob, oa)

    def sign(self, a: Tuple[int, int], b: Tuple[int, int]) -> int:
        """+1 when (tangent of a, tangent of b) is a positive frame."""
        ia, oa = self.ends(*a)
        _, ob = self.ends(*b)
        return SIGN_CONVENTION * _cyclic_sign(oa, ob, ia)


def _first(w: Word, k: int) -> Tuple[int, int]:
    n = len(w)
    return -w[(k - 1) % n], w[k % n]


def _shared_forward(w1: Word, a: int, w2: Word, b: int) -> int:
    """Length of the common prefix of out(a) in w1 and in(b) in w2."""
    n1, n2 = len(w1), len(w2)
    t = 0
    limit = 2 * (n1 + n2)
    while t < limit and w1[(a + t) % n1] == -w2[(b - 1 - t) % n2]:
        t += 1
    if t == limit:
        raise IntersectionError("strands run together beyond the divergence cap")
    return t


def _representative(w1: Word, a: int, w2: Word, b: int):
    """Decide whether passage pair (a, b) is the canonical witness of its
    crossing. Returns True, False, or the partner pair to compare against."""
    ia, oa = _first(w1, a)
    ib, ob = _first(w2, b)
    if oa == ob or ia == ib:
        return ia != ib
    fwd, back = oa == ib, ia == ob
    if not fwd and not back:
        return True
    if fwd and back:
        return False
    if fwd:
        k = _shared_forward(w1, a, w2, b)
        return ((a + k) % len(w1), (b - k) % len(w2))
    k = _shared_forward(w2, b, w1, a)
    return ((a - k) % len(w1), (b + k) % len(w2))


def _check_primitive(w: Word) -> None:
    if not w:
        raise ValueError("the trivial class has no crossings")
    if not is_cyclically_reduced(w):
        raise ValueError("word must be cyclically reduced")
    if primitive_root(w)[1] != 1:
        raise ValueError("word must not be a proper power")


def _as_word(w) -> Word:
    return w.letters if isinstance(w, CyclicWord) else tuple(w)


def self_linked_pairs(w, model: SurfaceModel) -> List[LinkedPair]:
    """Self-crossings of the taut representative of a primitive class.

    Positions refer to the letter sequence as given. Each crossing appears
    once as ``LinkedPair(i, j, sign)`` with ``i < j``; ``sign`` is the sign
    of the frame (strand at i, strand at j).
    """
    w = _as_word(w)
    _check_primitive(w)
    system = StrandSystem([w], model)
    return _self_pairs(w, system)


def _self_pairs(w: Word, system: StrandSystem) -> List[LinkedPair]:
    n = len(w)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            if not system.linked((0, i), (0, j)):
                continue
            rep = _representative(w, i, w, j)
            if rep is False:
                continue
            if rep is not True and tuple(sorted(rep)) < (i, j):
                continue
            out.append(LinkedPair(i, j, system.sign((0, i), (0, j))))
    return out


def commensurable(w1: Sequence[int], w2: Sequence[int]) -> bool:
    """True when the two classes are powers of a common class or its inverse."""
    r1 = cyclic_word(primitive_root(w1)[0])
    r2 = primitive_root(w2)[0]
    return r1 == cyclic_word(r2) or r1 == cyclic_word(tuple(-x for x in reversed(r2)))


def _push_off_pairs(w1: Word, w2: Word, model: SurfaceModel) -> List[LinkedPair]:
    """Crossings of ``w1`` with a parallel copy of itself read as ``w2``.

    ``w2`` is a rotation of ``w1`` or of its inverse. Every self-crossing
    ``(i, j, s)`` of ``w1`` shows up twice: ``w1`` at ``i`` against the copy
    at ``j``, and ``w1`` at ``j`` against the copy at ``i``. The copy's
    passage index and, for the inverse, the sign are transported.
    """
    n = len(w1)
    for r in range(n):
        if w2 == w1[r:] + w1[:r]:
            place, flip = (lambda p, r=r: (p - r) % n), 1
            break
    else:
        inv = tuple(-x for x in reversed(w1))
        r = next(r for r in range(n) if w2 == inv[r:] + inv[:r])
        place, flip = (lambda p, r=r: (n - p - r) % n), -1
    out = []
    for pair in self_linked_pairs(w1, model):
        out.append(LinkedPair(pair.i, place(pair.j), flip * pair.sign))
        out.append(LinkedPair(pair.j, place(pair.i), -flip * pair.sign))
    return sorted(out)


def cross_linked_pairs(w1, w2, model: SurfaceModel) -> List[LinkedPair]:
    """Crossings between the taut representatives of two classes.

    ``i`` indexes passages of ``w1`` and ``j`` passages of ``w2``; the sign
    is that of the frame (strand of w1, strand of w2). Both words must be
    cyclically reduced and primitive. When the classes agree up to
    orientation, the second curve is a parallel push-off of the first.
    """
    w1, w2 = _as_word(w1), _as_word(w2)
    _check_primitive(w1)
    _check_primitive(w2)
    if commensurable(w1, w2):
        return _push_off_pairs(w1, w2, model)
    system = StrandSystem([w1, w2], model)
    out = []
    for i in range(len(w1)):
        for j in range(len(w2)):
            if not system.linked((0, i), (1, j)):
                continue
            rep = _representative(w1, i, w2, j)
            if rep is False:
                continue
            if rep is not True and rep < (i, j):
                continue
            out.append(LinkedPair(i, j, system.sign((0, i), (1, j))))
    return out


def self_intersection_count(w, model: SurfaceModel) -> int:
    return len(self_linked_pairs(w, model))


# -- explicit drawing ---------------------------------------------------------

@dataclass(frozen=True)
class DrawnCrossing:
    i: int          # passage of the first strand
    j: int          # passage of the second strand
    sign: int       # sign of the frame (strand i, strand j)
    ti: float       # position along chord i, 0 at its incoming end
    tj: float


def _side_keys(w: Word, k: int, model: SurfaceModel, cap: int):
    """Keys of the two sides of the band traversal ``w[k]``, in the frame of
    the positively oriented edge: (ahead of its head, behind its tail)."""
    n = len(w)
    fwd = [w[(k + 1 + t) % n] for t in range(cap)]
    back = [-w[(k - 1 - t) % n] for t in range(cap)]
    ahead, behind = (fwd, back) if w[k] > 0 else (back, fwd)
    b = abs(w[k])
    deg = model.degree

    def key(letters, prev):
        out = []
        for cur in letters:
            out.append((model.position(cur) - model.position(-prev) - 1) % deg)
            prev = cur
        return out

    return ahead, key(ahead, b), behind, key(behind, -b)


def _common(a, b) -> int:
    t = 0
    while t < len(a) and a[t] == b[t]:
        t += 1
    return t


def band_orders(w: Word, model: SurfaceModel) -> Dict[int, List[int]]:
    """Lateral order (right to left, looking along ``a<b>``) of the
    traversals of each edge ``b``, as lists of letter indices of ``w``.

    Two traversals are compared on the side where they part first, so a
    pair running together along several edges changes sides once.
    """
    import functools

    n = len(w)
    cap = 4 * n + 2
    sides = {k: _side_keys(w, k, model, cap) for k in range(n)}

    def cmp(s, t):
        ah_s, kh_s, bh_s, kb_s = sides[s]
        ah_t, kh_t, bh_t, kb_t = sides[t]
        ch, cb = _common(ah_s, ah_t), _common(bh_s, bh_t)
        if ch == cap and cb == cap:
            raise IntersectionError("two traversals of an edge cannot be separated")
        if ch <= cb:
            return -1 if kh_s < kh_t else 1
        return -1 if kb_s > kb_t else 1

    out: Dict[int, List[int]] = {}
    for k in range(n):
        out.setdefault(abs(w[k]), []).append(k)
    for b, ks in out.items():
        ks.sort(key=functools.cmp_to_key(cmp))
        for x in range(len(ks)):
            for y in range(x + 1, len(ks)):
                if cmp(ks[x], ks[y]) > 0:
                    raise IntersectionError("band order is not transitive")
    return out


def draw_curve(w, model: SurfaceModel) -> List[DrawnCrossing]:
    """Draw the curve in the ribbon surface and return its crossings.

    Strands run parallel inside each edge band in the order given by
    :func:`band_orders`; inside the vertex disk passage ``k`` is a straight
    chord from the end of traversal ``k-1`` to the start of traversal ``k``.
    All crossings then lie in the disk, and their positions along each chord
    come from the geometry of the chords.
    """
    w = _as_word(w)
    _check_primitive(w)
    n = len(w)
    orders = band_orders(w, model)
    lateral = {k: r for ks in orders.values() for r, k in enumerate(ks)}
    counts = {b: len(ks) for b, ks in orders.items()}

    def point(germ: int, k: int):
        # germ +b is the tail end of the band: counterclockwise runs right to
        # left; at the head end (-b) it runs the other way
        r = lateral[k]
        sub = r if germ > 0 else counts[abs(germ)] - 1 - r
        return (model.position(germ), sub)

    ends = []
    for k in range(n):
        ends.append((point(-w[(k - 1) % n], (k - 1) % n), point(w[k], k)))
    ranked = sorted({p for e in ends for p in e})
    if len(ranked) != 2 * n:
        raise IntersectionError("two chord ends coincide")
    rank = {p: r for r, p in enumerate(ranked)}
    size = len(ranked)

    def xy(r):
        # irregular spacing keeps three chords from meeting in one point
        a = 2 * math.pi * (r + 0.25 + 0.5 * ((r * 0.6180339887498949) % 1.0)) / size
        return math.cos(a), math.sin(a)

    chords = [(rank[a], rank[b]) for a, b in ends]
    out = []
    for i in range(n):
        ia, oa = chords[i]
        for j in range(i + 1, n):
            ib, ob = chords[j]
            if _cyclic_sign(ia, ib, oa) == _cyclic_sign(ia, ob, oa):
                continue
            (x1, y1), (x2, y2), (x3, y3), (x4, y4) = xy(ia), xy(oa), xy(ib), xy(ob)
            den = (x1 - x2) * (y3 - y4) - (y1 - y2) * (x3 - x4)
            ti = ((x1 - x3) * (y3 - y4) - (y1 - y3) * (x3 - x4)) / den
            tj = ((x1 - x3) * (y1 - y2) - (y1 - y3) * (x1 - x2)) / den
            sign = SIGN_CONVENTION * _cyclic_sign(oa, ob, ia)
            out.append(DrawnCrossing(i, j, sign, ti, tj))
    along: Dict[int, List[float]] = {}
    for c in out:
        along.setdefault(c.i, []).append(c.ti)
        along.setdefault(c.j, []).append(c.tj)
    for ts in along.values():
        ts.sort()
        if any(b - a < 1e-9 for a, b in zip(ts, ts[1:])):
            raise IntersectionError("three strands meet in one point")
    return out
