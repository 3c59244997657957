"""Labeled chord diagrams with external chords, and the splitting calculus.

A core circle is stored as a cyclic tuple of tokens. A token is either a
letter (nonzero int) or a marker:

* ``("x", cid, end)`` - one preimage of the crossing ``cid`` of the curve the
  diagram was drawn from; ``end`` is 0 for the strand listed first in the
  crossing's sign convention and 1 for the other;
* ``("c", cid)`` - an endpoint of the chord created by splitting at ``cid``.

Splitting circle ``i`` at a crossing cuts the token cycle at the crossing's
two markers. The arc starting at the marker of the positively-first strand
becomes the loop ``a1`` and the other arc ``a2``; each new circle starts with
a ``("c", cid)`` token, so chord endpoints and markers inside an arc stay in
that arc in their original cyclic order. Circles labelled above ``i`` move up
by one.

Two diagrams are identified when they are homotopic as maps: collapsing
chords turns a diagram into a cactus graph, and its class is read off as one
based loop per circle (gauge-fixed along a canonical spanning tree) modulo
simultaneous conjugation. Chord-slide identifications are not applied.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from . import loopops
from .freegroup import (
    CyclicWord,
    Word,
    cyclic_word,
    format_word,
    invert,
    multiply,
    reduce,
    simultaneous_conjugacy_many,
)
from .intersections import draw_curve
from .surface import SurfaceModel

Token = object


class DiagramError(ValueError):
    pass


@dataclass(frozen=True)
class LabeledDiagram:
    circles: Tuple[Tuple[Token, ...], ...]
    signs: Tuple[Tuple[int, int], ...]  # (crossing id, sign) of the source curve

    @property
    def size(self) -> int:
        return len(self.circles)

    def sign(self, cid: int) -> int:
        return dict(self.signs)[cid]

    def words(self) -> Tuple[Word, ...]:
        return tuple(reduce(t for t in c if isinstance(t, int)) for c in self.circles)

    def chords(self) -> Dict[int, List[Tuple[int, int]]]:
        """chord id -> [(circle index, token index), ...]"""
        out: Dict[int, List[Tuple[int, int]]] = {}
        for ci, circle in enumerate(self.circles):
            for ti, tok in enumerate(circle):
                if isinstance(tok, tuple) and tok[0] == "c":
                    out.setdefault(tok[1], []).append((ci, ti))
        return out

    def crossings_on(self, label: int) -> List[int]:
        """Crossings with both preimages on circle ``label`` (1-based)."""
        seen = Counter(tok[1] for tok in self.circles[label - 1]
                       if isinstance(tok, tuple) and tok[0] == "x")
        return sorted(cid for cid, k in seen.items() if k == 2)

    def __str__(self):
        parts = []
        for ci, circle in enumerate(self.circles, 1):
            text = []
            for tok in circle:
                if isinstance(tok, int):
                    text.append(format_word((tok,)))
                elif tok[0] == "c":
                    text.append(f"|{tok[1]}")
            parts.append(f"{ci}:(" + " ".join(text) + ")")
        return " ".join(parts)


def from_word(w: Sequence[int], model: SurfaceModel) -> LabeledDiagram:
    """Single chordless circle carrying a minimal drawing of ``w``.

    ``w`` must be cyclically reduced and primitive. The crossings and their
    order along the curve come from :func:`intersections.draw_curve`, so the
    markers describe an actual immersed curve, which later splittings rely on.
    """
    w = tuple(w)
    at: Dict[int, List[Tuple[float, Token]]] = {k: [] for k in range(len(w))}
    signs = []
    for cid, c in enumerate(draw_curve(w, model)):
        at[c.i].append((c.ti, ("x", cid, 0)))
        at[c.j].append((c.tj, ("x", cid, 1)))
        signs.append((cid, c.sign))
    tokens: List[Token] = []
    for k, letter in enumerate(w):
        tokens.extend(tok for _, tok in sorted(at[k], key=lambda e: e[0]))
        tokens.append(letter)
    return LabeledDiagram((tuple(tokens),), tuple(signs))


def _arcs(circle: Tuple[Token, ...], cid: int, sign: int):
    p0 = circle.index(("x", cid, 0))
    p1 = circle.index(("x", cid, 1))
    start, end = (p0, p1) if sign > 0 else (p1, p0)
    doubled = circle + circle
    n = len(circle)
    first = doubled[start + 1: start + 1 + (end - start - 1) % n]
    second = doubled[end + 1: end + 1 + (start - end - 1) % n]
    return first, second


def _letters(tokens) -> Word:
    return reduce(t for t in tokens if isinstance(t, int))


def split(d: LabeledDiagram, label: int, cid: int, variant: str) -> LabeledDiagram:
    """Apply the splitting map ``S+`` (``variant="plus"``) or ``S-`` at the
    crossing ``cid`` of circle ``label``."""
    if not 1 <= label <= d.size:
        raise DiagramError(f"no circle labelled {label}")
    if cid not in d.crossings_on(label):
        raise DiagramError(f"crossing {cid} is not a self-crossing of circle {label}")
    first, second = _arcs(d.circles[label - 1], cid, d.sign(cid))
    if not _letters(first) or not _letters(second):
        raise DiagramError(f"crossing {cid} splits off a trivial loop")
    c1 = (("c", cid),) + first
    c2 = (("c", cid),) + second
    if variant == "plus":
        new = (c1, c2)
    elif variant == "minus":
        new = (c2, c1)
    else:
        raise DiagramError(f"unknown variant {variant!r}")
    circles = d.circles[:label - 1] + new + d.circles[label:]
    return LabeledDiagram(circles, d.signs)


def relabel(d: LabeledDiagram, perm: Dict[int, int]) -> LabeledDiagram:
    """Move the circle labelled ``k`` to label ``perm.get(k, k)``."""
    circles: List = [None] * d.size
    for k in range(1, d.size + 1):
        circles[perm.get(k, k) - 1] = d.circles[k - 1]
    if any(c is None for c in circles):
        raise DiagramError("relabeling is not a permutation")
    return LabeledDiagram(tuple(circles), d.signs)


# -- class invariant -------------------------------------------------------

def diagram_invariant(d: LabeledDiagram):
    """Return ``(structure, loops)``.

    ``structure`` is hashable and must match exactly; ``loops`` holds one
    based loop per circle and is compared up to simultaneous conjugation.
    """
    chords = d.chords()
    if not chords:
        if d.size != 1:
            return (("free", d.size), tuple(cyclic_word(w).letters for w in d.words()))
        return (("free", 1), (cyclic_word(d.words()[0]).letters,))
    ends: Dict[int, Tuple[int, int]] = {}
    for cid, places in chords.items():
        if len(places) != 2 or places[0][0] == places[1][0]:
            raise DiagramError(f"chord {cid} is not external")
        ends[cid] = (places[0][0], places[1][0])
    pair_of = {cid: tuple(sorted(c)) for cid, c in ends.items()}
    if len(set(pair_of.values())) != len(pair_of):
        raise DiagramError("two chords join the same pair of circles")
    root = min(pair_of, key=pair_of.get)

    attach: List[List[Tuple[int, int]]] = [[] for _ in range(d.size)]
    for cid, places in chords.items():
        for ci, ti in places:
            attach[ci].append((ti, cid))
    for a in attach:
        a.sort()

    def other(cid, ci):
        x, y = ends[cid]
        return y if x == ci else x

    entry: Dict[int, Tuple[int, Word]] = {}
    queue = []
    for ci in ends[root]:
        entry[ci] = (root, ())
        queue.append(ci)
    structure = [None] * d.size
    loops: List[Optional[Word]] = [None] * d.size
    while queue:
        ci = queue.pop(0)
        cid0, path = entry[ci]
        circle = d.circles[ci]
        att = attach[ci]
        start = next(k for k, (_, cid) in enumerate(att) if cid == cid0)
        order = att[start:] + att[:start]
        n = len(circle)
        walk = path
        labels = []
        for k, (ti, cid) in enumerate(order):
            labels.append(other(cid, ci) + 1)
            if k and other(cid, ci) not in entry:
                entry[other(cid, ci)] = (cid, walk)
                queue.append(other(cid, ci))
            nxt = order[(k + 1) % len(order)][0]
            span = (nxt - ti - 1) % n if len(order) > 1 else n - 1
            arc = [circle[(ti + 1 + s) % n] for s in range(span)]
            walk = multiply(walk, _letters(arc))
        structure[ci] = tuple(labels)
        loops[ci] = multiply(walk, invert(path))
    if any(s is None for s in structure):
        raise DiagramError("diagram is not connected")
    return (("tree", tuple(structure), pair_of[root]), tuple(loops))


def invariants_equal(a, b) -> bool:
    (sa, la), (sb, lb) = a, b
    if sa != sb:
        return False
    if la == lb:
        return True
    if sa[0] == "free":
        return False
    return simultaneous_conjugacy_many(la, lb) is not None


# -- combinations ------------------------------------------------------------

class TermCombination:
    """Reduced integer combination of diagram classes."""

    def __init__(self, terms: Iterable[Tuple[LabeledDiagram, int]] = ()):
        self._buckets: Dict[tuple, List[list]] = {}
        for d, c in terms:
            self.add(d, c)

    def add(self, d: LabeledDiagram, coefficient: int) -> None:
        inv = diagram_invariant(d)
        key = (inv[0], tuple(cyclic_word(w) if w else None for w in inv[1]))
        bucket = self._buckets.setdefault(key, [])
        for entry in bucket:
            if invariants_equal(entry[1], inv):
                entry[2] += coefficient
                return
        bucket.append([d, inv, coefficient])

    def terms(self) -> List[Tuple[LabeledDiagram, int]]:
        out = []
        for key in sorted(self._buckets, key=repr):
            out.extend((d, c) for d, _, c in self._buckets[key] if c)
        return out

    def __iter__(self):
        return iter(self.terms())

    def __len__(self):
        return len(self.terms())

    def is_zero(self) -> bool:
        return not self.terms()

    def t(self) -> int:
        return sum(abs(c) for _, c in self.terms())

    def __add__(self, other: "TermCombination") -> "TermCombination":
        return TermCombination(self.terms() + other.terms())

    def __neg__(self) -> "TermCombination":
        return TermCombination((d, -c) for d, c in self.terms())

    def __sub__(self, other):
        return self + (-other)

    def map(self, fn) -> "TermCombination":
        return TermCombination((fn(d), c) for d, c in self.terms())


def mu_i(d: LabeledDiagram, i: int) -> TermCombination:
    if not 1 <= i <= d.size:
        raise DiagramError(f"no circle labelled {i}")
    out = []
    for cid in d.crossings_on(i):
        first, second = _arcs(d.circles[i - 1], cid, d.sign(cid))
        if not _letters(first) or not _letters(second):
            continue
        out.append((split(d, i, cid, "plus"), 1))
        out.append((split(d, i, cid, "minus"), -1))
    return TermCombination(out)


def mu_i_comb(comb: TermCombination, i: int) -> TermCombination:
    out = TermCombination()
    for d, c in comb:
        for e, k in mu_i(d, i):
            out.add(e, c * k)
    return out


def tau(i: int):
    return lambda d: relabel(d, {i: i + 1, i + 1: i})


def omega(i: int):
    return lambda d: relabel(d, {i: i + 2, i + 1: i, i + 2: i + 1})


def tau_i(comb: TermCombination, i: int) -> TermCombination:
    return comb.map(tau(i))


def omega_i(comb: TermCombination, i: int) -> TermCombination:
    return comb.map(omega(i))


def erase(d: LabeledDiagram) -> Tuple[CyclicWord, ...]:
    return tuple(cyclic_word(w) for w in d.words())


def erase_comb(comb: TermCombination) -> Counter:
    out: Counter = Counter()
    for d, c in comb:
        out[erase(d)] += c
    return Counter({k: v for k, v in out.items() if v})


def cobracket_slot(tensor: Tuple[CyclicWord, ...], i: int, model: SurfaceModel) -> Counter:
    """Apply the cobracket to slot ``i`` (1-based) of a tensor of classes."""
    out: Counter = Counter()
    slot = tensor[i - 1]
    if not slot.letters:
        return out
    for term in loopops.turaev_cobracket(slot.letters, model):
        out[tensor[:i - 1] + (term.left, term.right) + tensor[i:]] += term.coefficient
    return out


# -- identity checks -------------------------------------------------------------

ZERO = "zero"
NOT_SYNTACTIC = "not syntactically zero"
VIOLATED = "identity violated"


@dataclass
class IdentityReport:
    name: str
    outcome: str
    residual: List[Tuple[str, int]]

    @property
    def holds(self) -> bool:
        return self.outcome == ZERO


def _report(name: str, residual: TermCombination) -> IdentityReport:
    if residual.is_zero():
        return IdentityReport(name, ZERO, [])
    outcome = VIOLATED if erase_comb(residual) else NOT_SYNTACTIC
    return IdentityReport(name, outcome, [(str(d), c) for d, c in residual])


def verify_coskew(d: LabeledDiagram, i: int = 1) -> IdentityReport:
    m = mu_i(d, i)
    return _report("coskew", tau_i(m, i) + m)


def verify_cojacobi(d: LabeledDiagram, i: int = 1) -> IdentityReport:
    m = mu_i_comb(mu_i(d, i), i + 1)
    total = m + omega_i(m, i) + omega_i(omega_i(m, i), i)
    return _report("cojacobi", total)


def verify_factorization(d: LabeledDiagram, model: SurfaceModel,
                         i: int = 1) -> IdentityReport:
    lhs = erase_comb(mu_i(d, i))
    rhs = cobracket_slot(erase(d), i, model)
    diff = Counter(lhs)
    diff.subtract(rhs)
    residual = [(" (x) ".join(str(c) for c in k), v) for k, v in sorted(diff.items()) if v]
    return IdentityReport("factorization", VIOLATED if residual else ZERO, residual)
