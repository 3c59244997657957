"""Operations on free homotopy classes: mu, the Turaev cobracket, the Goldman
bracket, and the minimal self-intersection number derived from mu."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .freegroup import (
    CyclicWord,
    Word,
    cyclic_word,
    format_word,
    letter_key,
    multiply,
    power,
    primitive_root,
    reduce,
    simultaneous_conjugacy,
)
from .intersections import LinkedPair, cross_linked_pairs, self_linked_pairs
from .surface import SurfaceModel


class TrivialClassError(ValueError):
    pass


@dataclass(frozen=True)
class WedgeTerm:
    """``coefficient * [x . y]``: two loops glued at a common point."""

    x: Word
    y: Word
    coefficient: int = 1

    def swapped(self) -> "WedgeTerm":
        return WedgeTerm(self.y, self.x, self.coefficient)

    def __str__(self):
        return f"{self.coefficient:+d} [{format_word(self.x)} * {format_word(self.y)}]"


@dataclass(frozen=True)
class TensorTerm:
    left: CyclicWord
    right: CyclicWord
    coefficient: int = 1

    def __str__(self):
        return f"{self.coefficient:+d} {self.left} (x) {self.right}"


@dataclass(frozen=True)
class ClassTerm:
    value: CyclicWord
    coefficient: int = 1

    def __str__(self):
        return f"{self.coefficient:+d} {self.value}"


@dataclass
class MuResult:
    terms: List[WedgeTerm]
    primitive_root: Word
    exponent: int
    type2_raw: Optional[List[WedgeTerm]] = None
    linked_pairs: List[LinkedPair] = field(default_factory=list)

    @property
    def t(self) -> int:
        return sum(abs(term.coefficient) for term in self.terms)


def _word_key(w: Word):
    return (len(w), [letter_key(x) for x in w])


def wedge_equal(x: Word, y: Word, x2: Word, y2: Word) -> bool:
    if (x, y) == (x2, y2):
        return True
    return simultaneous_conjugacy(x, y, x2, y2) is not None


def reduce_wedges(terms: Iterable[WedgeTerm]) -> List[WedgeTerm]:
    """Merge terms whose classes coincide and drop zero coefficients.

    Terms are bucketed by the conjugacy classes of both loops, then compared
    pairwise inside a bucket. The first representative seen is kept.
    """
    buckets: Dict[Tuple[CyclicWord, CyclicWord], List[list]] = {}
    for term in terms:
        key = (cyclic_word(term.x), cyclic_word(term.y))
        bucket = buckets.setdefault(key, [])
        for entry in bucket:
            if wedge_equal(entry[0], entry[1], term.x, term.y):
                entry[2] += term.coefficient
                break
        else:
            bucket.append([term.x, term.y, term.coefficient])
    out = []
    for key in sorted(buckets, key=lambda k: (k[0].sort_key(), k[1].sort_key())):
        for x, y, c in buckets[key]:
            if c:
                out.append(WedgeTerm(x, y, c))
    return out


def reduce_tensors(terms: Iterable[TensorTerm]) -> List[TensorTerm]:
    total: Counter = Counter()
    for term in terms:
        total[(term.left, term.right)] += term.coefficient
    keys = sorted(total, key=lambda k: (k[0].sort_key(), k[1].sort_key()))
    return [TensorTerm(l, r, total[(l, r)]) for l, r in keys if total[(l, r)]]


def reduce_classes(terms: Iterable[ClassTerm]) -> List[ClassTerm]:
    total: Counter = Counter()
    for term in terms:
        total[term.value] += term.coefficient
    return [ClassTerm(v, total[v]) for v in sorted(total, key=CyclicWord.sort_key) if total[v]]


def _decompose(alpha: Sequence[int]) -> Tuple[Word, int, Word]:
    """Return (primitive root, exponent, cyclic core of the root)."""
    alpha = reduce(alpha)
    if not alpha:
        raise TrivialClassError("the trivial class is not allowed here")
    root, n = primitive_root(alpha)
    return root, n, cyclic_word(root).letters


def crossing_loops(beta: Word, pair: LinkedPair) -> Tuple[Word, Word]:
    """The two loops at a crossing, ordered so that their tangents form a
    positive frame."""
    i, j = pair.i, pair.j
    first = beta[i:j] if i < j else beta[i:] + beta[:j]
    second = beta[j:] + beta[:i] if i < j else beta[j:i]
    if pair.sign > 0:
        return first, second
    return second, first


def type1_exponents(n: int) -> List[Tuple[int, int]]:
    """(I, J) for each of the n^2 strand labels (i', j'), with I = (j' - i') mod n."""
    return [((jp - ip) % n, n - 1 - (jp - ip) % n)
            for ip in range(1, n + 1) for jp in range(1, n + 1)]


def _type1_loops(x: Word, y: Word, big_i: int, big_j: int) -> Tuple[Word, Word]:
    xy, yx = multiply(x, y), multiply(y, x)
    return multiply(power(xy, big_i), x), multiply(power(yx, big_j), y)


def _type2_wedges(beta: Word, n: int) -> List[WedgeTerm]:
    out = []
    for k in range(1, n):
        out.append(WedgeTerm(power(beta, k), power(beta, n - k), 1))
        out.append(WedgeTerm(power(beta, n - k), power(beta, k), -1))
    return out


def mu(alpha: Sequence[int], model: SurfaceModel,
       include_type2: bool = False) -> MuResult:
    """mu(alpha) as a reduced combination of wedge classes.

    For ``alpha = beta^n`` each crossing of ``beta`` with loops ``X, Y``
    yields ``n^2`` crossings of the perturbed power, contributing
    ``[(XY)^I X . (YX)^J Y] - [(YX)^J Y . (XY)^I X]`` with ``I + J = n - 1``;
    the ``n - 1`` crossings made by closing up the power cancel in pairs.
    """
    root, n, beta = _decompose(alpha)
    pairs = self_linked_pairs(beta, model)
    raw = []
    for pair in pairs:
        x, y = crossing_loops(beta, pair)
        counts = Counter(type1_exponents(n))
        for (big_i, big_j), c in sorted(counts.items()):
            u, v = _type1_loops(x, y, big_i, big_j)
            raw.append(WedgeTerm(u, v, c))
            raw.append(WedgeTerm(v, u, -c))
    type2 = _type2_wedges(beta, n)
    terms = reduce_wedges(raw + type2)
    return MuResult(terms, root, n, type2 if include_type2 else None, pairs)


def q_smooth(term: WedgeTerm) -> TensorTerm:
    return TensorTerm(cyclic_word(term.x), cyclic_word(term.y), term.coefficient)


def cobracket_from_mu(result: MuResult) -> List[TensorTerm]:
    return reduce_tensors(q_smooth(t) for t in result.terms)


def turaev_cobracket(alpha: Sequence[int], model: SurfaceModel,
                     via: str = "direct") -> List[TensorTerm]:
    """Turaev cobracket, either straight from the crossings or as Q(mu)."""
    if via == "mu":
        return cobracket_from_mu(mu(alpha, model))
    if via != "direct":
        raise ValueError(f"unknown route {via!r}")
    _, n, beta = _decompose(alpha)
    raw = []
    for pair in self_linked_pairs(beta, model):
        x, y = crossing_loops(beta, pair)
        for big_i, big_j in type1_exponents(n):
            u, v = _type1_loops(x, y, big_i, big_j)
            cu, cv = cyclic_word(u), cyclic_word(v)
            raw.append(TensorTerm(cu, cv, 1))
            raw.append(TensorTerm(cv, cu, -1))
    for k in range(1, n):
        a, b = cyclic_word(power(beta, k)), cyclic_word(power(beta, n - k))
        raw.append(TensorTerm(a, b, 1))
        raw.append(TensorTerm(b, a, -1))
    return reduce_tensors(raw)


def goldman_bracket(alpha: Sequence[int], beta: Sequence[int],
                    model: SurfaceModel) -> List[ClassTerm]:
    _, n1, c1 = _decompose(alpha)
    _, n2, c2 = _decompose(beta)
    raw = []
    for pair in cross_linked_pairs(c1, c2, model):
        a = power(c1[pair.i:] + c1[:pair.i], n1)
        b = power(c2[pair.j:] + c2[:pair.j], n2)
        raw.append(ClassTerm(cyclic_word(multiply(a, b)), pair.sign * n1 * n2))
    return reduce_classes(raw)


def term_count(terms) -> int:
    return sum(abs(t.coefficient) for t in terms)


def minimal_self_intersection(alpha: Sequence[int], model: SurfaceModel) -> int:
    result = mu(alpha, model)
    return result.t // 2 + result.exponent - 1


def is_power_of_simple(alpha: Sequence[int], model: SurfaceModel) -> bool:
    return mu(alpha, model).t == 0
