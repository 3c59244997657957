"""One-vertex ribbon graphs for oriented surfaces with boundary.

The fundamental group of a surface with nonempty boundary is free on the
loops of a one-vertex ribbon graph onto which the surface retracts. All we
need to remember is the rank ``n`` and the counterclockwise cyclic order of
the ``2n`` direction germs at the vertex. A germ is written as a letter: the
germ ``k`` is where the loop ``a<k>`` leaves the vertex, ``-k`` is where it
comes back.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, Sequence, Tuple

from .freegroup import Word, format_letter, format_word, parse_letters


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceModel:
    rank: int
    vertex_order: Tuple[int, ...]
    provenance: str = "explicit"
    _pos: Dict[int, int] = field(default=None, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if self.rank < 1:
            raise SurfaceError("rank must be positive")
        labels = sorted(self.vertex_order, key=lambda x: (abs(x), x < 0))
        expected = [s * k for k in range(1, self.rank + 1) for s in (1, -1)]
        if labels != expected:
            raise SurfaceError(
                f"vertex order must list each of a1..a{self.rank}, A1..A{self.rank} once")
        pos = {g: i for i, g in enumerate(self.vertex_order)}
        object.__setattr__(self, "_pos", pos)

    @property
    def degree(self) -> int:
        return 2 * self.rank

    def position(self, germ: int) -> int:
        return self._pos[germ]

    def spec(self) -> str:
        if self.provenance != "explicit":
            return self.provenance
        return "order:" + ",".join(format_letter(g) for g in self.vertex_order)

    def boundary_words(self) -> Tuple[Word, ...]:
        """Boundary components read off the ribbon structure."""
        seen, out = set(), []
        for start in self.vertex_order:
            if start in seen:
                continue
            c, word = start, []
            while c not in seen:
                seen.add(c)
                word.append(c)
                c = self.successor(-c)
            out.append(tuple(word))
        return tuple(out)

    def successor(self, germ: int) -> int:
        return self.vertex_order[(self._pos[germ] + 1) % self.degree]


def derive_vertex_order(surface_word: Sequence[int],
                        provenance: str = "explicit") -> SurfaceModel:
    """Ribbon graph whose single boundary component reads ``surface_word``.

    The successor of germ ``inv(c_t)`` in the counterclockwise order is
    ``c_{t+1}`` (indices cyclic). The word must use every generator exactly
    twice, once with each sign, and the resulting successor map must be a
    single cycle.
    """
    word = tuple(surface_word)
    if not word:
        raise SurfaceError("empty surface word")
    rank = max(abs(c) for c in word)
    for k in range(1, rank + 1):
        uses = [c for c in word if abs(c) == k]
        if len(uses) != 2:
            raise SurfaceError(f"generator a{k} must appear exactly twice")
        if uses[0] == uses[1]:
            raise SurfaceError(f"generator a{k} appears twice with the same sign;"
                               " the surface would be non-orientable")
    succ = {}
    n = len(word)
    for t, c in enumerate(word):
        succ[-c] = word[(t + 1) % n]
    order = [word[0]]
    while True:
        nxt = succ[order[-1]]
        if nxt == order[0]:
            break
        order.append(nxt)
    if len(order) != 2 * rank:
        raise SurfaceError("surface word does not describe a one-vertex ribbon graph")
    return SurfaceModel(rank, tuple(order), provenance)


def genus_one_boundary(g: int) -> SurfaceModel:
    if g < 1:
        raise SurfaceError("genus must be at least 1")
    word = []
    for i in range(1, g + 1):
        a, b = 2 * i - 1, 2 * i
        word += [a, b, -a, -b]
    return derive_vertex_order(word, f"genus:{g},boundary:1")


def punctured_sphere(b: int) -> SurfaceModel:
    if b < 2:
        raise SurfaceError("a punctured sphere needs at least 2 boundary components")
    order = []
    for k in range(1, b):
        order += [k, -k]
    return SurfaceModel(b - 1, tuple(order), f"spheres:{b}")


def preset(name: str, param: int) -> SurfaceModel:
    if name == "genus_one_boundary":
        return genus_one_boundary(param)
    if name == "punctured_sphere":
        return punctured_sphere(param)
    raise SurfaceError(f"unknown preset {name!r}")


def parse_surface(text: str) -> SurfaceModel:
    """Parse ``genus:<g>,boundary:1``, ``spheres:<b>``, ``word:<letters>``
    or ``order:<comma-separated germs>``."""
    text = text.strip()
    m = re.fullmatch(r"genus:(\d+),boundary:(\d+)", text)
    if m:
        g, b = int(m.group(1)), int(m.group(2))
        if b != 1:
            raise SurfaceError("only one boundary component is supported with genus presets")
        return genus_one_boundary(g)
    if re.fullmatch(r"genus:\d+", text):
        raise SurfaceError("closed surfaces are not supported; give boundary:1")
    m = re.fullmatch(r"spheres:(\d+)", text)
    if m:
        return punctured_sphere(int(m.group(1)))
    if text.startswith("word:"):
        w = parse_letters(text[5:])
        return derive_vertex_order(w, "word:" + format_word(w))
    if text.startswith("order:"):
        germs = parse_letters(text[6:])
        if len(germs) % 2 or not germs:
            raise SurfaceError("vertex order must have even length")
        return SurfaceModel(len(germs) // 2, germs)
    raise SurfaceError(f"cannot parse surface spec {text!r}")
