"""Goldman bracket, Turaev cobracket and the operation mu for loops on
surfaces with boundary, computed from words in the free fundamental group."""

from .freegroup import (
    CyclicWord,
    cyclic_word,
    format_word,
    parse_word,
    primitive_root,
    simultaneous_conjugacy,
)
from .intersections import LinkedPair, cross_linked_pairs, self_linked_pairs
from .loopops import (
    goldman_bracket,
    is_power_of_simple,
    minimal_self_intersection,
    mu,
    turaev_cobracket,
)
from .surface import SurfaceModel, parse_surface

__all__ = [
    "CyclicWord", "LinkedPair", "SurfaceModel",
    "cross_linked_pairs", "cyclic_word", "format_word", "goldman_bracket",
    "is_power_of_simple", "minimal_self_intersection", "mu", "parse_surface",
    "parse_word", "primitive_root", "self_linked_pairs", "simultaneous_conjugacy",
    "turaev_cobracket",
]
