import random
from collections import Counter

import pytest

from surfloops import diagrams as D
from surfloops.freegroup import cyclic_word, parse_word
from surfloops.loopops import WedgeTerm, mu, reduce_wedges, turaev_cobracket, wedge_equal
from surfloops.sampling import random_cyclic_word
from surfloops.surface import parse_surface

from .conftest import WORKED_WORD

SURFACES = ["genus:1,boundary:1", "spheres:3", "genus:2,boundary:1"]


def chord_count(d):
    return len(d.chords())


def test_from_word_keeps_letters(genus2):
    w = parse_word(WORKED_WORD)
    d = D.from_word(w, genus2)
    assert d.size == 1 and d.words() == (w,)
    assert d.crossings_on(1) == [0, 1]


def test_split_single_crossing(pants):
    d = D.from_word(parse_word("a1.a1.a2"), pants)
    (cid,) = d.crossings_on(1)
    plus = D.split(d, 1, cid, "plus")
    minus = D.split(d, 1, cid, "minus")
    assert plus.size == 2 and chord_count(plus) == 1
    assert plus.circles == minus.circles[::-1]
    assert D.relabel(plus, {1: 2, 2: 1}) == minus
    assert {cyclic_word(w) for w in plus.words()} == {cyclic_word((1,)), cyclic_word((1, 2))}


def test_split_errors(pants):
    d = D.from_word(parse_word("a1.a1.a2"), pants)
    with pytest.raises(D.DiagramError):
        D.split(d, 2, 0, "plus")
    with pytest.raises(D.DiagramError):
        D.split(d, 1, 7, "plus")
    with pytest.raises(D.DiagramError):
        D.split(d, 1, 0, "sideways")
    # a crossing whose first arc carries no letters is outside SI0
    bare = D.LabeledDiagram(((("x", 0, 0), ("x", 0, 1), 1, 2),), ((0, 1),))
    with pytest.raises(D.DiagramError):
        D.split(bare, 1, 0, "plus")
    assert D.mu_i(bare, 1).is_zero()


def test_chord_endpoints_follow_their_arc(pants):
    d = D.from_word(parse_word("a1.a1.a2.a2"), pants)
    for first in (D.split(d, 1, cid, v) for cid in (0, 1) for v in ("plus", "minus")):
        for label in (1, 2):
            for cid in first.crossings_on(label):
                old_chord = next(t for t in first.circles[label - 1]
                                 if isinstance(t, tuple) and t[0] == "c")
                arc1, arc2 = D._arcs(first.circles[label - 1], cid, first.sign(cid))
                holder = arc1 if old_chord in arc1 else arc2
                second = D.split(first, label, cid, "plus")
                assert second.size == 3 and chord_count(second) == 2
                (piece,) = [c for c in second.circles[label - 1:label + 1] if old_chord in c]
                assert piece[1:] == holder
                return
    pytest.fail("no second splitting found")


def test_mu1_matches_mu_on_single_circle():
    rng = random.Random(1)
    for spec in SURFACES:
        m = parse_surface(spec)
        for _ in range(30):
            w = random_cyclic_word(rng, m.rank, 8, primitive=True)
            wedges = []
            for d, c in D.mu_i(D.from_word(w, m), 1):
                _, loops = D.diagram_invariant(d)
                wedges.append(WedgeTerm(loops[0], loops[1], c))
            got = reduce_wedges(wedges)
            want = mu(w, m).terms
            assert len(got) == len(want)
            for t in want:
                hits = [u for u in got if wedge_equal(u.x, u.y, t.x, t.y)]
                assert len(hits) == 1 and hits[0].coefficient == t.coefficient


def test_mu_i_with_no_crossings(torus):
    d = D.from_word((1, 2), torus)
    assert D.mu_i(d, 1).is_zero()
    with pytest.raises(D.DiagramError):
        D.mu_i(d, 2)


def test_second_splitting_sequential_crossings(pants):
    # a1 a1 a2 a2: the two crossings do not interleave along the curve, so
    # each survives on one piece of the other's splitting
    d = D.from_word(parse_word("a1.a1.a2.a2"), pants)
    twice = D.mu_i_comb(D.mu_i(d, 1), 2)
    assert twice.t() == 4
    assert sum(1 for _, c in twice if c > 0) == 2
    for e, _ in twice:
        assert e.size == 3 and chord_count(e) == 2


def test_second_splitting_interleaved_crossings(genus2):
    # in the worked example each crossing separates the other's preimages
    d = D.from_word(parse_word(WORKED_WORD), genus2)
    for e, _ in D.mu_i(d, 1):
        assert e.crossings_on(1) == e.crossings_on(2) == []
    assert D.mu_i_comb(D.mu_i(d, 1), 2).is_zero()


def _three_circle_combo():
    rng = random.Random(5)
    m = parse_surface("genus:2,boundary:1")
    while True:
        w = random_cyclic_word(rng, 4, 8, primitive=True, min_len=6)
        combo = D.mu_i_comb(D.mu_i(D.from_word(w, m), 1), 2)
        if not combo.is_zero():
            return combo


def test_label_permutation_laws():
    c = _three_circle_combo()
    same = lambda a, b: (a - b).is_zero()
    assert same(D.tau_i(D.tau_i(c, 1), 1), c)
    assert same(D.omega_i(D.omega_i(D.omega_i(c, 1), 1), 1), c)
    assert same(D.omega_i(c, 1), D.tau_i(D.tau_i(c, 1), 2))


def test_erase_commutes_with_relabeling():
    c = _three_circle_combo()
    for d, _ in c:
        e = D.erase(d)
        assert D.erase(D.omega(1)(d)) == (e[1], e[2], e[0])
        assert D.erase(D.tau(2)(d)) == (e[0], e[2], e[1])


def test_erase_of_split_is_smoothing(pants):
    d = D.from_word(parse_word("a1.a1.A2"), pants)
    out = Counter()
    for e, c in D.mu_i(d, 1):
        assert len(D.erase(e)) == 2
        out[D.erase(e)] += c
    want = {(t.left, t.right): t.coefficient for t in turaev_cobracket((1, 1, -2), pants)}
    assert {k: v for k, v in out.items() if v} == want


def test_invariant_sees_chord_position(torus):
    # same loops, chord attached at different points: not the same diagram
    a = D.LabeledDiagram(((("c", 0), 1, 2), (("c", 0), 1, 1, 2)), ())
    b = D.LabeledDiagram(((1, ("c", 0), 2), (("c", 0), 1, 1, 2)), ())
    c = D.LabeledDiagram(((2, ("c", 0), 1), (("c", 0), 1, 1, 2)), ())
    # moving the chord past a letter that commutes with the other loop is free
    d = D.LabeledDiagram(((1, ("c", 0), 2), (("c", 0), 1)), ())
    e = D.LabeledDiagram(((("c", 0), 1, 2), (("c", 0), 1)), ())
    assert D.invariants_equal(D.diagram_invariant(d), D.diagram_invariant(e))
    assert not D.invariants_equal(D.diagram_invariant(a), D.diagram_invariant(b))
    # rotating the based word along with the chord changes nothing
    assert D.invariants_equal(D.diagram_invariant(a), D.diagram_invariant(c))


@pytest.mark.parametrize("spec", SURFACES)
def test_identities_on_random_loops(spec):
    m = parse_surface(spec)
    rng = random.Random(spec)
    for _ in range(40):
        d = D.from_word(random_cyclic_word(rng, m.rank, 8, primitive=True), m)
        assert D.verify_coskew(d).holds
        assert D.verify_cojacobi(d).holds
        assert D.verify_factorization(d, m).holds


def test_factorization_on_second_circle(genus2):
    rng = random.Random(3)
    checked = 0
    for _ in range(40):
        w = random_cyclic_word(rng, 4, 9, primitive=True)
        for d, _ in D.mu_i(D.from_word(w, genus2), 1):
            for i in (1, 2):
                assert D.verify_factorization(d, genus2, i).holds
                assert D.verify_coskew(d, i).holds
            checked += 1
    assert checked > 20


def test_broken_identity_is_reported(pants):
    # drop one term from mu_1: the erased images no longer match
    d = D.from_word(parse_word("a1.a1.A2"), pants)
    m = D.mu_i(d, 1)
    partial = D.TermCombination(m.terms()[:1])
    report = D._report("probe", partial)
    assert report.outcome == D.VIOLATED and not report.holds
