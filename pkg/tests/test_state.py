from __future__ import annotations

from collections import Counter

import pytest

from helpers import (
    figure_eight,
    hopf,
    kinked_unknot,
    left_trefoil,
    minimal_plat,
    right_trefoil,
    state_signature,
    trace_circles,
)
from twistvol.diagram import mirror, parse_pd, rational_plat
from twistvol.state import (
    ReducedStateGraph,
    all_a_state,
    build_ga,
    check_telc,
    euler_char,
    is_a_adequate,
    reduce_ga,
)
from twistvol.twist import classify_regions, detect_twist_regions


def _regions(d):
    return classify_regions(d, all_a_state(d), detect_twist_regions(d))


def _all_b_mask(d):
    return (1 << d.crossing_count) - 1


class TestAllAState:
    def test_right_trefoil(self):
        s = all_a_state(right_trefoil())
        assert len(s.circles) == 2
        assert len(s.segments) == 3
        # all three segments run between the same two circles
        assert {tuple(sorted(seg.ends)) for seg in s.segments} == {(0, 1)}

    def test_left_trefoil(self):
        s = all_a_state(left_trefoil())
        assert len(s.circles) == 3
        assert Counter(len(c.arcs) for c in s.circles) == {2: 3}

    def test_unknot(self):
        s = all_a_state(parse_pd(""))
        assert len(s.circles) == 1 and s.segments == ()
        assert euler_char(reduce_ga(build_ga(s))) == -1

    def test_circles_match_independent_trace(self, corpus_diagrams):
        for rec, d in corpus_diagrams:
            ours = sorted(frozenset(c.arcs) for c in all_a_state(d).circles)
            theirs = sorted(trace_circles(d))
            assert sorted(map(sorted, ours)) == sorted(map(sorted, theirs)), rec.id

    def test_circle_of_arc(self):
        s = all_a_state(figure_eight())
        for c in s.circles:
            for label in c.arcs:
                assert s.circle_of_arc(label) == c.id
        with pytest.raises(KeyError):
            s.circle_of_arc(999)

    def test_every_segment_end_is_visited(self):
        s = all_a_state(minimal_plat())
        visits = Counter(v for c in s.circles for v in c.visits)
        assert set(visits.values()) == {1}
        assert len(visits) == 2 * len(s.segments)

    def test_to_dict(self):
        data = all_a_state(right_trefoil()).to_dict()
        assert len(data["circles"]) == 2
        assert all(len(seg) == 3 for seg in data["segments"])


class TestGraphs:
    def test_figure_eight(self):
        s = all_a_state(figure_eight())
        ga = build_ga(s)
        assert len(ga.vertices) == 3 and len(ga.edges) == 4
        red = reduce_ga(ga)
        assert len(red.edges) == 3
        assert euler_char(red) == 0

    def test_minimal_plat(self):
        red = reduce_ga(build_ga(all_a_state(minimal_plat())))
        assert (len(red.edges), len(red.vertices)) == (18, 13)
        assert euler_char(red) == 5

    def test_reduce_idempotent(self, corpus_diagrams):
        for _, d in corpus_diagrams:
            red = reduce_ga(build_ga(all_a_state(d)))
            assert reduce_ga(red) == red

    def test_reduced_keeps_every_crossing(self):
        red = reduce_ga(build_ga(all_a_state(minimal_plat())))
        absorbed = sorted(x for _, _, xs in red.edges for x in xs)
        assert absorbed == list(range(18))

    def test_degrees(self):
        g = ReducedStateGraph((0, 1, 2), ((0, 1, (0,)), (1, 2, (1, 2)), (2, 2, (3,))))
        assert g.degrees() == {0: 1, 1: 2, 2: 3}
        assert g.has_loops


class TestAdequacy:
    def test_kink(self):
        assert not is_a_adequate(all_a_state(kinked_unknot()))
        assert is_a_adequate(all_a_state(mirror(kinked_unknot())))

    @pytest.mark.parametrize("sign", [1, -1])
    def test_hopf(self, sign):
        assert is_a_adequate(all_a_state(hopf(sign)))

    @pytest.mark.parametrize("terms", [(2, 2), (3, 1, 2), (2, 1, 1, 2), (5, 2, 3)])
    def test_reduced_alternating_are_adequate(self, terms):
        d = rational_plat(terms)
        assert is_a_adequate(all_a_state(d))
        assert is_a_adequate(all_a_state(mirror(d)))


class TestTelc:
    def test_hopf_fails(self):
        d = hopf(-1)
        assert not check_telc(all_a_state(d), _regions(d))

    def test_trefoils(self):
        for d in (right_trefoil(), left_trefoil()):
            assert check_telc(all_a_state(d), _regions(d))

    def test_corpus(self, corpus_diagrams):
        # the corpus only keeps diagrams that satisfy the condition
        for _, d in corpus_diagrams:
            assert check_telc(all_a_state(d), _regions(d))

    def test_mismatched_regions(self):
        d = figure_eight()
        with pytest.raises(ValueError):
            check_telc(all_a_state(d), _regions(d)[:1])


class TestMirrorDuality:
    """The all-B state of D is the all-A state of its mirror."""

    def test_small_diagrams(self, corpus_diagrams):
        checked = 0
        for rec, d in corpus_diagrams:
            if d.crossing_count > 10:
                continue
            checked += 1
            assert state_signature(d, _all_b_mask(d)) == state_signature(mirror(d)), rec.id
        assert checked >= 10

    def test_trefoil(self):
        d = left_trefoil()
        assert len(trace_circles(d, _all_b_mask(d))) == len(all_a_state(mirror(d)).circles) == 2
