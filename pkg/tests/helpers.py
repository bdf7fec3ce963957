"""Test-only builders and brute-force oracles, independent of the package internals."""
from __future__ import annotations

from itertools import combinations
from pathlib import Path

from twistvol.diagram import (
    BraidWord,
    LinkDiagram,
    PlatSpec,
    braid_to_diagram,
    make_diagram,
    parse_pd,
    plat_closure,
)
from twistvol.report import load_corpus

DATA = Path(__file__).parent / "data"

LEFT_TREFOIL_PD = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)"
FIGURE_EIGHT_PD = "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"
MINIMAL_PLAT = PlatSpec(3, 1, ((-3, -3), (-2, -2, -2), (-3, -3)))


def right_trefoil():
    return braid_to_diagram(BraidWord(2, (1, 1, 1)), "trace", name="right trefoil")


def left_trefoil():
    return parse_pd(LEFT_TREFOIL_PD, name="left trefoil")


def figure_eight():
    return parse_pd(FIGURE_EIGHT_PD, name="figure eight")


def hopf(sign: int):
    return braid_to_diagram(BraidWord(2, (sign, sign)), "trace")


def kinked_unknot():
    return braid_to_diagram(BraidWord(2, (1,)), "plat")


def minimal_plat():
    return plat_closure(MINIMAL_PLAT)


def corpus_records():
    records, errors = load_corpus(DATA / "corpus.csv")
    assert not errors
    return records


def pd_from_state(circles: dict, segments: dict, name: str | None = None) -> LinkDiagram:
    """Build the diagram whose all-A state is the given planar picture.

    ``circles`` maps a circle name to its attachment points in counterclockwise
    order, each ``(segment, "in" | "out")`` saying whether the segment leaves
    the circle towards its inside or its outside.  ``segments`` maps a segment
    to its two circles ``(P, Q)``.  Each segment becomes a crossing listed as
    (P-left, P-right, Q-right, Q-left) when facing from P to Q, which is the
    rotation whose A-smoothing reconnects P's arcs and Q's arcs.
    """
    counter = iter(range(1, 10**6))
    sides: dict[tuple[str, object], tuple[int, int]] = {}
    for circ, points in circles.items():
        arcs = [next(counter) for _ in points]  # arcs[i] runs from point i to point i+1
        for i, (seg, direction) in enumerate(points):
            incoming, outgoing = arcs[i - 1], arcs[i]
            # facing away from the circle along the segment: (left, right)
            if direction == "out":
                sides[(circ, seg)] = (outgoing, incoming)
            else:
                sides[(circ, seg)] = (incoming, outgoing)
    tuples = []
    for seg, (p, q) in segments.items():
        p_left, p_right = sides[(p, seg)]
        q_left_own, q_right_own = sides[(q, seg)]
        # seen from P the sides at Q swap
        tuples.append([p_left, p_right, q_left_own, q_right_own])
    return make_diagram(tuples, 0, name)


def exceptional_state(a: int, b: int) -> tuple[dict, dict]:
    """One circle C carrying a long chain of ``a`` segments inside and one of
    ``b`` segments outside, attached in the interleaved order A B A B."""
    circles: dict = {"C": [("A0", "in"), ("B0", "out"), (f"A{a - 1}", "in"), (f"B{b - 1}", "out")]}
    segments: dict = {}
    for tag, length in (("A", a), ("B", b)):
        nodes = ["C"] + [f"S{tag}{i}" for i in range(1, length)] + ["C"]
        for i in range(length):
            segments[f"{tag}{i}"] = (nodes[i], nodes[i + 1])
        for i in range(1, length):
            circles[f"S{tag}{i}"] = [(f"{tag}{i - 1}", "out"), (f"{tag}{i}", "out")]
    return circles, segments


def trace_circles(diagram: LinkDiagram, b_mask: int = 0) -> list[frozenset[int]]:
    """State circles as sets of arc labels, by merging arcs joined at each crossing.

    Bit x of ``b_mask`` selects the B-smoothing at crossing x.  Written
    without reference to the package's own state tracer.
    """
    groups: list[set[int]] = []
    where: dict[int, set[int]] = {}

    def join(u: int, v: int) -> None:
        gu, gv = where.get(u), where.get(v)
        if gu is None:
            gu = {u}
            groups.append(gu)
            where[u] = gu
        if gv is None:
            gv = {v}
            groups.append(gv)
            where[v] = gv
        if gu is gv:
            return
        gu |= gv
        for label in gv:
            where[label] = gu
        groups.remove(gv)

    for i, x in enumerate(diagram.crossings):
        a, b, c, d = x.arcs
        if b_mask >> i & 1:
            join(a, d)
            join(b, c)
        else:
            join(a, b)
            join(c, d)
    return [frozenset(g) for g in groups]


def state_signature(diagram: LinkDiagram, b_mask: int = 0) -> tuple:
    """Circle count plus the sorted multiset of (circle, circle) segment ends,
    with circles named by their sorted arc contents."""
    circles = trace_circles(diagram, b_mask)
    owner = {label: tuple(sorted(g)) for g in circles for label in g}
    ends = []
    for x in diagram.crossings:
        a, b, c, d = x.arcs
        ends.append(tuple(sorted((owner[a], owner[c]))))
    return len(circles), sorted(ends)


def brute_force_prime(diagram: LinkDiagram) -> bool:
    """Try every pair of arcs as a cut of the projection graph."""
    edges: dict[int, list[int]] = {}
    for x in diagram.crossings:
        for label in x.arcs:
            edges.setdefault(label, []).append(x.id)
    labels = sorted(edges)
    c = diagram.crossing_count

    def pieces(skip: set[int]) -> int:
        adj: dict[int, set[int]] = {i: set() for i in range(c)}
        for label, (u, v) in edges.items():
            if label not in skip:
                adj[u].add(v)
                adj[v].add(u)
        seen: set[int] = set()
        count = 0
        for start in range(c):
            if start in seen:
                continue
            count += 1
            stack = [start]
            seen.add(start)
            while stack:
                for nxt in adj[stack.pop()]:
                    if nxt not in seen:
                        seen.add(nxt)
                        stack.append(nxt)
        return count

    if pieces(set()) != 1:
        raise ValueError("disconnected")
    return not any(pieces({e, f}) > 1 for e, f in combinations(labels, 2))


def bracket_by_skein(diagram: LinkDiagram) -> dict[int, int]:
    """Kauffman bracket by recursive smoothing, as a plain exponent->coefficient dict.

    Crossings are smoothed one at a time, collecting the arc pairs each
    smoothing joins.  Independent of the package's state sum.
    """
    def mul(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
        out: dict[int, int] = {}
        for e1, c1 in p.items():
            for e2, c2 in q.items():
                out[e1 + e2] = out.get(e1 + e2, 0) + c1 * c2
        return {e: v for e, v in out.items() if v}

    def add(p: dict[int, int], q: dict[int, int]) -> dict[int, int]:
        out = dict(p)
        for e, v in q.items():
            out[e] = out.get(e, 0) + v
        return {e: v for e, v in out.items() if v}

    loop = {2: -1, -2: -1}
    crossings = [x.arcs for x in diagram.crossings]

    def rec(i: int, pairs: tuple[tuple[int, int], ...]) -> dict[int, int]:
        if i == len(crossings):
            # count closed loops formed by the pairs
            parent: dict[int, int] = {}

            def find(u: int) -> int:
                parent.setdefault(u, u)
                while parent[u] != u:
                    u = parent[u]
                return u

            for u, v in pairs:
                ru, rv = find(u), find(v)
                if ru != rv:
                    parent[ru] = rv
            loops = len({find(u) for pair in pairs for u in pair}) + diagram.free_loops
            out = {0: 1}
            for _ in range(loops - 1):
                out = mul(out, loop)
            return out
        a, b, c, d = crossings[i]
        with_a = mul({1: 1}, rec(i + 1, pairs + ((a, b), (c, d))))
        with_b = mul({-1: 1}, rec(i + 1, pairs + ((a, d), (b, c))))
        return add(with_a, with_b)

    return rec(0, ())
