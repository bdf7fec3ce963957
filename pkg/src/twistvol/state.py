"""All-A state of a diagram and the graphs G_A and G'_A built from it.

The A-smoothing of a crossing ``(a, b, c, d)`` joins arcs a-b and c-d.  A
state circle is therefore a closed chain of arcs; the A-segment of a crossing
connects the circle through its slots {0, 1} to the circle through {2, 3}.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import TYPE_CHECKING, Sequence

from .diagram import LinkDiagram

if TYPE_CHECKING:
    from .twist import TwistRegion

__all__ = [
    "StateCircle",
    "ASegment",
    "AllAState",
    "StateMultigraph",
    "ReducedStateGraph",
    "all_a_state",
    "build_ga",
    "reduce_ga",
    "euler_char",
    "is_a_adequate",
    "check_telc",
]


@dataclass(frozen=True)
class StateCircle:
    id: int
    arcs: tuple[int, ...]
    # (crossing, side) in traversal order; side 0 is slots {0,1}, side 1 is slots {2,3}
    visits: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class ASegment:
    crossing: int
    ends: tuple[int, int]

    @property
    def is_loop(self) -> bool:
        return self.ends[0] == self.ends[1]


@dataclass(frozen=True)
class AllAState:
    circles: tuple[StateCircle, ...]
    segments: tuple[ASegment, ...]

    def circle_of_arc(self, label: int) -> int:
        for circle in self.circles:
            if label in circle.arcs:
                return circle.id
        raise KeyError(label)

    def to_dict(self) -> dict:
        return {
            "circles": [list(c.arcs) for c in self.circles],
            "segments": [[s.crossing, s.ends[0], s.ends[1]] for s in self.segments],
        }


@dataclass(frozen=True)
class StateMultigraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, int], ...]  # (u, v, crossing) with u <= v


@dataclass(frozen=True)
class ReducedStateGraph:
    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int, tuple[int, ...]], ...]  # (u, v, absorbed crossings)

    def degrees(self) -> dict[int, int]:
        deg = dict.fromkeys(self.vertices, 0)
        for u, v, _ in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def has_loops(self) -> bool:
        return any(u == v for u, v, _ in self.edges)


def all_a_state(diagram: LinkDiagram) -> AllAState:
    other = diagram.other_end
    crossings = diagram.crossings
    seen = [False] * len(other)
    raw: list[tuple[tuple[int, ...], tuple[tuple[int, int], ...]]] = []
    for start in range(len(other)):
        if seen[start]:
            continue
        arcs, visits = [], []
        slot = start
        while not seen[slot]:
            x, s = divmod(slot, 4)
            arcs.append(crossings[x].arcs[s])
            far = other[slot]
            seen[slot] = seen[far] = True
            y, t = divmod(far, 4)
            visits.append((y, t // 2))
            slot = 4 * y + (t ^ 1)
        raw.append((tuple(arcs), tuple(visits)))
    base = 2 * diagram.crossing_count
    raw += [((base + i,), ()) for i in range(1, diagram.free_loops + 1)]
    raw.sort(key=lambda item: min(item[0]))
    circles = tuple(StateCircle(i, arcs, visits) for i, (arcs, visits) in enumerate(raw))
    side_circle: dict[tuple[int, int], int] = {}
    for circle in circles:
        for visit in circle.visits:
            side_circle[visit] = circle.id
    segments = tuple(
        ASegment(x.id, (side_circle[(x.id, 0)], side_circle[(x.id, 1)])) for x in crossings
    )
    return AllAState(circles, segments)


def build_ga(state: AllAState) -> StateMultigraph:
    edges = tuple(
        (min(s.ends), max(s.ends), s.crossing) for s in state.segments
    )
    return StateMultigraph(tuple(c.id for c in state.circles), edges)


def reduce_ga(graph: StateMultigraph | ReducedStateGraph) -> ReducedStateGraph:
    """Collapse parallel edges, remembering which crossings each edge absorbed."""
    absorbed: dict[tuple[int, int], list[int]] = {}
    if isinstance(graph, ReducedStateGraph):
        for u, v, xs in graph.edges:
            absorbed.setdefault((u, v), []).extend(xs)
    else:
        for u, v, x in graph.edges:
            absorbed.setdefault((u, v), []).append(x)
    edges = tuple((u, v, tuple(sorted(xs))) for (u, v), xs in sorted(absorbed.items()))
    return ReducedStateGraph(graph.vertices, edges)


def euler_char(graph: ReducedStateGraph) -> int:
    """Negative Euler characteristic e - v."""
    return len(graph.edges) - len(graph.vertices)


def is_a_adequate(state: AllAState) -> bool:
    return not any(s.is_loop for s in state.segments)


def check_telc(state: AllAState, regions: Sequence[TwistRegion]) -> bool:
    """Two-edge loop condition.

    Whenever two distinct circles share two or more segments, all of those
    segments must come from a single short twist region.
    """
    from .twist import RegionKind

    region_of: dict[int, TwistRegion] = {}
    for region in regions:
        for x in region.crossings:
            region_of[x] = region
    if sorted(region_of) != [s.crossing for s in state.segments]:
        raise ValueError("twist regions do not partition the crossings of this state")
    shared = Counter((min(s.ends), max(s.ends)) for s in state.segments if not s.is_loop)
    for (u, v), count in shared.items():
        if count < 2:
            continue
        owners = {
            region_of[s.crossing].id
            for s in state.segments
            if (min(s.ends), max(s.ends)) == (u, v)
        }
        if len(owners) != 1:
            return False
        (rid,) = owners
        kind = next(r.kind for r in regions if r.id == rid)
        if kind is None:
            raise ValueError("twist regions must be classified before checking the TELC")
        if kind is not RegionKind.SHORT:
            return False
    return True
