"""Twist regions, state-circle classes and the counting identities.

Twist regions are maximal chains of bigon faces.  Whether a region's
A-resolution is short or long is read off the bigon corners: the A-smoothing
of ``(a, b, c, d)`` closes off the corners between slots 0|1 and 2|3 and opens
the corners 1|2 and 3|0.  Bigons whose corners are closed off turn into small
inner circles (long resolution); opened bigons are the rungs between two
circles (short resolution).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

from .diagram import DiagramError, LinkDiagram, is_connected, is_prime
from .state import (
    AllAState,
    ReducedStateGraph,
    all_a_state,
    build_ga,
    check_telc,
    euler_char,
    is_a_adequate,
    reduce_ga,
)

__all__ = [
    "RegionKind",
    "CircleClass",
    "Bigon",
    "TwistRegion",
    "Hypotheses",
    "CircleCensus",
    "IdentityCheck",
    "detect_twist_regions",
    "classify_regions",
    "small_inner_circles",
    "classify_circles",
    "detect_exceptional_diagram",
    "verify_identities",
    "census",
]


class RegionKind(str, enum.Enum):
    ONE_CROSSING = "one-crossing"
    SHORT = "short"
    LONG = "long"


class CircleClass(str, enum.Enum):
    SIC = "SIC"
    SPECIAL = "SC"
    REMAINING = "remaining-OC"
    # an other circle left unclassified because the special-circle criterion does not apply
    OTHER = "OC"


@dataclass(frozen=True)
class Bigon:
    corners: tuple[int, int]  # flat corner indices 4x+k
    arcs: tuple[int, int]

    @property
    def closed_off(self) -> tuple[bool, bool]:
        return tuple(c % 2 == 0 for c in self.corners)  # type: ignore[return-value]


@dataclass(frozen=True)
class TwistRegion:
    id: int
    crossings: tuple[int, ...]
    kind: RegionKind | None = None
    sign: int | None = None
    bigons: tuple[Bigon, ...] = ()

    @property
    def length(self) -> int:
        return len(self.crossings)

    @property
    def closed_bigons(self) -> tuple[Bigon, ...]:
        return tuple(b for b in self.bigons if b.closed_off[0])

    @property
    def is_cyclic(self) -> bool:
        """A long chain that closes up on itself."""
        return self.length >= 2 and len(self.closed_bigons) >= self.length


@dataclass(frozen=True)
class Hypotheses:
    connected: bool
    prime: bool
    a_adequate: bool
    telc: bool
    twist_ge_2: bool
    exceptional: bool = False

    @property
    def main_theorem(self) -> bool:
        return self.connected and self.prime and self.a_adequate and self.telc and self.twist_ge_2

    @property
    def sc_criterion(self) -> bool:
        """Special circles are exactly the other circles meeting two twist regions."""
        return self.main_theorem and not self.exceptional

    def as_dict(self) -> dict[str, bool]:
        return {
            "connected": self.connected,
            "prime": self.prime,
            "A-adequate": self.a_adequate,
            "TELC": self.telc,
            "t>=2": self.twist_ge_2,
            "not exceptional": not self.exceptional,
        }


@dataclass(frozen=True)
class CircleCensus:
    classes: tuple[CircleClass, ...]
    incidence: tuple[int, ...]  # distinct twist regions met by each circle
    t: int
    t1: int
    ts: int
    tl: int
    el: int
    n_sic: int
    n_oc: int
    st: int | None
    two_region_ocs: int
    hypotheses: Hypotheses
    t_neg: int | None = None
    t_pos: int | None = None

    @property
    def n_remaining(self) -> int:
        return sum(c is CircleClass.REMAINING for c in self.classes)

    @property
    def min_oc_incidence(self) -> int | None:
        vals = [n for c, n in zip(self.classes, self.incidence) if c is not CircleClass.SIC]
        return min(vals) if vals else None

    @property
    def forced_alternating(self) -> bool:
        """t = st leaves no remaining OC, which forces the diagram to be alternating."""
        return self.st is not None and self.t == self.st

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "t1": self.t1,
            "ts": self.ts,
            "tl": self.tl,
            "el": self.el,
            "SIC": self.n_sic,
            "OC": self.n_oc,
            "st": self.st,
            "two_region_OCs": self.two_region_ocs,
            "remaining_OCs": self.n_remaining,
            "t_neg": self.t_neg,
            "t_pos": self.t_pos,
            "min_OC_incidence": self.min_oc_incidence,
            "forced_alternating": self.forced_alternating,
            "classes": [c.value for c in self.classes],
            "incidence": list(self.incidence),
            "hypotheses": self.hypotheses.as_dict(),
        }


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: int | None
    rhs: int | None
    holds: bool | None  # None when a side cannot be evaluated
    # True when the identity is guaranteed for this diagram, so a failure is a bug
    binding: bool = True

    def to_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs,
                "holds": self.holds, "binding": self.binding}


def _bigons(diagram: LinkDiagram) -> list[Bigon]:
    """Alternating bigon faces.

    A bigon whose corners disagree (one closed off, one opened) is a
    Reidemeister II configuration rather than a twist; it does not chain
    crossings into a twist region.
    """
    out = []
    for face in diagram.faces:
        if len(face) == 2 and face[0] // 4 != face[1] // 4 and face[0] % 2 == face[1] % 2:
            arcs = diagram.face_arcs(face)
            out.append(Bigon((face[0], face[1]), (arcs[0], arcs[1])))
    return out


def _chain_order(members: set[int], bigons: Sequence[Bigon]) -> tuple[int, ...]:
    nbrs: dict[int, set[int]] = {x: set() for x in members}
    for b in bigons:
        x, y = b.corners[0] // 4, b.corners[1] // 4
        nbrs[x].add(y)
        nbrs[y].add(x)
    ends = sorted(x for x in members if len(nbrs[x]) <= 1)
    order = [ends[0] if ends else min(members)]
    seen = {order[0]}
    while len(order) < len(members):
        nxt = sorted(nbrs[order[-1]] - seen)
        if not nxt:
            nxt = sorted(members - seen)
        order.append(nxt[0])
        seen.add(nxt[0])
    return tuple(order)


def detect_twist_regions(diagram: LinkDiagram) -> list[TwistRegion]:
    """Maximal bigon chains; every crossing lands in exactly one region."""
    c = diagram.crossing_count
    parent = list(range(c))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    bigons = _bigons(diagram)
    for b in bigons:
        rx, ry = find(b.corners[0] // 4), find(b.corners[1] // 4)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)
    groups: dict[int, set[int]] = {}
    for x in range(c):
        groups.setdefault(find(x), set()).add(x)
    by_root: dict[int, list[Bigon]] = {}
    for b in bigons:
        by_root.setdefault(find(b.corners[0] // 4), []).append(b)
    regions = []
    for rid, root in enumerate(sorted(groups, key=lambda r: min(groups[r]))):
        members = groups[root]
        own = tuple(by_root.get(root, ()))
        sign = None
        if diagram.boxes is not None:
            sign = -1 if any(diagram.boxes[x][2] < 0 for x in members) else 1
        kind = RegionKind.ONE_CROSSING if len(members) == 1 else None
        regions.append(TwistRegion(rid, _chain_order(members, own), kind, sign, own))
    return regions


def classify_regions(
    diagram: LinkDiagram, state: AllAState, regions: Sequence[TwistRegion]
) -> list[TwistRegion]:
    out = []
    ends = {s.crossing: (min(s.ends), max(s.ends)) for s in state.segments}
    for region in regions:
        if region.length == 1:
            out.append(_replace(region, kind=RegionKind.ONE_CROSSING))
            continue
        if any(b.closed_off[0] != b.closed_off[1] for b in region.bigons):
            raise DiagramError(f"twist region {region.id} contains a non-alternating bigon")
        # both readings occur only when two crossings share opened and closed
        # bigons (the Hopf diagram); the closed reading is the one kept
        if any(b.closed_off[0] for b in region.bigons):
            kind = RegionKind.LONG
        else:
            kind = RegionKind.SHORT
            if len({ends[x] for x in region.crossings}) != 1:
                raise DiagramError(f"short region {region.id} does not join a single circle pair")
        out.append(_replace(region, kind=kind))
    return out


def _replace(region: TwistRegion, **changes) -> TwistRegion:
    from dataclasses import replace

    return replace(region, **changes)


def small_inner_circles(state: AllAState, regions: Sequence[TwistRegion]) -> dict[int, int]:
    """Map SIC circle id -> id of the long region whose chain created it.

    Each closed-off bigon of a long region is a state circle.  When a long
    region closes up into a cycle (a (2,p)-torus diagram) one of its circles
    is kept as the chain's end circle so that every chain has two ends.
    """
    arc_circle = {label: c.id for c in state.circles for label in c.arcs}
    sics: dict[int, int] = {}
    for region in regions:
        if region.kind is not RegionKind.LONG:
            continue
        ids = sorted({arc_circle[b.arcs[0]] for b in region.closed_bigons})
        if region.is_cyclic:
            ids = ids[1:]
        for cid in ids:
            sics[cid] = region.id
    return sics


def _region_of(regions: Sequence[TwistRegion]) -> dict[int, int]:
    return {x: r.id for r in regions for x in r.crossings}


def _incidence(state: AllAState, regions: Sequence[TwistRegion]) -> list[set[int]]:
    region_of = _region_of(regions)
    inc: list[set[int]] = [set() for _ in state.circles]
    for s in state.segments:
        for cid in s.ends:
            inc[cid].add(region_of[s.crossing])
    return inc


def detect_exceptional_diagram(state: AllAState, regions: Sequence[TwistRegion]) -> bool:
    """Two long regions (length >= 3) whose chains both start and end on one
    shared circle, attached to it in interleaved order."""
    if len(regions) != 2 or any(r.kind is not RegionKind.LONG or r.length < 3 for r in regions):
        return False
    sics = small_inner_circles(state, regions)
    others = [c for c in state.circles if c.id not in sics]
    if len(others) != 1:
        return False
    oc = others[0]
    region_of = _region_of(regions)
    touching = [region_of[x] for x, _ in oc.visits]
    if sorted(touching) != [0, 0, 1, 1]:
        return False
    return touching[0] != touching[1] and touching[1] != touching[2]


def classify_circles(
    diagram: LinkDiagram,
    state: AllAState,
    regions: Sequence[TwistRegion],
    hypotheses: Hypotheses | None = None,
) -> CircleCensus:
    if any(r.kind is None for r in regions):
        raise ValueError("regions must be classified first")
    if hypotheses is None:
        hypotheses = compute_hypotheses(diagram, state, regions)
    sics = small_inner_circles(state, regions)
    inc = _incidence(state, regions)
    classes = []
    for circle in state.circles:
        if circle.id in sics:
            classes.append(CircleClass.SIC)
        elif not hypotheses.sc_criterion:
            classes.append(CircleClass.OTHER)
        elif len(inc[circle.id]) == 2:
            classes.append(CircleClass.SPECIAL)
        else:
            classes.append(CircleClass.REMAINING)
    kinds = [r.kind for r in regions]
    long_crossings = {x for r in regions if r.kind is RegionKind.LONG for x in r.crossings}
    reduced = reduce_ga(build_ga(state))
    el = sum(any(x in long_crossings for x in xs) for _, _, xs in reduced.edges)
    two_region = sum(
        1 for c in state.circles if c.id not in sics and len(inc[c.id]) == 2
    )
    t_neg = t_pos = None
    if all(r.sign is not None for r in regions) and regions:
        t_neg = sum(r.sign < 0 for r in regions)  # type: ignore[operator]
        t_pos = sum(r.sign > 0 for r in regions)  # type: ignore[operator]
    return CircleCensus(
        classes=tuple(classes),
        incidence=tuple(len(s) for s in inc),
        t=len(regions),
        t1=kinds.count(RegionKind.ONE_CROSSING),
        ts=kinds.count(RegionKind.SHORT),
        tl=kinds.count(RegionKind.LONG),
        el=el,
        n_sic=len(sics),
        n_oc=len(state.circles) - len(sics),
        st=classes.count(CircleClass.SPECIAL) if hypotheses.sc_criterion else None,
        two_region_ocs=two_region,
        hypotheses=hypotheses,
        t_neg=t_neg,
        t_pos=t_pos,
    )


def compute_hypotheses(
    diagram: LinkDiagram, state: AllAState, regions: Sequence[TwistRegion]
) -> Hypotheses:
    connected = is_connected(diagram)
    prime = connected and diagram.crossing_count > 0 and is_prime(diagram)
    return Hypotheses(
        connected=connected,
        prime=prime,
        a_adequate=is_a_adequate(state),
        telc=check_telc(state, regions),
        twist_ge_2=len(regions) >= 2,
        exceptional=detect_exceptional_diagram(state, regions),
    )


def verify_identities(census: CircleCensus, reduced: ReducedStateGraph) -> list[IdentityCheck]:
    deg = reduced.degrees()
    e = len(reduced.edges)
    chi = euler_char(reduced)

    def check(name: str, lhs: int | None, rhs: int | None, binding: bool) -> IdentityCheck:
        if lhs is None or rhs is None:
            return IdentityCheck(name, lhs, rhs, None, False)
        return IdentityCheck(name, lhs, rhs, lhs == rhs, binding)

    hyp = census.hypotheses
    # the circle counts rest on adequacy and the TELC of a connected diagram
    counting = hyp.connected and hyp.a_adequate and hyp.telc
    remaining = sum(deg[cid] for cid, c in enumerate(census.classes) if c is CircleClass.REMAINING)
    st = census.st
    checks = [
        check("-chi(G'_A) = t - #OC", chi, census.t - census.n_oc, counting),
        check("#SIC = e_l - t_l", census.n_sic, census.el - census.tl, counting),
        check("e(G'_A) = t1 + ts + e_l", e, census.t1 + census.ts + census.el, counting),
        check("sum deg = 2 e(G'_A)", sum(deg.values()), 2 * e, True),
        check("2 st + sum_remaining deg = 2t",
              None if st is None else 2 * st + remaining, 2 * census.t, True),
    ]
    if st is None:
        checks.append(IdentityCheck("t >= st", census.t, None, None, False))
    else:
        checks.append(IdentityCheck("t >= st", census.t, st, census.t >= st, True))
    return checks


@dataclass(frozen=True)
class TwistAnalysis:
    """Everything the pipeline derives from one diagram."""

    diagram: LinkDiagram
    state: AllAState
    reduced: ReducedStateGraph
    regions: tuple[TwistRegion, ...]
    census: CircleCensus
    identities: tuple[IdentityCheck, ...] = field(default=())

    @property
    def chi_neg(self) -> int:
        return euler_char(self.reduced)


def census(diagram: LinkDiagram) -> TwistAnalysis:
    state = all_a_state(diagram)
    regions = tuple(classify_regions(diagram, state, detect_twist_regions(diagram)))
    reduced = reduce_ga(build_ga(state))
    cen = classify_circles(diagram, state, regions)
    return TwistAnalysis(diagram, state, reduced, regions, cen, tuple(verify_identities(cen, reduced)))
