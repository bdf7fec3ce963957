"""Combinatorial link diagrams.

A diagram is a list of crossings in planar-diagram (PD) form: each crossing
lists the four arc labels around it counterclockwise, starting at an
under-strand arc.  Slots 0 and 2 are the under-strand, slots 1 and 3 the
over-strand.  Crossing-free unknotted circles are kept as a separate count.

Diagrams can be built from PD text, from braid words (plat or trace closure)
and from special plat parameters (rows of twist boxes).
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

__all__ = [
    "DiagramError",
    "Crossing",
    "LinkDiagram",
    "BraidWord",
    "PlatSpec",
    "make_diagram",
    "parse_pd",
    "serialize_pd",
    "braid_to_diagram",
    "plat_closure",
    "rational_plat",
    "mirror",
    "is_connected",
    "is_prime",
    "is_alternating",
    "same_diagram",
]


class DiagramError(ValueError):
    """Malformed, inconsistent or non-planar diagram input."""


@dataclass(frozen=True)
class Crossing:
    id: int
    arcs: tuple[int, int, int, int]

    @property
    def under(self) -> tuple[int, int]:
        return self.arcs[0], self.arcs[2]

    @property
    def over(self) -> tuple[int, int]:
        return self.arcs[1], self.arcs[3]

    @property
    def is_kink(self) -> bool:
        return len(set(self.arcs)) < 4

    def canonical(self) -> tuple[int, int, int, int]:
        # rotating by two slots describes the same unoriented crossing
        a, b, c, d = self.arcs
        return min((a, b, c, d), (c, d, a, b))


@dataclass(frozen=True)
class PlatSpec:
    """Parameters of a special 2n-plat with m = 2k+1 rows of twist boxes.

    Odd rows (1-based) hold n-1 boxes between strands (2j, 2j+1); even rows
    hold n boxes between strands (2j-1, 2j).  ``a[i][j]`` is the signed
    crossing count of a box; negative boxes are the ones whose A-resolution
    is long.
    """

    n: int
    k: int
    a: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise DiagramError(f"plat needs n >= 2, got {self.n}")
        if self.k < 1:
            raise DiagramError(f"plat needs k >= 1, got {self.k}")
        rows = tuple(tuple(int(x) for x in row) for row in self.a)
        object.__setattr__(self, "a", rows)
        if len(rows) != self.m:
            raise DiagramError(f"expected {self.m} rows, got {len(rows)}")
        for i, row in enumerate(rows, start=1):
            want = self.n - 1 if i % 2 else self.n
            if len(row) != want:
                raise DiagramError(f"row {i} needs {want} entries, got {len(row)}")
            if any(x == 0 for x in row):
                raise DiagramError(f"row {i} contains a zero twist box")

    @property
    def m(self) -> int:
        return 2 * self.k + 1

    @property
    def box_count(self) -> int:
        return (self.k + 1) * (self.n - 1) + self.k * self.n

    @property
    def crossing_count(self) -> int:
        return sum(abs(x) for row in self.a for x in row)

    def _rows(self, odd: bool) -> list[tuple[int, ...]]:
        return [row for i, row in enumerate(self.a, start=1) if (i % 2 == 1) == odd]

    @property
    def is_two_bridge(self) -> bool:
        return self.n == 2

    @property
    def is_strongly_negative(self) -> bool:
        if self.n < 3:
            return False
        return all(x <= -3 for row in self._rows(True) for x in row) and all(
            x <= -2 for row in self._rows(False) for x in row
        )

    @property
    def is_mixed_sign(self) -> bool:
        if self.n < 3:
            return False
        return all(x <= -3 or x >= 1 for row in self._rows(True) for x in row) and all(
            x <= -2 for row in self._rows(False) for x in row
        )

    @classmethod
    def from_text(cls, text: str) -> PlatSpec:
        """Parse ``n k`` followed by 2k+1 rows of signed integers.

        Rows may also be separated by ``;`` so that a spec fits on one line.
        """
        lines = []
        for raw in text.replace(";", "\n").splitlines():
            line = raw.split("#", 1)[0].strip()
            if line:
                lines.append(line)
        if not lines:
            raise DiagramError("empty plat spec")
        try:
            head = [int(x) for x in lines[0].split()]
            rows = [tuple(int(x) for x in line.split()) for line in lines[1:]]
        except ValueError as exc:
            raise DiagramError(f"bad plat spec: {exc}") from None
        if len(head) != 2:
            raise DiagramError("first line of a plat spec must be 'n k'")
        return cls(head[0], head[1], tuple(rows))

    def to_text(self) -> str:
        lines = [f"{self.n} {self.k}"]
        lines += [" ".join(str(x) for x in row) for row in self.a]
        return "\n".join(lines) + "\n"

    def to_word(self) -> BraidWord:
        letters: list[int] = []
        for i, row in enumerate(self.a, start=1):
            for j, x in enumerate(row, start=1):
                gen = 2 * j if i % 2 else 2 * j - 1
                letters += [gen if x > 0 else -gen] * abs(x)
        return BraidWord(2 * self.n, tuple(letters))


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "letters", tuple(int(x) for x in self.letters))
        if self.strands < 1:
            raise DiagramError("a braid needs at least one strand")
        for x in self.letters:
            if x == 0 or abs(x) >= self.strands:
                raise DiagramError(f"generator {x} out of range for {self.strands} strands")


@dataclass(frozen=True)
class LinkDiagram:
    """Validated PD diagram with arc labels 1..2c.

    ``boxes`` is set on plat-generated diagrams: for every crossing the
    1-based (row, column, sign) of the twist box it came from.
    """

    crossings: tuple[Crossing, ...]
    free_loops: int = 0
    name: str | None = None
    plat: PlatSpec | None = None
    boxes: tuple[tuple[int, int, int], ...] | None = None

    def __post_init__(self) -> None:
        c = len(self.crossings)
        if self.free_loops < 0:
            raise DiagramError("negative number of free loops")
        if c == 0 and self.free_loops != 1:
            raise DiagramError("a crossing-free diagram must be the one-circle unknot")
        counts: dict[int, int] = {}
        for i, x in enumerate(self.crossings):
            if x.id != i:
                raise DiagramError("crossing ids must be 0..c-1 in order")
            for label in x.arcs:
                counts[label] = counts.get(label, 0) + 1
        bad = sorted(label for label, n in counts.items() if n != 2)
        if bad:
            raise DiagramError(f"arc labels not appearing exactly twice: {bad}")
        if set(counts) != set(range(1, 2 * c + 1)):
            raise DiagramError("arc labels must be exactly 1..2c")
        if self.boxes is not None and len(self.boxes) != c:
            raise DiagramError("box provenance must cover every crossing")
        for comp in self._projection_components:
            faces = {self._face_of[4 * x + s] for x in comp for s in range(4)}
            if len(comp) - 2 * len(comp) + len(faces) != 2:
                raise DiagramError("incidence structure is not planar (Euler check failed)")

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def kinks(self) -> tuple[int, ...]:
        return tuple(x.id for x in self.crossings if x.is_kink)

    @cached_property
    def other_end(self) -> tuple[int, ...]:
        """For slot index 4x+s, the slot index at the other end of its arc."""
        where: dict[int, list[int]] = {}
        for x in self.crossings:
            for s, label in enumerate(x.arcs):
                where.setdefault(label, []).append(4 * x.id + s)
        out = [0] * (4 * len(self.crossings))
        for u, v in where.values():
            out[u], out[v] = v, u
        return tuple(out)

    @cached_property
    def faces(self) -> tuple[tuple[int, ...], ...]:
        """Faces as cycles of corners; corner 4x+k sits between slots k and k+1."""
        other = self.other_end
        seen = [False] * len(other)
        faces = []
        for start in range(len(other)):
            if seen[start]:
                continue
            face = []
            corner = start
            while not seen[corner]:
                seen[corner] = True
                face.append(corner)
                x, k = divmod(corner, 4)
                corner = other[4 * x + (k + 1) % 4]
            faces.append(tuple(face))
        return tuple(faces)

    @cached_property
    def _face_of(self) -> tuple[int, ...]:
        out = [0] * (4 * len(self.crossings))
        for f, face in enumerate(self.faces):
            for corner in face:
                out[corner] = f
        return tuple(out)

    def face_arcs(self, face: Sequence[int]) -> tuple[int, ...]:
        """Arc labels bounding a face, one per corner."""
        return tuple(self.crossings[c // 4].arcs[(c % 4 + 1) % 4] for c in face)

    @cached_property
    def arc_faces(self) -> dict[int, tuple[int, int]]:
        """The two faces on either side of each arc."""
        out: dict[int, list[int]] = {}
        for f, face in enumerate(self.faces):
            for label in self.face_arcs(face):
                out.setdefault(label, []).append(f)
        return {label: (fs[0], fs[1]) for label, fs in out.items()}

    @cached_property
    def arc_ends(self) -> dict[int, tuple[int, int]]:
        """Crossing ids at the two ends of each arc."""
        out: dict[int, list[int]] = {}
        for x in self.crossings:
            for label in x.arcs:
                out.setdefault(label, []).append(x.id)
        return {label: (e[0], e[1]) for label, e in out.items()}

    @cached_property
    def _projection_components(self) -> tuple[frozenset[int], ...]:
        return _components(len(self.crossings), self.arc_ends.values())

    @cached_property
    def components(self) -> int:
        """Number of link components (closed strands), free loops included."""
        other = self.other_end
        seen = [False] * len(other)
        count = 0
        for start in range(len(other)):
            if seen[start]:
                continue
            count += 1
            slot = start
            while not seen[slot]:
                seen[slot] = True
                far = other[slot]
                seen[far] = True
                x, s = divmod(far, 4)
                slot = 4 * x + (s + 2) % 4
        return count + self.free_loops

    def __str__(self) -> str:
        return serialize_pd(self)


def _components(n: int, edges: Iterable[tuple[int, int]]) -> tuple[frozenset[int], ...]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if not seen[v]:
                    seen[v] = True
                    comp.append(v)
                    queue.append(v)
        out.append(frozenset(comp))
    return tuple(out)


def make_diagram(
    tuples: Iterable[Sequence[int]],
    free_loops: int = 0,
    name: str | None = None,
    **provenance,
) -> LinkDiagram:
    """Build a diagram from raw 4-tuples, relabelling arcs order-preservingly to 1..2c."""
    raw = [tuple(int(v) for v in t) for t in tuples]
    for t in raw:
        if len(t) != 4:
            raise DiagramError(f"crossing {t} does not have four arcs")
    labels = sorted({v for t in raw for v in t})
    relabel = {old: new for new, old in enumerate(labels, start=1)}
    crossings = tuple(
        Crossing(i, tuple(relabel[v] for v in t)) for i, t in enumerate(raw)  # type: ignore[arg-type]
    )
    return LinkDiagram(crossings, free_loops, name, **provenance)


_TERM = re.compile(r"([XU])\(\s*([^()]*?)\s*\)")


def parse_pd(text: str, name: str | None = None) -> LinkDiagram:
    """Parse whitespace-separated ``X(a,b,c,d)`` and ``U(a)`` terms.

    Text after ``#`` on a line is ignored.  Empty input is the unknot.
    """
    body = "\n".join(line.split("#", 1)[0] for line in text.splitlines())
    crossings: list[tuple[int, ...]] = []
    loops: list[int] = []
    pos = 0
    for match in _TERM.finditer(body):
        if body[pos : match.start()].strip():
            raise DiagramError(f"unexpected text {body[pos:match.start()].strip()!r}")
        pos = match.end()
        try:
            values = tuple(int(v) for v in match.group(2).split(","))
        except ValueError:
            raise DiagramError(f"non-integer label in {match.group(0)!r}") from None
        if any(v <= 0 for v in values):
            raise DiagramError(f"labels must be positive in {match.group(0)!r}")
        if match.group(1) == "X":
            if len(values) != 4:
                raise DiagramError(f"{match.group(0)!r} needs four labels")
            crossings.append(values)
        else:
            if len(values) != 1:
                raise DiagramError(f"{match.group(0)!r} needs one label")
            loops.append(values[0])
    if body[pos:].strip():
        raise DiagramError(f"unexpected text {body[pos:].strip()!r}")
    used = {v for t in crossings for v in t}
    if len(set(loops)) != len(loops) or used & set(loops):
        raise DiagramError("unknot labels must be distinct and unused by crossings")
    if not crossings and not loops:
        loops = [1]
    return make_diagram(crossings, len(loops), name)


def serialize_pd(diagram: LinkDiagram) -> str:
    terms = ["X({},{},{},{})".format(*x.arcs) for x in diagram.crossings]
    base = 2 * diagram.crossing_count
    terms += [f"U({base + i})" for i in range(1, diagram.free_loops + 1)]
    return " ".join(terms)


class _UnionFind:
    def __init__(self) -> None:
        self.parent: dict[int, int] = {}

    def find(self, x: int) -> int:
        root = x
        while self.parent.get(root, root) != root:
            root = self.parent[root]
        while x != root:
            self.parent[x], x = root, self.parent.get(x, x)
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx != ry:
            self.parent[max(rx, ry)] = min(rx, ry)


def braid_to_diagram(word: BraidWord, closure: str = "plat", name: str | None = None, **provenance) -> LinkDiagram:
    """Close a braid, read top to bottom, by plat caps or by the trace closure.

    A positive generator is the crossing whose A-smoothing keeps both strands
    vertical (so sigma_1^3 with trace closure is the right-handed trefoil).
    """
    if closure not in ("plat", "trace"):
        raise ValueError(f"unknown closure {closure!r}")
    n = word.strands
    if closure == "plat" and n % 2:
        raise DiagramError("plat closure needs an even number of strands")
    counter = iter(range(1, 10**9))
    if closure == "plat":
        top = [lab for _ in range(n // 2) for lab in [next(counter)] * 2]
    else:
        top = [next(counter) for _ in range(n)]
    pos = list(top)
    tuples: list[list[int]] = []
    for g in word.letters:
        i = abs(g) - 1
        p, q = pos[i], pos[i + 1]
        r, s = next(counter), next(counter)
        # ccw around the crossing: q (top right), p (top left), r (bottom left), s (bottom right)
        tuples.append([p, r, s, q] if g > 0 else [q, p, r, s])
        pos[i], pos[i + 1] = r, s
    uf = _UnionFind()
    if closure == "plat":
        for i in range(0, n, 2):
            uf.union(pos[i], pos[i + 1])
    else:
        for i in range(n):
            uf.union(pos[i], top[i])
    tuples = [[uf.find(v) for v in t] for t in tuples]
    used = {v for t in tuples for v in t}
    classes = {uf.find(v) for v in set(top) | set(pos)}
    loops = len(classes - used)
    return make_diagram(tuples, loops, name, **provenance)


def plat_closure(spec: PlatSpec, name: str | None = None) -> LinkDiagram:
    boxes = tuple(
        (i, j, 1 if x > 0 else -1)
        for i, row in enumerate(spec.a, start=1)
        for j, x in enumerate(row, start=1)
        for _ in range(abs(x))
    )
    return braid_to_diagram(spec.to_word(), "plat", name, plat=spec, boxes=boxes)


def rational_plat(terms: Sequence[int], name: str | None = None) -> LinkDiagram:
    """Alternating 4-plat of the two-bridge link with Conway notation ``terms``.

    The word is sigma_2^a1 sigma_1^-a2 sigma_2^a3 ...; an even-length
    notation is first made odd using C(.., a, 1) = C(.., a + 1).
    """
    terms = list(terms)
    if not terms or any(a < 1 for a in terms):
        raise DiagramError("Conway notation needs positive integers")
    if len(terms) % 2 == 0:
        if terms[-1] == 1:
            terms = terms[:-2] + [terms[-2] + 1]
        else:
            terms = terms[:-1] + [terms[-1] - 1, 1]
    letters: list[int] = []
    for i, a in enumerate(terms):
        letters += [2 if i % 2 == 0 else -1] * a
    return braid_to_diagram(BraidWord(4, tuple(letters)), "plat", name)


def mirror(diagram: LinkDiagram) -> LinkDiagram:
    """Swap over and under at every crossing; plat provenance is dropped."""
    crossings = tuple(Crossing(x.id, x.arcs[1:] + x.arcs[:1]) for x in diagram.crossings)
    name = f"mirror({diagram.name})" if diagram.name else None
    return LinkDiagram(crossings, diagram.free_loops, name)


def same_diagram(d1: LinkDiagram, d2: LinkDiagram) -> bool:
    """Equality of unoriented diagrams with identical arc labels."""
    return d1.free_loops == d2.free_loops and [x.canonical() for x in d1.crossings] == [
        x.canonical() for x in d2.crossings
    ]


def is_connected(diagram: LinkDiagram) -> bool:
    if diagram.crossing_count == 0:
        return diagram.free_loops == 1
    return diagram.free_loops == 0 and len(diagram._projection_components) == 1


def _separates(n: int, edges: list[tuple[int, int]], skip: tuple[int, int]) -> bool:
    return len(_components(n, (e for i, e in enumerate(edges) if i not in skip))) > 1


def two_edge_cuts(diagram: LinkDiagram, exhaustive: bool = False) -> list[tuple[int, int]]:
    """Pairs of distinct arcs whose removal disconnects the projection graph.

    A pair of arcs can only be a cut if both arcs border the same two faces,
    so by default only such pairs are tested; ``exhaustive`` tries all pairs.
    """
    labels = sorted(diagram.arc_ends)
    edges = [diagram.arc_ends[label] for label in labels]
    n = diagram.crossing_count
    if exhaustive:
        candidates = [(i, j) for i in range(len(labels)) for j in range(i + 1, len(labels))]
    else:
        groups: dict[frozenset[int], list[int]] = {}
        for i, label in enumerate(labels):
            groups.setdefault(frozenset(diagram.arc_faces[label]), []).append(i)
        candidates = [
            (g[a], g[b]) for g in groups.values() for a in range(len(g)) for b in range(a + 1, len(g))
        ]
    return [(labels[i], labels[j]) for i, j in candidates if _separates(n, edges, (i, j))]


def is_prime(diagram: LinkDiagram, exhaustive: bool = False) -> bool:
    """True iff no simple closed curve meets the diagram twice with crossings on both sides."""
    if not is_connected(diagram):
        raise DiagramError("primeness is only decided for connected diagrams")
    if diagram.crossing_count == 0:
        raise DiagramError("primeness needs at least one crossing")
    return not two_edge_cuts(diagram, exhaustive)


def is_alternating(diagram: LinkDiagram) -> bool:
    """Every arc runs from an over-crossing slot to an under-crossing slot."""
    other = diagram.other_end
    return all((u % 2) != (other[u] % 2) for u in range(len(other)))
