"""Brute-force Kauffman bracket and the stable penultimate coefficient.

The bracket is summed over all 2^c Kauffman states.  A state is a bitmask in
which bit ``x`` set means crossing ``x`` takes its B-smoothing.  An A-choice
contributes ``+1`` to the exponent of ``A``, so the all-A state sits at the
top of the polynomial and, for an A-adequate diagram, is the only state
reaching degree ``c + 2(|s_A| - 1)``.
"""
from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .diagram import LinkDiagram, is_connected
from .laurent import LaurentPolynomial
from .state import all_a_state, build_ga, euler_char, is_a_adequate, reduce_ga

__all__ = [
    "OracleError",
    "DEFAULT_CROSSING_LIMIT",
    "KauffmanState",
    "resolve_state",
    "kauffman_bracket",
    "stable_beta_prime",
    "StableCoefficientCheck",
    "verify_stable_coefficient",
]

DEFAULT_CROSSING_LIMIT = 20

# -A^2 - A^-2
LOOP_VALUE = LaurentPolynomial({2: -1, -2: -1})


class OracleError(ValueError):
    """Raised when the state sum is asked for something it cannot do."""


@dataclass(frozen=True)
class KauffmanState:
    mask: int
    circles: int
    a: int
    b: int


def _smoothing_tables(diagram: LinkDiagram) -> tuple[list[tuple[int, int, int, int]], int]:
    index: dict[int, int] = {}
    for x in diagram.crossings:
        for label in x.arcs:
            index.setdefault(label, len(index))
    table = [tuple(index[label] for label in x.arcs) for x in diagram.crossings]
    return table, len(index)  # type: ignore[return-value]


def _count_circles(table, n_arcs: int, mask: int) -> int:
    parent = list(range(n_arcs))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    merges = 0
    for x, (p, q, r, s) in enumerate(table):
        if mask >> x & 1:
            pairs = ((p, s), (q, r))
        else:
            pairs = ((p, q), (r, s))
        for u, v in pairs:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
                merges += 1
    return n_arcs - merges


def resolve_state(diagram: LinkDiagram, mask: int) -> KauffmanState:
    c = diagram.crossing_count
    if not 0 <= mask < 1 << c:
        raise OracleError(f"state mask {mask} out of range for {c} crossings")
    table, n_arcs = _smoothing_tables(diagram)
    b = bin(mask).count("1")
    circles = _count_circles(table, n_arcs, mask) + diagram.free_loops
    return KauffmanState(mask, circles, c - b, b)


def _histogram(table, n_arcs: int, c: int, start: int, stop: int) -> Counter:
    hist: Counter = Counter()
    for mask in range(start, stop):
        b = bin(mask).count("1")
        hist[(c - 2 * b, _count_circles(table, n_arcs, mask))] += 1
    return hist


def kauffman_bracket(
    diagram: LinkDiagram, max_crossings: int = DEFAULT_CROSSING_LIMIT, workers: int = 1
) -> LaurentPolynomial:
    """Unnormalized bracket: sum of A^(a-b) (-A^2 - A^-2)^(|s|-1)."""
    c = diagram.crossing_count
    if c > max_crossings:
        raise OracleError(f"{c} crossings exceeds the oracle limit of {max_crossings}")
    table, n_arcs = _smoothing_tables(diagram)
    total = 1 << c
    if workers > 1 and c >= 12:
        step = -(-total // workers)
        bounds = [(lo, min(lo + step, total)) for lo in range(0, total, step)]
        hist: Counter = Counter()
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_histogram, table, n_arcs, c, lo, hi) for lo, hi in bounds]
            for fut in futures:
                hist.update(fut.result())
    else:
        hist = _histogram(table, n_arcs, c, 0, total)
    result = LaurentPolynomial()
    powers: dict[int, LaurentPolynomial] = {}
    for (shift, circles), count in sorted(hist.items()):
        loops = circles + diagram.free_loops - 1
        if loops not in powers:
            powers[loops] = LOOP_VALUE**loops
        result = result + LaurentPolynomial.monomial(shift, count) * powers[loops]
    return result


def _all_a_degree(diagram: LinkDiagram) -> int:
    return diagram.crossing_count + 2 * (len(all_a_state(diagram).circles) - 1)


def stable_beta_prime(
    diagram: LinkDiagram,
    max_crossings: int = DEFAULT_CROSSING_LIMIT,
    workers: int = 1,
    bracket: LaurentPolynomial | None = None,
) -> int:
    """|coefficient| four below the all-A degree of an A-adequate diagram."""
    if not is_a_adequate(all_a_state(diagram)):
        raise OracleError("the stable coefficient needs an A-adequate diagram")
    if bracket is None:
        bracket = kauffman_bracket(diagram, max_crossings, workers)
    top = _all_a_degree(diagram)
    if bracket.is_zero() or bracket.max_degree != top or abs(bracket.coefficient(top)) != 1:
        raise OracleError("extreme coefficient is not a unit at the all-A degree")
    return abs(bracket.coefficient(top - 4))


@dataclass(frozen=True)
class StableCoefficientCheck:
    expected: int
    observed: int
    match: bool
    bracket: LaurentPolynomial
    max_degree: int
    min_degree: int

    def to_dict(self) -> dict:
        return {
            "expected": self.expected,
            "observed": self.observed,
            "match": self.match,
            "bracket": str(self.bracket),
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
        }


def verify_stable_coefficient(
    diagram: LinkDiagram, max_crossings: int = DEFAULT_CROSSING_LIMIT, workers: int = 1
) -> StableCoefficientCheck:
    if not is_connected(diagram):
        raise OracleError("the stable coefficient check needs a connected diagram")
    state = all_a_state(diagram)
    if not is_a_adequate(state):
        raise OracleError("the stable coefficient needs an A-adequate diagram")
    expected = 1 + euler_char(reduce_ga(build_ga(state)))
    bracket = kauffman_bracket(diagram, max_crossings, workers)
    observed = stable_beta_prime(diagram, max_crossings, bracket=bracket)
    return StableCoefficientCheck(
        expected, observed, expected == observed, bracket, bracket.max_degree, bracket.min_degree
    )
