"""Hyperbolic volume bounds computed from twist numbers and G'_A.

Every bound is an entry carrying the hypotheses that license it.  An entry
whose checklist contains a false flag is inapplicable and has no value.
Values are never clamped: a negative lower bound is stored as computed.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

__all__ = [
    "BoundError",
    "HyperbolicConstants",
    "lobachevsky",
    "constants",
    "BoundEntry",
    "SandwichVerdict",
    "VolumeBoundReport",
    "MAIN_FLAGS",
    "TWO_BRIDGE_OFFSET",
    "chi_lower_bound",
    "chi_bounds",
    "main_theorem_bounds",
    "corollary_m_bounds",
    "strongly_negative_bounds",
    "mixed_sign_bounds",
    "two_bridge_bounds",
    "jones_bounds",
    "JONES_FAMILIES",
    "volume_bound_report",
]

# stored verbatim; it is not re-derived here
TWO_BRIDGE_OFFSET = 2.7066

V3_DECIMAL = 1.0149416064096536
V8_DECIMAL = 3.663862376708876

SANDWICH_REL_TOL = 1e-9

MAIN_FLAGS = ("connected", "prime", "A-adequate", "TELC", "t>=2")


class BoundError(ValueError):
    """Inconsistent numeric input to a bound formula."""


@lru_cache(maxsize=None)
def _bernoulli_even(count: int) -> tuple[Fraction, ...]:
    """B_0, B_2, ..., B_{2(count-1)} by the Akiyama-Tanigawa recurrence."""
    top = 2 * count
    row = [Fraction(0)] * (top + 1)
    out: list[Fraction] = []
    for m in range(top + 1):
        row[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        if m % 2 == 0:
            out.append(row[0])
    return tuple(out[:count])


@lru_cache(maxsize=None)
def _zeta_even_over_pi(terms: int) -> tuple[float, ...]:
    """zeta(2n) / pi^(2n) for n = 1..terms, exact rationals rounded once."""
    bern = _bernoulli_even(terms + 1)
    vals = []
    for n in range(1, terms + 1):
        # zeta(2n) = (-1)^(n+1) B_2n (2 pi)^2n / (2 (2n)!)
        q = (-1) ** (n + 1) * bern[n] * Fraction(2 ** (2 * n), 2 * math.factorial(2 * n))
        vals.append(float(q))
    return tuple(vals)


def lobachevsky(theta: float, terms: int = 60) -> float:
    """Lobachevsky function on (0, pi) by its power series in theta/pi.

    Arguments above pi/2 are reflected first, where the series is slow.

    Lambda(t) = t (1 - log 2t) + t * sum_n zeta(2n)/(n (2n+1)) (t/pi)^(2n)
    """
    if theta == 0.0:
        return 0.0
    if not 0.0 < theta < math.pi:
        raise ValueError("series evaluation needs 0 < theta < pi")
    if theta > math.pi / 2:
        # odd about pi/2 (period pi); folding keeps (theta/pi)^2 <= 1/4
        return -lobachevsky(math.pi - theta, terms)
    ratio = theta * theta
    total = 0.0
    power = 1.0
    for n, zeta_over in enumerate(_zeta_even_over_pi(terms), start=1):
        power *= ratio
        total += zeta_over * power / (n * (2 * n + 1))
    return theta * (1.0 - math.log(2.0 * theta) + total)


@dataclass(frozen=True)
class HyperbolicConstants:
    v3: float
    v8: float


@lru_cache(maxsize=None)
def constants() -> HyperbolicConstants:
    """Regular ideal tetrahedron and octahedron volumes from the series."""
    v3 = 3.0 * lobachevsky(math.pi / 3.0)
    v8 = 8.0 * lobachevsky(math.pi / 4.0)
    if abs(v3 - V3_DECIMAL) > 1e-12 or abs(v8 - V8_DECIMAL) > 1e-12:
        raise RuntimeError("series constants disagree with the stored decimals")
    return HyperbolicConstants(v3, v8)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    kind: str  # "lower" or "upper"
    strict: bool
    value: float | None
    hypotheses: tuple[tuple[str, bool], ...] = ()
    note: str = ""

    @property
    def applicable(self) -> bool:
        return all(ok for _, ok in self.hypotheses)

    @property
    def failed(self) -> tuple[str, ...]:
        return tuple(flag for flag, ok in self.hypotheses if not ok)

    def admits(self, volume: float, rel_tol: float = SANDWICH_REL_TOL) -> bool:
        """Does a volume satisfy this bound?

        Ingested volumes are floating-point, and some bounds are sharp (the
        Borromean rings meet v8 * -chi exactly), so a difference within
        ``rel_tol`` is never read as a violation, strict or not.
        """
        if self.value is None:
            raise ValueError(f"bound {self.name} is inapplicable")
        slack = rel_tol * max(1.0, abs(self.value), abs(volume))
        if self.kind == "lower":
            return volume - self.value > -slack
        return self.value - volume > -slack

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "strict": self.strict,
            "value": self.value,
            "hypotheses": [[flag, ok] for flag, ok in self.hypotheses],
            "note": self.note,
        }


def _entry(
    name: str,
    kind: str,
    strict: bool,
    value: float,
    flags: Sequence[str],
    hypotheses: Mapping[str, bool] | None,
    note: str = "",
) -> BoundEntry:
    if hypotheses is None:
        checks: tuple[tuple[str, bool], ...] = ()
    else:
        checks = tuple((flag, bool(hypotheses.get(flag, False))) for flag in flags)
    ok = all(v for _, v in checks)
    if ok and kind == "lower" and value < 0:
        note = (note + "; " if note else "") + "negative lower bound kept unclamped"
    return BoundEntry(name, kind, strict, value if ok else None, checks, note)


def chi_lower_bound(chi_neg: int) -> float:
    """v8 times the negative Euler characteristic of G'_A."""
    return constants().v8 * chi_neg


def _upper_t(t: int) -> float:
    return 10.0 * constants().v3 * (t - 1)


def chi_bounds(
    chi_neg: int, t: int, hypotheses: Mapping[str, bool] | None = None
) -> list[BoundEntry]:
    return [
        _entry("chi-lower", "lower", False, chi_lower_bound(chi_neg), MAIN_FLAGS, hypotheses,
               "v8 * -chi(G'_A)"),
        _entry("chi-upper", "upper", True, _upper_t(t), MAIN_FLAGS, hypotheses, "10 v3 (t - 1)"),
    ]


def main_theorem_bounds(
    t: int, st: int | None, hypotheses: Mapping[str, bool] | None = None
) -> list[BoundEntry]:
    """(v8/3)(t - st) <= vol < 10 v3 (t - 1), or (v8/2)(t - 2) when t = st."""
    v8 = constants().v8
    flags = MAIN_FLAGS + ("st defined",)
    hyp = None if hypotheses is None else {**hypotheses, "st defined": st is not None}
    if st is None:
        if hyp is None:
            raise BoundError("st is undefined, so the main lower bound cannot be evaluated")
        lower = _entry("main-lower", "lower", False, math.nan, flags, hyp)
    elif st > t:
        raise BoundError(f"st = {st} exceeds t = {t}")
    elif t == st:
        lower = _entry("main-lower", "lower", False, v8 / 2.0 * (t - 2), flags, hyp,
                       "t = st: alternating diagram, (v8/2)(t - 2)")
    else:
        lower = _entry("main-lower", "lower", False, v8 / 3.0 * (t - st), flags, hyp,
                       "(v8/3)(t - st)")
    upper = _entry("main-upper", "upper", True, _upper_t(t), MAIN_FLAGS, hypotheses,
                   "10 v3 (t - 1)")
    return [lower, upper]


def corollary_m_bounds(
    t: int,
    m: int,
    min_oc_incidence: int | None = None,
    hypotheses: Mapping[str, bool] | None = None,
) -> list[BoundEntry]:
    """Bounds when every other circle meets at least m >= 3 twist regions."""
    if m < 3:
        raise BoundError("m must be at least 3")
    if min_oc_incidence is not None and min_oc_incidence < m:
        raise BoundError(
            f"an other circle meets only {min_oc_incidence} twist regions, fewer than m = {m}"
        )
    value = (m - 2) / m * constants().v8 * t
    return [
        _entry(f"m-incident-lower(m={m})", "lower", False, value, MAIN_FLAGS, hypotheses,
               "((m-2)/m) v8 t; st = 0"),
        _entry(f"m-incident-upper(m={m})", "upper", True, _upper_t(t), MAIN_FLAGS, hypotheses),
    ]


def strongly_negative_bounds(t: int, hypotheses: Mapping[str, bool] | None = None) -> list[BoundEntry]:
    v8 = constants().v8
    flags = ("strongly negative plat",)
    return [
        _entry("strongly-negative-lower", "lower", False, 4.0 * v8 / 5.0 * (t - 1) + v8 / 5.0,
               flags, hypotheses, "(4 v8/5)(t - 1) + v8/5"),
        _entry("strongly-negative-upper", "upper", True, _upper_t(t), flags, hypotheses),
    ]


def mixed_sign_bounds(
    t: int, t_neg: int, t_pos: int, hypotheses: Mapping[str, bool] | None = None
) -> list[BoundEntry]:
    if t_neg + t_pos != t or t_neg < 0 or t_pos < 0:
        raise BoundError(f"t_neg + t_pos = {t_neg} + {t_pos} does not equal t = {t}")
    v8 = constants().v8
    flags = ("mixed-sign plat",)
    entries = [
        _entry("mixed-sign-lower", "lower", False, v8 / 3.0 * (2 * t_neg - 1) - 2.0 * v8 / 3.0,
               flags, hypotheses, "(v8/3)(2 t_neg - 1) - 2 v8/3"),
    ]
    balanced = None if hypotheses is None else {**hypotheses, "t_neg >= t_pos": t_neg >= t_pos}
    if hypotheses is not None or t_neg >= t_pos:
        entries.append(
            _entry("mixed-sign-balanced-lower", "lower", False, v8 / 3.0 * (t - 1) - 2.0 * v8 / 3.0,
                   flags + ("t_neg >= t_pos",), balanced,
                   "(v8/3)(t - 1) - 2 v8/3; never sharper than the t_neg bound"),
        )
    entries.append(_entry("mixed-sign-upper", "upper", True, _upper_t(t), flags, hypotheses))
    return entries


def two_bridge_bounds(
    t_alt: int, n: int = 2, hypotheses: Mapping[str, bool] | None = None
) -> list[BoundEntry]:
    """Bounds for two-bridge links from the twist number of a reduced
    alternating diagram, which the caller supplies."""
    if n != 2:
        raise BoundError(f"two-bridge bounds need n = 2, got n = {n}")
    c = constants()
    flags = ("two-bridge",)
    return [
        _entry("two-bridge-lower", "lower", True, 2.0 * c.v3 * t_alt - TWO_BRIDGE_OFFSET, flags,
               hypotheses, "2 v3 t_alt - 2.7066"),
        _entry("two-bridge-upper", "upper", True, 2.0 * c.v8 * (t_alt - 1), flags, hypotheses,
               "2 v8 (t_alt - 1)"),
    ]


JONES_FAMILIES = ("generic", "m-incident", "strongly-negative", "mixed-sign-balanced")


def jones_bounds(
    beta_prime: int,
    family: str = "generic",
    st: int | None = None,
    m: int | None = None,
    hypotheses: Mapping[str, bool] | None = None,
) -> list[BoundEntry]:
    """Bounds in terms of |beta'|, the stable penultimate Jones coefficient."""
    c = constants()
    b = beta_prime - 1
    lower = _entry("jones-lower", "lower", False, c.v8 * b, MAIN_FLAGS, hypotheses,
                   "v8 (|beta'| - 1)")
    if family == "generic":
        if st is None:
            raise BoundError("the generic Jones bound needs st")
        value, flags, note = 30 * c.v3 * b + 10 * c.v3 * (st - 1), MAIN_FLAGS, "30 v3 (|beta'|-1) + 10 v3 (st-1)"
    elif family == "m-incident":
        if m is None or m < 3:
            raise BoundError("the m-incident Jones bound needs m >= 3")
        value = m / (m - 2) * 10 * c.v3 * b - 10 * c.v3
        flags, note = MAIN_FLAGS, "(m/(m-2)) 10 v3 (|beta'|-1) - 10 v3"
    elif family == "strongly-negative":
        value = 25 * c.v3 / 2 * b - 5 * c.v3 / 2
        flags, note = ("strongly negative plat",), "(25 v3/2)(|beta'|-1) - 5 v3/2"
    elif family == "mixed-sign-balanced":
        value = 30 * c.v3 * b + 20 * c.v3
        flags, note = ("mixed-sign plat", "t_neg >= t_pos"), "30 v3 (|beta'|-1) + 20 v3"
    else:
        raise BoundError(f"unknown Jones family {family!r}")
    name = "jones-upper" if family == "generic" else f"jones-{family}-upper"
    if family == "m-incident":
        name = f"jones-m-incident-upper(m={m})"
    return [lower, _entry(name, "upper", True, value, flags, hypotheses, note)]


@dataclass(frozen=True)
class SandwichVerdict:
    name: str
    kind: str
    value: float
    holds: bool
    margin: float  # how far inside the bound the volume sits; negative means outside

    def to_dict(self) -> dict:
        return {"name": self.name, "kind": self.kind, "value": self.value,
                "holds": self.holds, "margin": self.margin}


@dataclass(frozen=True)
class VolumeBoundReport:
    entries: tuple[BoundEntry, ...] = field(default=())

    def applicable(self, kind: str | None = None) -> list[BoundEntry]:
        return [e for e in self.entries if e.applicable and e.value is not None
                and (kind is None or e.kind == kind)]

    def best_lower(self) -> BoundEntry | None:
        return max(self.applicable("lower"), key=lambda e: e.value, default=None)  # type: ignore[arg-type,return-value]

    def best_upper(self) -> BoundEntry | None:
        return min(self.applicable("upper"), key=lambda e: e.value, default=None)  # type: ignore[arg-type,return-value]

    def order_violations(self) -> list[tuple[str, str]]:
        """Pairs (lower, upper) of applicable bounds that contradict each other."""
        bad = []
        for lo in self.applicable("lower"):
            for up in self.applicable("upper"):
                if lo.value > up.value or ((lo.strict or up.strict) and lo.value == up.value):  # type: ignore[operator]
                    bad.append((lo.name, up.name))
        return bad

    def sandwich(self, volume: float, rel_tol: float = SANDWICH_REL_TOL) -> list[SandwichVerdict]:
        out = []
        for e in self.applicable():
            margin = volume - e.value if e.kind == "lower" else e.value - volume  # type: ignore[operator]
            out.append(SandwichVerdict(e.name, e.kind, e.value, e.admits(volume, rel_tol), margin))  # type: ignore[arg-type]
        return out

    def to_dict(self) -> dict:
        return {"entries": [e.to_dict() for e in self.entries]}


def volume_bound_report(
    analysis,
    beta_prime: int | None = None,
    t_alt: int | None = None,
) -> VolumeBoundReport:
    """Every bound the census supports, gated by its hypotheses.

    ``analysis`` is a :class:`twistvol.twist.TwistAnalysis`.  When no
    observed ``beta_prime`` is given, ``1 - chi(G'_A)`` is used.
    """
    cen = analysis.census
    hyp = dict(cen.hypotheses.as_dict())
    plat = analysis.diagram.plat
    hyp["strongly negative plat"] = bool(plat is not None and plat.is_strongly_negative)
    hyp["mixed-sign plat"] = bool(plat is not None and plat.is_mixed_sign)
    hyp["two-bridge"] = bool(plat is not None and plat.is_two_bridge and t_alt is not None)
    balanced = cen.t_neg is not None and cen.t_pos is not None and cen.t_neg >= cen.t_pos
    hyp["t_neg >= t_pos"] = balanced
    chi_neg = analysis.chi_neg
    beta = 1 + chi_neg if beta_prime is None else beta_prime

    entries: list[BoundEntry] = []
    entries += chi_bounds(chi_neg, cen.t, hyp)
    entries += main_theorem_bounds(cen.t, cen.st, hyp)
    m = cen.min_oc_incidence
    if m is not None and m >= 3 and cen.st is not None:
        entries += corollary_m_bounds(cen.t, m, m, hyp)
    if hyp["strongly negative plat"]:
        entries += strongly_negative_bounds(cen.t, hyp)
    if hyp["mixed-sign plat"] and cen.t_neg is not None and cen.t_pos is not None:
        entries += mixed_sign_bounds(cen.t, cen.t_neg, cen.t_pos, hyp)
    if hyp["two-bridge"]:
        entries += two_bridge_bounds(t_alt, 2, hyp)  # type: ignore[arg-type]
    if cen.st is not None:
        entries += jones_bounds(beta, "generic", st=cen.st, hypotheses=hyp)
    else:
        entries += [e for e in jones_bounds(beta, "generic", st=0, hypotheses=hyp) if e.kind == "lower"]
    if m is not None and m >= 3 and cen.st is not None:
        entries += jones_bounds(beta, "m-incident", m=m, hypotheses=hyp)[1:]
    if hyp["strongly negative plat"]:
        entries += jones_bounds(beta, "strongly-negative", hypotheses=hyp)[1:]
    if hyp["mixed-sign plat"] and balanced:
        entries += jones_bounds(beta, "mixed-sign-balanced", hypotheses=hyp)[1:]
    return VolumeBoundReport(tuple(entries))
