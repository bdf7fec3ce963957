"""Analysis reports, plat verdicts and the batch corpus runner.

Reports are plain JSON.  Floats are rounded to 12 significant digits and keys
are sorted, so identical input always produces identical bytes.
"""
from __future__ import annotations

import csv
import io
import json
import math
import re
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Any, Iterable

from .bounds import VolumeBoundReport, volume_bound_report
from .diagram import DiagramError, LinkDiagram, PlatSpec, is_alternating, parse_pd, plat_closure, serialize_pd
from .jones import DEFAULT_CROSSING_LIMIT, OracleError, verify_stable_coefficient
from .twist import CircleClass, TwistAnalysis, census

__all__ = [
    "InputError",
    "AnalysisReport",
    "CorpusRecord",
    "analyze",
    "gen_plat",
    "PlatVerdicts",
    "load_corpus",
    "sample_corpus_path",
    "batch",
    "BatchSummary",
    "to_json",
]

FLOAT_DIGITS = 12


class InputError(ValueError):
    """Unreadable or invalid user input."""


def _round(obj: Any) -> Any:
    if isinstance(obj, float):
        if math.isnan(obj) or math.isinf(obj):
            return None
        return float(f"{obj:.{FLOAT_DIGITS}g}")
    if isinstance(obj, dict):
        return {str(k): _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


def to_json(obj: Any) -> str:
    return json.dumps(_round(obj), sort_keys=True, indent=2, ensure_ascii=False) + "\n"


@dataclass
class AnalysisReport:
    analysis: TwistAnalysis
    bounds: VolumeBoundReport
    beta_prime_combinatorial: int
    oracle: dict | None = None
    known_volume: float | None = None
    source: str | None = None
    sandwich: list = field(default_factory=list)
    falsifications: list[str] = field(default_factory=list)

    @property
    def falsified(self) -> bool:
        return bool(self.falsifications)

    def to_dict(self) -> dict:
        a = self.analysis
        d = a.diagram
        return {
            "diagram": {
                "name": d.name,
                "crossings": d.crossing_count,
                "components": d.components,
                "pd": serialize_pd(d),
                "plat": None if d.plat is None else d.plat.to_text(),
                "alternating": is_alternating(d),
            },
            "hypotheses": a.census.hypotheses.as_dict(),
            "state": a.state.to_dict(),
            "reduced_graph": {
                "vertices": len(a.reduced.vertices),
                "edges": [[u, v, list(xs)] for u, v, xs in a.reduced.edges],
            },
            "twist_regions": [
                {"id": r.id, "crossings": list(r.crossings), "length": r.length,
                 "kind": r.kind.value if r.kind else None, "sign": r.sign}
                for r in a.regions
            ],
            "census": a.census.to_dict(),
            "identities": [c.to_dict() for c in a.identities],
            "chi_neg": a.chi_neg,
            "beta_prime": {"combinatorial": self.beta_prime_combinatorial,
                           "observed": None if self.oracle is None else self.oracle.get("observed")},
            "oracle": self.oracle,
            "bounds": self.bounds.to_dict(),
            "known_volume": self.known_volume,
            "source": self.source,
            "sandwich": [v.to_dict() for v in self.sandwich],
            "falsifications": list(self.falsifications),
            "falsified": self.falsified,
        }

    def to_json(self) -> str:
        return to_json(self.to_dict())


def read_diagram(pd_text: str | None = None, plat_text: str | None = None, name: str | None = None) -> LinkDiagram:
    if (pd_text is None) == (plat_text is None):
        raise InputError("give exactly one of a PD code or a plat spec")
    try:
        if pd_text is not None:
            return parse_pd(pd_text, name=name)
        return plat_closure(PlatSpec.from_text(plat_text), name=name)  # type: ignore[arg-type]
    except DiagramError as exc:
        raise InputError(str(exc)) from exc


def _structural_checks(analysis: TwistAnalysis) -> list[str]:
    out = []
    for check in analysis.identities:
        if check.binding and check.holds is False:
            out.append(f"identity failed: {check.name} ({check.lhs} != {check.rhs})")
    cen = analysis.census
    if cen.forced_alternating and not is_alternating(analysis.diagram):
        out.append("t = st but the diagram is not alternating")
    if cen.hypotheses.sc_criterion:
        for cid, (cls, n) in enumerate(zip(cen.classes, cen.incidence)):
            if cls is not CircleClass.SIC and n < 2:
                out.append(f"other circle {cid} meets fewer than two twist regions")
    return out


def analyze(
    diagram: LinkDiagram,
    oracle: bool = False,
    known_volume: float | None = None,
    source: str | None = None,
    t_alt: int | None = None,
    max_crossings: int = DEFAULT_CROSSING_LIMIT,
    workers: int = 1,
) -> AnalysisReport:
    analysis = census(diagram)
    combinatorial = 1 + analysis.chi_neg
    oracle_out = None
    observed = None
    falsifications = _structural_checks(analysis)
    if oracle:
        try:
            result = verify_stable_coefficient(diagram, max_crossings, workers)
        except OracleError as exc:
            oracle_out = {"ran": False, "reason": str(exc)}
        else:
            observed = result.observed
            oracle_out = {"ran": True, **result.to_dict()}
            if not result.match:
                falsifications.append(
                    f"stable coefficient mismatch: expected {result.expected}, observed {result.observed}"
                )
    bounds = volume_bound_report(analysis, beta_prime=observed, t_alt=t_alt)
    for lo, up in bounds.order_violations():
        falsifications.append(f"lower bound {lo} exceeds upper bound {up}")
    sandwich = []
    if known_volume is not None:
        sandwich = bounds.sandwich(known_volume)
        for verdict in sandwich:
            if not verdict.holds:
                falsifications.append(
                    f"volume {known_volume} violates {verdict.kind} bound {verdict.name} = {verdict.value}"
                )
    return AnalysisReport(analysis, bounds, combinatorial, oracle_out, known_volume, source,
                          sandwich, falsifications)


@dataclass
class PlatVerdicts:
    spec: PlatSpec
    diagram: LinkDiagram
    family: str | None
    verdicts: dict
    claims: dict  # claim -> bool

    @property
    def falsified(self) -> bool:
        return not all(self.claims.values())

    def to_dict(self) -> dict:
        return {
            "spec": self.spec.to_text(),
            "pd": serialize_pd(self.diagram),
            "crossings": self.diagram.crossing_count,
            "family": self.family,
            "verdicts": self.verdicts,
            "claims": self.claims,
            "falsified": self.falsified,
        }


def gen_plat(spec: PlatSpec, expect: str | None = None) -> PlatVerdicts:
    """Build the plat and check it against the claims for its family."""
    if expect not in (None, "strongly-negative", "mixed-sign"):
        raise InputError(f"unknown plat family {expect!r}")
    if expect == "strongly-negative" and not spec.is_strongly_negative:
        raise InputError("spec is not a strongly negative plat")
    if expect == "mixed-sign" and not spec.is_mixed_sign:
        raise InputError("spec is not a mixed-sign plat")
    family = expect
    if family is None:
        if spec.is_strongly_negative:
            family = "strongly-negative"
        elif spec.is_mixed_sign:
            family = "mixed-sign"
    diagram = plat_closure(spec)
    a = census(diagram)
    cen = a.census
    hyp = cen.hypotheses
    verdicts = {
        "connected": hyp.connected,
        "prime": hyp.prime,
        "A-adequate": hyp.a_adequate,
        "TELC": hyp.telc,
        "st": cen.st,
        "t": cen.t,
        "t_neg": cen.t_neg,
        "t_pos": cen.t_pos,
        "chi_neg": a.chi_neg,
        "OC": cen.n_oc,
    }
    claims: dict[str, bool] = {}
    if family is not None:
        claims["connected"] = hyp.connected
        claims["prime"] = hyp.prime
        claims["A-adequate"] = hyp.a_adequate
        claims["TELC"] = hyp.telc
        claims["-chi = t - #OC"] = a.chi_neg == cen.t - cen.n_oc
    if family == "strongly-negative":
        claims["st = 0"] = cen.st == 0
        claims["t >= 7"] = cen.t >= 7
    elif family == "mixed-sign":
        claims["st <= 4"] = cen.st is not None and cen.st <= 4
        claims["t >= 3"] = cen.t >= 3
        if spec.m >= 2 * spec.n - 1:
            claims["t_neg >= t_pos"] = (cen.t_neg or 0) >= (cen.t_pos or 0)
    return PlatVerdicts(spec, diagram, family, verdicts, claims)


@dataclass(frozen=True)
class CorpusRecord:
    id: str
    kind: str
    payload: str
    known_volume: float | None = None
    source: str | None = None

    def diagram(self) -> LinkDiagram:
        if self.kind == "pd":
            return read_diagram(pd_text=self.payload, name=self.id)
        if self.kind == "plat":
            return read_diagram(plat_text=self.payload, name=self.id)
        raise InputError(f"record {self.id}: kind must be 'pd' or 'plat', got {self.kind!r}")


CORPUS_COLUMNS = ("id", "kind", "payload", "known_volume", "source")


def load_corpus(path_or_text: str | Path, *, text: bool = False) -> tuple[list[CorpusRecord], list[dict]]:
    """Parse a corpus CSV.  Returns (records, row errors)."""
    raw = path_or_text if text else Path(path_or_text).read_text(encoding="utf-8")
    reader = csv.DictReader(io.StringIO(str(raw)))
    if reader.fieldnames is None:
        return [], []
    missing = [c for c in CORPUS_COLUMNS if c not in reader.fieldnames]
    if missing:
        raise InputError(f"corpus is missing columns: {', '.join(missing)}")
    records: list[CorpusRecord] = []
    errors: list[dict] = []
    seen: set[str] = set()
    for lineno, row in enumerate(reader, start=2):
        rid = (row.get("id") or "").strip()
        try:
            if not rid:
                raise InputError("empty id")
            if rid in seen:
                raise InputError(f"duplicate id {rid!r}")
            if not re.fullmatch(r"[A-Za-z0-9_.+-]+", rid):
                raise InputError(f"id {rid!r} is not usable as a file name")
            vol_text = (row.get("known_volume") or "").strip()
            volume = float(vol_text) if vol_text else None
            if volume is not None and not math.isfinite(volume):
                raise InputError("known_volume must be finite")
            kind = (row.get("kind") or "").strip()
            if kind not in ("pd", "plat"):
                raise InputError(f"kind must be 'pd' or 'plat', got {kind!r}")
            source = (row.get("source") or "").strip() or None
            records.append(CorpusRecord(rid, kind, row.get("payload") or "", volume, source))
            seen.add(rid)
        except (InputError, ValueError) as exc:
            errors.append({"id": rid or f"line {lineno}", "error": str(exc)})
    return records, errors


def sample_corpus_path() -> Path:
    return Path(str(resources.files("twistvol") / "data" / "sample_corpus.csv"))


@dataclass
class BatchSummary:
    records: int = 0
    analyzed: int = 0
    errors: list[dict] = field(default_factory=list)
    falsified: list[str] = field(default_factory=list)
    identity_checks: int = 0
    identity_passes: int = 0
    oracle_runs: int = 0
    oracle_matches: int = 0
    sandwich_records: int = 0
    sandwich_passes: int = 0
    rows: list[dict] = field(default_factory=list)

    @property
    def exit_code(self) -> int:
        if self.falsified:
            return 1
        return 2 if self.errors else 0

    def to_dict(self) -> dict:
        def rate(num: int, den: int) -> float | None:
            return num / den if den else None

        return {
            "records": self.records,
            "analyzed": self.analyzed,
            "errors": self.errors,
            "falsified": self.falsified,
            "identity_pass_rate": rate(self.identity_passes, self.identity_checks),
            "identity_checks": self.identity_checks,
            "oracle_match_rate": rate(self.oracle_matches, self.oracle_runs),
            "oracle_runs": self.oracle_runs,
            "sandwich_pass_rate": rate(self.sandwich_passes, self.sandwich_records),
            "sandwich_records": self.sandwich_records,
            "rows": self.rows,
        }

    def table(self) -> str:
        head = f"{'id':<16} {'c':>3} {'t':>3} {'st':>3} {'-chi':>4} {'lower':>10} {'volume':>10} {'upper':>10}  status"
        lines = [head, "-" * len(head)]
        for row in self.rows:
            def num(x: float | None) -> str:
                return "-" if x is None else f"{x:.4f}"
            st = "-" if row.get("st") is None else str(row["st"])
            lines.append(
                f"{row['id']:<16} {row['crossings']:>3} {row['t']:>3} {st:>3} {row['chi_neg']:>4} "
                f"{num(row.get('best_lower')):>10} {num(row.get('known_volume')):>10} "
                f"{num(row.get('best_upper')):>10}  {row['status']}"
            )
        for err in self.errors:
            lines.append(f"{err['id']:<16} error: {err['error']}")
        d = self.to_dict()

        def pct(x: float | None) -> str:
            return "n/a" if x is None else f"{100 * x:.1f}%"
        lines.append("")
        lines.append(f"identities {pct(d['identity_pass_rate'])}, oracle {pct(d['oracle_match_rate'])}, "
                     f"sandwich {pct(d['sandwich_pass_rate'])}, errors {len(self.errors)}, "
                     f"falsified {len(self.falsified)}")
        return "\n".join(lines) + "\n"


def batch(
    records: Iterable[CorpusRecord],
    out_dir: str | Path | None = None,
    oracle_max_crossings: int | None = 16,
    row_errors: Iterable[dict] = (),
) -> BatchSummary:
    """Analyze every record; per-record failures are collected, not raised."""
    summary = BatchSummary()
    summary.errors.extend(row_errors)
    summary.records = len(summary.errors)
    out = Path(out_dir) if out_dir is not None else None
    if out is not None:
        out.mkdir(parents=True, exist_ok=True)
    for rec in records:
        summary.records += 1
        try:
            diagram = rec.diagram()
            run_oracle = oracle_max_crossings is not None and diagram.crossing_count <= oracle_max_crossings
            report = analyze(diagram, oracle=run_oracle, known_volume=rec.known_volume, source=rec.source,
                             max_crossings=oracle_max_crossings or DEFAULT_CROSSING_LIMIT)
        except (InputError, DiagramError) as exc:
            summary.errors.append({"id": rec.id, "error": str(exc)})
            continue
        summary.analyzed += 1
        binding = [c for c in report.analysis.identities if c.binding and c.holds is not None]
        summary.identity_checks += len(binding)
        summary.identity_passes += sum(bool(c.holds) for c in binding)
        if report.oracle and report.oracle.get("ran"):
            summary.oracle_runs += 1
            summary.oracle_matches += bool(report.oracle["match"])
        if rec.known_volume is not None and report.sandwich:
            summary.sandwich_records += 1
            summary.sandwich_passes += all(v.holds for v in report.sandwich)
        if report.falsified:
            summary.falsified.append(rec.id)
        best_lo, best_up = report.bounds.best_lower(), report.bounds.best_upper()
        cen = report.analysis.census
        summary.rows.append({
            "id": rec.id,
            "crossings": diagram.crossing_count,
            "t": cen.t,
            "st": cen.st,
            "chi_neg": report.analysis.chi_neg,
            "best_lower": None if best_lo is None else best_lo.value,
            "best_upper": None if best_up is None else best_up.value,
            "known_volume": rec.known_volume,
            "source": rec.source,
            "status": "FALSIFIED" if report.falsified else "ok",
        })
        if out is not None:
            (out / f"{rec.id}.json").write_text(report.to_json(), encoding="utf-8")
    if out is not None:
        (out / "summary.json").write_text(to_json(summary.to_dict()), encoding="utf-8")
        (out / "summary.txt").write_text(summary.table(), encoding="utf-8")
    return summary
