"""Regenerate tests/data/corpus.csv.

Volumes come from SnapPy, run once here and then frozen in the CSV; the
package itself never computes volumes.  Needs the ``corpus`` extra.
"""
from __future__ import annotations

import csv
import random
import sys
from pathlib import Path

import snappy

from twistvol.diagram import BraidWord, PlatSpec, braid_to_diagram, parse_pd, plat_closure, rational_plat, serialize_pd
from twistvol.twist import census

OUT = Path(__file__).resolve().parent.parent / "tests" / "data" / "corpus.csv"

CONWAY = [
    (2, 2), (3, 2), (4, 2), (3, 1, 2), (2, 1, 1, 2), (5, 2), (4, 3), (3, 1, 3), (3, 2, 2),
    (2, 2, 1, 2), (2, 1, 1, 1, 2), (6, 2), (5, 3), (4, 4), (3, 3, 2), (2, 3, 2, 2),
    (4, 1, 1, 3), (3, 2, 1, 2), (2, 2, 2, 2), (3, 3, 3), (2, 1, 2, 1, 2), (5, 2, 3),
    (2, 2, 2), (4, 2, 4), (3, 2, 2, 3),
]

BRAIDS = {
    "b3_alt2": (1, -2, 1, -2),
    "b3_alt3": (1, -2) * 3,
    "b3_alt4": (1, -2) * 4,
    "b3_alt5": (1, -2) * 5,
    "b3_alt6": (1, -2) * 6,
    "b3_2222": (1, 1, -2, -2, 1, 1, -2, -2),
    "b3_3113": (1, 1, 1, -2, 1, -2, -2, -2),
}


def plat_specs() -> dict[str, PlatSpec]:
    rng = random.Random(20240611)
    specs = {
        "sn_3_1_min": PlatSpec(3, 1, ((-3, -3), (-2, -2, -2), (-3, -3))),
        "ms_3_1_a11": PlatSpec(3, 1, ((1, -3), (-2, -2, -2), (-3, -3))),
        "ms_3_1_a32": PlatSpec(3, 1, ((-3, -3), (-2, -2, -2), (-3, 3))),
        "ms_3_1_both": PlatSpec(3, 1, ((1, -3), (-2, -2, -2), (-3, 3))),
    }
    for i in range(5):
        n, k = rng.randint(3, 4), rng.randint(1, 2)
        rows = tuple(
            tuple(rng.randint(-4, -3) if r % 2 else rng.randint(-3, -2) for _ in range(n - 1 if r % 2 else n))
            for r in range(1, 2 * k + 2)
        )
        specs[f"sn_{n}_{k}_{i}"] = PlatSpec(n, k, rows)
    for i in range(5):
        n, k = rng.randint(3, 4), rng.randint(1, 2)
        rows = tuple(
            tuple(rng.choice((-3, 1, 2, 3)) if r % 2 else rng.randint(-3, -2) for _ in range(n - 1 if r % 2 else n))
            for r in range(1, 2 * k + 2)
        )
        spec = PlatSpec(n, k, rows)
        if spec.is_mixed_sign:
            specs[f"ms_{n}_{k}_{i}"] = spec
    return specs


def volume(diagram) -> float | None:
    exterior = snappy.Link([list(x.arcs) for x in diagram.crossings]).exterior()
    if exterior.solution_type() != "all tetrahedra positively oriented":
        return None
    return float(exterior.volume())


def main() -> int:
    rows = []
    entries = [("trefoil_r", "pd", serialize_pd(braid_to_diagram(BraidWord(2, (1, 1, 1)), "trace")))]
    entries.append(("fig8", "pd", "X(4,2,5,1) X(8,6,1,5) X(6,3,7,4) X(2,7,3,8)"))
    for terms in CONWAY:
        name = "C" + "_".join(map(str, terms))
        entries.append((name, "pd", serialize_pd(rational_plat(terms))))
    for name, word in BRAIDS.items():
        entries.append((name, "pd", serialize_pd(braid_to_diagram(BraidWord(3, word), "trace"))))
    for name, spec in plat_specs().items():
        entries.append((name, "plat", spec.to_text().strip().replace("\n", "; ")))
    for name, kind, payload in entries:
        diagram = parse_pd(payload) if kind == "pd" else plat_closure(PlatSpec.from_text(payload))
        hyp = census(diagram).census.hypotheses
        if not (hyp.connected and hyp.a_adequate and hyp.telc):
            print(f"skipping {name}: {hyp.as_dict()}", file=sys.stderr)
            continue
        vol = volume(diagram)
        source = "" if vol is None else "SnapPy 3.3.2 exterior of this diagram (geometric solution)"
        rows.append((name, kind, payload, "" if vol is None else repr(vol), source))
    with OUT.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("id", "kind", "payload", "known_volume", "source"))
        writer.writerows(rows)
    print(f"wrote {len(rows)} rows to {OUT}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
