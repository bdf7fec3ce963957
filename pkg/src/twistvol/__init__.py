"""Combinatorics of A-adequate link diagrams and the volume bounds they give."""
from .bounds import VolumeBoundReport, constants, volume_bound_report
from .diagram import (
    BraidWord,
    Crossing,
    DiagramError,
    LinkDiagram,
    PlatSpec,
    braid_to_diagram,
    is_connected,
    is_prime,
    mirror,
    parse_pd,
    plat_closure,
    serialize_pd,
)
from .jones import kauffman_bracket, stable_beta_prime, verify_stable_coefficient
from .laurent import LaurentPolynomial
from .report import AnalysisReport, analyze, batch, gen_plat
from .state import all_a_state, build_ga, euler_char, is_a_adequate, reduce_ga
from .twist import census, classify_circles, classify_regions, detect_twist_regions

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "BraidWord",
    "Crossing",
    "DiagramError",
    "LaurentPolynomial",
    "LinkDiagram",
    "PlatSpec",
    "VolumeBoundReport",
    "all_a_state",
    "analyze",
    "batch",
    "braid_to_diagram",
    "build_ga",
    "census",
    "classify_circles",
    "classify_regions",
    "constants",
    "detect_twist_regions",
    "euler_char",
    "gen_plat",
    "is_a_adequate",
    "is_connected",
    "is_prime",
    "kauffman_bracket",
    "mirror",
    "parse_pd",
    "plat_closure",
    "reduce_ga",
    "serialize_pd",
    "stable_beta_prime",
    "verify_stable_coefficient",
    "volume_bound_report",
]
