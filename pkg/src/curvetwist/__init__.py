"""
curvetwist: exact curve systems, twist families, and pseudo-Anosov
certification on standard triangulated surfaces.

Everything is integer arithmetic on normal coordinates: curves are weight
vectors, maps are flip sequences, and all decisions (disjointness, orbits,
periodicity, invariant multicurves) are exact.  Dilatations are reported as
rational estimates with certified residuals.
"""

from .surface import (TopologyError, Triangulation, Relabeling, flip,
                      flip_square_relabeling, isomorphism, automorphisms,
                      build_surface, triangulation_to_json,
                      triangulation_from_json)
from .curves import (InvalidCurveError, MulticurveCoords, validate,
                     component_count, is_single_curve, is_essential,
                     is_parallel, transform_under_flip,
                     apply_relabeling, disjoint_union_matches,
                     CutPiece, CutResult, cut_along,
                     enumerate_single_curves, standard_curves,
                     coords_to_jsonable, coords_from_jsonable)
from .mapping import (EncodingError, ShorteningError, Flip, Relabel,
                      Encoding, replay, invert_moves, intersects,
                      spanning_probes, equal_on, shorten, twist,
                      parse_twist_word, format_twist_word,
                      encoding_to_jsonable, encoding_from_jsonable)
from .orbits import (SystemError_, IndependenceReport, CurveSystem,
                     check_independent, require_independent, check_maximal,
                     OrbitGraph, build_gamma, find_orbit, ChainComponent,
                     chain_decomposition)
from .classify import (decimal_string, QuadraticValue, Periodic,
                       ReducibleEvidence, PseudoAnosovEvidence,
                       Inconclusive, ClassificationReport, ClassifyParams,
                       default_order_bound, periodic_check,
                       invariant_multicurve_search, dilatation_estimate,
                       OracleVerdict, two_twist_oracle, classify)
from .construct import (ConstructionError, TwistFamily, realize_family,
                        maximalize, SearchSchedule, Refused, Accepted,
                        Exhausted, search_twist_family)

__version__ = "0.1.0"

__all__ = [
    "TopologyError", "Triangulation", "Relabeling", "flip",
    "flip_square_relabeling", "isomorphism", "automorphisms",
    "build_surface", "triangulation_to_json", "triangulation_from_json",
    "InvalidCurveError", "MulticurveCoords", "validate", "component_count",
    "is_single_curve", "is_essential", "is_parallel",
    "transform_under_flip", "apply_relabeling",
    "disjoint_union_matches", "CutPiece", "CutResult", "cut_along",
    "enumerate_single_curves", "standard_curves", "coords_to_jsonable",
    "coords_from_jsonable",
    "EncodingError", "ShorteningError", "Flip", "Relabel", "Encoding",
    "replay", "invert_moves", "intersects", "spanning_probes", "equal_on",
    "shorten", "twist", "parse_twist_word", "format_twist_word",
    "encoding_to_jsonable", "encoding_from_jsonable",
    "SystemError_", "IndependenceReport", "CurveSystem",
    "check_independent", "require_independent", "check_maximal",
    "OrbitGraph", "build_gamma", "find_orbit", "ChainComponent",
    "chain_decomposition",
    "decimal_string", "QuadraticValue", "Periodic", "ReducibleEvidence",
    "PseudoAnosovEvidence", "Inconclusive", "ClassificationReport",
    "ClassifyParams", "default_order_bound", "periodic_check",
    "invariant_multicurve_search", "dilatation_estimate", "OracleVerdict",
    "two_twist_oracle", "classify",
    "ConstructionError", "TwistFamily", "realize_family", "maximalize",
    "SearchSchedule", "Refused", "Accepted", "Exhausted",
    "search_twist_family",
]
