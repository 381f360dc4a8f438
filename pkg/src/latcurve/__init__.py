"""Lattice points on convex curves: exact constructions and counts."""
from .errors import (CircumscriptionError, ConfigurationError, ConstructionError,
                     DegenerateError, LatticeError, NoCrossingError, PrecisionExhausted,
                     SearchExhausted)
from .exact import Frame, abc_radius, girth, segment_lattice_count
from .girth import count_girth_below, enumerate_by_girth, girth_sum
from .jarnik import (BrokenLine, build_chain, max_chain_vertices,
                     min_area_convex_lattice_kgon, verify_abc_broken_line)
from .affine import affine_length_rel, affine_length_sup, lemma1_quantities
from .equidist import (StarDomain, count_pairs_bruteforce, count_pairs_fast,
                       special_point_count, triangle_census)
from .contfrac import BasicTriangle, ContinuedFraction, cf_expand, find_suitable, noses_stretch
from .synth import Curve, count_on_curve, synthesize, tangent_decomposition

__version__ = "0.1.0"

__all__ = [
    "BasicTriangle", "BrokenLine", "CircumscriptionError", "ConfigurationError",
    "ConstructionError", "ContinuedFraction", "Curve", "DegenerateError", "Frame",
    "LatticeError", "NoCrossingError", "PrecisionExhausted", "SearchExhausted",
    "StarDomain", "abc_radius", "affine_length_rel", "affine_length_sup", "build_chain",
    "cf_expand", "count_girth_below", "count_on_curve", "count_pairs_bruteforce",
    "count_pairs_fast", "enumerate_by_girth", "find_suitable", "girth", "girth_sum",
    "lemma1_quantities", "max_chain_vertices", "min_area_convex_lattice_kgon",
    "noses_stretch", "segment_lattice_count", "special_point_count", "synthesize",
    "tangent_decomposition", "triangle_census", "verify_abc_broken_line",
]
