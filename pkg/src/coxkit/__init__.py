"""Coxeter groups: normal closures of parabolics, growth series, nerve f-polynomials."""

from .classify import INFINITE, FiniteType, NotFinite, classify_component, group_order, poincare_single
from .closure import (
    ClosureError,
    ClosureGenerator,
    ClosurePresentation,
    check_hypothesis,
    closure_diagram,
    closure_matrix,
    enumerate_generators,
    is_right_angled_closure,
)
from .diagram import INF, CoxeterDiagram, DiagramError, load_diagram, parse_diagram, serialize
from .growth import (
    GrowthError,
    GrowthResult,
    closure_growth_by_specialization,
    growth,
    growth_finite_multi,
    growth_from_f,
    growth_infinite,
)
from .nerve import SigmaFamily, brute_force_nerve, enumerate_sigma, f_closure, f_link, parse_linkspec
from .numeric import RootReport, approx_roots, poles_of_growth, sturm_real_count
from .series import MultiPoly, RationalFn
from .words import Element, reduce

__version__ = "0.1.0"

__all__ = [
    "INF", "INFINITE", "ClosureError", "ClosureGenerator", "ClosurePresentation", "CoxeterDiagram",
    "DiagramError", "Element", "FiniteType", "GrowthError", "GrowthResult", "MultiPoly", "NotFinite",
    "RationalFn", "RootReport", "SigmaFamily", "approx_roots", "brute_force_nerve", "check_hypothesis",
    "classify_component", "closure_diagram", "closure_growth_by_specialization", "closure_matrix",
    "enumerate_generators", "enumerate_sigma", "f_closure", "f_link", "group_order", "growth",
    "growth_finite_multi", "growth_from_f", "growth_infinite", "is_right_angled_closure", "load_diagram",
    "parse_diagram", "parse_linkspec", "poincare_single", "poles_of_growth", "reduce", "serialize",
    "sturm_real_count",
]
