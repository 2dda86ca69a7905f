"""Exact exterior algebra with Lorentzian, Galilean and Carrollian Hodge stars."""

from .electro import (
    EquationSet,
    PolyForm,
    Tag,
    build_F,
    check_boost_covariance,
    exterior_derivative,
    extract_equations,
    star_field,
    vector_calculus,
)
from .exterior import Form, decompose, eta, format_form, levi_civita, parse_form, wedge
from .hodge import StarVariant, hat_star, mixed_epsilon, star_closed, star_convention, star_oracle, star_table_4d
from .polynomial import Polynomial
from .structures import Kind, SpacetimeStructure, make_carrollian, make_galilean, make_minkowski, validate_adapted
from .transform import (
    FrameChange,
    carroll_boost,
    check_invariance,
    check_naturality,
    galilei_boost,
    pullback_form,
    pullback_structure,
    rotation,
)

__all__ = [
    "EquationSet", "PolyForm", "Tag", "build_F", "check_boost_covariance", "exterior_derivative",
    "extract_equations", "star_field", "vector_calculus",
    "Form", "decompose", "eta", "format_form", "levi_civita", "parse_form", "wedge",
    "StarVariant", "hat_star", "mixed_epsilon", "star_closed", "star_convention", "star_oracle", "star_table_4d",
    "Polynomial",
    "Kind", "SpacetimeStructure", "make_carrollian", "make_galilean", "make_minkowski", "validate_adapted",
    "FrameChange", "carroll_boost", "check_invariance", "check_naturality", "galilei_boost",
    "pullback_form", "pullback_structure", "rotation",
]
