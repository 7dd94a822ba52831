"""Finite categories with a class W of weak equivalences: fractions, spans and the double category C{W}."""

from .fincat import FinCategory, check_fractions_conditions, validate_category
from .localize import build_fractions_bicategory, build_fractions_category, zigzag_oracle
from .dblcat import FinDoubleCategory, check_weak_globularity, validate_double_category
from .wgfrac import CW, build_cw, verify_cw
from .bic import fundamental_bicategory, omega_alpha_comparison
from .wfriendly import build_nabla_w, canonical_friendly_structure, lift_friendly_functor

__all__ = [
    "CW",
    "FinCategory",
    "FinDoubleCategory",
    "build_cw",
    "build_fractions_bicategory",
    "build_fractions_category",
    "build_nabla_w",
    "canonical_friendly_structure",
    "check_fractions_conditions",
    "check_weak_globularity",
    "fundamental_bicategory",
    "lift_friendly_functor",
    "omega_alpha_comparison",
    "validate_category",
    "validate_double_category",
    "verify_cw",
    "zigzag_oracle",
]
