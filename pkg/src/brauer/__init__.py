"""Brauer diagram monoid: arithmetic, Green's relations, cross-sections."""

from .diagrams import (
    Diagram,
    compose,
    corank,
    format_diagram,
    identity,
    involution,
    mul,
    parse_diagram,
    rank,
    stable_rank,
)
from .green import brauer_order, left_cups, r_class_count, related, right_cups
from .canonical import (
    CrossSection,
    ParamTable,
    alpha,
    beta,
    build_canonical,
    verify_cross_section,
)

__version__ = "0.1.0"
