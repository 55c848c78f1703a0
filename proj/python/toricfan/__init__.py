"""Primitive relations, birational surgery and 2-Fano screening for smooth toric fans.

Exact rationals are returned as strings such as "3/2"; wrap them in
fractions.Fraction for arithmetic.
"""

from ._toricfan import (
    Fan,
    ToricError,
    bundle_over_p1,
    check_certificate,
    is_fano,
    is_projective,
    is_valid,
    minimal_p_dimension,
    parse_fan,
    primitive_relations,
    projective_space,
    read_fan,
    reconstruct,
    relevant_relations,
    run_pipeline,
    screen,
)

__all__ = [
    "Fan",
    "ToricError",
    "bundle_over_p1",
    "check_certificate",
    "is_fano",
    "is_projective",
    "is_valid",
    "minimal_p_dimension",
    "parse_fan",
    "primitive_relations",
    "projective_space",
    "read_fan",
    "reconstruct",
    "relevant_relations",
    "run_pipeline",
    "screen",
]
