from .main import main
from .parse import (
    parse_curve,
    parse_field,
    parse_place,
    parse_point,
    parse_ratfunc,
    parse_torus,
    parse_torus_point,
)

__all__ = [
    "main",
    "parse_curve",
    "parse_field",
    "parse_place",
    "parse_point",
    "parse_ratfunc",
    "parse_torus",
    "parse_torus_point",
]
