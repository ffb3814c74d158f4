"""Metric solvable Lie algebras of noncompact symmetric spaces."""

from ._solvcurv import (
    SCHEMA,
    Algebra,
    SolvcurvError,
    build,
    count_constructions,
    root_system,
    sweep,
)

__all__ = ["SCHEMA", "Algebra", "SolvcurvError", "build", "count_constructions", "root_system", "sweep"]
