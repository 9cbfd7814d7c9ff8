"""Exact coefficient field, charts, polynomials and rational functions."""

from .chart import Chart, ChartError
from .numbers import I, ONE, SQRT2, ZERO, CoeffNumber, Rational, rational_sqrt
from .poly import Poly
from .scalar import EvaluationError, ScalarExpr, norm_polynomial, point_values

__all__ = [
    "Chart", "ChartError", "CoeffNumber", "Rational", "I", "SQRT2", "ONE", "ZERO",
    "rational_sqrt", "Poly", "ScalarExpr", "EvaluationError", "norm_polynomial",
    "point_values",
]
