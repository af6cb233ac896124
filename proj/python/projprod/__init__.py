"""Projected tensor-tensor products and truncated tensor SVDs.

Tensors cross the boundary as Fortran-ordered (n1, n2, n3) float64 arrays.
"""
from ._projprod import *  # noqa: F401,F403
