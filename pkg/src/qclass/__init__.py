"""Exact verification engine for quantum conjugacy classes of SO_q(N).

Desk-scale (N <= 9) mechanical checks of singular-vector constructions
in parabolic Verma modules, tensor-product filtrations, R-matrix and
reflection-equation identities, eigenvalue and minimal-polynomial
formulas for the quantum coordinate matrix, and classical-limit
consistency, all in exact arithmetic over the fraction field of
multivariate Laurent polynomials.
"""

from qclass._core import BACKEND as kernel_backend

__version__ = "0.1.0"

__all__ = ["kernel_backend", "__version__"]
