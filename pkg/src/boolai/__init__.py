"""Exact and certified algebraic immunity of Boolean functions."""

from .annihilator import AiResult, AnnihilatorWitness, exact_ai, min_annihilator_degree
from .bounds import AiCertificate, Method, Symmetry, coverage_certifier, corollary4_bound
from .core import ZERO, AffineForm, AffineSubspace, AnfPolynomial, BooleanFunction, make_subspace

__all__ = [
    "AffineForm",
    "AffineSubspace",
    "AiCertificate",
    "AiResult",
    "AnfPolynomial",
    "AnnihilatorWitness",
    "BooleanFunction",
    "Method",
    "Symmetry",
    "ZERO",
    "corollary4_bound",
    "coverage_certifier",
    "exact_ai",
    "make_subspace",
    "min_annihilator_degree",
]

__version__ = "0.1.0"
