"""tautile: tau-tilting finiteness of bound quiver algebras.

Exact linear algebra, bound quiver presentations, support tau-tilting
enumeration by two-term silting mutation, obstruction certificates, and
0-Hecke / 0-Schur classification.
"""
from .algebra import BoundQuiverAlgebra, Quiver, Arrow, RelationElement, build_algebra, cartan_matrix
from .enumerate import enumerate_exchange_graph
from .hecke import classify_hecke, classify_schur, hecke_quiver, schur_algebra
from .verdict import Verdict, VerdictConfig, verdict

__version__ = "0.1.0"

__all__ = [
    "Arrow", "BoundQuiverAlgebra", "Quiver", "RelationElement", "Verdict", "VerdictConfig",
    "build_algebra", "cartan_matrix", "classify_hecke", "classify_schur", "enumerate_exchange_graph",
    "hecke_quiver", "schur_algebra", "verdict",
]
