"""Canonical elements of Orlik-Solomon algebras and their elliptic images.

Exact layer: multiindices and signs (``combinatorics``), ordered trees and
the algebra A(k) (``trees``), the shuffle/dual picture (``shuffle``), root
systems and PBW straightening (``lie``) and the canonical element with its
PBW expansion (``canonical``).  Numeric layer: theta functions (``theta``),
rational/theta forms (``forms``) and the Calogero-Moser formula (``cm``).
"""
from .canonical import CanonicalExpansion, eta, etas, omega_g, product_formula
from .lie import build_root_system, root_system_by_name
from .shuffle import DualVector, star_dual
from .theta import KERNEL, ThetaContext

__version__ = "0.1.0"

__all__ = [
    "CanonicalExpansion",
    "DualVector",
    "KERNEL",
    "ThetaContext",
    "build_root_system",
    "eta",
    "etas",
    "omega_g",
    "product_formula",
    "root_system_by_name",
    "star_dual",
]
