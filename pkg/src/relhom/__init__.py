"""Exact relative homological algebra over bound quiver algebras."""

from .catalog import builtin_catalog, entry
from .complexes import ChainMap, Complex, cone, hom_complex
from .modules import Module, Morphism, direct_sum, hom, kernel, cokernel
from .quiver import Algebra, build_algebra
from .relative import BalancedPair, Subcategory, rel_ext, resolution_dimension
from .workspace import Workspace, load_workspace

__all__ = [
    "Algebra", "BalancedPair", "ChainMap", "Complex", "Module", "Morphism", "Subcategory",
    "Workspace", "build_algebra", "builtin_catalog", "cokernel", "cone", "direct_sum", "entry",
    "hom", "hom_complex", "kernel", "load_workspace", "rel_ext", "resolution_dimension",
]
