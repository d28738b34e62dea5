"""Uniserial varieties of finite dimensional path algebras with relations.

The package computes, for an algebra given by a quiver and relations, the
affine variety parametrizing uniserial modules along a fixed mast, builds the
corresponding modules as matrices, decides isomorphism, moves points between
masts through the same vertices and realizes polynomial systems as such
varieties.
"""

__version__ = "0.1.0"

from .field import GF, QQ, Field, Mod, parse_field
from .polynomial import Polynomial, PolynomialSyntaxError, parse_polynomial, parse_polynomials
from .groebner import (IdealBasis, groebner_basis, ideal_contains, ideal_equal, is_groebner,
                       is_unit_ideal)
from .linear import LinearSolution, LinearSystem, solve_linear
from .quiver import (AlgebraElement, Arrow, Path, Presentation, Quiver, QuiverError, compose,
                     prefix)
from .dsl import (PresentationError, format_presentation, load_presentation, parse_element,
                  parse_path, parse_presentation)
from .variety import (Detour, DetourTable, NonTermination, SymbolicElement, UniserialVariety,
                      enumerate_detours, enumerate_masts, is_nonempty_variety, is_route,
                      normal_form, point_on_variety, variety_generators)
from .modules import (IsoResult, IsoSystem, LayeredGraph, ModuleInvariantError, PointError,
                      Transport, UniserialModule, build_module, decide_iso, detour_bijection,
                      iso_system, layered_graph, transport_mast)
from .realize import (Multilinearization, Realization, multilinearize, realize_variety,
                      verify_realization)

__all__ = [name for name in dir() if not name.startswith("_")]
