"""Exact computations for Kleinian singularities, their resolutions and quantizations.

Affine ADE root systems, parameter conditions for spherical subalgebras,
the affine Weyl action, type-A semi-invariant rings, truncated deformed
preprojective algebras, and finite truncations of Z-algebras.
"""

from .quiver import QuiverSpec, build_extended_dynkin, double, delta, defect
from .rational import ParamVector
from .roots import Root, WeightClass, enumerate_roots, classify_weight
from .params import ParamReport, analyze, choose_xi
from .weyl import WeylWord, decompose_translation, apply_word
from .fiber import FiberRing, GradedSlice, build_fiber_ring, slice_
from .molien import molien_dims, parse_group
from .preproj import FiltrationTable, truncated_dims
from .zalgebra import ZAlgebraTruncation, hat, check_associativity, morita_condition_ii, decompose_sum

__version__ = "0.1.0"
