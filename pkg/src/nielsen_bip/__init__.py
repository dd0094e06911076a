"""Exact Nielsen fixed point invariants for fiber-preserving self-maps of Sigma_g x T^k."""

from .errors import (
    BudgetExceededError,
    DegenerateSpecError,
    MultipleClassesError,
    NielsenError,
    SpecError,
    SpecParseError,
)
from .exact_linalg import INFINITE, IntMatrix, cokernel, preimage_lattice_index, smith_normal_form, solve_diophantine
from .fibered_map import FiberedMapSpec, make_theorem1_family, make_theorem2_family, validate_spec
from .groups import FiberElement, ProductElement, SurfaceWord, apply_endomorphism, exponent_vector, twisted_conjugate
from .invariants import (
    analyze,
    bip_certificate,
    class_index,
    fiber_lefschetz,
    fiber_nielsen,
    fixed_subgroup,
    fixed_surface_genus,
    reidemeister_structure,
    total_lefschetz,
)

__version__ = "0.1.0"
