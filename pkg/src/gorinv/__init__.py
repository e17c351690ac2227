"""Exact construction and verification of G-invariant Gorenstein ideals."""

from .action import (
    Character,
    GAction,
    apply,
    check_equivariant,
    fixed_subspace,
    lift_functional,
    reynolds,
    semi_invariant_subspace,
)
from .errors import GorinvError
from .field import FieldSpec, Residue, has_primitive_pth_root
from .gradedalg import (
    ArtinQuotient,
    GorensteinVerdict,
    InvariantQuotient,
    gorenstein_verdict,
    gorenstein_verdict_invariant,
    invariant_quotient,
    quotient,
    socle,
)
from .groups import (
    GMatrix,
    MatrixGroup,
    close,
    commutator_subgroup,
    enumerate_onedim_reps_oracle,
    has_nontrivial_onedim_rep,
)
from .harness import InstanceSpec, replicate_example, sweep, verify_theorem
from .invsys import GradedIdeal, build_inverse_system, check_g_invariance
from .poly import Functional, HPoly, monomial_basis

__version__ = "0.1.0"

__all__ = [
    "ArtinQuotient",
    "Character",
    "FieldSpec",
    "Functional",
    "GAction",
    "GMatrix",
    "GorensteinVerdict",
    "GorinvError",
    "GradedIdeal",
    "HPoly",
    "InstanceSpec",
    "InvariantQuotient",
    "MatrixGroup",
    "Residue",
    "apply",
    "build_inverse_system",
    "check_equivariant",
    "check_g_invariance",
    "close",
    "commutator_subgroup",
    "enumerate_onedim_reps_oracle",
    "fixed_subspace",
    "gorenstein_verdict",
    "gorenstein_verdict_invariant",
    "has_nontrivial_onedim_rep",
    "has_primitive_pth_root",
    "invariant_quotient",
    "lift_functional",
    "monomial_basis",
    "quotient",
    "replicate_example",
    "reynolds",
    "semi_invariant_subspace",
    "socle",
    "sweep",
    "verify_theorem",
]
