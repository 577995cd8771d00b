"""Executable checks for dagger Frobenius monoids, their monads, and their algebras."""

from daggerlab.algebra import (
    EMAlgebra,
    KleisliMor,
    Measurement,
    Representation,
    TensorMonad,
    algebra_to_representation,
    check_em,
    check_fem,
    check_self_adjoint_coalgebra,
    extract_measurement,
    free_algebra,
    kleisli_compose,
    kleisli_dagger,
    kleisli_identity,
    pants_monoid,
    pvm_algebra,
    representation_to_algebra,
)
from daggerlab.backend import (
    DEFAULT_EPS,
    Backend,
    LawReport,
    Mor,
    Tolerance,
    approx_eq,
    compose,
    dagger,
    identity,
    swap,
    tensor,
)
from daggerlab.errors import DaggerLabError
from daggerlab.frobenius import (
    FrobMonoid,
    check_frobenius,
    dual_numbers,
    frobenius_battery,
    frobenius_hom_inverse,
    is_dagger_frobenius,
    monoid_from_table,
)
from daggerlab.groupoid import (
    FiniteGroupoid,
    battery,
    groupoid_isomorphic,
    groupoid_to_frobenius,
    rel_frobenius_to_groupoid,
    validate_groupoid,
)
from daggerlab.strength_closure import (
    StrengthData,
    check_closure_equivalences,
    check_commutativity,
    check_remark_counterexample,
    check_strength_laws,
    extract_unit_monoid,
    kleisli_tensor,
    standard_duality,
)

__all__ = [name for name in dir() if not name.startswith("_")]
