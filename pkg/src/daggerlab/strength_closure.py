"""
Strength of ``- ⊗ B``, commutativity, the Kleisli tensor, and compact closure.

Under strict coherence the strength ``st: A ⊗ T(B') -> T(A ⊗ B')`` is an
identity matrix.  It is still materialised so every law goes through the same
comparison path as the others.

Duals are taken along the standard self-dual basis: ``A* = A`` with
``cup = Σ_i e_i ⊗ e_i`` and ``cap = cup†``.  The dual of ``f`` is then its
transpose, and ``[f†, I]`` is the entrywise conjugate of ``f``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from daggerlab.algebra import KleisliMor, TensorMonad
from daggerlab.backend import (
    Backend,
    LawReport,
    Mor,
    TolLike,
    approx_eq,
    as_backend,
    as_eps,
    compose,
    conj,
    dagger,
    identity,
    swap,
    tensor,
)
from daggerlab.errors import DimensionMismatch, NotCommutative, NotFrobenius, TrivialGroup
from daggerlab.frobenius import FrobMonoid, check_frobenius
from daggerlab.groupoid import FiniteGroupoid, groupoid_to_frobenius_rel
from daggerlab.sampling import random_matrix, rng_from

# ------------------------------------------------------------------ strength


@dataclass(frozen=True, eq=False)
class StrengthData:
    """Strength maps of ``T = - ⊗ B``; ``st(m, k)`` is ``m·(k·n) -> (m·k)·n``."""

    monad: TensorMonad

    def st(self, m: int, k: int) -> Mor:
        return identity(m * k * self.monad.n, self.monad.backend)

    def st_prime(self, m: int, k: int) -> Mor:
        """``T(σ) ∘ st ∘ σ: T(A) ⊗ B' -> T(A ⊗ B')``."""
        T = self.monad
        be = T.backend
        return compose(T.apply(swap(k, m, be)), self.st(k, m), swap(m * T.n, k, be))

    def dst(self, m: int, k: int) -> Mor:
        """``μ ∘ T(st') ∘ st: T(A) ⊗ T(B') -> T(A ⊗ B')``."""
        T = self.monad
        return compose(T.mult(m * k), T.apply(self.st_prime(m, k)), self.st(m * T.n, k))

    def dst_prime(self, m: int, k: int) -> Mor:
        """``μ ∘ T(st) ∘ st'``."""
        T = self.monad
        return compose(T.mult(m * k), T.apply(self.st(m, k)), self.st_prime(m, k * T.n))


def check_strength_laws(T: TensorMonad, dims, tol: TolLike = None, seed=0) -> list[LawReport]:
    """Strength axioms, monad compatibility, unitarity and naturality at all sampled dims."""
    if not dims:
        raise ValueError("dims must be nonempty")
    S = StrengthData(T)
    be, n = T.backend, T.n
    rng = rng_from(seed)
    worst: dict[str, float] = {}

    def record(report: LawReport):
        worst[report.name] = max(worst.get(report.name, 0.0), report.residual)

    for m, k in itertools.product(dims, repeat=2):
        st = S.st(m, k)
        im = identity(m, be)
        for l in dims:
            record(approx_eq(S.st(m * l, k), S.st(m, l * k) @ tensor(im, S.st(l, k)), tol, "strength associativity"))
        record(approx_eq(S.st(1, k), identity(k * n, be), tol, "strength left unitor"))
        record(approx_eq(st @ tensor(im, T.mult(k)), compose(T.mult(m * k), T.apply(st), S.st(m, k * n)), tol,
                         "strength and multiplication"))
        record(approx_eq(st @ tensor(im, T.unit(k)), T.unit(m * k), tol, "strength and unit"))
        record(approx_eq(dagger(st) @ st, identity(m * k * n, be), tol, "strength unitary"))
        record(approx_eq(st @ dagger(st), identity(m * k * n, be), tol, "strength unitary"))
        f = random_matrix(m, m, be, rng)
        g = random_matrix(k, k, be, rng)
        record(approx_eq(st @ tensor(f, T.apply(g)), T.apply(tensor(f, g)) @ st, tol, "strength naturality"))

    eps = as_eps(tol)
    return [
        LawReport(name, r, r == 0 if be is Backend.REL else r <= eps)
        for name, r in worst.items()
    ]


def extract_unit_monoid(T: TensorMonad) -> FrobMonoid:
    """The monoid on ``T(I)``: multiplication ``μ_I ∘ T(ρ) ∘ st``, unit ``η_I``.

    Raises
    ------
    NotFrobenius
        If ``B`` is not a dagger Frobenius monoid.
    """
    if not T.is_frobenius:
        raise NotFrobenius(f"{T.B!r} is not a dagger Frobenius monoid")
    S = StrengthData(T)
    n, be = T.n, T.backend
    rho = identity(n, be)  # T(I) ⊗ I -> T(I)
    mult = compose(T.mult(1), T.apply(rho), S.st(n, 1))
    return FrobMonoid(mult, T.unit(1), T.B.label)


def counit_map(T: TensorMonad, m: int) -> Mor:
    """``T(ρ) ∘ st: A ⊗ T(I) -> T(A)``."""
    S = StrengthData(T)
    return T.apply(identity(m, T.backend)) @ S.st(m, 1)


def check_counit_iso(T: TensorMonad, m: int, tol: TolLike = None) -> list[LawReport]:
    """The counit ``- ⊗ T(I) => T`` is a unitary monad morphism preserving ``η†`` and ``μ†``."""
    S = TensorMonad(extract_unit_monoid(T))
    c = counit_map(T, m)
    cc = counit_map(T, m * T.n) @ S.apply(c)
    be = T.backend
    return [
        approx_eq(dagger(c) @ c, identity(c.dom, be), tol, "counit unitary"),
        approx_eq(c @ S.unit(m), T.unit(m), tol, "counit preserves η"),
        approx_eq(c @ S.mult(m), T.mult(m) @ cc, tol, "counit preserves μ"),
        approx_eq(dagger(T.unit(m)) @ c, dagger(S.unit(m)), tol, "counit preserves η†"),
        approx_eq(dagger(T.mult(m)) @ c, cc @ dagger(S.mult(m)), tol, "counit preserves μ†"),
    ]


def check_commutativity(T: TensorMonad, m: int = 1, k: int = 1, tol: TolLike = None) -> LawReport:
    S = StrengthData(T)
    return approx_eq(S.dst(m, k), S.dst_prime(m, k), tol, "dst = dst'")


@lru_cache(maxsize=128)
def _commutative(T: TensorMonad) -> bool:
    return check_commutativity(T, 1, 1).passed


def kleisli_tensor(f: KleisliMor, g: KleisliMor) -> KleisliMor:
    """``f ⊗_T g = dst ∘ (f ⊗ g)``.

    Raises
    ------
    NotFrobenius, NotCommutative
        When the result would not be a dagger-compatible monoidal product.
    """
    T = f.monad
    if g.monad is not T and g.monad.B is not T.B:
        raise DimensionMismatch("Kleisli morphisms over different monads")
    if not T.is_frobenius:
        raise NotFrobenius(f"{T.B!r} is not a dagger Frobenius monoid")
    if not _commutative(T):
        raise NotCommutative(f"{T.B!r} gives a non-commutative monad")
    body = StrengthData(T).dst(f.cod, g.cod) @ tensor(f.body, g.body)
    return KleisliMor(T, body)


# ---------------------------------------------------------- remark (Rel)


def unit_pair_sides(G: FiniteGroupoid) -> tuple[Mor, Mor]:
    """``unit ⊗ unit`` and ``mult† ∘ unit`` for the ``REL`` monoid of a group."""
    if len(G.objects) != 1:
        raise ValueError(f"{G!r} is not a group")
    B = groupoid_to_frobenius_rel(G)
    return tensor(B.unit, B.unit), B.comult @ B.unit


def check_remark_counterexample(G: FiniteGroupoid) -> LawReport:
    """In ``REL``, compare ``unit ⊗ unit`` with ``mult† ∘ unit`` for a group ``G``.

    PASS means the two sides differ, i.e. the counterexample manifests.
    The residual counts the pairs in which they differ.

    Raises
    ------
    TrivialGroup
        For the one-element group, where the sides coincide.
    """
    if len(G.objects) == 1 and len(G) < 2:
        raise TrivialGroup("the trivial group gives equal sides")
    lhs, rhs = unit_pair_sides(G)
    diff = float(np.count_nonzero(lhs.entries != rhs.entries))
    return LawReport(
        "unit⊗unit ≠ mult†∘unit", diff, diff > 0,
        "inverted polarity: pass means the two sides differ",
    )


# ------------------------------------------------------------------- closure


@dataclass(frozen=True)
class DualityData:
    n: int
    cup: Mor
    cap: Mor


def standard_duality(n: int, backend=Backend.FHILB) -> DualityData:
    be = as_backend(backend)
    cup = np.zeros((n * n, 1), dtype=be.dtype)
    cup[[i * n + i for i in range(n)], 0] = 1
    cup = Mor(be, cup)
    return DualityData(n, cup, dagger(cup))


def check_snakes(eta: Mor, eps_: Mor, a: int, b: int, tol: TolLike = None) -> list[LawReport]:
    """Snake equations for ``eta: I -> A ⊗ B`` and ``eps_: B ⊗ A -> I``."""
    be = eta.backend
    ia, ib = identity(a, be), identity(b, be)
    return [
        approx_eq(tensor(ia, eps_) @ tensor(eta, ia), ia, tol, "snake on A"),
        approx_eq(tensor(eps_, ib) @ tensor(ib, eta), ib, tol, "snake on B"),
    ]


def dual_involution(M: FrobMonoid) -> Mor:
    """``i: A -> A*`` currying ``ε ∘ m`` in its second argument.

    Column ``j`` holds the functional ``e_k ↦ ε(m(e_j ⊗ e_k))``.  This is
    ``((ε ∘ m) ⊗ id) ∘ (id ⊗ cup)``, read off by reshaping ``ε ∘ m``.
    """
    n = M.n
    em = (M.counit @ M.mult).entries.reshape(n, n)
    return Mor(M.backend, em.T)


def dual_involution_composite(M: FrobMonoid) -> Mor:
    """The same map as :func:`dual_involution`, built as a string of tensors."""
    cup = standard_duality(M.n, M.backend).cup
    return tensor(M.counit @ M.mult, M.id) @ tensor(M.id, cup)


def cayley(M: FrobMonoid) -> Mor:
    """Curried multiplication ``R: A -> A ⊗ A*`` (left regular representation)."""
    cup = standard_duality(M.n, M.backend).cup
    return tensor(M.mult, M.id) @ tensor(M.id, cup)


def endomorphism_monoid(n: int, backend=Backend.FHILB) -> FrobMonoid:
    """``[A, A] = A ⊗ A*`` with composition ``id ⊗ cap ⊗ id`` and unit ``cup``."""
    d = standard_duality(n, backend)
    i = identity(n, backend)
    return FrobMonoid(tensor(i, d.cap, i), d.cup, f"End({n})")


def check_closure_equivalences(M: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    """Four conditions that coincide for monoids in a compact dagger category.

    Frobenius law; ``i_* ∘ i = id``; ``i ∘ R = R_* ∘ i``; and ``ev = cap``
    forming a duality with ``(id ⊗ i) ∘ m† ∘ unit``.
    """
    n, be = M.n, M.backend
    i = dual_involution(M)
    R = cayley(M)
    i_end = dual_involution(endomorphism_monoid(n, be))
    eta = tensor(M.id, i) @ M.comult @ M.unit
    snakes = check_snakes(eta, standard_duality(n, be).cap, n, n, tol)
    worst = max(snakes, key=lambda r: r.residual)
    return [
        check_frobenius(M, tol),
        approx_eq(conj(i) @ i, M.id, tol, "i involutive"),
        approx_eq(i_end @ R, conj(R) @ i, tol, "Cayley involutive"),
        LawReport("ev duality", worst.residual, all(snakes)),
    ]
