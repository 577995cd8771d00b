"""Monoids in the matrix backends and their Frobenius-type laws."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from daggerlab.backend import (
    Backend,
    LawReport,
    Mor,
    TolLike,
    approx_eq,
    as_backend,
    as_eps,
    compose,
    dagger,
    identity,
    swap,
    tensor,
)
from daggerlab.errors import DimensionMismatch, NotInverse


@dataclass(frozen=True)
class FrobMonoid:
    """A candidate monoid ``(A, mult, unit)`` with ``dim A = n``.

    Only shapes are validated on construction; the algebraic laws are what
    the ``check_*`` functions test.
    """

    mult: Mor
    unit: Mor
    label: str = ""

    def __post_init__(self):
        if self.mult.backend is not self.unit.backend:
            raise DimensionMismatch("mult and unit live in different backends")
        n = self.unit.cod
        if self.unit.dom != 1:
            raise DimensionMismatch(f"unit must have domain 1, got {self.unit.dom}")
        if self.mult.cod != n or self.mult.dom != n * n:
            raise DimensionMismatch(
                f"mult must be {n * n} -> {n}, got {self.mult.dom} -> {self.mult.cod}"
            )

    @property
    def backend(self) -> Backend:
        return self.mult.backend

    @property
    def n(self) -> int:
        return self.unit.cod

    @property
    def comult(self) -> Mor:
        return dagger(self.mult)

    @property
    def counit(self) -> Mor:
        return dagger(self.unit)

    @property
    def id(self) -> Mor:
        return identity(self.n, self.backend)

    def __repr__(self) -> str:
        label = f" {self.label!r}" if self.label else ""
        return f"FrobMonoid{label}({self.backend.value}, n={self.n})"


def monoid_from_table(n: int, table, unit_elements, backend=Backend.FHILB, label="") -> FrobMonoid:
    """Build a monoid from a partial multiplication table on basis elements.

    ``table`` maps ``(x, y)`` to the index of ``x·y``; missing pairs multiply
    to zero (the empty relation in ``REL``).  The unit is the sum (union) of
    ``unit_elements``.
    """
    backend = as_backend(backend)
    mult = np.zeros((n, n * n), dtype=backend.dtype)
    for (x, y), z in table.items():
        mult[z, x * n + y] = 1
    unit = np.zeros((n, 1), dtype=backend.dtype)
    for e in unit_elements:
        unit[e, 0] = 1
    return FrobMonoid(Mor(backend, mult), Mor(backend, unit), label)


def trivial_monoid(backend=Backend.FHILB) -> FrobMonoid:
    return monoid_from_table(1, {(0, 0): 0}, [0], backend, "trivial")


def dual_numbers(backend=Backend.FHILB) -> FrobMonoid:
    """``C[x]/(x^2)`` on the basis ``(1, x)``.

    A monoid whose multiplication is not Frobenius: the negative control used
    throughout the test-suite.
    """
    table = {(0, 0): 0, (0, 1): 1, (1, 0): 1}
    return monoid_from_table(2, table, [0], backend, "dual-numbers")


def join_monoid(backend=Backend.FHILB) -> FrobMonoid:
    """``({0, 1}, max, 0)``: idempotent and commutative, not Frobenius."""
    table = {(x, y): max(x, y) for x in range(2) for y in range(2)}
    return monoid_from_table(2, table, [0], backend, "join")


def transformation_monoid(k: int = 2, backend=Backend.FHILB) -> FrobMonoid:
    """All maps ``{0..k-1} -> {0..k-1}`` under composition; identity first.

    Non-commutative and, for ``k >= 2``, not Frobenius.
    """
    identity_map = tuple(range(k))
    maps = [identity_map] + [f for f in itertools.product(range(k), repeat=k) if f != identity_map]
    index = {f: i for i, f in enumerate(maps)}
    table = {
        (i, j): index[tuple(f[g[x]] for x in range(k))]
        for (i, f), (j, g) in itertools.product(enumerate(maps), repeat=2)
    }
    return monoid_from_table(len(maps), table, [0], backend, f"maps{k}")


def transport(M: FrobMonoid, s: Mor, s_inv: Mor | None = None) -> FrobMonoid:
    """Move the monoid structure along an invertible ``s``.

    ``mult ↦ s ∘ mult ∘ (s⁻¹ ⊗ s⁻¹)``, ``unit ↦ s ∘ unit``; the result is
    always a monoid and is again dagger Frobenius when ``s`` is unitary.
    """
    if s_inv is None:
        s_inv = Mor(s.backend, np.linalg.inv(s.entries))
    mult = compose(s, M.mult, tensor(s_inv, s_inv))
    return FrobMonoid(mult, s @ M.unit, M.label)


def _law(lhs: Mor, rhs: Mor, tol: TolLike, name: str) -> LawReport:
    return approx_eq(lhs, rhs, tol, name)


def check_monoid(M: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    m, u, i = M.mult, M.unit, M.id
    return [
        _law(m @ tensor(m, i), m @ tensor(i, m), tol, "associativity"),
        _law(m @ tensor(u, i), i, tol, "left unit"),
        _law(m @ tensor(i, u), i, tol, "right unit"),
    ]


def check_comonoid(M: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    d, e, i = M.comult, M.counit, M.id
    return [
        _law(tensor(d, i) @ d, tensor(i, d) @ d, tol, "coassociativity"),
        _law(tensor(e, i) @ d, i, tol, "left counit"),
        _law(tensor(i, e) @ d, i, tol, "right counit"),
    ]


def check_frobenius(M: FrobMonoid, tol: TolLike = None) -> LawReport:
    """``(id ⊗ m) ∘ (m† ⊗ id) = (m ⊗ id) ∘ (id ⊗ m†)``."""
    m, d, i = M.mult, M.comult, M.id
    return _law(tensor(i, m) @ tensor(d, i), tensor(m, i) @ tensor(i, d), tol, "frobenius")


def check_frobenius_alt(M: FrobMonoid, tol: TolLike = None) -> LawReport:
    """``m† = (id ⊗ m) ∘ ((m† ∘ u) ⊗ id)``, equivalent to the Frobenius law for monoids."""
    m, d, u, i = M.mult, M.comult, M.unit, M.id
    rhs = tensor(i, m) @ tensor(d @ u, i)
    return _law(d, rhs, tol, "frobenius (cup form)")


def check_extended_frobenius(M: FrobMonoid, tol: TolLike = None) -> LawReport:
    """``m† ∘ m = (m ⊗ id) ∘ (id ⊗ m†)``."""
    m, d, i = M.mult, M.comult, M.id
    return _law(d @ m, tensor(m, i) @ tensor(i, d), tol, "extended frobenius")


def check_special(M: FrobMonoid, tol: TolLike = None) -> LawReport:
    return _law(M.mult @ M.comult, M.id, tol, "special")


def check_commutative(M: FrobMonoid, tol: TolLike = None) -> LawReport:
    return _law(M.mult @ swap(M.n, M.n, M.backend), M.mult, tol, "commutative")


def frobenius_battery(M: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    """Monoid laws plus the three equivalent-under-monoid-laws Frobenius forms."""
    return check_monoid(M, tol) + [
        check_frobenius(M, tol),
        check_frobenius_alt(M, tol),
        check_extended_frobenius(M, tol),
    ]


def is_dagger_frobenius(M: FrobMonoid, tol: TolLike = None) -> bool:
    return all(check_monoid(M, tol)) and bool(check_frobenius(M, tol))


def _check_hom_shape(f: Mor, M: FrobMonoid, N: FrobMonoid) -> None:
    if f.dom != M.n or f.cod != N.n:
        raise DimensionMismatch(f"expected a map {M.n} -> {N.n}, got {f!r}")


def is_monoid_hom(f: Mor, M: FrobMonoid, N: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    _check_hom_shape(f, M, N)
    return [
        _law(f @ M.unit, N.unit, tol, "preserves unit"),
        _law(f @ M.mult, N.mult @ tensor(f, f), tol, "preserves multiplication"),
    ]


def is_comonoid_hom(f: Mor, M: FrobMonoid, N: FrobMonoid, tol: TolLike = None) -> list[LawReport]:
    _check_hom_shape(f, M, N)
    return [
        _law(N.counit @ f, M.counit, tol, "preserves counit"),
        _law(N.comult @ f, tensor(f, f) @ M.comult, tol, "preserves comultiplication"),
    ]


def frobenius_hom_inverse(f: Mor, M: FrobMonoid, N: FrobMonoid, tol: TolLike = None) -> Mor:
    """Two-sided inverse of a (co)monoid homomorphism ``f: M -> N``.

    Built by bending ``f`` around with the cup of ``M`` and the cap of ``N``::

        g = ((ε_N ∘ m_N) ⊗ id_M) ∘ (id_N ⊗ f ⊗ id_M) ∘ (id_N ⊗ (m_M† ∘ u_M))

    Raises
    ------
    NotInverse
        If ``g`` fails to invert ``f`` within tolerance, which means ``f`` was
        not a homomorphism of both kinds between dagger Frobenius monoids.
    """
    _check_hom_shape(f, M, N)
    iM, iN = M.id, N.id
    cup_M = M.comult @ M.unit
    cap_N = N.counit @ N.mult
    g = compose(tensor(cap_N, iM), tensor(iN, f, iM), tensor(iN, cup_M))
    left = approx_eq(g @ f, iM, tol)
    right = approx_eq(f @ g, iN, tol)
    if not (left and right):
        raise NotInverse(
            f"constructed map is not an inverse (residuals {left.residual:.3g}, "
            f"{right.residual:.3g} at eps={as_eps(tol):g})"
        )
    return g
