from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from daggerlab.algebra import pants_monoid
from daggerlab.backend import Backend, Mor, identity, residual
from daggerlab.errors import DimensionMismatch, NotInverse
from daggerlab.frobenius import (
    FrobMonoid,
    check_comonoid,
    check_commutative,
    check_extended_frobenius,
    check_frobenius,
    check_frobenius_alt,
    check_monoid,
    check_special,
    dual_numbers,
    frobenius_battery,
    frobenius_hom_inverse,
    is_comonoid_hom,
    is_dagger_frobenius,
    is_monoid_hom,
    join_monoid,
    monoid_from_table,
    transformation_monoid,
    transport,
    trivial_monoid,
)
from daggerlab.groupoid import (
    battery,
    cyclic_group,
    discrete,
    group_automorphisms,
    groupoid_to_frobenius,
    symmetric_group,
)
from daggerlab.sampling import random_matrix, random_unitary

NON_FROBENIUS = [dual_numbers, join_monoid, lambda be: transformation_monoid(2, be)]


def structure_constants(M: FrobMonoid) -> np.ndarray:
    """c[z, x, y] = coefficient of e_z in e_x · e_y."""
    n = M.n
    return M.mult.entries.astype(complex).reshape(n, n, n)


def frobenius_oracle(M: FrobMonoid) -> float:
    """Both sides of the Frobenius law from structure constants, indexed [(x, w), (a, b)]."""
    c = structure_constants(M)
    lhs = np.einsum("axy,wyb->xwab", c.conj(), c)
    rhs = np.einsum("xay,byw->xwab", c, c.conj())
    return float(np.max(np.abs(lhs - rhs)))


def associativity_oracle(M: FrobMonoid) -> float:
    c = structure_constants(M)
    lhs = np.einsum("zwc,wab->zabc", c, c)   # (ab)c
    rhs = np.einsum("zaw,wbc->zabc", c, c)   # a(bc)
    return float(np.max(np.abs(lhs - rhs)))


@pytest.mark.parametrize("G", battery(), ids=lambda G: G.name)
def test_groupoid_monoids_pass_battery(G, backend):
    M = groupoid_to_frobenius(G, backend)
    reports = frobenius_battery(M)
    assert all(reports), [r for r in reports if not r]
    assert all(check_comonoid(M))
    if backend is Backend.REL:
        assert all(r.residual == 0 for r in reports)


@pytest.mark.parametrize("make", NON_FROBENIUS)
def test_non_frobenius_monoids(make, backend):
    M = make(backend)
    assert all(check_monoid(M))
    assert not check_frobenius(M)
    assert not check_frobenius_alt(M)
    assert not check_extended_frobenius(M)
    assert not is_dagger_frobenius(M)


def test_dual_numbers_frozen_residuals():
    # derived: structure-constant oracle on C[x]/(x^2)
    M = dual_numbers()
    assert frobenius_oracle(M) == 1.0
    assert check_frobenius(M).residual == 1.0
    assert check_frobenius_alt(M).residual == 1.0
    assert check_extended_frobenius(M).residual == 1.0


@pytest.mark.parametrize("G", battery()[:6], ids=lambda G: G.name)
def test_oracles_agree_on_groupoid_monoids(G):
    M = groupoid_to_frobenius(G, Backend.FHILB)
    assert frobenius_oracle(M) == 0
    assert associativity_oracle(M) == 0


@given(st.sampled_from(battery()[:6] + battery()[9:10]), st.integers(0, 2**31), st.booleans())
def test_frobenius_residual_matches_oracle(G, seed, unitary):
    M = groupoid_to_frobenius(G, Backend.FHILB)
    if unitary:
        s = random_unitary(M.n, seed)
    else:
        s = Mor.fhilb(np.eye(M.n) + 0.5 * random_matrix(M.n, M.n, Backend.FHILB, seed).entries)
    N = transport(M, s)
    assert check_frobenius(N).residual == pytest.approx(frobenius_oracle(N), abs=1e-9)
    assert associativity_oracle(N) < 1e-8
    if unitary:
        assert is_dagger_frobenius(N)


@pytest.mark.parametrize("make", [dual_numbers, join_monoid, trivial_monoid])
def test_cup_form_agrees_with_frobenius_verdict(make, backend):
    M = make(backend)
    assert check_frobenius(M).passed == check_frobenius_alt(M).passed == check_extended_frobenius(M).passed


def test_transport_by_non_unitary_breaks_frobenius():
    M = groupoid_to_frobenius(cyclic_group(2), Backend.FHILB)
    N = transport(M, Mor.fhilb([[1, 1], [0, 1]]))
    assert all(check_monoid(N))
    assert not check_frobenius(N)


def test_special():
    assert check_special(groupoid_to_frobenius(discrete(3), Backend.FHILB))
    assert not check_special(groupoid_to_frobenius(cyclic_group(2), Backend.FHILB))
    # pants: mult ∘ mult† = n² · id in the orthonormal basis b_ij = √n E_ij
    for n in (2, 3):
        assert check_special(pants_monoid(n)).residual == pytest.approx(n * n - 1)


def test_commutative():
    assert check_commutative(groupoid_to_frobenius(cyclic_group(3), Backend.REL))
    assert not check_commutative(groupoid_to_frobenius(symmetric_group(3), Backend.REL))
    assert not check_commutative(pants_monoid(2))
    assert check_commutative(dual_numbers())


def test_monoid_shape_validation():
    with pytest.raises(DimensionMismatch):
        FrobMonoid(Mor.fhilb(np.zeros((2, 3))), Mor.fhilb(np.zeros((2, 1))))
    with pytest.raises(DimensionMismatch):
        FrobMonoid(Mor.fhilb(np.zeros((2, 4))), Mor.fhilb(np.zeros((2, 2))))
    with pytest.raises(DimensionMismatch):
        FrobMonoid(Mor.fhilb(np.zeros((1, 1))), Mor.rel([[1]]))


def test_monoid_from_table_missing_products_are_zero():
    M = monoid_from_table(2, {(0, 0): 0, (0, 1): 1, (1, 0): 1}, [0])
    assert np.count_nonzero(M.mult.entries) == 3


# ------------------------------------------------------------ homomorphisms


def automorphism_matrix(G, phi, backend):
    n = len(G)
    p = np.zeros((n, n), dtype=backend.dtype)
    for a, b in phi.items():
        p[G.index[b], G.index[a]] = 1
    return Mor(backend, p)


@pytest.mark.parametrize("G", [cyclic_group(3), cyclic_group(4), symmetric_group(3)], ids=lambda G: G.name)
def test_automorphisms_are_frobenius_homs_with_inverse(G, backend):
    M = groupoid_to_frobenius(G, backend)
    for phi in group_automorphisms(G):
        p = automorphism_matrix(G, phi, backend)
        assert all(is_monoid_hom(p, M, M))
        assert all(is_comonoid_hom(p, M, M))
        g = frobenius_hom_inverse(p, M, M)
        # a permutation's inverse is its transpose
        assert residual(g, Mor(backend, p.entries.T)) == 0


def test_identity_inverse_is_identity(groupoid, backend):
    M = groupoid_to_frobenius(groupoid, backend)
    assert residual(frobenius_hom_inverse(M.id, M, M), M.id) == 0


def test_hom_inverse_pants_identity():
    M = pants_monoid(2)
    assert residual(frobenius_hom_inverse(M.id, M, M), M.id) < 1e-12


def test_non_hom_has_no_inverse():
    M = groupoid_to_frobenius(cyclic_group(3), Backend.FHILB)
    with pytest.raises(NotInverse):
        frobenius_hom_inverse(Mor.fhilb(2 * np.eye(3)), M, M)


def test_hom_shape_checked():
    M = groupoid_to_frobenius(cyclic_group(3), Backend.FHILB)
    with pytest.raises(DimensionMismatch):
        is_monoid_hom(identity(2, Backend.FHILB), M, M)
