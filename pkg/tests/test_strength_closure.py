from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from daggerlab.algebra import KleisliMor, TensorMonad, kleisli_compose, kleisli_dagger, kleisli_identity, pants_monoid
from daggerlab.backend import Backend, Mor, approx_eq, conj, dagger, identity, residual, swap, tensor
from daggerlab.errors import NotCommutative, NotFrobenius, TrivialGroup
from daggerlab.frobenius import check_commutative, dual_numbers, join_monoid, transport
from daggerlab.groupoid import (
    battery,
    cyclic_group,
    discrete,
    groupoid_to_frobenius,
    is_combinatorially_commutative,
    klein_group,
    symmetric_group,
)
from daggerlab.sampling import random_matrix, random_unitary
from daggerlab.strength_closure import (
    StrengthData,
    cayley,
    check_closure_equivalences,
    check_commutativity,
    check_counit_iso,
    check_remark_counterexample,
    check_snakes,
    check_strength_laws,
    counit_map,
    dual_involution,
    dual_involution_composite,
    endomorphism_monoid,
    extract_unit_monoid,
    kleisli_tensor,
    standard_duality,
    unit_pair_sides,
)

BATTERY = battery()
COMMUTATIVE = [G for G in BATTERY if is_combinatorially_commutative(G)]
seeds = st.integers(0, 2**31)


def monad(G, backend=Backend.FHILB) -> TensorMonad:
    return TensorMonad(groupoid_to_frobenius(G, backend))


def non_commuting_pairs(G) -> int:
    """Ordered pairs with ``f g ≠ g f``, where an undefined composite counts as empty."""
    c = G.compose
    return sum(
        1 for f, g in itertools.product(G.arrow, repeat=2)
        if c.get((f, g)) != c.get((g, f))
    )


def commutativity_mismatch(G) -> int:
    """Entries where the columns ``(f, g)`` and ``(g, f)`` of the multiplication differ."""
    c = G.compose
    return sum(
        len(({c.get((f, g))} ^ {c.get((g, f))}) - {None})
        for f, g in itertools.product(G.arrow, repeat=2)
    )


# ------------------------------------------------------------------ strength


def test_strength_laws(groupoid, backend):
    reports = check_strength_laws(monad(groupoid, backend), (1, 2))
    assert reports and all(r.residual == 0 for r in reports)


def test_strength_laws_on_pants():
    assert all(check_strength_laws(TensorMonad(pants_monoid(2)), (1, 2)))


def test_strength_needs_dims():
    with pytest.raises(ValueError):
        check_strength_laws(monad(cyclic_group(2)), ())


def test_dst_at_unit_dims_is_mult():
    T = monad(symmetric_group(3))
    S = StrengthData(T)
    assert residual(S.dst(1, 1), T.B.mult) == 0
    assert residual(S.dst_prime(1, 1), T.B.mult @ swap(T.n, T.n, T.backend)) == 0


def test_unit_monoid_extraction(groupoid, backend):
    T = monad(groupoid, backend)
    E = extract_unit_monoid(T)
    assert residual(E.mult, T.B.mult) == 0
    assert residual(E.unit, T.B.unit) == 0
    for m in (1, 2):
        assert all(check_counit_iso(T, m))
        assert residual(counit_map(T, m), identity(m * T.n, backend)) == 0


def test_unit_monoid_extraction_needs_frobenius():
    with pytest.raises(NotFrobenius):
        extract_unit_monoid(TensorMonad(dual_numbers()))


# ------------------------------------------------------------ commutativity


def test_commutativity_matches_monoid(groupoid, backend):
    T = monad(groupoid, backend)
    assert check_commutativity(T).passed == check_commutative(T.B).passed
    assert check_commutativity(T).passed == is_combinatorially_commutative(groupoid)


@pytest.mark.parametrize("G", [symmetric_group(3), BATTERY[9], BATTERY[11]], ids=lambda G: G.name)
def test_rel_commutativity_residual_counts_non_commuting_pairs(G):
    r = check_commutativity(monad(G, Backend.REL)).residual
    assert r == commutativity_mismatch(G)


def test_s3_commutativity_residual():
    # derived: 18 ordered non-commuting pairs in S3
    assert non_commuting_pairs(symmetric_group(3)) == 18
    assert check_commutativity(monad(symmetric_group(3), Backend.REL)).residual == 36


@pytest.mark.parametrize("m,k", [(1, 2), (2, 1), (2, 2)])
def test_commutativity_at_larger_dims(m, k):
    assert check_commutativity(monad(klein_group()), m, k)
    assert not check_commutativity(monad(symmetric_group(3)), m, k)


# ----------------------------------------------------------- Kleisli tensor


def kleisli(T, cod, dom, seed):
    return KleisliMor(T, random_matrix(cod * T.n, dom, T.backend, seed))


@given(st.sampled_from(COMMUTATIVE), st.sampled_from(list(Backend)), seeds)
def test_kleisli_tensor_dagger_and_bifunctoriality(G, be, seed):
    T = monad(G, be)
    rng = np.random.default_rng(seed)
    f, g = kleisli(T, 2, 1, rng), kleisli(T, 1, 2, rng)
    h, k = kleisli(T, 1, 2, rng), kleisli(T, 2, 1, rng)
    ft = kleisli_tensor(f, g)
    assert (ft.dom, ft.cod) == (2, 2)
    assert approx_eq(
        kleisli_dagger(ft).body, kleisli_tensor(kleisli_dagger(f), kleisli_dagger(g)).body, 1e-9
    )
    assert approx_eq(
        kleisli_tensor(kleisli_compose(h, f), kleisli_compose(k, g)).body,
        kleisli_compose(kleisli_tensor(h, k), kleisli_tensor(f, g)).body,
        1e-9,
    )


def test_kleisli_tensor_of_identities():
    T = monad(cyclic_group(3))
    t = kleisli_tensor(kleisli_identity(T, 2), kleisli_identity(T, 1))
    assert residual(t.body, kleisli_identity(T, 2).body) < 1e-12


def test_kleisli_tensor_refusals():
    with pytest.raises(NotCommutative):
        T = monad(symmetric_group(3))
        kleisli_tensor(kleisli_identity(T, 1), kleisli_identity(T, 1))
    with pytest.raises(NotFrobenius):
        T = TensorMonad(dual_numbers())
        kleisli_tensor(kleisli_identity(T, 1), kleisli_identity(T, 1))


# ----------------------------------------------------------- unit-pair sides


@pytest.mark.parametrize(
    "G,expected",
    # derived: mult†∘unit relates * to every (g, g⁻¹); unit⊗unit only to (e, e)
    [(cyclic_group(2), 1), (cyclic_group(3), 2), (klein_group(), 3), (symmetric_group(3), 5)],
    ids=lambda x: getattr(x, "name", str(x)),
)
def test_unit_pair_sides_differ(G, expected):
    r = check_remark_counterexample(G)
    assert r.passed and r.residual == expected
    lhs, rhs = unit_pair_sides(G)
    n = len(G)
    pairs = {(G.index[a.name] * n + G.index[G.inverse[a.name]], 0) for a in G.morphisms}
    assert {(i, j) for j, i in rhs.pairs()} == pairs
    assert len(lhs.pairs()) == 1


def test_unit_pair_sides_trivial_group():
    with pytest.raises(TrivialGroup):
        check_remark_counterexample(cyclic_group(1))
    with pytest.raises(ValueError):
        check_remark_counterexample(discrete(2))


# ------------------------------------------------------------------- closure


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_standard_duality(n, backend):
    d = standard_duality(n, backend)
    assert all(check_snakes(d.cup, d.cap, n, n))
    if backend is Backend.FHILB:
        assert (d.cap @ d.cup).entries[0, 0] == n


def test_snakes_fail_for_scaled_cup():
    d = standard_duality(2)
    assert not all(check_snakes(Mor.fhilb(2 * d.cup.entries), d.cap, 2, 2))


def test_dual_involution_is_inverse_permutation(groupoid, backend):
    M = groupoid_to_frobenius(groupoid, backend)
    i = dual_involution(M)
    assert residual(i, dual_involution_composite(M)) == 0
    expected = np.zeros((M.n, M.n), dtype=backend.dtype)
    for a in groupoid.morphisms:
        expected[groupoid.index[groupoid.inverse[a.name]], groupoid.index[a.name]] = 1
    assert np.array_equal(i.entries, expected)


def test_dual_involution_small_cases():
    assert residual(dual_involution(groupoid_to_frobenius(cyclic_group(2))), identity(2, Backend.FHILB)) == 0
    i = dual_involution(groupoid_to_frobenius(cyclic_group(3))).entries
    assert np.array_equal(i, np.array([[1, 0, 0], [0, 0, 1], [0, 1, 0]]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_endomorphism_monoid(n, backend):
    E = endomorphism_monoid(n, backend)
    assert all(check_closure_equivalences(E))
    assert residual(dual_involution(E), swap(n, n, backend)) == 0


def test_cayley_is_injective():
    M = groupoid_to_frobenius(symmetric_group(3))
    R = cayley(M).entries
    assert np.linalg.matrix_rank(R) == M.n


CLOSURE_CASES = [
    ("groupoid", lambda: groupoid_to_frobenius(BATTERY[5])),
    ("groupoid rel", lambda: groupoid_to_frobenius(BATTERY[11], Backend.REL)),
    ("pants2", lambda: pants_monoid(2)),
    ("dual numbers", dual_numbers),
    ("join rel", lambda: join_monoid(Backend.REL)),
    ("unitary transport", lambda: transport(groupoid_to_frobenius(cyclic_group(3)), random_unitary(3, 4))),
    ("similarity transport", lambda: transport(groupoid_to_frobenius(cyclic_group(2)), Mor.fhilb([[1, 1], [0, 1]]))),
]


@pytest.mark.parametrize("make", [c[1] for c in CLOSURE_CASES], ids=[c[0] for c in CLOSURE_CASES])
def test_closure_predicates_agree(make):
    reports = check_closure_equivalences(make())
    assert len({r.passed for r in reports}) == 1, reports


def test_i_star_is_conjugate():
    # i_* = [i†, I] is the entrywise conjugate under the self-dual basis
    M = transport(groupoid_to_frobenius(cyclic_group(3)), random_unitary(3, 9))
    i = dual_involution(M)
    assert residual(conj(i), Mor.fhilb(i.entries.conj())) == 0
    assert residual(conj(i) @ i, M.id) < 1e-12
    assert residual(dagger(conj(i)), Mor.fhilb(i.entries.T)) == 0


def test_tensor_of_dualities():
    a, b = standard_duality(2), standard_duality(3)
    # (A ⊗ B)* with the swapped-middle cup is again a duality
    mid = tensor(identity(2, Backend.FHILB), swap(2, 3, Backend.FHILB), identity(3, Backend.FHILB))
    cup = mid @ tensor(a.cup, b.cup)
    assert all(check_snakes(cup, dagger(cup), 6, 6))
