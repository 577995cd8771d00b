from __future__ import annotations

import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from daggerlab.backend import (
    Backend,
    LawReport,
    Mor,
    Tolerance,
    approx_eq,
    as_eps,
    basis_vector,
    compose,
    conj,
    dagger,
    identity,
    is_unitary,
    residual,
    swap,
    tensor,
    transpose,
)
from daggerlab.errors import BackendMismatch, DimensionMismatch
from daggerlab.sampling import random_matrix, random_unitary

dims = st.integers(1, 3)
seeds = st.integers(0, 2**32 - 1)
backends = st.sampled_from(list(Backend))


def rand(cod, dom, backend, seed):
    return random_matrix(cod, dom, backend, seed)


# ---------------------------------------------------------------- oracles


def rel_compose_oracle(g: Mor, f: Mor) -> set[tuple[int, int]]:
    """Relational composition computed on pair sets."""
    return {(a, c) for (a, b) in f.pairs() for (b2, c) in g.pairs() if b == b2}


def kron_oracle(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Entry ((i, k), (j, l)) = a[i, j] * b[k, l] at row i*p + k, column j*q + l."""
    p, q = b.shape
    out = np.zeros((a.shape[0] * p, a.shape[1] * q), dtype=complex)
    for i, j, k, l in itertools.product(range(a.shape[0]), range(a.shape[1]), range(p), range(q)):
        out[i * p + k, j * q + l] = a[i, j] * b[k, l]
    return out


# ------------------------------------------------------------------ units


def test_mor_is_immutable():
    f = Mor.fhilb([[1, 2], [3, 4]])
    with pytest.raises(AttributeError):
        f.entries = None
    with pytest.raises(ValueError):
        f.entries[0, 0] = 5


def test_mor_copies_its_input():
    a = np.eye(2)
    f = Mor.fhilb(a)
    a[0, 0] = 7
    assert f.entries[0, 0] == 1


def test_empty_or_flat_entries_rejected():
    with pytest.raises(DimensionMismatch):
        Mor.fhilb(np.zeros((0, 2)))
    with pytest.raises(DimensionMismatch):
        Mor.fhilb([1, 2, 3])


def test_composition_shape_mismatch():
    with pytest.raises(DimensionMismatch):
        compose(identity(2, "fhilb"), identity(3, "fhilb"))


def test_backend_mismatch():
    with pytest.raises(BackendMismatch):
        compose(identity(2, "fhilb"), identity(2, "rel"))


def test_backend_parsing():
    assert Backend("rel") is Backend.REL
    assert Backend.FHILB.dtype == np.complex128
    assert Backend.REL.dtype == np.bool_


def test_pairs_round_trip():
    pairs = {(0, 1), (2, 0), (1, 1)}
    r = Mor.from_pairs(pairs, dom=3, cod=2)
    assert r.pairs() == pairs
    assert (r.dom, r.cod) == (3, 2)


def test_rel_dagger_is_converse():
    r = Mor.from_pairs({(0, 1), (2, 0)}, dom=3, cod=2)
    assert dagger(r).pairs() == {(1, 0), (0, 2)}


def test_swap_index_convention():
    # e_i ⊗ e_j at i*n + j goes to e_j ⊗ e_i at j*m + i
    m, n = 2, 3
    s = swap(m, n, Backend.FHILB)
    for i, j in itertools.product(range(m), range(n)):
        out = s @ basis_vector(m * n, i * n + j, Backend.FHILB)
        assert np.argmax(np.abs(out.entries[:, 0])) == j * m + i


def test_tolerance_validation():
    assert as_eps(None) == 1e-9
    assert as_eps(1e-3) == 1e-3
    assert as_eps(Tolerance(0.5)) == 0.5
    with pytest.raises(ValueError):
        Tolerance(-1.0)


def test_residual_semantics():
    a = Mor.fhilb([[1, 0], [0, 1]])
    b = Mor.fhilb([[1, 0.25j], [0, 1]])
    assert residual(a, b) == 0.25
    r = Mor.rel([[1, 0], [0, 1]])
    s = Mor.rel([[1, 1], [1, 1]])
    assert residual(r, s) == 2


def test_rel_equality_ignores_eps():
    r = Mor.rel([[1, 0], [0, 1]])
    s = Mor.rel([[1, 1], [0, 1]])
    assert not approx_eq(r, s, 0.9).passed


def test_law_report_dict():
    assert LawReport("x", 0.5, False, "n").to_dict() == {"law": "x", "residual": 0.5, "pass": False, "note": "n"}
    assert LawReport("y", float("inf"), False).to_dict()["residual"] is None
    assert not LawReport("z", 1.0, False)


def test_conj_and_transpose_compose_to_dagger():
    f = Mor.fhilb([[1 + 2j, 3], [4j, 5]])
    assert residual(conj(transpose(f)), dagger(f)) == 0


def test_random_unitary_is_unitary():
    assert is_unitary(random_unitary(4, 0))


# ------------------------------------------------------------- properties


@given(backends, dims, dims, dims, dims, seeds)
def test_composition_associative(be, a, b, c, d, seed):
    rng = np.random.default_rng(seed)
    f, g, h = rand(b, a, be, rng), rand(c, b, be, rng), rand(d, c, be, rng)
    assert approx_eq(h @ (g @ f), (h @ g) @ f, 1e-9)


@given(backends, dims, dims, seeds)
def test_identity_laws(be, a, b, seed):
    f = rand(b, a, be, seed)
    assert residual(identity(b, be) @ f, f) == 0
    assert residual(f @ identity(a, be), f) == 0


@given(backends, dims, dims, dims, seeds)
def test_dagger_contravariant_involution(be, a, b, c, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(b, a, be, rng), rand(c, b, be, rng)
    assert residual(dagger(dagger(f)), f) == 0
    assert approx_eq(dagger(g @ f), dagger(f) @ dagger(g), 1e-9)


@given(backends, dims, dims, dims, dims, seeds)
def test_tensor_interchange(be, a, b, c, d, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(b, a, be, rng), rand(c, b, be, rng)
    h, k = rand(d, c, be, rng), rand(a, d, be, rng)
    assert approx_eq(tensor(g, k) @ tensor(f, h), tensor(g @ f, k @ h), 1e-9)


@given(backends, dims, dims, seeds)
def test_tensor_dagger(be, a, b, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(b, a, be, rng), rand(a, b, be, rng)
    assert residual(dagger(tensor(f, g)), tensor(dagger(f), dagger(g))) == 0


@given(dims, dims, dims, dims, seeds)
def test_tensor_matches_index_oracle(a, b, c, d, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(b, a, "fhilb", rng), rand(d, c, "fhilb", rng)
    np.testing.assert_allclose(tensor(f, g).entries, kron_oracle(f.entries, g.entries), rtol=1e-14, atol=0)


@given(dims, dims, dims, seeds)
def test_rel_composition_matches_pair_oracle(a, b, c, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(b, a, "rel", rng), rand(c, b, "rel", rng)
    assert (g @ f).pairs() == rel_compose_oracle(g, f)


@given(backends, dims, dims, dims, dims, seeds)
def test_swap_natural(be, a, b, c, d, seed):
    rng = np.random.default_rng(seed)
    f, g = rand(c, a, be, rng), rand(d, b, be, rng)
    lhs = swap(c, d, be) @ tensor(f, g)
    rhs = tensor(g, f) @ swap(a, b, be)
    assert approx_eq(lhs, rhs, 1e-9)


@given(backends, dims, dims)
def test_swap_unitary_and_involutive(be, m, n):
    s = swap(m, n, be)
    assert residual(swap(n, m, be) @ s, identity(m * n, be)) == 0
    assert residual(dagger(s), swap(n, m, be)) == 0
