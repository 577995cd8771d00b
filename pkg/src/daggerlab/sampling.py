"""Seeded random morphisms: dense matrices, Haar unitaries, projection-valued measures."""

from __future__ import annotations

import numpy as np

from daggerlab.backend import Backend, Mor, as_backend


def rng_from(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def random_matrix(cod: int, dom: int, backend=Backend.FHILB, seed=None, density: float = 0.5) -> Mor:
    """Complex Gaussian entries, or Bernoulli(``density``) entries in ``REL``."""
    backend = as_backend(backend)
    rng = rng_from(seed)
    if backend is Backend.REL:
        return Mor(backend, rng.random((cod, dom)) < density)
    return Mor(backend, rng.normal(size=(cod, dom)) + 1j * rng.normal(size=(cod, dom)))


def random_unitary(n: int, seed=None) -> Mor:
    """Haar-distributed unitary from the QR decomposition of a Gaussian matrix."""
    rng = rng_from(seed)
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    q = q * (d / np.abs(d))
    return Mor.fhilb(q)


def random_self_adjoint_unitary(n: int, seed=None) -> Mor:
    """``V diag(±1) V†`` with at least one eigenvalue of each sign when ``n > 1``."""
    rng = rng_from(seed)
    v = random_unitary(n, rng).entries
    signs = np.ones(n)
    if n > 1:
        k = int(rng.integers(1, n))
        signs[:k] = -1
    return Mor.fhilb(v @ np.diag(signs) @ v.conj().T)


def random_pvm(m: int, k: int, seed=None, allow_empty: bool = False) -> list[Mor]:
    """``k`` orthogonal projections on ``C^m`` summing to the identity.

    The ranks are a random composition of ``m``; outcomes get rank zero only
    when ``allow_empty`` (or when ``k > m``).
    """
    rng = rng_from(seed)
    if allow_empty or k > m:
        labels = rng.integers(0, k, size=m)
    else:
        labels = np.concatenate([np.arange(k), rng.integers(0, k, size=m - k)])
        rng.shuffle(labels)
    v = random_unitary(m, rng).entries
    out = []
    for g in range(k):
        cols = v[:, labels == g]
        out.append(Mor.fhilb(cols @ cols.conj().T))
    return out
