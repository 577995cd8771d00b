"""
Matrices over an involutive semiring: the two concrete dagger categories.

A morphism ``f: A -> B`` is a ``cod x dom`` matrix acting on column vectors,
so composition is the plain matrix product.  Two backends are supported:

* ``FHILB`` -- complex entries, dagger is the conjugate transpose;
* ``REL``   -- boolean entries, composition is OR-of-ANDs, dagger is the
  relational converse (transpose).

Objects are identified with their dimension.  The tensor of objects of
dimensions ``m`` and ``n`` has dimension ``m * n`` with composite index
``i * n + j`` (row-major, the numpy ``kron`` convention), which makes the
associator and unitors literal identities.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from functools import reduce
from typing import Iterable, Union

import numpy as np

from daggerlab.errors import BackendMismatch, DimensionMismatch

DEFAULT_EPS = 1e-9


class Backend(str, enum.Enum):
    FHILB = "fhilb"
    REL = "rel"

    @property
    def dtype(self):
        return np.complex128 if self is Backend.FHILB else np.bool_


def as_backend(backend: Union[Backend, str]) -> Backend:
    return backend if isinstance(backend, Backend) else Backend(str(backend).lower())


@dataclass(frozen=True)
class Tolerance:
    """Absolute max-entry tolerance; ignored by the exact ``REL`` backend."""

    eps: float = DEFAULT_EPS

    def __post_init__(self):
        if not self.eps >= 0:
            raise ValueError(f"tolerance must be nonnegative, got {self.eps}")


TolLike = Union[Tolerance, float, None]


def as_eps(tol: TolLike) -> float:
    if tol is None:
        return DEFAULT_EPS
    if isinstance(tol, Tolerance):
        return tol.eps
    return Tolerance(float(tol)).eps


@dataclass(frozen=True)
class LawReport:
    """Outcome of a single law check.

    ``residual`` is the max absolute entrywise difference (``FHILB``) or the
    number of mismatched entries (``REL``).
    """

    name: str
    residual: float
    passed: bool
    note: str = ""

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> dict:
        r = float(self.residual)
        # JSON has no infinity; a check that could not run reports null
        out = {"law": self.name, "residual": r if math.isfinite(r) else None, "pass": bool(self.passed)}
        if self.note:
            out["note"] = self.note
        return out


class Mor:
    """An immutable matrix morphism ``dom -> cod`` in one backend."""

    __slots__ = ("backend", "entries")

    def __init__(self, backend: Union[Backend, str], entries):
        backend = as_backend(backend)
        arr = np.array(entries, dtype=backend.dtype, copy=True)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise DimensionMismatch(f"entries must be a nonempty 2-d array, got shape {arr.shape}")
        arr.setflags(write=False)
        object.__setattr__(self, "backend", backend)
        object.__setattr__(self, "entries", arr)

    def __setattr__(self, name, value):
        raise AttributeError("Mor is immutable")

    @classmethod
    def fhilb(cls, entries) -> "Mor":
        return cls(Backend.FHILB, entries)

    @classmethod
    def rel(cls, entries) -> "Mor":
        return cls(Backend.REL, entries)

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]], dom: int, cod: int) -> "Mor":
        """Relation ``dom -> cod`` containing the given ``(source, target)`` pairs."""
        arr = np.zeros((cod, dom), dtype=bool)
        for a, b in pairs:
            arr[b, a] = True
        return cls(Backend.REL, arr)

    @property
    def dom(self) -> int:
        return self.entries.shape[1]

    @property
    def cod(self) -> int:
        return self.entries.shape[0]

    @property
    def dagger(self) -> "Mor":
        return dagger(self)

    def pairs(self) -> set[tuple[int, int]]:
        """The ``(source, target)`` pairs of a nonzero entry."""
        rows, cols = np.nonzero(self.entries)
        return {(int(c), int(r)) for r, c in zip(rows, cols)}

    def tensor(self, *others: "Mor") -> "Mor":
        return tensor(self, *others)

    def __matmul__(self, other: "Mor") -> "Mor":
        return compose(self, other)

    def __repr__(self) -> str:
        return f"Mor({self.backend.value}, {self.dom} -> {self.cod})"


def _same_backend(*fs: Mor) -> Backend:
    backends = {f.backend for f in fs}
    if len(backends) != 1:
        raise BackendMismatch(f"mixed backends: {sorted(b.value for b in backends)}")
    return backends.pop()


def _product(backend: Backend, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if backend is Backend.REL:
        # float64 goes through BLAS; path counts stay exact below 2**53
        return (a.astype(np.float64) @ b.astype(np.float64)) > 0
    return a @ b


def compose(g: Mor, f: Mor, *more: Mor) -> Mor:
    """``g ∘ f`` (and further right factors: ``compose(h, g, f) = h ∘ g ∘ f``)."""
    chain = (g, f) + more
    backend = _same_backend(*chain)
    out = chain[-1].entries
    for left in reversed(chain[:-1]):
        if left.dom != out.shape[0]:
            raise DimensionMismatch(
                f"cannot compose {left!r} after a morphism with codomain {out.shape[0]}"
            )
        out = _product(backend, left.entries, out)
    return Mor(backend, out)


def dagger(f: Mor) -> Mor:
    if f.backend is Backend.REL:
        return Mor(f.backend, f.entries.T)
    return Mor(f.backend, f.entries.conj().T)


def conj(f: Mor) -> Mor:
    """Entrywise conjugate; the identity on ``REL``."""
    if f.backend is Backend.REL:
        return f
    return Mor(f.backend, f.entries.conj())


def transpose(f: Mor) -> Mor:
    return Mor(f.backend, f.entries.T)


def tensor(*fs: Mor) -> Mor:
    """Kronecker product with row-major composite indices."""
    if not fs:
        raise ValueError("tensor needs at least one factor")
    backend = _same_backend(*fs)
    out = reduce(np.kron, [f.entries for f in fs])
    return Mor(backend, out)


def identity(n: int, backend: Union[Backend, str]) -> Mor:
    backend = as_backend(backend)
    return Mor(backend, np.eye(n, dtype=backend.dtype))


def zero(cod: int, dom: int, backend: Union[Backend, str]) -> Mor:
    backend = as_backend(backend)
    return Mor(backend, np.zeros((cod, dom), dtype=backend.dtype))


def basis_vector(n: int, i: int, backend: Union[Backend, str]) -> Mor:
    """The state ``e_i: 1 -> n``."""
    backend = as_backend(backend)
    arr = np.zeros((n, 1), dtype=backend.dtype)
    arr[i, 0] = 1
    return Mor(backend, arr)


def swap(m: int, n: int, backend: Union[Backend, str]) -> Mor:
    """Symmetry ``m ⊗ n -> n ⊗ m``: index ``i*n + j`` goes to ``j*m + i``."""
    if m < 1 or n < 1:
        raise DimensionMismatch("swap needs positive dimensions")
    backend = as_backend(backend)
    arr = np.zeros((m * n, m * n), dtype=backend.dtype)
    i, j = np.divmod(np.arange(m * n), n)
    arr[j * m + i, i * n + j] = 1
    return Mor(backend, arr)


def residual(f: Mor, g: Mor) -> float:
    _same_backend(f, g)
    if (f.dom, f.cod) != (g.dom, g.cod):
        raise DimensionMismatch(f"cannot compare {f!r} with {g!r}")
    if f.backend is Backend.REL:
        return float(np.count_nonzero(f.entries != g.entries))
    return float(np.max(np.abs(f.entries - g.entries)))


def approx_eq(f: Mor, g: Mor, tol: TolLike = None, name: str = "equality") -> LawReport:
    """Compare two parallel morphisms; exact for ``REL``."""
    eps = as_eps(tol)
    r = residual(f, g)
    passed = r == 0 if f.backend is Backend.REL else r <= eps
    return LawReport(name, r, bool(passed))


def is_unitary(f: Mor, tol: TolLike = None) -> bool:
    if f.dom != f.cod:
        return False
    n = f.dom
    return bool(approx_eq(dagger(f) @ f, identity(n, f.backend), tol)) and bool(
        approx_eq(f @ dagger(f), identity(n, f.backend), tol)
    )
