"""
The monad ``T = - ⊗ B`` of a monoid ``B`` and its algebras.

With strict coherence, ``T(m) = m·n`` for ``n = dim B``, ``η_m = id_m ⊗ unit``
and ``μ_m = id_m ⊗ mult``; ``T(f) = f ⊗ id_n``.  An Eilenberg-Moore algebra is
an action ``a: m·n -> m``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Mapping, Sequence

import numpy as np

from daggerlab.backend import (
    Backend,
    LawReport,
    Mor,
    TolLike,
    approx_eq,
    as_eps,
    basis_vector,
    compose,
    dagger,
    identity,
    is_unitary,
    residual,
    tensor,
    zero,
)
from daggerlab.errors import DimensionMismatch, NotFEM, NotFrobenius, NotUnitary, NotUnitaryRep
from daggerlab.frobenius import FrobMonoid, check_monoid, is_dagger_frobenius
from daggerlab.groupoid import FiniteGroupoid, groupoid_to_frobenius


@dataclass(frozen=True, eq=False)
class TensorMonad:
    B: FrobMonoid

    @property
    def n(self) -> int:
        return self.B.n

    @property
    def backend(self) -> Backend:
        return self.B.backend

    @cached_property
    def is_frobenius(self) -> bool:
        return is_dagger_frobenius(self.B)

    def apply(self, f: Mor) -> Mor:
        """The functor on morphisms: ``T(f) = f ⊗ id_n``."""
        return tensor(f, self.B.id)

    def unit(self, m: int) -> Mor:
        return tensor(identity(m, self.backend), self.B.unit)

    def mult(self, m: int) -> Mor:
        return tensor(identity(m, self.backend), self.B.mult)


def monad_unit(T: TensorMonad, m: int) -> Mor:
    return T.unit(m)


def monad_mult(T: TensorMonad, m: int) -> Mor:
    return T.mult(m)


def check_monad_laws(T: TensorMonad, m: int, tol: TolLike = None) -> list[LawReport]:
    eta, mu, mn = T.unit(m), T.mult(m), m * T.n
    i = identity(mn, T.backend)
    return [
        approx_eq(mu @ T.apply(eta), i, tol, "monad right unit"),
        approx_eq(mu @ T.unit(mn), i, tol, "monad left unit"),
        approx_eq(mu @ T.apply(mu), mu @ T.mult(mn), tol, "monad associativity"),
    ]


def check_monad_frobenius(T: TensorMonad, m: int, tol: TolLike = None) -> LawReport:
    """``T(μ_A) ∘ μ†_{T(A)} = μ_{T(A)} ∘ T(μ_A†)`` at ``dim A = m``."""
    mu, mn = T.mult(m), m * T.n
    lhs = T.apply(mu) @ dagger(T.mult(mn))
    rhs = T.mult(mn) @ T.apply(dagger(mu))
    return approx_eq(lhs, rhs, tol, "monad frobenius")


# ------------------------------------------------------------------ algebras


@dataclass(frozen=True, eq=False)
class EMAlgebra:
    monad: TensorMonad
    action: Mor
    label: str = ""

    def __post_init__(self):
        if self.action.backend is not self.monad.backend:
            raise DimensionMismatch("action and monad live in different backends")
        if self.action.dom != self.action.cod * self.monad.n:
            raise DimensionMismatch(
                f"action must be {self.action.cod}·{self.monad.n} -> {self.action.cod}, got {self.action!r}"
            )

    @property
    def carrier(self) -> int:
        return self.action.cod

    @property
    def B(self) -> FrobMonoid:
        return self.monad.B

    def element_action(self, x: int) -> Mor:
        """``v ↦ a(v ⊗ e_x)`` for the basis element ``e_x`` of ``B``."""
        e = basis_vector(self.monad.n, x, self.monad.backend)
        return self.action @ tensor(identity(self.carrier, self.monad.backend), e)


def free_algebra(T: TensorMonad, m: int = 1) -> EMAlgebra:
    return EMAlgebra(T, T.mult(m), "free")


def check_em(alg: EMAlgebra, tol: TolLike = None) -> list[LawReport]:
    T, a, m = alg.monad, alg.action, alg.carrier
    return [
        approx_eq(a @ T.unit(m), identity(m, T.backend), tol, "algebra unit"),
        approx_eq(a @ T.mult(m), a @ T.apply(a), tol, "algebra associativity"),
    ]


def check_fem(alg: EMAlgebra, tol: TolLike = None) -> LawReport:
    """``(id ⊗ mult) ∘ (a† ⊗ id) = (a ⊗ id) ∘ (id ⊗ mult†)`` on ``m·n``."""
    T, a, m = alg.monad, alg.action, alg.carrier
    lhs = T.mult(m) @ T.apply(dagger(a))
    rhs = T.apply(a) @ dagger(T.mult(m))
    return approx_eq(lhs, rhs, tol, "FEM law")


def check_self_adjoint_coalgebra(alg: EMAlgebra, tol: TolLike = None) -> LawReport:
    """``a† = (a ⊗ id) ∘ (id ⊗ (mult† ∘ unit))``."""
    T, a, m = alg.monad, alg.action, alg.carrier
    cup = T.B.comult @ T.B.unit
    rhs = T.apply(a) @ tensor(identity(m, T.backend), cup)
    return approx_eq(dagger(a), rhs, tol, "B-self-adjoint coalgebra")


def is_fem(alg: EMAlgebra, tol: TolLike = None) -> bool:
    return all(check_em(alg, tol)) and bool(check_fem(alg, tol))


def check_homomorphism(f: Mor, source: EMAlgebra, target: EMAlgebra, tol: TolLike = None) -> LawReport:
    """``b ∘ T(f) = f ∘ a`` for ``f: (A, a) -> (B, b)``."""
    if f.dom != source.carrier or f.cod != target.carrier:
        raise DimensionMismatch(f"expected {source.carrier} -> {target.carrier}, got {f!r}")
    return approx_eq(target.action @ source.monad.apply(f), f @ source.action, tol, "algebra homomorphism")


def check_dagger_action_hom(alg: EMAlgebra, tol: TolLike = None) -> LawReport:
    """Is ``a†`` a homomorphism ``(A, a) -> (TA, μ_A)``?  Equivalent to FEM for EM-algebras."""
    free = free_algebra(alg.monad, alg.carrier)
    return check_homomorphism(dagger(alg.action), alg, free, tol)


# ------------------------------------------------------------------- Kleisli


@dataclass(frozen=True, eq=False)
class KleisliMor:
    """A Kleisli arrow ``dom -> cod``, i.e. a morphism ``dom -> cod·n``."""

    monad: TensorMonad
    body: Mor

    def __post_init__(self):
        if self.body.cod % self.monad.n:
            raise DimensionMismatch(f"body codomain {self.body.cod} is not a multiple of {self.monad.n}")

    @property
    def dom(self) -> int:
        return self.body.dom

    @property
    def cod(self) -> int:
        return self.body.cod // self.monad.n


def kleisli_identity(T: TensorMonad, m: int) -> KleisliMor:
    return KleisliMor(T, T.unit(m))


def kleisli_compose(g: KleisliMor, f: KleisliMor) -> KleisliMor:
    """``g ∘_T f = μ ∘ T(g) ∘ f``."""
    if g.monad is not f.monad and g.monad.B is not f.monad.B:
        raise DimensionMismatch("Kleisli morphisms over different monads")
    if g.dom != f.cod:
        raise DimensionMismatch(f"cannot compose Kleisli {g.dom} after {f.cod}")
    T = f.monad
    return KleisliMor(T, compose(T.mult(g.cod), T.apply(g.body), f.body))


def kleisli_dagger(f: KleisliMor) -> KleisliMor:
    """``B --η--> T(B) --μ†--> T²(B) --T(f†)--> T(A)``.

    Raises
    ------
    NotFrobenius
        If the monoid ``B`` fails the dagger Frobenius laws.
    """
    T = f.monad
    if not T.is_frobenius:
        raise NotFrobenius(f"{T.B!r} is not a dagger Frobenius monoid")
    k = f.cod
    return KleisliMor(T, compose(T.apply(dagger(f.body)), dagger(T.mult(k)), T.unit(k)))


def kleisli_equal(f: KleisliMor, g: KleisliMor, tol: TolLike = None, name: str = "kleisli equality") -> LawReport:
    return approx_eq(f.body, g.body, tol, name)


# --------------------------------------------------------------- measurement


@dataclass(frozen=True)
class Measurement:
    projections: tuple[Mor, ...]

    def __post_init__(self):
        object.__setattr__(self, "projections", tuple(self.projections))


def check_measurement(meas: Measurement, tol: TolLike = None) -> list[LawReport]:
    """Each ``P`` idempotent and self-adjoint, and ``Σ P = id``."""
    ps = meas.projections
    backend, m = ps[0].backend, ps[0].dom
    eps = as_eps(tol)

    def worst(name, pairs):
        r = max(residual(a, b) for a, b in pairs)
        return LawReport(name, r, r == 0 if backend is Backend.REL else r <= eps)

    total = ps[0].entries
    for p in ps[1:]:
        total = total | p.entries if backend is Backend.REL else total + p.entries
    return [
        worst("idempotent", [(p @ p, p) for p in ps]),
        worst("self-adjoint", [(dagger(p), p) for p in ps]),
        approx_eq(Mor(backend, total), identity(m, backend), tol, "sums to identity"),
    ]


def discrete_monoid_size(B: FrobMonoid) -> int | None:
    """``k`` if ``B`` is exactly the algebra of the discrete groupoid on ``k`` objects."""
    k = B.n
    mult = np.zeros((k, k * k))
    for x in range(k):
        mult[x, x * k + x] = 1
    if np.array_equal(B.mult.entries.astype(complex), mult) and np.all(B.unit.entries == 1):
        return k
    return None


def pvm_algebra(projections: Sequence[Mor]) -> EMAlgebra:
    """The action ``a(v ⊗ e_G) = P_G v`` over the discrete groupoid on ``len(projections)`` objects."""
    from daggerlab.groupoid import discrete

    ps = list(projections)
    k, m = len(ps), ps[0].dom
    backend = ps[0].backend
    B = groupoid_to_frobenius(discrete(k), backend)
    T = TensorMonad(B)
    im = identity(m, backend)
    action = zero(m, m * k, backend).entries.copy()
    for g, p in enumerate(ps):
        action = action + (p @ tensor(im, dagger(basis_vector(k, g, backend)))).entries
    return EMAlgebra(T, Mor(backend, action), "pvm")


def extract_measurement(alg: EMAlgebra, tol: TolLike = None) -> Measurement:
    """Projections ``P_G = a ∘ (id ⊗ e_G)`` of an FEM-algebra over a discrete groupoid.

    Raises
    ------
    ValueError
        If ``B`` is not the algebra of a discrete groupoid.
    NotFEM
        If the algebra fails the EM or FEM laws.
    """
    k = discrete_monoid_size(alg.B)
    if k is None:
        raise ValueError("extract_measurement needs B induced by a discrete groupoid")
    if not is_fem(alg, tol):
        raise NotFEM("algebra is not an FEM-algebra; projections would not be orthogonal")
    return Measurement(tuple(alg.element_action(g) for g in range(k)))


# ------------------------------------------------------------ representation


@dataclass(frozen=True, eq=False)
class Representation:
    """A functor from a groupoid to matrices.

    ``blocks[obj]`` is the dimension of the space attached to ``obj`` (possibly
    zero), ``maps[arrow]`` a ``blocks[cod] x blocks[dom]`` array, and
    ``embeddings[obj]`` an isometry of the block into the carrier, when the
    representation came from an algebra.
    """

    groupoid: FiniteGroupoid
    blocks: Mapping[str, int]
    maps: Mapping[str, np.ndarray]
    backend: Backend = Backend.FHILB
    embeddings: Mapping[str, np.ndarray] | None = field(default=None)


def _mm(backend: Backend, *arrays: np.ndarray) -> np.ndarray:
    out = arrays[-1]
    for a in reversed(arrays[:-1]):
        out = (a.astype(np.float64) @ out.astype(np.float64)) > 0 if backend is Backend.REL else a @ out
    return out


def _adj(backend: Backend, a: np.ndarray) -> np.ndarray:
    return a.T if backend is Backend.REL else a.conj().T


def _close(backend: Backend, a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 0:
        return 0.0
    if backend is Backend.REL:
        return float(np.count_nonzero(a != b))
    return float(np.max(np.abs(a - b)))


def check_representation(rep: Representation, tol: TolLike = None) -> list[LawReport]:
    eps = as_eps(tol)
    G, be = rep.groupoid, rep.backend
    ok = (lambda r: r == 0) if be is Backend.REL else (lambda r: r <= eps)
    shape_bad = sum(
        rep.maps[a.name].shape != (rep.blocks[a.cod], rep.blocks[a.dom]) for a in G.morphisms
    )
    if shape_bad:
        return [LawReport("block shapes", shape_bad, False)]
    func = 0.0
    for (f, g), h in G.compose.items():
        func = max(func, _close(be, _mm(be, rep.maps[f], rep.maps[g]), rep.maps[h]))
    ids = 0.0
    for o in G.objects:
        d = rep.blocks[o]
        ids = max(ids, _close(be, rep.maps[G.identity(o)], np.eye(d, dtype=be.dtype)))
    uni = 0.0
    for a in G.morphisms:
        r = rep.maps[a.name]
        uni = max(uni, _close(be, _mm(be, _adj(be, r), r), np.eye(rep.blocks[a.dom], dtype=be.dtype)))
        uni = max(uni, _close(be, _mm(be, r, _adj(be, r)), np.eye(rep.blocks[a.cod], dtype=be.dtype)))
    return [
        LawReport("functoriality", func, ok(func)),
        LawReport("identities", ids, ok(ids)),
        LawReport("unitary images", uni, ok(uni)),
    ]


def _block_basis(P: Mor, eps: float) -> np.ndarray:
    """Orthonormal (resp. inclusion) basis of the fixed space of a projection."""
    if P.backend is Backend.REL:
        cols = [i for i in range(P.dom) if np.array_equal(P.entries[:, i], np.eye(P.dom, dtype=bool)[:, i])]
        return np.eye(P.dom, dtype=bool)[:, cols]
    h = (P.entries + P.entries.conj().T) / 2
    w, v = np.linalg.eigh(h)
    return v[:, w > 0.5]


def algebra_to_representation(alg: EMAlgebra, G: FiniteGroupoid, tol: TolLike = None) -> Representation:
    """Split an FEM-algebra over the algebra of ``G`` into a representation of ``G``.

    The block of an object ``O`` is the fixed space of ``a(- ⊗ e_{id_O})``.
    Right multiplication by ``e_g`` maps the block of ``cod g`` to that of
    ``dom g``, so the arrow ``g: O -> O'`` is sent to ``a(- ⊗ e_{g⁻¹})``
    restricted to ``A_O -> A_O'``.
    """
    if alg.B.n != len(G):
        raise DimensionMismatch(f"{G!r} does not match a monoid of dimension {alg.B.n}")
    if not is_fem(alg, tol):
        raise NotFEM("representation extraction needs an FEM-algebra")
    be = alg.monad.backend
    eps = as_eps(tol)
    emb = {o: _block_basis(alg.element_action(G.index[G.identity(o)]), eps) for o in G.objects}
    maps = {}
    for a in G.morphisms:
        # e_g acts contravariantly (A_cod -> A_dom), so g is carried by g⁻¹
        act = alg.element_action(G.index[G.inverse[a.name]]).entries
        maps[a.name] = _mm(be, _adj(be, emb[a.cod]), act, emb[a.dom])
    blocks = {o: emb[o].shape[1] for o in G.objects}
    rep = Representation(G, blocks, maps, be, emb)
    bad = [r.name for r in check_representation(rep, tol) if not r.passed]
    if bad:
        raise NotFEM(f"extracted representation fails: {', '.join(bad)}")
    return rep


def representation_to_algebra(rep: Representation, tol: TolLike = None) -> EMAlgebra:
    """Reassemble ``a(v ⊗ e_g) = V_dom ρ(g⁻¹) V_cod† v`` on the direct sum of the blocks.

    Without stored embeddings, blocks are stacked in object order.
    """
    bad = [r.name for r in check_representation(rep, tol) if not r.passed]
    if bad:
        raise NotUnitaryRep(f"representation fails: {', '.join(bad)}")
    G, be = rep.groupoid, rep.backend
    m = sum(rep.blocks.values())
    if m == 0:
        raise NotUnitaryRep("representation has an empty carrier")
    emb = rep.embeddings
    if emb is None:
        emb, offset = {}, 0
        for o in G.objects:
            d = rep.blocks[o]
            emb[o] = np.eye(m, dtype=be.dtype)[:, offset:offset + d]
            offset += d
    n = len(G)
    action = np.zeros((m, m * n), dtype=be.dtype)
    for a in G.morphisms:
        back = rep.maps[G.inverse[a.name]]
        ag = _mm(be, emb[a.dom], back, _adj(be, emb[a.cod]))
        x = G.index[a.name]
        # column v*n + x of the action is a_g applied to e_v
        action[:, x::n] = action[:, x::n] + ag if be is Backend.FHILB else action[:, x::n] | ag
    T = TensorMonad(groupoid_to_frobenius(G, be))
    return EMAlgebra(T, Mor(be, action), "representation")


def regular_representation(G: FiniteGroupoid, backend=Backend.FHILB) -> Representation:
    """``g: O -> O'`` sends ``x`` (an arrow out of ``O``) to ``x ∘ g⁻¹``.

    The embeddings place each block on its arrows in the basis of ``B``, so
    :func:`representation_to_algebra` returns exactly the free algebra.
    """
    be = Backend(backend)
    out_of = {o: [a.name for a in G.morphisms if a.dom == o] for o in G.objects}
    maps = {}
    for a in G.morphisms:
        src, dst = out_of[a.dom], out_of[a.cod]
        r = np.zeros((len(dst), len(src)), dtype=be.dtype)
        for j, x in enumerate(src):
            r[dst.index(G.compose[(x, G.inverse[a.name])]), j] = 1
        maps[a.name] = r
    emb = {}
    for o in G.objects:
        v = np.zeros((len(G), len(out_of[o])), dtype=be.dtype)
        for j, x in enumerate(out_of[o]):
            v[G.index[x], j] = 1
        emb[o] = v
    return Representation(G, {o: len(out_of[o]) for o in G.objects}, maps, be, emb)


# --------------------------------------------------------------------- pants


def pants_monoid(n: int) -> FrobMonoid:
    """``n x n`` complex matrices with inner product ``Tr(a† b) / n``.

    Orthonormal basis ``b_ij = √n E_ij`` at index ``i·n + j``;
    ``b_ij · b_kl = √n δ_jk b_il`` and ``unit = Σ_i b_ii / √n``.
    """
    d = n * n
    s = np.sqrt(n)
    mult = np.zeros((d, d * d), dtype=complex)
    for i, j, l in np.ndindex(n, n, n):
        mult[i * n + l, (i * n + j) * d + (j * n + l)] = s
    unit = np.zeros((d, 1), dtype=complex)
    unit[[i * n + i for i in range(n)], 0] = 1 / s
    return FrobMonoid(Mor.fhilb(mult), Mor.fhilb(unit), f"pants{n}")


def conjugation_map(n: int, s: Mor) -> Mor:
    """``U(a) = s⁻¹ a s`` on ``n x n`` matrices, in the ``b_ij`` basis.

    For unitary ``s = u`` this is ``a ↦ u† a u``.
    """
    d = n * n
    se = s.entries
    s_inv = np.linalg.inv(se)
    out = np.zeros((d, d), dtype=complex)
    for k, l in np.ndindex(n, n):
        e = np.zeros((n, n), dtype=complex)
        e[k, l] = 1
        out[:, k * n + l] = (s_inv @ e @ se).reshape(d)
    return Mor.fhilb(out)


def pants_conjugation_algebra(n: int, u: Mor, tol: TolLike = None) -> EMAlgebra:
    """``a = mult ∘ (id ⊗ U)`` with ``U(x) = u† x u``; EM for every unitary ``u``.

    ``U`` is then a unitary monoid automorphism, so ``a`` also satisfies the
    FEM law whatever ``u`` is.
    """
    if u.backend is not Backend.FHILB or u.dom != n or u.cod != n or not is_unitary(u, tol):
        raise NotUnitary(f"expected a unitary {n} x {n} matrix, got {u!r}")
    B = pants_monoid(n)
    action = B.mult @ tensor(B.id, conjugation_map(n, u))
    return EMAlgebra(TensorMonad(B), action, "pants-conjugation")


def pants_similarity_algebra(n: int, s: Mor) -> EMAlgebra:
    """``a = mult ∘ (id ⊗ U)`` with ``U(x) = s⁻¹ x s`` for an invertible ``s``.

    Always an EM-algebra; not FEM once ``s`` is not a multiple of a unitary.
    """
    if s.dom != n or s.cod != n or abs(np.linalg.det(s.entries)) < 1e-12:
        raise ValueError(f"expected an invertible {n} x {n} matrix, got {s!r}")
    B = pants_monoid(n)
    action = B.mult @ tensor(B.id, conjugation_map(n, s))
    return EMAlgebra(TensorMonad(B), action, "pants-similarity")


def monoid_laws_hold(B: FrobMonoid, tol: TolLike = None) -> bool:
    return all(check_monoid(B, tol))


# --------------------------------------------------- transport, intertwiners


def transport_algebra(alg: EMAlgebra, s: Mor, s_inv: Mor | None = None) -> EMAlgebra:
    """Move the action along an invertible ``s``: ``s ∘ a ∘ (s⁻¹ ⊗ id)``.

    The result is always an EM-algebra (``s`` becomes an isomorphism of
    algebras); it stays FEM for unitary ``s`` and generally stops being FEM
    otherwise.
    """
    if s_inv is None:
        s_inv = Mor(s.backend, np.linalg.inv(s.entries))
    T = alg.monad
    return EMAlgebra(T, compose(s, alg.action, T.apply(s_inv)), alg.label)


def averaged_intertwiner(source: EMAlgebra, target: EMAlgebra, x: Mor) -> Mor:
    """``Σ_g b_g ∘ x ∘ a_g†`` over the basis of ``B``.

    A homomorphism ``source -> target`` whenever both are FEM-algebras over
    the algebra of a groupoid.  Over a discrete groupoid this is
    ``Σ_G Q_G x P_G`` for the two measurements.
    """
    if source.monad.B is not target.monad.B and not (
        np.array_equal(source.B.mult.entries, target.B.mult.entries)
        and np.array_equal(source.B.unit.entries, target.B.unit.entries)
    ):
        raise DimensionMismatch("algebras over different monoids")
    if x.dom != source.carrier or x.cod != target.carrier:
        raise DimensionMismatch(f"expected {source.carrier} -> {target.carrier}, got {x!r}")
    out = zero(target.carrier, source.carrier, x.backend)
    for g in range(source.monad.n):
        term = compose(target.element_action(g), x, dagger(source.element_action(g)))
        out = Mor(x.backend, out.entries | term.entries if x.backend is Backend.REL else out.entries + term.entries)
    return out
