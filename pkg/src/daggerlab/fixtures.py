"""
Seeded generators for structure files.

Groupoids are described by a small spec language: parts joined by ``+``, each
one of ``z<k>`` (cyclic), ``s<k>`` (symmetric), ``klein``, a product such as
``z2xz3``, ``discrete<k>``, ``parallel-isos``, or ``<group>^<k>`` for the
connected groupoid on ``k`` objects with that vertex group.
"""

from __future__ import annotations

import re
from functools import reduce
from typing import Callable, Mapping

import numpy as np

from daggerlab.algebra import (
    EMAlgebra,
    KleisliMor,
    TensorMonad,
    free_algebra,
    pants_conjugation_algebra,
    pants_monoid,
    pants_similarity_algebra,
    pvm_algebra,
)
from daggerlab.backend import Backend, Mor
from daggerlab.errors import BadParams
from daggerlab.frobenius import FrobMonoid, dual_numbers, transport
from daggerlab.groupoid import (
    FiniteGroupoid,
    connected,
    cyclic_group,
    discrete,
    disjoint_union,
    group_product,
    groupoid_to_frobenius,
    klein_group,
    parallel_isos,
    symmetric_group,
)
from daggerlab.sampling import (
    random_matrix,
    random_pvm,
    random_self_adjoint_unitary,
    random_unitary,
    rng_from,
)
from daggerlab.structfile import Structure

_GROUP_ATOM = re.compile(r"^(z|s)(\d+)$")
_DISCRETE = re.compile(r"^discrete(\d+)$")
_MAX_ORDER = 36


def parse_group(spec: str) -> FiniteGroupoid:
    factors = []
    for atom in spec.lower().split("x"):
        if atom == "klein":
            factors.append(klein_group())
            continue
        m = _GROUP_ATOM.match(atom)
        if not m:
            raise BadParams(f"unknown group {atom!r} in {spec!r}")
        k = int(m.group(2))
        if k < 1 or (m.group(1) == "s" and k > 4) or k > _MAX_ORDER:
            raise BadParams(f"group {atom!r} out of range")
        factors.append(cyclic_group(k) if m.group(1) == "z" else symmetric_group(k))
    G = reduce(group_product, factors)
    if len(G) > _MAX_ORDER:
        raise BadParams(f"group {spec!r} has {len(G)} elements, more than {_MAX_ORDER}")
    return G


def parse_groupoid(spec: str) -> FiniteGroupoid:
    parts = []
    for part in spec.lower().split("+"):
        if part in ("trivial", "discrete1"):
            parts.append(discrete(1))
        elif part == "parallel-isos":
            parts.append(parallel_isos())
        elif m := _DISCRETE.match(part):
            k = int(m.group(1))
            if not 1 <= k <= _MAX_ORDER:
                raise BadParams(f"{part!r} out of range")
            parts.append(discrete(k))
        elif "^" in part:
            group, _, k = part.partition("^")
            if not k.isdigit() or not 1 <= int(k) <= 6:
                raise BadParams(f"bad object count in {part!r}")
            parts.append(connected(parse_group(group), int(k)))
        else:
            parts.append(parse_group(part))
    G = parts[0] if len(parts) == 1 else disjoint_union(*parts)
    if len(G) > _MAX_ORDER:
        raise BadParams(f"groupoid {spec!r} has {len(G)} morphisms, more than {_MAX_ORDER}")
    return G


# ----------------------------------------------------------------- parameters


class _Params:
    def __init__(self, params: Mapping[str, str], allowed: set[str]):
        unknown = set(params) - allowed
        if unknown:
            raise BadParams(f"unknown parameter(s): {', '.join(sorted(unknown))}")
        self.raw = dict(params)

    def str(self, key: str, default: str | None = None) -> str:
        if key in self.raw:
            return self.raw[key]
        if default is None:
            raise BadParams(f"missing parameter {key!r}")
        return default

    def int(self, key: str, default: int | None = None, lo: int = 1, hi: int = 36) -> int:
        raw = self.raw.get(key)
        if raw is None:
            if default is None:
                raise BadParams(f"missing parameter {key!r}")
            return default
        try:
            v = int(raw)
        except ValueError:
            raise BadParams(f"{key} must be an integer, got {raw!r}") from None
        if not lo <= v <= hi:
            raise BadParams(f"{key} must lie in [{lo}, {hi}], got {v}")
        return v

    def backend(self, default: str = "fhilb") -> Backend:
        raw = self.str("backend", default)
        try:
            return Backend(raw)
        except ValueError:
            raise BadParams(f"unknown backend {raw!r}") from None


def _monoid_of(spec: str, backend: Backend) -> FrobMonoid:
    if spec == "dual-numbers":
        return dual_numbers(backend)
    if spec.startswith("pants"):
        if backend is not Backend.FHILB or not spec[5:].isdigit() or not 1 <= int(spec[5:]) <= 6:
            raise BadParams(f"bad pants monoid {spec!r}; pants<n> lives in fhilb with 1 <= n <= 6")
        return pants_monoid(int(spec[5:]))
    M = groupoid_to_frobenius(parse_groupoid(spec), backend)
    return FrobMonoid(M.mult, M.unit, spec)


# ----------------------------------------------------------------- generators


def _gen_group(p: _Params, seed: int) -> Structure:
    spec = p.str("group")
    be = p.backend()
    M = groupoid_to_frobenius(parse_group(spec), be)
    return Structure("monoid", be, FrobMonoid(M.mult, M.unit, spec), spec)


def _gen_groupoid(p: _Params, seed: int) -> Structure:
    spec = p.str("of")
    return Structure("groupoid", p.backend("rel"), parse_groupoid(spec), spec)


def _gen_monoid(p: _Params, seed: int) -> Structure:
    spec = p.str("of")
    be = p.backend()
    return Structure("monoid", be, _monoid_of(spec, be), spec)


def _gen_pants(p: _Params, seed: int) -> Structure:
    n = p.int("n", hi=6)
    return Structure("monoid", Backend.FHILB, pants_monoid(n), f"pants{n}")


def _gen_transported(p: _Params, seed: int) -> Structure:
    spec = p.str("of")
    M = _monoid_of(spec, Backend.FHILB)
    u = random_unitary(M.n, seed)
    name = f"{spec} transported by a random unitary (seed {seed})"
    return Structure("monoid", Backend.FHILB, transport(M, u, u.dagger), name)


def _gen_pvm(p: _Params, seed: int) -> Structure:
    m, k = p.int("m", hi=12), p.int("k", hi=8)
    alg = pvm_algebra(random_pvm(m, k, seed))
    name = f"pvm m={m} k={k} seed={seed}"
    return Structure("em_algebra", Backend.FHILB, EMAlgebra(alg.monad, alg.action, name), name)


def _gen_free(p: _Params, seed: int) -> Structure:
    spec = p.str("of")
    be = p.backend()
    m = p.int("m", 1, hi=6)
    T = TensorMonad(_monoid_of(spec, be))
    name = f"free {spec} m={m}"
    return Structure("em_algebra", be, EMAlgebra(T, free_algebra(T, m).action, name), name)


def _gen_pants_algebra(p: _Params, seed: int) -> Structure:
    n = p.int("n", hi=6)
    choice = p.str("u", "random")
    if choice == "identity":
        u = Mor.fhilb(np.eye(n))
    elif choice == "self-adjoint":
        u = random_self_adjoint_unitary(n, seed)
    elif choice == "diag":
        u = Mor.fhilb(np.diag([1] + [1j] * (n - 1)))
    elif choice == "random":
        u = random_unitary(n, seed)
    else:
        raise BadParams(f"u must be identity, self-adjoint, diag or random, got {choice!r}")
    alg = pants_conjugation_algebra(n, u)
    name = f"pants{n} conjugation u={choice} seed={seed}"
    return Structure("em_algebra", Backend.FHILB, EMAlgebra(alg.monad, alg.action, name), name)


def _gen_pants_similarity(p: _Params, seed: int) -> Structure:
    n = p.int("n", hi=6)
    alg = pants_similarity_algebra(n, Mor.fhilb(np.eye(n) + np.eye(n, k=1)))
    name = f"pants{n} similarity by a unipotent s"
    return Structure("em_algebra", Backend.FHILB, EMAlgebra(alg.monad, alg.action, name), name)


def _gen_kleisli(p: _Params, seed: int) -> Structure:
    spec = p.str("of")
    be = p.backend()
    dom, cod = p.int("dom", 1, hi=6), p.int("cod", 1, hi=6)
    T = TensorMonad(_monoid_of(spec, be))
    body = random_matrix(cod * T.n, dom, be, rng_from(seed))
    return Structure("kleisli_morphism", be, KleisliMor(T, body), f"kleisli {spec} {dom}->{cod} seed={seed}")


GENERATORS: dict[str, tuple[Callable[[_Params, int], Structure], set[str]]] = {
    "group": (_gen_group, {"group", "backend"}),
    "groupoid": (_gen_groupoid, {"of", "backend"}),
    "monoid": (_gen_monoid, {"of", "backend"}),
    "pants": (_gen_pants, {"n"}),
    "transported": (_gen_transported, {"of"}),
    "pvm": (_gen_pvm, {"m", "k"}),
    "free": (_gen_free, {"of", "backend", "m"}),
    "pants-algebra": (_gen_pants_algebra, {"n", "u"}),
    "pants-similarity": (_gen_pants_similarity, {"n"}),
    "kleisli": (_gen_kleisli, {"of", "backend", "dom", "cod"}),
}


def parse_params(items: list[str]) -> dict[str, str]:
    """``["n=2", "backend=rel"]`` to a dict."""
    out = {}
    for item in items:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise BadParams(f"expected key=value, got {item!r}")
        if key in out:
            raise BadParams(f"parameter {key!r} given twice")
        out[key] = value
    return out


def generate(kind: str, params: Mapping[str, str] | None = None, seed: int = 0) -> Structure:
    """Build a structure of the given generator kind.

    Raises
    ------
    BadParams
        On an unknown kind, an unknown or missing parameter, or an invalid value.
    """
    if kind not in GENERATORS:
        raise BadParams(f"unknown generator {kind!r}; choose from {', '.join(GENERATORS)}")
    fn, allowed = GENERATORS[kind]
    return fn(_Params(params or {}, allowed), seed)
