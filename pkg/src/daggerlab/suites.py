"""Law suites run against a parsed structure file."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Iterable, Sequence

from daggerlab.algebra import (
    KleisliMor,
    TensorMonad,
    check_em,
    check_fem,
    check_measurement,
    check_self_adjoint_coalgebra,
    discrete_monoid_size,
    extract_measurement,
    kleisli_compose,
    kleisli_dagger,
    kleisli_equal,
    kleisli_identity,
)
from daggerlab.backend import LawReport, approx_eq, as_eps
from daggerlab.errors import BadParams, NotFEM, NotFrobenius, TooLarge
from daggerlab.frobenius import FrobMonoid, frobenius_battery
from daggerlab.groupoid import (
    groupoid_isomorphic,
    groupoid_to_frobenius_fhilb,
    groupoid_to_frobenius_rel,
    rel_frobenius_to_groupoid,
    validate_groupoid,
)
from daggerlab.sampling import random_matrix, rng_from
from daggerlab.strength_closure import (
    check_closure_equivalences,
    check_counit_iso,
    check_strength_laws,
    extract_unit_monoid,
)
from daggerlab.structfile import Structure

ROUND_TRIP_BOUND = 36


@dataclass(frozen=True)
class SuiteReport:
    """Every law checked for one structure, with the settings that produced it."""

    structure: str
    kind: str
    suite: str
    reports: tuple[LawReport, ...]
    seed: int
    eps: float

    @property
    def passed(self) -> bool:
        return all(self.reports)

    def failures(self) -> list[LawReport]:
        return [r for r in self.reports if not r.passed]

    def to_dict(self) -> dict:
        return {
            "structure": self.structure,
            "kind": self.kind,
            "suite": self.suite,
            "seed": self.seed,
            "eps": self.eps,
            "pass": self.passed,
            "laws": [r.to_dict() for r in self.reports],
        }


def prefixed(prefix: str, reports: Iterable[LawReport]) -> list[LawReport]:
    return [replace(r, name=f"{prefix}{r.name}") for r in reports]


def combine(name: str, reports: Sequence[LawReport], note: str = "") -> LawReport:
    """One report that passes iff all do; the residual is the worst one."""
    failed = [r.name for r in reports if not r.passed]
    if failed and not note:
        note = "failed: " + ", ".join(dict.fromkeys(failed))
    residual = max((r.residual for r in reports), default=0.0)
    return LawReport(name, residual, not failed, note)


def failed_report(name: str, err: Exception) -> LawReport:
    return LawReport(name, float("inf"), False, f"{type(err).__name__}: {err}")


# --------------------------------------------------------------------- suites


def _monoid_frobenius(M: FrobMonoid, eps: float, seed: int) -> list[LawReport]:
    return frobenius_battery(M, eps)


def _monoid_closure(M: FrobMonoid, eps: float, seed: int) -> list[LawReport]:
    return prefixed("closure: ", check_closure_equivalences(M, eps))


def _monoid_strength(M: FrobMonoid, eps: float, seed: int) -> list[LawReport]:
    T = TensorMonad(M)
    try:
        E = extract_unit_monoid(T)
    except NotFrobenius as e:
        return [failed_report("monoid on T(I)", e)]
    out = prefixed("strength: ", check_strength_laws(T, [1, 2], eps, seed))
    out.append(combine("T(I) recovers B", [approx_eq(E.mult, M.mult, eps), approx_eq(E.unit, M.unit, eps)]))
    for m in (1, 2):
        out += prefixed(f"m={m}: ", check_counit_iso(T, m, eps))
    return out


def _groupoid_default(s: Structure, eps: float, seed: int) -> list[LawReport]:
    G = s.value
    out = prefixed("groupoid: ", validate_groupoid(G))
    if not all(out):
        return out
    rel = groupoid_to_frobenius_rel(G)
    out += prefixed("rel: ", frobenius_battery(rel, eps))
    out += prefixed("fhilb: ", frobenius_battery(groupoid_to_frobenius_fhilb(G), eps))
    try:
        H = rel_frobenius_to_groupoid(rel)
        iso = groupoid_isomorphic(G, H, ROUND_TRIP_BOUND)
        out.append(LawReport("rel round trip isomorphic", 0.0 if iso else 1.0, iso))
    except TooLarge as e:
        out.append(LawReport("rel round trip isomorphic", 0.0, True, f"skipped: {e}"))
    except Exception as e:  # extraction failures are law failures here
        out.append(failed_report("rel round trip isomorphic", e))
    return out


def _algebra_default(s: Structure, eps: float, seed: int) -> list[LawReport]:
    alg = s.value
    out = check_em(alg, eps) + [check_fem(alg, eps), check_self_adjoint_coalgebra(alg, eps)]
    if discrete_monoid_size(alg.B) is not None:
        try:
            out += prefixed("measurement: ", check_measurement(extract_measurement(alg, eps), eps))
        except NotFEM as e:
            out.append(failed_report("measurement extraction", e))
    return out


def _kleisli_default(s: Structure, eps: float, seed: int) -> list[LawReport]:
    f: KleisliMor = s.value
    T = f.monad
    out = [
        kleisli_equal(kleisli_compose(kleisli_identity(T, f.cod), f), f, eps, "left identity"),
        kleisli_equal(kleisli_compose(f, kleisli_identity(T, f.dom)), f, eps, "right identity"),
    ]
    try:
        fd = kleisli_dagger(f)
    except NotFrobenius as e:
        return out + [failed_report("kleisli dagger defined", e)]
    rng = rng_from(seed)
    g = KleisliMor(T, random_matrix(f.dom * T.n, f.cod, T.backend, rng))
    ident = kleisli_identity(T, f.dom)
    out += [
        kleisli_equal(kleisli_dagger(fd), f, eps, "dagger involution"),
        kleisli_equal(kleisli_dagger(kleisli_compose(g, f)), kleisli_compose(fd, kleisli_dagger(g)), eps,
                      "dagger contravariance"),
        kleisli_equal(kleisli_dagger(ident), ident, 0.0, "identity self-dagger"),
    ]
    return out


def _on_monoid(fn: Callable[[FrobMonoid, float, int], list[LawReport]]):
    def run(s: Structure, eps: float, seed: int) -> list[LawReport]:
        if s.kind == "monoid":
            return fn(s.value, eps, seed)
        B = s.value.B if s.kind == "em_algebra" else s.value.monad.B
        return prefixed("B ", fn(B, eps, seed))
    return run


def _all(*parts):
    def run(s: Structure, eps: float, seed: int) -> list[LawReport]:
        return [r for p in parts for r in p(s, eps, seed)]
    return run


_frob, _closure, _strength = (_on_monoid(f) for f in (_monoid_frobenius, _monoid_closure, _monoid_strength))

SUITES: dict[str, dict[str, Callable]] = {
    "monoid": {
        "default": _frob,
        "closure": _closure,
        "strength": _strength,
        "all": _all(_frob, _closure, _strength),
    },
    "groupoid": {"default": _groupoid_default},
    "em_algebra": {
        "default": _algebra_default,
        "monoid": _frob,
        "all": _all(_algebra_default, _frob),
    },
    "kleisli_morphism": {
        "default": _kleisli_default,
        "monoid": _frob,
        "all": _all(_kleisli_default, _frob),
    },
}


def run_suite(s: Structure, suite: str = "default", eps=None, seed: int = 0) -> SuiteReport:
    """Run a named suite for the structure's kind.

    Raises
    ------
    BadParams
        If the kind has no suite of that name.
    """
    table = SUITES[s.kind]
    if suite not in table:
        raise BadParams(f"no suite {suite!r} for {s.kind}; choose from {', '.join(table)}")
    e = as_eps(eps)
    reports = tuple(table[suite](s, e, seed))
    return SuiteReport(s.name or s.kind, s.kind, suite, reports, seed, e)
