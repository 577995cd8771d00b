"""
The acceptance criteria, runnable as one batch.

Each criterion returns named sub-checks; it passes iff every sub-check does.
Randomised criteria draw from ``seed`` only, so a run is replayable.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from daggerlab.algebra import (
    EMAlgebra,
    KleisliMor,
    TensorMonad,
    averaged_intertwiner,
    check_dagger_action_hom,
    check_em,
    check_fem,
    check_homomorphism,
    check_measurement,
    check_self_adjoint_coalgebra,
    extract_measurement,
    free_algebra,
    kleisli_compose,
    kleisli_dagger,
    kleisli_identity,
    pants_conjugation_algebra,
    pants_monoid,
    pvm_algebra,
    regular_representation,
    representation_to_algebra,
    transport_algebra,
)
from daggerlab.backend import Backend, LawReport, Mor, approx_eq, as_eps, dagger, residual
from daggerlab.errors import DaggerLabError, TrivialGroup
from daggerlab.frobenius import (
    FrobMonoid,
    check_extended_frobenius,
    check_frobenius,
    check_frobenius_alt,
    check_commutative,
    check_monoid,
    dual_numbers,
    frobenius_battery,
    frobenius_hom_inverse,
    join_monoid,
    transformation_monoid,
    transport,
)
from daggerlab.groupoid import (
    FiniteGroupoid,
    battery,
    discrete,
    group_automorphisms,
    groupoid_isomorphic,
    groupoid_to_frobenius,
    groupoid_to_frobenius_rel,
    rel_frobenius_to_groupoid,
)
from daggerlab.sampling import random_matrix, random_pvm, random_self_adjoint_unitary, random_unitary, rng_from
from daggerlab.strength_closure import (
    check_closure_equivalences,
    check_commutativity,
    check_counit_iso,
    check_remark_counterexample,
    extract_unit_monoid,
    kleisli_tensor,
    unit_pair_sides,
)
from daggerlab.suites import SuiteReport, combine, failed_report

BACKENDS = (Backend.FHILB, Backend.REL)


@dataclass(frozen=True)
class CriterionResult:
    number: int
    title: str
    checks: tuple[LawReport, ...]
    seconds: float

    @property
    def passed(self) -> bool:
        return all(self.checks)

    def line(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        failed = [c.name for c in self.checks if not c.passed]
        tail = f"  [failing: {'; '.join(failed)}]" if failed else ""
        return f"{verdict}  criterion {self.number:2d}: {self.title}{tail}"


def _groups(fixtures):
    return [G for G in fixtures if len(G.objects) == 1]


def _monoids():
    return [(G, be, groupoid_to_frobenius(G, be)) for G in battery() for be in BACKENDS]


def _guard(name: str, fn: Callable[[], LawReport]) -> LawReport:
    try:
        return fn()
    except DaggerLabError as e:
        return failed_report(name, e)


# ------------------------------------------------------------------- criteria


def frobenius_battery_on_groupoids(eps, seed):
    out = []
    for be in BACKENDS:
        reports = []
        for G in battery():
            M = groupoid_to_frobenius(G, be)
            reports += [LawReport(f"{G.name}: {r.name}", r.residual, r.passed) for r in frobenius_battery(M, eps)]
        out.append(combine(f"{be.value}: monoid + three Frobenius forms on {len(battery())} groupoids", reports))
    return out


def non_frobenius_control(eps, seed):
    out = []
    for be in BACKENDS:
        M = dual_numbers(be)
        laws = [check_frobenius(M, eps), check_frobenius_alt(M, eps), check_extended_frobenius(M, eps)]
        closure = check_closure_equivalences(M, eps)
        out.append(combine(f"{be.value}: dual numbers satisfy the monoid laws", check_monoid(M, eps)))
        out.append(_fails_all(f"{be.value}: dual numbers fail all three Frobenius forms", laws))
        out.append(_fails_all(f"{be.value}: dual numbers fail all four closure predicates", closure))
    return out


def _fails_all(name: str, reports) -> LawReport:
    passing = [r.name for r in reports if r.passed]
    note = f"unexpectedly passed: {', '.join(passing)}" if passing else ""
    return LawReport(name, float(len(passing)), not passing, note)


def rel_round_trip(eps, seed):
    out = []
    for G in battery():
        if len(G) > 12:
            continue
        out.append(_guard(f"{G.name} round trip", lambda G=G: _iso_report(G)))
    return [combine("groupoid → Rel monoid → groupoid is an isomorphism", out)]


def _iso_report(G: FiniteGroupoid) -> LawReport:
    H = rel_frobenius_to_groupoid(groupoid_to_frobenius_rel(G))
    iso = groupoid_isomorphic(G, H, 12)
    return LawReport(f"{G.name} round trip", 0.0 if iso else 1.0, iso)


def pants_counterexample(eps, seed):
    rng = rng_from(seed)
    out = []
    for n in (2, 3):
        unitaries = {
            "identity": (Mor.fhilb(np.eye(n)), True),
            "self-adjoint": (random_self_adjoint_unitary(n, rng), True),
            "diag(1, i)": (Mor.fhilb(np.diag([1, 1j] + [1] * (n - 2))), False),
            "random unitary": (random_unitary(n, rng), False),
        }
        for label, (u, expect_fem) in unitaries.items():
            alg = pants_conjugation_algebra(n, u)
            em = combine("EM", check_em(alg, eps))
            fem = check_fem(alg, eps)
            name = f"pants({n}), u = {label}: EM pass, FEM {'pass' if expect_fem else 'residual > 0.1'}"
            if expect_fem:
                ok = em.passed and fem.passed
            else:
                ok = em.passed and fem.residual > 0.1
            out.append(LawReport(name, fem.residual, ok, f"EM residual {em.residual:.3g}"))
    return out


def measurement_extraction(eps, seed):
    rng = rng_from(seed)
    algebras = []
    for k in range(1, 5):
        T = TensorMonad(groupoid_to_frobenius(discrete(k), Backend.FHILB))
        algebras.append((f"free over discrete{k}", free_algebra(T, 1)))
        for m in range(1, 7):
            algebras.append((f"pvm m={m} k={k}", pvm_algebra(random_pvm(m, k, rng, allow_empty=True))))
    projections = []
    for label, alg in algebras:
        projections.append(_guard(label, lambda alg=alg, label=label: combine(
            label, check_measurement(extract_measurement(alg, eps), eps))))
    out = [combine(f"extracted projections on {len(algebras)} algebras are a measurement", projections)]

    agree = []
    for i in range(50):
        alg = _seeded_em_algebra(i, seed)
        fem = check_fem(alg, eps).passed
        coalg = check_self_adjoint_coalgebra(alg, eps).passed
        em_ok = all(check_em(alg, eps))
        agree.append(LawReport(f"EM algebra #{i}", 0.0, em_ok and fem == coalg,
                               f"FEM {fem}, self-adjoint coalgebra {coalg}"))
    n_fem = sum("FEM True" in r.note for r in agree)
    out.append(combine(f"self-adjoint coalgebra verdict = FEM verdict on 50 EM algebras ({n_fem} FEM)", agree))
    return out


def _seeded_em_algebra(i: int, seed) -> EMAlgebra:
    """PVM algebra over discrete-k, moved along a unitary (even i) or a generic invertible (odd i)."""
    rng = rng_from([seed, i])
    k = int(rng.integers(1, 5))
    m = int(rng.integers(1, 7))
    alg = pvm_algebra(random_pvm(m, k, rng, allow_empty=True))
    if i % 2 == 0:
        return transport_algebra(alg, random_unitary(m, rng))
    s = Mor.fhilb(np.eye(m) + 0.7 * random_matrix(m, m, Backend.FHILB, rng).entries)
    return transport_algebra(alg, s)


def kleisli_dagger_laws(eps, seed):
    out = []
    for G, be, B in _monoids():
        T = TensorMonad(B)
        rng = rng_from([seed, len(out)])
        inv, contra = 0.0, 0.0
        for _ in range(100):
            a, b, c = (int(x) for x in rng.integers(1, 3, size=3))
            f = KleisliMor(T, random_matrix(b * T.n, a, be, rng))
            g = KleisliMor(T, random_matrix(c * T.n, b, be, rng))
            inv = max(inv, residual(kleisli_dagger(kleisli_dagger(f)).body, f.body))
            lhs = kleisli_dagger(kleisli_compose(g, f))
            rhs = kleisli_compose(kleisli_dagger(f), kleisli_dagger(g))
            contra = max(contra, residual(lhs.body, rhs.body))
        ident = max(residual(kleisli_dagger(kleisli_identity(T, m)).body, kleisli_identity(T, m).body)
                    for m in (1, 2, 3))
        ok = _within(be, inv, eps) and _within(be, contra, eps) and ident == 0
        out.append(LawReport(f"{G.name}/{be.value}", max(inv, contra, ident), ok,
                             f"involution {inv:.3g}, contravariance {contra:.3g}, identity {ident:g}"))
    return [combine("Kleisli dagger: involutive, contravariant, identity self-dagger exactly", out)]


def _within(be: Backend, r: float, eps: float) -> bool:
    return r == 0 if be is Backend.REL else r <= eps


def monoid_monad_equivalence(eps, seed):
    extracted, counit = [], []
    fixtures = _monoids() + [(None, Backend.FHILB, pants_monoid(n)) for n in (2, 3)]
    for G, be, B in fixtures:
        label = f"{G.name if G else B.label}/{be.value}"
        T = TensorMonad(B)
        E = extract_unit_monoid(T)
        extracted.append(combine(label, [approx_eq(E.mult, B.mult, eps), approx_eq(E.unit, B.unit, eps)]))
        counit.append(combine(label, [r for m in (1, 2, 3) for r in check_counit_iso(T, m, eps)]))
    return [
        combine("monoid on T(I) equals B entrywise", extracted),
        combine("counit A ⊗ T(I) → T(A) is a unitary monad iso preserving η†, μ†, m = 1, 2, 3", counit),
    ]


def commutativity(eps, seed):
    agree = []
    s3_rel = None
    for G, be, B in _monoids():
        dst = check_commutativity(TensorMonad(B), 1, 1, eps)
        comm = check_commutative(B, eps)
        same = dst.passed == comm.passed
        agree.append(LawReport(f"{G.name}/{be.value}", 0.0 if same else 1.0, same,
                               f"dst = dst' {dst.passed}, commutative {comm.passed}"))
        if G.name == "S3" and be is Backend.REL:
            s3_rel = dst
    out = [combine("dst = dst' iff B is commutative, every battery monoid", agree)]
    out.append(LawReport("S3 in Rel: dst ≠ dst' exactly", s3_rel.residual, not s3_rel.passed and s3_rel.residual > 0))
    return out


def kleisli_monoidal_dagger(eps, seed):
    out = []
    for G, be, B in _monoids():
        if not check_commutative(B, eps).passed:
            continue
        T = TensorMonad(B)
        rng = rng_from([seed, len(out)])
        worst = 0.0
        for _ in range(50):
            a, b, c, d = (int(x) for x in rng.integers(1, 3, size=4))
            f = KleisliMor(T, random_matrix(b * T.n, a, be, rng))
            g = KleisliMor(T, random_matrix(d * T.n, c, be, rng))
            lhs = kleisli_dagger(kleisli_tensor(f, g))
            rhs = kleisli_tensor(kleisli_dagger(f), kleisli_dagger(g))
            worst = max(worst, residual(lhs.body, rhs.body))
        out.append(LawReport(f"{G.name}/{be.value}", worst, _within(be, worst, eps)))
    return [combine(f"(f ⊗_T g)† = f† ⊗_T g† on 50 pairs, {len(out)} commutative monoids", out)]


def remark_counterexample(eps, seed):
    out = []
    for G in _groups(battery()):
        if len(G) < 2:
            lhs, rhs = unit_pair_sides(G)
            diff = float(np.count_nonzero(lhs.entries != rhs.entries))
            raises = _raises_trivial(G)
            out.append(LawReport(f"{G.name}: sides equal, TrivialGroup raised", diff, diff == 0 and raises))
        else:
            out.append(check_remark_counterexample(G))
            out[-1] = LawReport(f"{G.name}: sides differ", out[-1].residual, out[-1].passed)
    return [combine("unit ⊗ unit ≠ mult† ∘ unit in Rel for nontrivial groups", out)]


def _raises_trivial(G) -> bool:
    try:
        check_remark_counterexample(G)
    except TrivialGroup:
        return True
    return False


def closure_fixtures() -> list[FrobMonoid]:
    """Frobenius and non-Frobenius monoids in both backends."""
    out = [B for _, _, B in _monoids()]
    for be in BACKENDS:
        out += [dual_numbers(be), join_monoid(be), transformation_monoid(2, be)]
    out += [pants_monoid(2), pants_monoid(3)]
    rng = rng_from(0)
    for G in battery()[:6] + [battery()[9]]:
        M = groupoid_to_frobenius(G, Backend.FHILB)
        out.append(transport(M, random_unitary(M.n, rng)))
        s = Mor.fhilb(np.eye(M.n) + 0.5 * random_matrix(M.n, M.n, Backend.FHILB, rng).entries)
        out.append(transport(M, s))
    return out


def closure_equivalences(eps, seed):
    out = []
    for M in closure_fixtures():
        verdicts = [r.passed for r in check_closure_equivalences(M, eps)]
        same = len(set(verdicts)) == 1
        out.append(LawReport(f"{M.label or 'transported'}/{M.backend.value}", 0.0 if same else 1.0, same,
                             f"verdicts {verdicts}"))
    return [combine(f"four closure predicates agree on {len(out)} monoids", out)]


def hom_inverse(eps, seed):
    ids, autos = [], []
    for G, be, B in _monoids():
        ids.append(_guard(f"{G.name}/{be.value}", lambda B=B: _inverse_report(B.id, B, eps)))
    for G in _groups(battery()):
        for be in BACKENDS:
            B = groupoid_to_frobenius(G, be)
            for phi in group_automorphisms(G):
                p = np.zeros((B.n, B.n), dtype=be.dtype)
                for a, b in phi.items():
                    p[G.index[b], G.index[a]] = 1
                autos.append(_guard(f"{G.name}/{be.value}", lambda p=p, B=B: _inverse_report(Mor(B.backend, p), B, eps)))
    return [
        combine(f"inverse of the identity hom, {len(ids)} monoids", ids),
        combine(f"inverse of automorphism-induced homs, {len(autos)} automorphisms", autos),
    ]


def _inverse_report(f: Mor, B: FrobMonoid, eps) -> LawReport:
    g = frobenius_hom_inverse(f, B, B, eps)
    r = max(residual(g @ f, B.id), residual(f @ g, B.id))
    return LawReport("inverse", r, _within(B.backend, r, eps))


def fem_dagger_closure(eps, seed):
    fems = battery()
    homs = []
    for i in range(50):
        rng = rng_from([seed, 1000 + i])
        G = fems[i % len(fems)]
        T = TensorMonad(groupoid_to_frobenius(G, Backend.FHILB))
        src = transport_algebra(free_algebra(T, 1), random_unitary(T.n, rng))
        tgt = transport_algebra(free_algebra(T, 2), random_unitary(2 * T.n, rng))
        f = averaged_intertwiner(src, tgt, random_matrix(tgt.carrier, src.carrier, Backend.FHILB, rng))
        fwd = check_homomorphism(f, src, tgt, eps)
        back = check_homomorphism(dagger(f), tgt, src, eps)
        homs.append(LawReport(f"FEM-morphism #{i} over {G.name}", back.residual, fwd.passed and back.passed))
    iff = []
    for G, be, B in _monoids():
        T = TensorMonad(B)
        algebras = [free_algebra(T, 1), free_algebra(T, 2), representation_to_algebra(regular_representation(G, be))]
        if be is Backend.FHILB:
            rng = rng_from([seed, 2000 + len(iff)])
            a = free_algebra(T, 1)
            algebras.append(transport_algebra(a, random_unitary(T.n, rng)))
            if T.n > 1:
                s = Mor.fhilb(np.eye(T.n) + 0.7 * random_matrix(T.n, T.n, Backend.FHILB, rng).entries)
                algebras.append(transport_algebra(a, s))
        for alg in algebras:
            fem = check_fem(alg, eps).passed
            dag = check_dagger_action_hom(alg, eps).passed
            iff.append(LawReport(f"{G.name}/{be.value}", 0.0, fem == dag, f"FEM {fem}, a† hom {dag}"))
    n_non = sum("FEM False" in r.note for r in iff)
    return [
        combine("daggers of 50 FEM-morphisms are algebra homomorphisms", homs),
        combine(f"FEM iff a† is a homomorphism to the free algebra ({len(iff)} algebras, {n_non} not FEM)", iff),
    ]


CRITERIA: tuple[tuple[int, str, Callable], ...] = (
    (1, "groupoid monoids pass the Frobenius battery", frobenius_battery_on_groupoids),
    (2, "non-Frobenius control fails consistently", non_frobenius_control),
    (3, "Rel round trip through groupoids", rel_round_trip),
    (4, "pants algebra: FEM exactly for self-adjoint u", pants_counterexample),
    (5, "measurement extraction and coalgebra/FEM agreement", measurement_extraction),
    (6, "Kleisli dagger laws", kleisli_dagger_laws),
    (7, "monoid/monad equivalence through T(I)", monoid_monad_equivalence),
    (8, "commutativity of the strong monad", commutativity),
    (9, "Kleisli tensor is dagger compatible", kleisli_monoidal_dagger),
    (10, "Rel unit pair differs from comultiplied unit", remark_counterexample),
    (11, "closure predicates agree", closure_equivalences),
    (12, "inverse of Frobenius homomorphisms", hom_inverse),
    (13, "daggers of FEM-morphisms are homomorphisms", fem_dagger_closure),
)


def run_criterion(number: int, eps=None, seed: int = 0) -> CriterionResult:
    for num, title, fn in CRITERIA:
        if num == number:
            t = time.perf_counter()
            checks = tuple(fn(as_eps(eps), seed))
            return CriterionResult(num, title, checks, time.perf_counter() - t)
    raise KeyError(f"no criterion {number}")


def run_all(eps=None, seed: int = 0) -> list[CriterionResult]:
    return [run_criterion(num, eps, seed) for num, _, _ in CRITERIA]


def as_suite_report(results: list[CriterionResult], eps=None, seed: int = 0) -> SuiteReport:
    reports = tuple(
        LawReport(f"criterion {r.number}: {c.name}", c.residual, c.passed, c.note)
        for r in results
        for c in r.checks
    )
    return SuiteReport("acceptance criteria", "batch", "acceptance", reports, seed, as_eps(eps))
