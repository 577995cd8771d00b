"""
Finite groupoids and their dagger Frobenius monoids.

A groupoid with morphism set ``M`` gives a monoid on ``M`` in both backends:
``e_f · e_g = e_{f∘g}`` when ``f∘g`` is defined (zero / empty otherwise), with
unit the sum (union) of the identities.  In ``REL`` every dagger Frobenius
monoid arises this way; :func:`rel_frobenius_to_groupoid` recovers the
groupoid, checking each step.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Mapping, Sequence

import numpy as np

from daggerlab.backend import Backend, LawReport
from daggerlab.errors import InvalidGroupoid, NotGroupoidForm, TooLarge
from daggerlab.frobenius import FrobMonoid, monoid_from_table

DEFAULT_SEARCH_BOUND = 12


@dataclass(frozen=True)
class Arrow:
    name: str
    dom: str
    cod: str


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    """Objects, arrows, a partial composition table and an inverse table.

    ``compose[(f, g)]`` is the name of ``f ∘ g`` (first ``g``, then ``f``).
    """

    objects: tuple[str, ...]
    morphisms: tuple[Arrow, ...]
    compose: Mapping[tuple[str, str], str]
    inverse: Mapping[str, str]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "objects", tuple(self.objects))
        object.__setattr__(self, "morphisms", tuple(self.morphisms))
        object.__setattr__(self, "compose", dict(self.compose))
        object.__setattr__(self, "inverse", dict(self.inverse))

    @cached_property
    def index(self) -> dict[str, int]:
        return {a.name: i for i, a in enumerate(self.morphisms)}

    @cached_property
    def arrow(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.morphisms}

    def identity(self, obj: str) -> str:
        """The idempotent endomorphism of ``obj``; raises ``KeyError`` if absent."""
        return self._identities[obj]

    @cached_property
    def _identities(self) -> dict[str, str]:
        ids = {}
        for a in self.morphisms:
            if a.dom == a.cod and self.compose.get((a.name, a.name)) == a.name:
                ids.setdefault(a.dom, a.name)
        return ids

    def composable(self, f: str, g: str) -> bool:
        return self.arrow[g].cod == self.arrow[f].dom

    def __len__(self) -> int:
        return len(self.morphisms)

    def __repr__(self) -> str:
        label = f" {self.name!r}" if self.name else ""
        return f"FiniteGroupoid{label}({len(self.objects)} objects, {len(self)} morphisms)"


# ---------------------------------------------------------------- validation


def validate_groupoid(G: FiniteGroupoid) -> list[LawReport]:
    """Exhaustively check the groupoid axioms; residuals count violations."""
    names = set(G.arrow)
    objs = set(G.objects)
    comp_bad = 0
    if len(names) != len(G.morphisms):
        comp_bad += len(G.morphisms) - len(names)
    for a in G.morphisms:
        if a.dom not in objs or a.cod not in objs:
            comp_bad += 1
    for (f, g), h in G.compose.items():
        if f not in names or g not in names or h not in names:
            comp_bad += 1
            continue
        if not G.composable(f, g):
            comp_bad += 1
        elif (G.arrow[h].dom, G.arrow[h].cod) != (G.arrow[g].dom, G.arrow[f].cod):
            comp_bad += 1
    for f, g in itertools.product(names, repeat=2):
        if G.arrow[g].cod == G.arrow[f].dom and (f, g) not in G.compose:
            comp_bad += 1
    reports = [LawReport("composition defined exactly on composable pairs", comp_bad, comp_bad == 0)]
    if comp_bad:
        reports += [
            LawReport("associativity", float("nan"), False, "skipped: composition table invalid"),
            LawReport("identities", float("nan"), False, "skipped: composition table invalid"),
            LawReport("inverses", float("nan"), False, "skipped: composition table invalid"),
        ]
        return reports

    c = G.compose
    assoc_bad = 0
    for f, g, h in itertools.product(names, repeat=3):
        if G.composable(f, g) and G.composable(g, h):
            if c[(c[(f, g)], h)] != c[(f, c[(g, h)])]:
                assoc_bad += 1
    reports.append(LawReport("associativity", assoc_bad, assoc_bad == 0))

    id_bad = 0
    for obj in G.objects:
        e = G._identities.get(obj)
        if e is None:
            id_bad += 1
            continue
        for a in G.morphisms:
            if a.dom == obj and c[(a.name, e)] != a.name:
                id_bad += 1
            if a.cod == obj and c[(e, a.name)] != a.name:
                id_bad += 1
    reports.append(LawReport("identities", id_bad, id_bad == 0))

    inv_bad = 0
    for a in G.morphisms:
        b = G.inverse.get(a.name)
        if b not in names or not G.composable(b, a.name) or not G.composable(a.name, b):
            inv_bad += 1
            continue
        if c[(b, a.name)] != G._identities.get(a.dom) or c[(a.name, b)] != G._identities.get(a.cod):
            inv_bad += 1
    reports.append(LawReport("inverses", inv_bad, inv_bad == 0))
    return reports


def _require_valid(G: FiniteGroupoid) -> None:
    failed = [r.name for r in validate_groupoid(G) if not r.passed]
    if failed:
        raise InvalidGroupoid(f"{G!r} violates: {', '.join(failed)}")


# -------------------------------------------------------------- constructors


def from_group(elements: Sequence[Hashable], op: Callable, name: str = "", obj: str = "*") -> FiniteGroupoid:
    """One-object groupoid of a finite group given by its elements and product."""
    labels = [str(x) for x in elements]
    if len(set(labels)) != len(labels):
        raise InvalidGroupoid("group element labels must be distinct")
    lookup = {x: str(x) for x in elements}
    compose = {}
    for x, y in itertools.product(elements, repeat=2):
        compose[(lookup[x], lookup[y])] = lookup[op(x, y)]
    unit = next(e for e in elements if all(op(e, x) == x for x in elements))
    inverse = {lookup[x]: lookup[next(y for y in elements if op(x, y) == unit)] for x in elements}
    arrows = tuple(Arrow(lookup[x], obj, obj) for x in elements)
    return FiniteGroupoid((obj,), arrows, compose, inverse, name)


def cyclic_group(k: int) -> FiniteGroupoid:
    return from_group(list(range(k)), lambda a, b: (a + b) % k, f"Z{k}")


def klein_group() -> FiniteGroupoid:
    elements = list(itertools.product(range(2), repeat=2))
    G = from_group(elements, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), "Z2xZ2")
    return relabel(G, {str(x): f"{x[0]}{x[1]}" for x in elements})


def symmetric_group(k: int) -> FiniteGroupoid:
    """``S_k`` with ``(p·q)(i) = p(q(i))``; the identity permutation comes first."""
    elements = list(itertools.permutations(range(k)))
    G = from_group(elements, lambda p, q: tuple(p[q[i]] for i in range(k)), f"S{k}")
    return relabel(G, {str(p): "".join(map(str, p)) for p in elements})


def discrete(k: int) -> FiniteGroupoid:
    objs = tuple(f"o{i}" for i in range(k))
    arrows = tuple(Arrow(f"id{i}", o, o) for i, o in enumerate(objs))
    compose = {(a.name, a.name): a.name for a in arrows}
    inverse = {a.name: a.name for a in arrows}
    return FiniteGroupoid(objs, arrows, compose, inverse, f"discrete{k}")


def connected(group: FiniteGroupoid, k: int, name: str = "") -> FiniteGroupoid:
    """The connected groupoid on ``k`` objects with vertex group ``group``.

    Arrows ``x -> y`` are triples ``(y, g, x)``; composition multiplies the
    group parts.  ``connected(cyclic_group(2), 2)`` has two parallel
    isomorphisms between its two objects.
    """
    (obj,) = group.objects
    objs = tuple(f"v{i}" for i in range(k))
    elems = [a.name for a in group.morphisms]

    def nm(y, g, x):
        return f"{y}<{g}<{x}"

    arrows = tuple(Arrow(nm(y, g, x), x, y) for x in objs for y in objs for g in elems)
    compose = {}
    for x, y, z in itertools.product(objs, repeat=3):
        for g, h in itertools.product(elems, repeat=2):
            compose[(nm(z, h, y), nm(y, g, x))] = nm(z, group.compose[(h, g)], x)
    inverse = {nm(y, g, x): nm(x, group.inverse[g], y) for x in objs for y in objs for g in elems}
    return FiniteGroupoid(objs, arrows, compose, inverse, name or f"{group.name}^{k}")


def group_product(G: FiniteGroupoid, H: FiniteGroupoid, name: str = "") -> FiniteGroupoid:
    """Direct product of two groups; elements are named ``g,h``."""
    if len(G.objects) != 1 or len(H.objects) != 1:
        raise InvalidGroupoid("group_product needs two one-object groupoids")
    elements = [(a.name, b.name) for a in G.morphisms for b in H.morphisms]
    op = lambda x, y: (G.compose[(x[0], y[0])], H.compose[(x[1], y[1])])  # noqa: E731
    P = from_group(elements, op, name or f"{G.name}x{H.name}")
    return relabel(P, {str(x): f"{x[0]},{x[1]}" for x in elements})


def group_automorphisms(G: FiniteGroupoid, bound: int = 8) -> list[dict[str, str]]:
    """All automorphisms of a group, as arrow renamings, by exhaustive search.

    Raises
    ------
    TooLarge
        If the group has more than ``bound`` elements.
    """
    if len(G.objects) != 1:
        raise InvalidGroupoid(f"{G!r} is not a group")
    if len(G) > bound:
        raise TooLarge(f"{len(G)} elements exceeds the search bound {bound}")
    e = G.identity(G.objects[0])
    rest = [a.name for a in G.morphisms if a.name != e]
    out = []
    for image in itertools.permutations(rest):
        phi = dict(zip(rest, image))
        phi[e] = e
        if all(phi[h] == G.compose[(phi[f], phi[g])] for (f, g), h in G.compose.items()):
            out.append(phi)
    return out


def parallel_isos() -> FiniteGroupoid:
    return connected(cyclic_group(2), 2, "parallel-isos")


def disjoint_union(*parts: FiniteGroupoid, name: str = "") -> FiniteGroupoid:
    objs, arrows, compose, inverse = [], [], {}, {}
    for i, P in enumerate(parts):
        tag = lambda s, i=i: f"{i}.{s}"  # noqa: E731
        objs += [tag(o) for o in P.objects]
        arrows += [Arrow(tag(a.name), tag(a.dom), tag(a.cod)) for a in P.morphisms]
        compose.update({(tag(f), tag(g)): tag(h) for (f, g), h in P.compose.items()})
        inverse.update({tag(f): tag(g) for f, g in P.inverse.items()})
    label = name or "+".join(P.name or "?" for P in parts)
    return FiniteGroupoid(tuple(objs), tuple(arrows), compose, inverse, label)


def relabel(G: FiniteGroupoid, names: Mapping[str, str], objects: Mapping[str, str] | None = None) -> FiniteGroupoid:
    """Rename arrows (and optionally objects); unmapped names are kept."""
    objects = objects or {}
    ob = lambda o: objects.get(o, o)  # noqa: E731
    ar = lambda a: names.get(a, a)  # noqa: E731
    return FiniteGroupoid(
        tuple(ob(o) for o in G.objects),
        tuple(Arrow(ar(a.name), ob(a.dom), ob(a.cod)) for a in G.morphisms),
        {(ar(f), ar(g)): ar(h) for (f, g), h in G.compose.items()},
        {ar(f): ar(g) for f, g in G.inverse.items()},
        G.name,
    )


def battery() -> list[FiniteGroupoid]:
    """The standard fixtures: small groups, discrete groupoids and unions."""
    return [
        discrete(1),
        cyclic_group(2),
        cyclic_group(3),
        cyclic_group(4),
        klein_group(),
        symmetric_group(3),
        discrete(2),
        discrete(3),
        discrete(4),
        parallel_isos(),
        disjoint_union(cyclic_group(2), cyclic_group(3)),
        disjoint_union(symmetric_group(3), discrete(2)),
        disjoint_union(parallel_isos(), discrete(1)),
    ]


# ------------------------------------------------------------- constructions


def _mult_table(G: FiniteGroupoid) -> dict[tuple[int, int], int]:
    ix = G.index
    return {(ix[f], ix[g]): ix[h] for (f, g), h in G.compose.items()}


def _unit_elements(G: FiniteGroupoid) -> list[int]:
    return [G.index[G.identity(o)] for o in G.objects]


def groupoid_to_frobenius_rel(G: FiniteGroupoid) -> FrobMonoid:
    _require_valid(G)
    return monoid_from_table(len(G), _mult_table(G), _unit_elements(G), Backend.REL, G.name)


def groupoid_to_frobenius_fhilb(G: FiniteGroupoid) -> FrobMonoid:
    _require_valid(G)
    return monoid_from_table(len(G), _mult_table(G), _unit_elements(G), Backend.FHILB, G.name)


def groupoid_to_frobenius(G: FiniteGroupoid, backend=Backend.FHILB) -> FrobMonoid:
    if Backend(backend) is Backend.REL:
        return groupoid_to_frobenius_rel(G)
    return groupoid_to_frobenius_fhilb(G)


def is_combinatorially_commutative(G: FiniteGroupoid) -> bool:
    """True iff every arrow is an endomorphism and each vertex group is abelian."""
    if any(a.dom != a.cod for a in G.morphisms):
        return False
    return all(
        G.compose[(f, g)] == G.compose[(g, f)]
        for (f, g) in G.compose
    )


# ---------------------------------------------------------------- extraction


def _unique(candidates, what: str) -> int:
    candidates = list(candidates)
    if len(candidates) != 1:
        raise NotGroupoidForm(f"{what}: expected exactly one candidate, found {len(candidates)}")
    return int(candidates[0])


def rel_frobenius_to_groupoid(M: FrobMonoid) -> FiniteGroupoid:
    """Recover the groupoid underlying a dagger Frobenius monoid in ``REL``.

    Elements with a unit pair become objects (as identities); ``dom`` and
    ``cod`` of ``x`` are the unique units fixing it on the right and left;
    composition and inverses are read off the multiplication relation.
    Every uniqueness assumption is checked.

    Raises
    ------
    NotGroupoidForm
        If any step is not single-valued, or the result is not a groupoid.
    """
    if M.backend is not Backend.REL:
        raise NotGroupoidForm("extraction is only defined for REL monoids")
    n = M.n
    mult = M.mult.entries
    units = [int(x) for x in np.flatnonzero(M.unit.entries[:, 0])]
    if not units:
        raise NotGroupoidForm("unit relation is empty")

    def image(f: int, g: int) -> np.ndarray:
        return np.flatnonzero(mult[:, f * n + g])

    dom, cod = {}, {}
    for x in range(n):
        dom[x] = _unique((e for e in units if mult[x, x * n + e]), f"dom of element {x}")
        cod[x] = _unique((e for e in units if mult[x, e * n + x]), f"cod of element {x}")

    name = lambda x: f"x{x}"  # noqa: E731
    compose = {}
    for f, g in itertools.product(range(n), repeat=2):
        img = image(f, g)
        if cod[g] == dom[f]:
            compose[(name(f), name(g))] = name(_unique(img, f"composite of {f} after {g}"))
        elif len(img):
            raise NotGroupoidForm(f"non-composable pair ({f}, {g}) multiplies to {list(img)}")

    inverse = {}
    for x in range(n):
        cands = (
            y for y in range(n)
            if dom[y] == cod[x] and cod[y] == dom[x]
            and compose[(name(y), name(x))] == name(dom[x])
        )
        inverse[name(x)] = name(_unique(cands, f"inverse of element {x}"))

    objects = tuple(f"u{e}" for e in units)
    arrows = tuple(Arrow(name(x), f"u{dom[x]}", f"u{cod[x]}") for x in range(n))
    G = FiniteGroupoid(objects, arrows, compose, inverse, M.label)
    failed = [r.name for r in validate_groupoid(G) if not r.passed]
    if failed:
        raise NotGroupoidForm(f"extracted data is not a groupoid: {', '.join(failed)}")
    if sorted(G.index[G.identity(o)] for o in G.objects) != units:
        raise NotGroupoidForm("unit relation does not consist of the identities")
    return G


# --------------------------------------------------------------- isomorphism


def _signature(G: FiniteGroupoid, f: str) -> tuple:
    a = G.arrow[f]
    c = G.compose
    is_id = G._identities.get(a.dom) == f
    order = None
    if a.dom == a.cod:
        order, p = 1, f
        while p != G._identities.get(a.dom) and order <= len(G):
            p = c[(f, p)]
            order += 1
    hom = sum(1 for b in G.morphisms if (b.dom, b.cod) == (a.dom, a.cod))
    return (is_id, a.dom == a.cod, order, hom)


def groupoid_isomorphic(G: FiniteGroupoid, H: FiniteGroupoid, bound: int = DEFAULT_SEARCH_BOUND) -> bool:
    """Exhaustive search for an isomorphism of groupoids.

    Backtracks over arrow assignments, propagating composites and inverses
    of every assigned pair; arrows are filtered by a cheap signature (is it
    an identity, its order, size of its hom-set).

    Raises
    ------
    TooLarge
        If either groupoid has more than ``bound`` arrows.
    """
    if max(len(G), len(H)) > bound:
        raise TooLarge(f"isomorphism search bounded at {bound} arrows")
    if len(G) != len(H) or len(G.objects) != len(H.objects):
        return False
    sig_g = {f: _signature(G, f) for f in G.arrow}
    sig_h = {f: _signature(H, f) for f in H.arrow}
    if sorted(sig_g.values(), key=repr) != sorted(sig_h.values(), key=repr):
        return False

    # identities first, then by decreasing hom-set size, so objects are pinned early
    order = sorted(G.arrow, key=lambda f: (not sig_g[f][0], -sig_g[f][3], G.index[f]))

    def extend(state, f, t):
        amap, used, omap, oused = state
        amap, used, omap, oused = dict(amap), set(used), dict(omap), set(oused)
        stack = [(f, t)]
        while stack:
            f, t = stack.pop()
            if f in amap:
                if amap[f] != t:
                    return None
                continue
            if t in used or sig_g[f] != sig_h[t]:
                return None
            a, b = G.arrow[f], H.arrow[t]
            for x, y in ((a.dom, b.dom), (a.cod, b.cod)):
                if x in omap:
                    if omap[x] != y:
                        return None
                elif y in oused:
                    return None
                else:
                    omap[x] = y
                    oused.add(y)
            amap[f] = t
            used.add(t)
            stack.append((G.inverse[f], H.inverse[t]))
            for g, s in list(amap.items()):
                if G.composable(f, g):
                    stack.append((G.compose[(f, g)], H.compose[(t, s)]))
                if G.composable(g, f):
                    stack.append((G.compose[(g, f)], H.compose[(s, t)]))
        return amap, used, omap, oused

    def search(state):
        amap = state[0]
        pending = [f for f in order if f not in amap]
        if not pending:
            return True
        f = pending[0]
        for t in H.arrow:
            if t in state[1]:
                continue
            nxt = extend(state, f, t)
            if nxt is not None and search(nxt):
                return True
        return False

    return search(({}, set(), {}, set()))
