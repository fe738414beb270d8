"""Axiom suites checked by exhaustion over a finite concrete category.

Every failed axiom carries a :class:`Witness`. Witnesses are plain data
(arrow and object ids) and :func:`recheck` re-derives the failure from the
category alone, without consulting the report that produced it.

Truncated model categories only contain objects up to a size cap. A limit
or colimit is *required* only when the corresponding construction in the
underlying model fits inside the cap; see :func:`requires_pullback` and
:func:`requires_coproduct`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional, Sequence

from .actions import GAction, iter_equivariant_maps
from .algebra import subgroups
from .category import (
    DiagramPoset,
    FiniteConcreteCategory,
    NoImageObject,
    PointedObject,
    aut_group,
    complement,
    coproduct_split,
    epi_mono_factor,
    find_coequalizer,
    find_coproduct,
    find_pullback,
    find_quotient,
    initial_object,
    is_coproduct_cocone,
    is_compatible,
    is_connected,
    is_iso,
    is_limit_cone,
    is_mono,
    is_strict_epi,
    precomposition_action,
    pullback_cones,
    strict_epi_witness,
    terminal_object,
)
from . import config

SUITES = ("RC", "C", "G", "R", "E")

AXIOMS = {
    "RC": ("RC0", "RC1", "RC2"),
    "C": ("C0", "C1", "C2", "C3"),
    "G": ("G0", "G1", "G2", "G3", "G4", "G5", "G6"),
    "R": ("R1", "R2", "R3", "R4", "R5", "R6"),
    "R'": ("R1", "R'2", "R3", "R'4", "R5", "R6"),
    "E": ("E1", "E2", "E3", "E4", "E5", "E6"),
    "E'": ("E1", "E'2", "E3", "E4", "E5", "E6"),
}


@dataclass(frozen=True)
class Witness:
    kind: str
    data: tuple

    def render(self, c: FiniteConcreteCategory) -> str:
        return self.kind + " " + " ".join(_render_item(c, self.kind, i, v) for i, v in enumerate(self.data))


def _render_item(c, kind, i, v):
    if isinstance(v, tuple):
        return "(" + ",".join(str(x) for x in v) + ")"
    return str(v)


@dataclass
class AxiomVerdict:
    axiom: str
    passed: bool
    witness: Optional[Witness] = None
    checked: int = 0
    note: str = ""


@dataclass
class AxiomReport:
    suite: str
    category: str
    verdicts: list = field(default_factory=list)
    obj: Optional[int] = None

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.verdicts)

    def failed(self) -> list[str]:
        return [v.axiom for v in self.verdicts if not v.passed]

    def verdict(self, axiom: str) -> AxiomVerdict:
        for v in self.verdicts:
            if v.axiom == axiom:
                return v
        raise KeyError(axiom)

    def lines(self, c: Optional[FiniteConcreteCategory] = None) -> list[tuple[str, str]]:
        out = [("suite", self.suite), ("category", self.category)]
        if self.obj is not None:
            out.append(("object", c.obj_names[self.obj] if c is not None else str(self.obj)))
        for v in self.verdicts:
            out.append((v.axiom, "PASS" if v.passed else "FAIL"))
            if v.witness is not None:
                out.append((f"{v.axiom}.witness", v.witness.render(c) if c is not None else repr(v.witness)))
            if v.note:
                out.append((f"{v.axiom}.note", v.note))
        out.append(("verdict", "PASS" if self.passed else "FAIL"))
        return out


def _verdict(axiom, witness=None, checked=0, note=""):
    return AxiomVerdict(axiom, witness is None, witness, checked, note)


# ----------------------------------------------------------------------
# what a truncated category must contain


def _gaction_models(c) -> Optional[list]:
    if c.models is None or not all(isinstance(m, GAction) for m in c.models):
        return None
    return c.models


def _components(actor, n, act) -> int:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for g in actor.elements:
        for x in range(n):
            a, b = find(x), find(act(g, x))
            if a != b:
                parent[a] = b
    return len({find(x) for x in range(n)})


def _fits(c, points: int, orbits) -> bool:
    t = c.truncation
    if points > t.max_points:
        return False
    if t.max_orbits is None:
        return True
    if orbits is None:
        return points <= t.max_orbits
    return orbits() <= t.max_orbits


def requires_pullback(c: FiniteConcreteCategory, f: int, g: int) -> bool:
    if c.truncation is None:
        return True
    models = _gaction_models(c)
    if models is None:
        ff, fg = c.fmap[f], c.fmap[g]
        n = sum(1 for x in ff for y in fg if x == y)
        return _fits(c, n, None)
    kf, kg = c.keys[f], c.keys[g]
    pairs = [(x, y) for x in range(len(kf)) for y in range(len(kg)) if kf[x] == kg[y]]
    mx, my = models[c.src[f]], models[c.src[g]]

    def orbits():
        idx = {p: i for i, p in enumerate(pairs)}
        return _components(mx.actor, len(pairs),
                           lambda a, i: idx[(mx.act[a][pairs[i][0]], my.act[a][pairs[i][1]])])
    return _fits(c, len(pairs), orbits)


def requires_coproduct(c: FiniteConcreteCategory, objs: Sequence[int]) -> bool:
    if c.truncation is None:
        return True
    models = _gaction_models(c)
    if models is None:
        return _fits(c, sum(c.fiber_sizes[x] for x in objs), None)
    n = sum(models[x].points for x in objs)
    return _fits(c, n, lambda: sum(_components(models[x].actor, models[x].points, models[x]) for x in objs))


# ----------------------------------------------------------------------
# shared checks


def _aut_subgroups(c, x):
    g, auts = aut_group(c, x)
    return [(h, tuple(auts[k] for k in h.members)) for h in subgroups(g, config.caps().group)]


def _orbit_count(n, perms) -> int:
    parent = list(range(n))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v
    for p in perms:
        for v in range(n):
            a, b = find(v), find(p[v])
            if a != b:
                parent[a] = b
    return len({find(v) for v in range(n)})


def _quotient_preserved_by_fiber(c, x, auts, q) -> bool:
    """``F(X)/H -> F(X/H)`` is a bijection."""
    fq = c.fmap[q.legs[0]]
    perms = [c.fmap[h] for h in auts]
    n = c.fiber_sizes[x]
    if len(set(fq)) != c.fiber_sizes[q.obj]:
        return False
    return _orbit_count(n, perms) == c.fiber_sizes[q.obj]


def _coproduct_preserved_by_fiber(c, legs, s) -> bool:
    seen = set()
    for l in legs:
        for v in c.fmap[l]:
            if v in seen:
                return False
            seen.add(v)
    return len(seen) == c.fiber_sizes[s]


def _pullback_preserved_by_fiber(c, f, g, cone) -> bool:
    p1, p2 = cone.legs
    ff, fg = c.fmap[f], c.fmap[g]
    expect = {(x, y) for x in range(len(ff)) for y in range(len(fg)) if ff[x] == fg[y]}
    got = [(c.fmap[p1][v], c.fmap[p2][v]) for v in range(c.fiber_sizes[cone.obj])]
    return len(set(got)) == len(got) and set(got) == expect


def _cospans(c):
    """Pairs ``f <= g`` with a common target, neither an identity."""
    idents = set(c.identity)
    into: dict = {}
    for a in range(c.n_arrows):
        if a not in idents:
            into.setdefault(c.dst[a], []).append(a)
    for z in c.objects:
        arrows = into.get(z, [])
        for i, f in enumerate(arrows):
            for g in arrows[i:]:
                yield f, g


def _check_terminal_and_pullbacks(c, axiom):
    if terminal_object(c) is None:
        return _verdict(axiom, Witness("missing_terminal", ()))
    n = 0
    for f, g in _cospans(c):
        if not requires_pullback(c, f, g):
            continue
        n += 1
        if find_pullback(c, f, g) is None:
            return _verdict(axiom, Witness("missing_pullback", (f, g)), n)
    return _verdict(axiom, checked=n)


def _check_initial_and_coproducts(c, axiom):
    if initial_object(c) is None:
        return _verdict(axiom, Witness("missing_initial", ()))
    n = 0
    for x in c.objects:
        for y in c.objects[x:]:
            if not requires_coproduct(c, (x, y)):
                continue
            n += 1
            if find_coproduct(c, (x, y)) is None:
                return _verdict(axiom, Witness("missing_coproduct", (x, y)), n)
    return _verdict(axiom, checked=n)


def _check_quotients(c, axiom, preserved=None):
    """Quotients by every subgroup of every ``Aut(X)`` exist (and are preserved)."""
    n = 0
    for x in c.objects:
        for _, auts in _aut_subgroups(c, x):
            n += 1
            q = find_quotient(c, x, auts)
            if q is None:
                return _verdict(axiom, Witness("missing_quotient", (x, auts)), n)
            if preserved is not None and not preserved(x, auts, q):
                return _verdict(axiom, Witness(preserved.kind, (x, auts)), n)
    return _verdict(axiom, checked=n)


def _strict_epis_surjective(c, axiom):
    for f in range(c.n_arrows):
        if len(set(c.fmap[f])) != c.fiber_sizes[c.dst[f]] and is_strict_epi(c, f):
            return _verdict(axiom, Witness("strict_epi_not_surjective", (f,)))
    return _verdict(axiom, checked=c.n_arrows)


def _all_strict_epi(c, arrows):
    for f in arrows:
        if not is_strict_epi(c, f):
            return f
    return None


# ----------------------------------------------------------------------
# RC


def check_axioms_RC(c: FiniteConcreteCategory, a: int) -> AxiomReport:
    rep = AxiomReport("RC", c.name, obj=a)
    rep.verdicts.append(_rc0(c, a))
    rep.verdicts.append(_rc1(c, a))
    rep.verdicts.append(_rc2(c, a))
    return rep


def _rc0(c, a):
    for x in c.objects:
        if not c.hom(a, x):
            return _verdict("RC0", Witness("empty_hom", (a, x)))
    for x in c.objects:
        f = _all_strict_epi(c, c.hom(a, x))
        if f is not None:
            return _verdict("RC0", Witness("not_strict_epi", (f,)))
    return _verdict("RC0", checked=c.n_objects)


def hom_quotient_preserved(c, a, x, auts, q) -> bool:
    """``[A,X]/H -> [A,X/H]`` is a bijection, ``H`` acting by postcomposition."""
    classes = {frozenset(c.compose(h, f) for h in auts): f for f in c.hom(a, x)}
    images = {c.compose(q.legs[0], f) for f in classes.values()}
    return len(images) == len(classes) == c.hom_count(a, q.obj)


def _rc1(c, a):
    n = 0
    for _, auts in _aut_subgroups(c, a):
        n += 1
        q = find_quotient(c, a, auts)
        if q is None:
            return _verdict("RC1", Witness("missing_quotient", (a, auts)), n)
        if not hom_quotient_preserved(c, a, a, auts, q):
            return _verdict("RC1", Witness("quotient_not_preserved_by_hom", (a, a, auts)), n)
    return _verdict("RC1", checked=n)


def _rc2(c, a):
    for e in c.hom(a, a):
        if not is_iso(c, e):
            return _verdict("RC2", Witness("non_invertible_endo", (e,)))
    return _verdict("RC2", checked=c.hom_count(a, a))


# ----------------------------------------------------------------------
# C


def _fiber_quotient_check(c):
    def check(x, auts, q):
        return _quotient_preserved_by_fiber(c, x, auts, q)
    check.kind = "quotient_not_preserved"
    return check


def check_axioms_C(c: FiniteConcreteCategory) -> AxiomReport:
    rep = AxiomReport("C", c.name)
    empty = next((x for x in c.objects if c.fiber_sizes[x] == 0), None)
    if empty is not None:
        rep.verdicts.append(_verdict("C0", Witness("empty_fiber", (empty,))))
    else:
        f = _all_strict_epi(c, range(c.n_arrows))
        rep.verdicts.append(_verdict("C0", Witness("not_strict_epi", (f,)) if f is not None else None,
                                     c.n_arrows))
    rep.verdicts.append(_check_quotients(c, "C1", _fiber_quotient_check(c)))
    rep.verdicts.append(_strict_epis_surjective(c, "C2"))
    rep.verdicts.append(_c3(c))
    return rep


def _c3(c):
    poset = DiagramPoset(c)
    if not poset.nodes:
        return _verdict("C3", Witness("empty_diagram", ()))
    if poset.top() is None:
        return _verdict("C3", Witness("no_top", ()))
    nodes = poset.nodes
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            if poset.meet(u, v) is None:
                return _verdict("C3", Witness("no_meet", (u.obj, u.point, v.obj, v.point)))
    return _verdict("C3", checked=len(nodes) * (len(nodes) - 1) // 2)


# ----------------------------------------------------------------------
# G


def check_axioms_G(c: FiniteConcreteCategory) -> AxiomReport:
    rep = AxiomReport("G", c.name)
    rep.verdicts.append(_verdict("G0", note="every fiber is finite"))
    rep.verdicts.append(_check_terminal_and_pullbacks(c, "G1"))
    g2 = _check_initial_and_coproducts(c, "G2")
    if g2.passed:
        q = _check_quotients(c, "G2")
        g2 = AxiomVerdict("G2", q.passed, q.witness, g2.checked + q.checked)
    rep.verdicts.append(g2)
    rep.verdicts.append(_g3(c))
    rep.verdicts.append(_g4(c))
    rep.verdicts.append(_g5(c))
    rep.verdicts.append(_g6(c))
    return rep


def _g3(c):
    for f in range(c.n_arrows):
        try:
            e, i = epi_mono_factor(c, f)
        except NoImageObject:
            return _verdict("G3", Witness("no_image", (f,)))
        if not is_iso(c, i) and complement(c, i) is None:
            return _verdict("G3", Witness("no_complement", (i,)))
    return _verdict("G3", checked=c.n_arrows)


def _g4(c):
    t = terminal_object(c)
    if t is not None and c.fiber_sizes[t] != 1:
        return _verdict("G4", Witness("terminal_fiber_not_singleton", (t,)))
    n = 0
    for f, g in _cospans(c):
        if not requires_pullback(c, f, g):
            continue
        cone = find_pullback(c, f, g)
        if cone is None:
            continue
        n += 1
        if not _pullback_preserved_by_fiber(c, f, g, cone):
            return _verdict("G4", Witness("pullback_not_preserved", (f, g)), n)
    return _verdict("G4", checked=n)


def _g5(c):
    i = initial_object(c)
    if i is not None and c.fiber_sizes[i] != 0:
        return _verdict("G5", Witness("initial_fiber_nonempty", (i,)))
    n = 0
    for x in c.objects:
        for y in c.objects[x:]:
            if not requires_coproduct(c, (x, y)):
                continue
            cop = find_coproduct(c, (x, y))
            if cop is None:
                continue
            n += 1
            if not _coproduct_preserved_by_fiber(c, cop.legs, cop.obj):
                return _verdict("G5", Witness("coproduct_not_preserved", (x, y)), n)
    for x in c.objects:
        for _, auts in _aut_subgroups(c, x):
            q = find_quotient(c, x, auts)
            if q is None:
                continue
            n += 1
            if not _quotient_preserved_by_fiber(c, x, auts, q):
                return _verdict("G5", Witness("quotient_not_preserved", (x, auts)), n)
    v = _strict_epis_surjective(c, "G5")
    v.checked += n
    return v


def _g6(c):
    for f in range(c.n_arrows):
        s, d = c.src[f], c.dst[f]
        if c.fiber_sizes[s] == c.fiber_sizes[d] and len(set(c.fmap[f])) == c.fiber_sizes[d]:
            if not is_iso(c, f):
                return _verdict("G6", Witness("fiber_bijective_not_iso", (f,)))
    return _verdict("G6", checked=c.n_arrows)


# ----------------------------------------------------------------------
# R and E


def check_axioms_R(c: FiniteConcreteCategory, a: int, variant: str = "R") -> AxiomReport:
    """Representable-case axioms; ``variant="R'"`` uses quotients by automorphism groups."""
    if variant not in ("R", "R'"):
        raise ValueError(variant)
    rep = AxiomReport(variant, c.name, obj=a)
    rep.verdicts.append(_check_terminal_and_pullbacks(c, "R1"))
    if variant == "R":
        rep.verdicts.append(_r2(c))
    else:
        rep.verdicts.append(_check_quotients(c, "R'2"))
    rep.verdicts.append(_check_initial_and_coproducts(c, "R3"))
    if variant == "R":
        rep.verdicts.append(_r4(c, a))
    else:
        rep.verdicts.append(_r4_prime(c, a))
    rep.verdicts.append(_r5(c, a))
    rep.verdicts.append(_r6(c, a))
    return rep


def _parallel_pairs(c):
    for x in c.objects:
        for y in c.objects:
            yield from combinations(c.hom(x, y), 2)


def _r2(c):
    n = 0
    for f, g in _parallel_pairs(c):
        n += 1
        if find_coequalizer(c, f, g) is None:
            return _verdict("R2", Witness("missing_coequalizer", (f, g)), n)
    return _verdict("R2", checked=n)


def hom_coequalizer_preserved(c, a, f, g, q) -> bool:
    """``[A,Y]`` modulo the relation generated by ``f u ~ g u`` maps bijectively onto ``[A,Q]``."""
    y = c.dst[f]
    arrows = c.hom(a, y)
    idx = {u: i for i, u in enumerate(arrows)}
    parent = list(range(len(arrows)))

    def find(v):
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v
    for u in c.hom(a, c.src[f]):
        i, j = find(idx[c.compose(f, u)]), find(idx[c.compose(g, u)])
        if i != j:
            parent[i] = j
    reps = {find(i): arrows[i] for i in range(len(arrows))}
    images = {c.compose(q, u) for u in reps.values()}
    return len(images) == len(reps) == c.hom_count(a, c.dst[q])


def _r4(c, a):
    n = 0
    for f, g in _parallel_pairs(c):
        cq = find_coequalizer(c, f, g)
        if cq is None:
            continue
        n += 1
        if not hom_coequalizer_preserved(c, a, f, g, cq.legs[0]):
            return _verdict("R4", Witness("coequalizer_not_preserved_by_hom", (a, f, g)), n)
    return _verdict("R4", checked=n)


def _r4_prime(c, a):
    n = 0
    for x in c.objects:
        for _, auts in _aut_subgroups(c, x):
            q = find_quotient(c, x, auts)
            if q is None:
                continue
            n += 1
            if not hom_quotient_preserved(c, a, x, auts, q):
                return _verdict("R'4", Witness("quotient_not_preserved_by_hom", (a, x, auts)), n)
    return _verdict("R'4", checked=n)


def hom_coproduct_preserved(c, a, legs, s) -> bool:
    images = [c.compose(l, u) for l in legs for u in c.hom(a, c.src[l])]
    return len(set(images)) == len(images) == c.hom_count(a, s)


def _r5(c, a):
    i = initial_object(c)
    if i is not None and c.hom_count(a, i) != 0:
        return _verdict("R5", Witness("hom_into_initial", (a, i)))
    n = 0
    for x in c.objects:
        for y in c.objects[x:]:
            if not requires_coproduct(c, (x, y)):
                continue
            cop = find_coproduct(c, (x, y))
            if cop is None:
                continue
            n += 1
            if not hom_coproduct_preserved(c, a, cop.legs, cop.obj):
                return _verdict("R5", Witness("coproduct_not_preserved_by_hom", (a, x, y)), n)
    return _verdict("R5", checked=n)


def _hom_bijective(c, a, f) -> bool:
    images = {c.compose(f, u) for u in c.hom(a, c.src[f])}
    return len(images) == c.hom_count(a, c.src[f]) == c.hom_count(a, c.dst[f])


def _r6(c, a):
    for f in range(c.n_arrows):
        if _hom_bijective(c, a, f) and not is_iso(c, f):
            return _verdict("R6", Witness("hom_bijective_not_iso", (a, f)))
    return _verdict("R6", checked=c.n_arrows)


def check_axioms_E(c: FiniteConcreteCategory, a: int, variant: str = "E") -> AxiomReport:
    """Second representable-case axioms; ``variant="E'"`` uses effective group actions."""
    if variant not in ("E", "E'"):
        raise ValueError(variant)
    rep = AxiomReport(variant, c.name, obj=a)
    rep.verdicts.append(_check_terminal_and_pullbacks(c, "E1"))
    rep.verdicts.append(_e2(c) if variant == "E" else _e2_prime(c))
    rep.verdicts.append(_e3(c))
    rep.verdicts.append(_e4(c, a))
    rep.verdicts.append(_e5(c, a))
    rep.verdicts.append(_e6(c, a))
    return rep


def _relation_classes(c, r1, r2):
    """Per object ``T``: the relation on ``hom(T, X)`` induced by ``(r1, r2)``, or None if not jointly monic."""
    rel = []
    for t in c.objects:
        pairs = set()
        arrows = c.hom(t, c.src[r1])
        for u in arrows:
            pairs.add((c.compose(r1, u), c.compose(r2, u)))
        if len(pairs) != len(arrows):
            return None
        rel.append(frozenset(pairs))
    return tuple(rel)


def _is_equivalence(c, x, rel) -> bool:
    for t, pairs in zip(c.objects, rel):
        for u in c.hom(t, x):
            if (u, u) not in pairs:
                return False
        for u, v in pairs:
            if (v, u) not in pairs:
                return False
        succ: dict = {}
        for u, v in pairs:
            succ.setdefault(u, set()).add(v)
        for u, v in pairs:
            if not succ[v] <= succ[u]:
                return False
    return True


def equivalence_relations(c: FiniteConcreteCategory, x: int) -> list[tuple[int, int]]:
    """Jointly monic pairs ``R => X`` that are equivalence relations on generalized elements.

    Reflexivity forces a common section of both legs, which is used to prune
    the candidate pairs before the full check. One pair per relation.
    """
    out = []
    seen = set()
    ident = c.identity[x]
    for r in c.objects:
        legs = c.hom(r, x)
        if not legs:
            continue
        cands = set()
        for s in c.hom(x, r):
            split = [l for l in legs if c.compose(l, s) == ident]
            cands.update((u, v) for u in split for v in split)
        for r1, r2 in sorted(cands):
            rel = _relation_classes(c, r1, r2)
            if rel is None or rel in seen:
                continue
            if _is_equivalence(c, x, rel):
                seen.add(rel)
                out.append((r1, r2))
    return out


def _e2(c):
    n = 0
    for x in c.objects:
        for r1, r2 in equivalence_relations(c, x):
            n += 1
            w = _effective_universal(c, r1, r2)
            if w is not None:
                return _verdict("E2", w, n)
    return _verdict("E2", checked=n)


def _effective_universal(c, r1, r2) -> Optional[Witness]:
    if r1 == r2:
        return None
    cq = find_coequalizer(c, r1, r2)
    if cq is None:
        return Witness("missing_coequalizer", (r1, r2))
    q = cq.legs[0]
    if not is_limit_cone(c, c.src[r1], (r1, r2), pullback_cones(c, q, q)):
        return Witness("relation_not_kernel_pair", (r1, r2))
    for z in c.objects:
        for u in c.hom(z, c.dst[q]):
            pb = find_pullback(c, q, u)
            if pb is not None and not is_strict_epi(c, pb.legs[1]):
                return Witness("quotient_not_stable", (r1, r2, u))
    return None


def _e2_prime(c):
    n = 0
    for x in c.objects:
        for h, auts in _aut_subgroups(c, x):
            q = find_quotient(c, x, auts)
            if q is None:
                return _verdict("E'2", Witness("missing_quotient", (x, auts)), n)
            qa = q.legs[0]
            if not requires_pullback(c, qa, qa) or not requires_coproduct(c, (x,) * len(auts)):
                continue
            kp = find_pullback(c, qa, qa)
            cop = find_coproduct(c, (x,) * len(auts))
            if kp is None or cop is None:
                continue
            n += 1
            e = _codiagonal_pair(c, cop, kp, auts)
            if e is None or not is_strict_epi(c, e):
                return _verdict("E'2", Witness("action_not_effective", (x, auts)), n)
    return _verdict("E'2", checked=n)


def _codiagonal_pair(c, cop, kp, auts) -> Optional[int]:
    """The arrow ``A.H -> R_q`` restricting to ``(1, h)`` on the ``h``-th summand."""
    p1, p2 = kp.legs
    for e in c.hom(cop.obj, kp.obj):
        ok = True
        for lam, h in zip(cop.legs, auts):
            el = c.compose(e, lam)
            if c.compose(p1, el) != c.identity[c.src[lam]] or c.compose(p2, el) != h:
                ok = False
                break
        if ok:
            return e
    return None


def _e3(c):
    base = _check_initial_and_coproducts(c, "E3")
    if not base.passed:
        return base
    n = base.checked
    for x in c.objects:
        for y in c.objects[x:]:
            if not requires_coproduct(c, (x, y)):
                continue
            cop = find_coproduct(c, (x, y))
            i1, i2 = cop.legs
            for z in c.objects:
                for u in c.hom(z, cop.obj):
                    b1, b2 = find_pullback(c, i1, u), find_pullback(c, i2, u)
                    if b1 is None or b2 is None:
                        continue
                    n += 1
                    if not is_coproduct_cocone(c, (b1.legs[1], b2.legs[1]), z):
                        return _verdict("E3", Witness("coproduct_not_stable", (x, y, u)), n)
    return _verdict("E3", checked=n)


def _e4(c, a):
    for f in range(c.n_arrows):
        if not is_strict_epi(c, f):
            continue
        images = {c.compose(f, u) for u in c.hom(a, c.src[f])}
        if len(images) != c.hom_count(a, c.dst[f]):
            return _verdict("E4", Witness("strict_epi_not_preserved_by_hom", (a, f)))
    return _verdict("E4", checked=c.n_arrows)


def _e5(c, a):
    if is_connected(c, a):
        return _verdict("E5", checked=1)
    split = coproduct_split(c, a)
    if split is None:
        return _verdict("E5", Witness("initial_object", (a,)))
    return _verdict("E5", Witness("coproduct_split", split))


def generator_failure(c: FiniteConcreteCategory, a: int) -> Optional[tuple[int, int]]:
    """``(X, Z)`` where ``hom(X, Z) -> hom([A,X], [A,Z])`` is not bijective, or None.

    Bijectivity for every pair is the universal property of the canonical
    collective coequalizer onto ``X`` (equivariant maps out of ``[A, X]`` are
    exactly the compatible families).
    """
    for x in c.objects:
        ax, ax_arrows = precomposition_action(c, a, x)
        for z in c.objects:
            az, az_arrows = precomposition_action(c, a, z)
            zidx = {u: k for k, u in enumerate(az_arrows)}
            seen = set()
            for f in c.hom(x, z):
                seen.add(tuple(zidx[c.compose(f, u)] for u in ax_arrows))
            if len(seen) != c.hom_count(x, z):
                return (x, z)
            count = sum(1 for _ in iter_equivariant_maps(ax, az))
            if count != len(seen):
                return (x, z)
    return None


def _e6(c, a):
    w = generator_failure(c, a)
    if w is not None:
        return _verdict("E6", Witness("not_generator", (a,) + w))
    return _verdict("E6", checked=c.n_objects ** 2)


def check_axioms_R_E(c: FiniteConcreteCategory, a: int, suite: str = "E") -> AxiomReport:
    if suite in ("R", "R'"):
        return check_axioms_R(c, a, suite)
    return check_axioms_E(c, a, suite)


def check_suite(c: FiniteConcreteCategory, suite: str, a: Optional[int] = None) -> AxiomReport:
    if suite == "C":
        return check_axioms_C(c)
    if suite == "G":
        return check_axioms_G(c)
    if a is None:
        raise ValueError(f"suite {suite} needs an object")
    if suite == "RC":
        return check_axioms_RC(c, a)
    if suite in ("R", "R'", "E", "E'"):
        return check_axioms_R_E(c, a, suite)
    raise ValueError(f"unknown suite {suite!r}")


# ----------------------------------------------------------------------
# independent re-verification of witnesses


def recheck(c: FiniteConcreteCategory, w: Witness) -> bool:
    """True iff the witness still demonstrates a failure in ``c``."""
    k, d = w.kind, w.data
    if k == "empty_hom":
        return not c.hom(*d)
    if k == "not_strict_epi":
        f = d[0]
        sw = strict_epi_witness(c, f)
        if sw is None:
            return False
        g, hs = sw
        return is_compatible(c, f, g) and len([h for h in c.hom(c.dst[f], c.dst[g])
                                               if c.compose(h, f) == g]) != 1
    if k == "non_invertible_endo":
        e = d[0]
        return c.src[e] == c.dst[e] and not any(
            c.compose(g, e) == c.identity[c.src[e]] for g in c.hom(c.src[e], c.src[e]))
    if k == "empty_fiber":
        return c.fiber_sizes[d[0]] == 0
    if k == "missing_quotient":
        x, auts = d
        return find_quotient(c, x, auts) is None
    if k == "quotient_not_preserved":
        x, auts = d
        q = find_quotient(c, x, auts)
        return q is not None and not _quotient_preserved_by_fiber(c, x, auts, q)
    if k == "quotient_not_preserved_by_hom":
        a, x, auts = d
        q = find_quotient(c, x, auts)
        return q is not None and not hom_quotient_preserved(c, a, x, auts, q)
    if k == "strict_epi_not_surjective":
        f = d[0]
        return len(set(c.fmap[f])) != c.fiber_sizes[c.dst[f]] and is_strict_epi(c, f)
    if k == "empty_diagram":
        return not any(c.fiber_sizes)
    if k == "no_top":
        return DiagramPoset(c).top() is None
    if k == "no_meet":
        p = DiagramPoset(c)
        return p.meet(PointedObject(d[0], d[1]), PointedObject(d[2], d[3])) is None
    if k == "missing_terminal":
        return terminal_object(c) is None
    if k == "missing_initial":
        return initial_object(c) is None
    if k == "missing_pullback":
        return requires_pullback(c, *d) and find_pullback(c, *d) is None
    if k == "missing_coproduct":
        return requires_coproduct(c, d) and find_coproduct(c, d) is None
    if k == "missing_coequalizer":
        return find_coequalizer(c, *d) is None
    if k == "no_image":
        try:
            epi_mono_factor(c, d[0])
        except NoImageObject:
            return True
        return False
    if k == "no_complement":
        i = d[0]
        return is_mono(c, i) and not is_iso(c, i) and complement(c, i) is None
    if k == "terminal_fiber_not_singleton":
        return terminal_object(c) == d[0] and c.fiber_sizes[d[0]] != 1
    if k == "pullback_not_preserved":
        cone = find_pullback(c, *d)
        return cone is not None and not _pullback_preserved_by_fiber(c, d[0], d[1], cone)
    if k == "initial_fiber_nonempty":
        return initial_object(c) is not None and c.fiber_sizes[d[0]] != 0
    if k == "coproduct_not_preserved":
        cop = find_coproduct(c, d)
        return cop is not None and not _coproduct_preserved_by_fiber(c, cop.legs, cop.obj)
    if k == "fiber_bijective_not_iso":
        f = d[0]
        return (c.fiber_sizes[c.src[f]] == c.fiber_sizes[c.dst[f]] == len(set(c.fmap[f]))
                and not is_iso(c, f))
    if k == "coequalizer_not_preserved_by_hom":
        a, f, g = d
        cq = find_coequalizer(c, f, g)
        return cq is not None and not hom_coequalizer_preserved(c, a, f, g, cq.legs[0])
    if k == "hom_into_initial":
        return initial_object(c) == d[1] and c.hom_count(d[0], d[1]) != 0
    if k == "coproduct_not_preserved_by_hom":
        a, x, y = d
        cop = find_coproduct(c, (x, y))
        return cop is not None and not hom_coproduct_preserved(c, a, cop.legs, cop.obj)
    if k == "hom_bijective_not_iso":
        a, f = d
        return _hom_bijective(c, a, f) and not is_iso(c, f)
    if k == "relation_not_kernel_pair":
        r1, r2 = d
        cq = find_coequalizer(c, r1, r2)
        q = cq.legs[0]
        return not is_limit_cone(c, c.src[r1], (r1, r2), pullback_cones(c, q, q))
    if k == "quotient_not_stable":
        r1, r2, u = d
        q = find_coequalizer(c, r1, r2).legs[0]
        pb = find_pullback(c, q, u)
        return pb is not None and not is_strict_epi(c, pb.legs[1])
    if k == "action_not_effective":
        x, auts = d
        q = find_quotient(c, x, auts)
        kp = find_pullback(c, q.legs[0], q.legs[0])
        cop = find_coproduct(c, (x,) * len(auts))
        e = _codiagonal_pair(c, cop, kp, auts)
        return e is None or not is_strict_epi(c, e)
    if k == "coproduct_not_stable":
        x, y, u = d
        cop = find_coproduct(c, (x, y))
        b1, b2 = find_pullback(c, cop.legs[0], u), find_pullback(c, cop.legs[1], u)
        return not is_coproduct_cocone(c, (b1.legs[1], b2.legs[1]), c.src[u])
    if k == "strict_epi_not_preserved_by_hom":
        a, f = d
        images = {c.compose(f, u) for u in c.hom(a, c.src[f])}
        return is_strict_epi(c, f) and len(images) != c.hom_count(a, c.dst[f])
    if k == "initial_object":
        return all(c.hom_count(d[0], t) == 1 for t in c.objects)
    if k == "coproduct_split":
        i1, i2 = d
        nontrivial = all(not all(c.hom_count(c.src[i], t) == 1 for t in c.objects) for i in (i1, i2))
        return nontrivial and is_coproduct_cocone(c, (i1, i2), c.dst[i1])
    if k == "not_generator":
        a, x, z = d
        ax, ax_arrows = precomposition_action(c, a, x)
        az, az_arrows = precomposition_action(c, a, z)
        zidx = {u: i for i, u in enumerate(az_arrows)}
        induced = {tuple(zidx[c.compose(f, u)] for u in ax_arrows) for f in c.hom(x, z)}
        equivariant = set(iter_equivariant_maps(ax, az))
        return len(induced) != c.hom_count(x, z) or induced != equivariant
    raise ValueError(f"unknown witness kind {k!r}")
