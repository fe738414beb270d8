"""Galois objects, Galois closures and the cofinal diagram of Galois objects.

Throughout, ``c`` is a category whose connected objects satisfy the C axioms
and the fiber functor is the one carried by ``c``. A pointed object
``(a, A)`` is Galois when ``h -> F(h)(a)`` is a bijection ``Aut(A) -> F(A)``.
The Galois objects, ordered by domination, form an inverse system of finite
groups ``Aut(A)^op`` whose thread group acts on every fiber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .actions import GAction, coset_action
from .algebra import FiniteGroup, GroupHom, Subgroup, is_normal, make_hom, opposite
from .category import (
    DiagramPoset,
    FiniteConcreteCategory,
    PointedObject,
    aut_group,
    category_from_actions,
    connected_decompose,
    end_monoid,
    full_subcategory,
    initial_object,
    is_connected,
)
from .errors import AxiomPrereqFailed, GaloisError, NoMeet, NotGalois
from .profinite import InverseSystem, ThreadGroup, limit_threads, make_system


@dataclass(frozen=True)
class GaloisCertificate:
    node: PointedObject
    auts: tuple          # arrow ids of Aut(A), in aut_group order
    table: tuple         # table[k] = F(auts[k])(a)
    inverse: tuple       # inverse[p] = k with table[k] = p

    @property
    def order(self) -> int:
        return len(self.auts)


def _connected(c: FiniteConcreteCategory, x: int) -> bool:
    # without an empty initial object the category is taken to be the connected part already
    i = initial_object(c)
    if i is None or c.fiber_sizes[i] > 0:
        return c.fiber_sizes[x] > 0
    return c.fiber_sizes[x] > 0 and is_connected(c, x)


def _connected_objects(c: FiniteConcreteCategory) -> list[int]:
    return [x for x in c.objects if _connected(c, x)]


def _evaluation(c: FiniteConcreteCategory, a: int, point: int) -> Optional[tuple]:
    _, auts = aut_group(c, a)
    table = tuple(c.fmap[h][point] for h in auts)
    if len(table) != c.fiber_sizes[a] or len(set(table)) != len(table):
        return None
    inverse = [0] * len(table)
    for k, p in enumerate(table):
        inverse[p] = k
    return tuple(auts), table, tuple(inverse)


def is_galois(c: FiniteConcreteCategory, p: PointedObject) -> Optional[GaloisCertificate]:
    """Certificate that ``p`` is Galois, or None.

    Requires a nonempty fiber and every endomorphism of the object to be
    invertible. The verdict is recomputed at every point of the fiber and
    must not depend on it.
    """
    a = p.obj
    if not 0 <= p.point < c.fiber_sizes[a]:
        raise AxiomPrereqFailed("C", "C0", f"{c.obj_names[a]} has no point {p.point}")
    m, _ = end_monoid(c, a)
    if not isinstance(m, FiniteGroup):
        raise AxiomPrereqFailed("C", "C0", f"{c.obj_names[a]} has a non-invertible endomorphism")
    verdicts = [_evaluation(c, a, q) for q in range(c.fiber_sizes[a])]
    if len({v is None for v in verdicts}) != 1:
        raise GaloisError(f"Galois verdict for {c.obj_names[a]} depends on the point")
    ev = verdicts[p.point]
    if ev is None:
        return None
    return GaloisCertificate(p, *ev)


def galois_objects(c: FiniteConcreteCategory) -> list[GaloisCertificate]:
    """One certificate ``(A, 0)`` per connected Galois object, in object order."""
    out = []
    for x in _connected_objects(c):
        cert = is_galois(c, PointedObject(x, 0))
        if cert is not None:
            out.append(cert)
    return out


def is_galois_iff_normal_check(g: FiniteGroup, h: Subgroup) -> bool:
    """Whether is_galois on ``G/H`` agrees with normality of ``H``."""
    e = coset_action(g, h)
    c = category_from_actions(g, [e], ["G/H"], "G/H", None)
    return (is_galois(c, PointedObject(0, 0)) is not None) == is_normal(g, h)


# ----------------------------------------------------------------------
# closure


@dataclass(frozen=True)
class Closure:
    node: PointedObject
    certificate: GaloisCertificate
    evaluation: tuple    # arrows A -> X, indexed by the point F(u)(a) they reach


def _component_nodes(c: FiniteConcreteCategory, x: int) -> list[PointedObject]:
    if _connected(c, x):
        return [PointedObject(x, p) for p in range(c.fiber_sizes[x])]
    d = connected_decompose(c, x)
    return [PointedObject(c.src[leg], q) for leg in d.components for q in range(c.fiber_sizes[c.src[leg]])]


def _closure_evaluation(c, a: PointedObject, x: int) -> Optional[tuple]:
    """Arrows ``A -> X`` sorted by where they send ``a``, if that is a bijection onto ``F(X)``."""
    reach = {}
    for u in c.hom(a.obj, x):
        p = c.fmap[u][a.point]
        if p in reach:
            return None
        reach[p] = u
    if len(reach) != c.fiber_sizes[x]:
        return None
    return tuple(reach[p] for p in range(c.fiber_sizes[x]))


def galois_closure(c: FiniteConcreteCategory, x: int, poset: Optional[DiagramPoset] = None) -> Closure:
    """Least Galois pointed object dominating every point of ``x``.

    Computed as the meet of all pointed copies of ``x`` and then checked
    against an exhaustive search for the coarsest Galois node below them.
    """
    if c.fiber_sizes[x] == 0:
        raise AxiomPrereqFailed("C", "C0", f"{c.obj_names[x]} has an empty fiber")
    poset = poset or DiagramPoset(c, _connected_objects(c))
    targets = _component_nodes(c, x)
    m = poset.glb(targets)
    if m is None:
        raise NoMeet(f"pointed copies of {c.obj_names[x]} have no meet")
    node = PointedObject(m.obj, 0)
    cert = is_galois(c, node)
    if cert is None:
        raise NotGalois(f"meet {c.obj_names[m.obj]} of {c.obj_names[x]} is not Galois")
    if not (poset.le(node, m) and poset.le(m, node)):
        raise GaloisError(f"points of {c.obj_names[m.obj]} are not equivalent")

    below = [g.node for g in galois_objects(c) if all(poset.le(g.node, t) for t in targets)]
    coarsest = [u for u in below if all(poset.le(v, u) for v in below)]
    if not coarsest or not (poset.le(coarsest[0], node) and poset.le(node, coarsest[0])):
        raise GaloisError(f"closure of {c.obj_names[x]} disagrees with the exhaustive search")
    ev = _closure_evaluation(c, node, x)
    if ev is None:
        raise GaloisError(f"a*: [{c.obj_names[node.obj]},{c.obj_names[x]}] -> F(X) is not bijective")
    return Closure(node, cert, ev)


# ----------------------------------------------------------------------
# the cofinal diagram


def transition_arrow(c: FiniteConcreteCategory, a: int, b: int) -> Optional[int]:
    """The unique arrow ``A -> B`` sending point 0 to point 0."""
    found = [u for u in c.hom(a, b) if c.fmap[u][0] == 0]
    if len(found) > 1:
        raise GaloisError(f"{len(found)} pointed arrows {c.obj_names[a]} -> {c.obj_names[b]}")
    return found[0] if found else None


def rho(c: FiniteConcreteCategory, ca: GaloisCertificate, cb: GaloisCertificate, x: int) -> GroupHom:
    """``rho_x(h)`` is the unique automorphism ``k`` of ``B`` with ``k o x = x o h``."""
    ga, _ = aut_group(c, ca.node.obj)
    gb, _ = aut_group(c, cb.node.obj)
    images = []
    for h in ca.auts:
        xh = c.compose(x, h)
        k = cb.inverse[c.fmap[xh][cb.node.point]]
        if c.compose(cb.auts[k], x) != xh:
            raise GaloisError(f"defining square fails for {c.describe_arrow(h)}")
        images.append(k)
    return make_hom(ga, gb, images)


@dataclass
class GaloisDiagram:
    category: FiniteConcreteCategory
    nodes: list                       # GaloisCertificate per node
    transitions: dict                 # (A, B) -> arrow id, A finer than B
    rhos: dict                        # (A, B) -> GroupHom Aut(A) -> Aut(B)
    system: InverseSystem             # groups Aut(A)^op, keyed by object name
    poset: DiagramPoset = field(repr=False, default=None)

    def certificate(self, a: int) -> GaloisCertificate:
        return next(g for g in self.nodes if g.node.obj == a)

    def key(self, a: int) -> str:
        return self.category.obj_names[a]


def cofinal_galois_diagram(c: FiniteConcreteCategory) -> GaloisDiagram:
    """Galois nodes, transitions and the inverse system of their automorphism groups.

    Cofinality is certified: every connected pointed object dominates some
    Galois node. Isomorphic Galois nodes are kept once.
    """
    objs = _connected_objects(c)
    if not objs:
        raise AxiomPrereqFailed("C", "C0", "no connected object with a nonempty fiber")
    poset = DiagramPoset(c, objs)
    nodes = []
    for cert in galois_objects(c):
        if not any(poset.le(cert.node, n.node) and poset.le(n.node, cert.node) for n in nodes):
            nodes.append(cert)
    free = poset.dominated_by([n.node for n in nodes])
    if free is not None:
        raise AxiomPrereqFailed("C", "C3", f"({free.point}, {c.obj_names[free.obj]}) dominates no Galois node")

    transitions, rhos = {}, {}
    for na in nodes:
        for nb in nodes:
            a, b = na.node.obj, nb.node.obj
            if a == b or not poset.le(na.node, nb.node):
                continue
            x = transition_arrow(c, a, b)
            r = rho(c, na, nb, x)
            if len(set(r.map)) != nb.order:
                raise GaloisError(f"rho {c.obj_names[a]} -> {c.obj_names[b]} is not surjective")
            transitions[(a, b)] = x
            rhos[(a, b)] = r

    names = [c.obj_names[n.node.obj] for n in nodes]
    groups, ops = {}, {}
    for n, nm in zip(nodes, names):
        ops[n.node.obj] = opposite(aut_group(c, n.node.obj)[0])
        groups[nm] = ops[n.node.obj]
    edges = {(c.obj_names[a], c.obj_names[b]): make_hom(ops[a], ops[b], r.map) for (a, b), r in rhos.items()}
    system = make_system(f"Galois({c.name})", names, groups, edges)
    return GaloisDiagram(c, nodes, transitions, rhos, system, poset)


def ca_objects(c: FiniteConcreteCategory, cert: Optional[GaloisCertificate]) -> list[int]:
    """Connected objects ``X`` on which ``[A, X] -> F(X)`` is a bijection."""
    if cert is None:
        raise NotGalois("C_A needs a Galois object")
    return [x for x in _connected_objects(c) if _closure_evaluation(c, cert.node, x) is not None]


def subcategory_CA(c: FiniteConcreteCategory, cert: Optional[GaloisCertificate]) -> FiniteConcreteCategory:
    """The full subcategory on :func:`ca_objects`; objects are renumbered."""
    return full_subcategory(c, ca_objects(c, cert), f"C_{c.obj_names[cert.node.obj]}", truncation=None)


def commutes1(d: GaloisDiagram, a: int, b: int, x_obj: int) -> bool:
    """``x^*: [B, X] -> [A, X]`` is a bijection intertwining ``rho`` with precomposition."""
    c = d.category
    x = d.transitions[(a, b)]
    r = d.rhos[(a, b)]
    ca, cb = d.certificate(a), d.certificate(b)
    pulled = {v: c.compose(v, x) for v in c.hom(b, x_obj)}
    if sorted(pulled.values()) != sorted(c.hom(a, x_obj)):
        return False
    for k, h in enumerate(ca.auts):
        kb = cb.auts[r.map[k]]
        for v, vx in pulled.items():
            if pulled[c.compose(v, kb)] != c.compose(vx, h):
                return False
    return True


# ----------------------------------------------------------------------
# the fundamental group and its action on fibers


def fundamental_group(d: GaloisDiagram, cap: Optional[int] = None) -> ThreadGroup:
    """Threads through the ``Aut(A)^op``; the cone law is verified on every thread."""
    tg = limit_threads(d.system, cap)
    c = d.category
    for (a, b), r in d.rhos.items():
        pa, pb = tg.projections[c.obj_names[a]], tg.projections[c.obj_names[b]]
        if any(r.map[pa.map[t]] != pb.map[t] for t in tg.group.elements):
            raise GaloisError(f"cone law fails on {c.obj_names[a]} -> {c.obj_names[b]}")
    return tg


def fiber_action(d: GaloisDiagram, tg: ThreadGroup, x: int) -> GAction:
    """Left action of the thread group on ``F(X)``: ``h . y = F(x_y o h_A)(0)``."""
    c = d.category
    if c.fiber_sizes[x] == 0:
        return GAction(tg.group, 0, tuple(() for _ in tg.group.elements), c.obj_names[x])
    targets = _component_nodes(c, x)
    node = next(n for n in d.nodes
                if all(d.poset.le(n.node, t) for t in targets)) if targets else None
    if node is None:
        raise NoMeet(f"no Galois node dominates {c.obj_names[x]}")
    a = node.node.obj
    ev = _closure_evaluation(c, node.node, x)
    if ev is None:
        raise GaloisError(f"[{c.obj_names[a]},{c.obj_names[x]}] -> F(X) is not bijective")
    proj = tg.projections[c.obj_names[a]]
    table = []
    for t in tg.group.elements:
        h = node.auts[proj.map[t]]
        table.append(tuple(c.fmap[c.compose(ev[y], h)][0] for y in range(c.fiber_sizes[x])))
    return GAction(tg.group, c.fiber_sizes[x], tuple(table), c.obj_names[x])
