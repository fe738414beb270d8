"""Finite inverse systems of finite groups and their thread groups.

Edges point from a finer level to a coarser one (``hi -> lo``) and carry a
surjective homomorphism. A profinite group is only ever seen through such a
finite truncation: its elements are compatible threads, and an action is
continuous when it factors through one of the levels.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import config
from .actions import GAction, action_kernel, classify_transitive
from .algebra import (
    FiniteGroup,
    GroupHom,
    compose_homs,
    hom_is_surjective,
    hom_kernel,
    identity_hom,
    make_hom,
)
from .errors import InvalidInverseSystem, SizeCapExceeded


@dataclass
class InverseSystem:
    name: str
    nodes: list
    groups: dict
    edges: dict                     # (hi, lo) -> GroupHom
    _paths: dict = field(default_factory=dict, repr=False)

    def below(self, n) -> list:
        """Levels reachable from ``n`` (coarser ones), ``n`` included, in node order."""
        return [m for m in self.nodes if (n, m) in self._paths]

    def path_hom(self, hi, lo) -> Optional[GroupHom]:
        return self._paths.get((hi, lo))

    def finer_or_equal(self, u, v) -> bool:
        return (u, v) in self._paths


def make_system(name: str, nodes: Sequence, groups: dict, edges: dict) -> InverseSystem:
    """Validate and close an inverse system.

    Checks that every edge is a surjective homomorphism between the right
    groups, that all edge paths between two levels compose to the same map,
    and that any two levels have a greatest common refinement.
    """
    nodes = list(nodes)
    for (hi, lo), f in edges.items():
        if hi not in groups or lo not in groups:
            raise InvalidInverseSystem(f"edge {hi}->{lo} has an unknown endpoint")
        if f.source != groups[hi] or f.target != groups[lo]:
            raise InvalidInverseSystem(f"edge {hi}->{lo} maps between the wrong groups")
        if not hom_is_surjective(f):
            missing = sorted(set(groups[lo].elements) - set(f.map))[0]
            raise InvalidInverseSystem(f"edge {hi}->{lo} is not surjective (misses {missing})")
    paths = {(n, n): identity_hom(groups[n]) for n in nodes}
    changed = True
    while changed:
        changed = False
        for (hi, lo), f in edges.items():
            for (a, b), g in list(paths.items()):
                if b != hi:
                    continue
                h = compose_homs(f, g)
                if (a, lo) in paths:
                    if paths[(a, lo)].map != h.map:
                        raise InvalidInverseSystem(f"paths {a} -> {lo} disagree")
                else:
                    if a == lo:
                        raise InvalidInverseSystem(f"cycle through {a}")
                    paths[(a, lo)] = h
                    changed = True
    s = InverseSystem(name, nodes, dict(groups), dict(edges), paths)
    for i, u in enumerate(nodes):
        for v in nodes[i + 1:]:
            if meet(s, u, v) is None:
                raise InvalidInverseSystem(f"levels {u} and {v} have no common refinement")
    return s


def meet(s: InverseSystem, u, v):
    """Greatest common refinement of two levels."""
    lower = [w for w in s.nodes if s.finer_or_equal(w, u) and s.finer_or_equal(w, v)]
    for m in lower:
        if all(s.finer_or_equal(w, m) for w in lower):
            return m
    return None


@dataclass
class ThreadGroup:
    group: FiniteGroup
    threads: list                   # thread k is a tuple indexed like system.nodes
    projections: dict               # node -> GroupHom

    def thread(self, k: int) -> dict:
        return dict(zip(self._nodes, self.threads[k]))

    _nodes: list = field(default_factory=list, repr=False)


def limit_threads(s: InverseSystem, cap: Optional[int] = None) -> ThreadGroup:
    """All compatible threads, multiplied componentwise."""
    cap = cap if cap is not None else config.caps().threads
    order = list(s.nodes)
    # choose values at the finest levels first; everything else is forced
    maximal = [n for n in order if not any(m != n and s.finer_or_equal(m, n) for m in order)]
    pos = {n: i for i, n in enumerate(order)}
    threads = []

    def run(k, assign):
        if k == len(maximal):
            threads.append(tuple(assign[n] for n in order))
            if len(threads) > cap:
                raise SizeCapExceeded("thread group", len(threads), cap)
            return
        top = maximal[k]
        for g in s.groups[top].elements:
            added = []
            ok = True
            for lo in s.below(top):
                v = s.path_hom(top, lo).map[g]
                if lo in assign:
                    if assign[lo] != v:
                        ok = False
                        break
                else:
                    assign[lo] = v
                    added.append(lo)
            if ok:
                run(k + 1, assign)
            for n in added:
                del assign[n]
    run(0, {})
    threads.sort()
    idx = {t: i for i, t in enumerate(threads)}
    groups = [s.groups[n] for n in order]
    ident = tuple(g.identity for g in groups)
    table = tuple(tuple(idx[tuple(g.compose[a[i]][b[i]] for i, g in enumerate(groups))] for b in threads)
                  for a in threads)
    inverse = tuple(idx[tuple(g.inverse[a[i]] for i, g in enumerate(groups))] for a in threads)
    grp = FiniteGroup(len(threads), table, idx[ident], f"lim {s.name}", inverse)
    projections = {n: make_hom(grp, s.groups[n], [t[pos[n]] for t in threads]) for n in order}
    tg = ThreadGroup(grp, threads, projections)
    tg._nodes = order
    return tg


@dataclass(frozen=True)
class LevelVerdict:
    node: object
    surjective: bool
    missing: Optional[int] = None


def projections_surjective(s: InverseSystem, tg: Optional[ThreadGroup] = None) -> list[LevelVerdict]:
    tg = tg or limit_threads(s)
    out = []
    for n in s.nodes:
        image = set(tg.projections[n].map)
        missing = sorted(set(s.groups[n].elements) - image)
        out.append(LevelVerdict(n, not missing, missing[0] if missing else None))
    return out


@dataclass
class ContinuousActionSpec:
    system: InverseSystem
    level: object
    action: GAction                 # action of the level group
    candidates: tuple = ()          # every minimal level, in node order


def factor_action(s: InverseSystem, e: GAction, tg: Optional[ThreadGroup] = None) -> ContinuousActionSpec:
    """Coarsest level through whose projection the thread action ``e`` factors."""
    tg = tg or limit_threads(s)
    if e.actor != tg.group:
        raise InvalidInverseSystem("action is not an action of the thread group")
    ker = set(action_kernel(e).members)
    works = [n for n in s.nodes if set(hom_kernel(tg.projections[n]).members) <= ker]
    minimal = [n for n in works if not any(m != n and s.finer_or_equal(n, m) for m in works)]
    level = minimal[0]
    proj = tg.projections[level]
    g = s.groups[level]
    lift = {}
    for t in tg.group.elements:
        lift.setdefault(proj.map[t], t)
    table = tuple(tuple(e.act[lift[x]][p] for p in range(e.points)) for x in g.elements)
    return ContinuousActionSpec(s, level, GAction(g, e.points, table, f"{e.name}@{level}"), tuple(minimal))


def pullback_action(tg: ThreadGroup, node, e: GAction) -> GAction:
    """A level action viewed as an action of the thread group."""
    proj = tg.projections[node]
    table = tuple(e.act[proj.map[t]] for t in tg.group.elements)
    return GAction(tg.group, e.points, table, e.name)


@dataclass(frozen=True)
class TaggedAction:
    action: GAction
    level: object


def transitive_thread_actions(s: InverseSystem, max_points: int,
                              tg: Optional[ThreadGroup] = None) -> list[TaggedAction]:
    """Transitive actions of the thread group on at most ``max_points`` points, up to iso."""
    tg = tg or limit_threads(s)
    out = []
    for e in classify_transitive(tg.group):
        if e.points > max_points:
            continue
        spec = factor_action(s, e, tg)
        out.append(TaggedAction(e, spec.level))
    out.sort(key=lambda t: t.action.points)
    return out


def system_from_chain(groups: Sequence[FiniteGroup], maps: Sequence[Sequence[int]], name: str = "chain") -> InverseSystem:
    """``groups[0] <- groups[1] <- ...`` with ``maps[i]`` sending ``groups[i+1]`` onto ``groups[i]``."""
    nodes = [g.name for g in groups]
    if len(set(nodes)) != len(nodes):
        nodes = [f"L{i}" for i in range(len(groups))]
    gd = dict(zip(nodes, groups))
    edges = {(nodes[i + 1], nodes[i]): make_hom(groups[i + 1], groups[i], maps[i]) for i in range(len(maps))}
    return make_system(name, nodes, gd, edges)


def cyclic_chain(exponents: Sequence[int], p: int = 2) -> InverseSystem:
    """``Z/p^a <- Z/p^b <- ...`` with reduction maps."""
    from .catalog import cyclic
    groups = [cyclic(p ** k) for k in exponents]
    maps = [[x % (p ** exponents[i]) for x in range(p ** exponents[i + 1])] for i in range(len(exponents) - 1)]
    return system_from_chain(groups, maps, "Z/" + " <- Z/".join(str(p ** k) for k in exponents))

