"""Finite left actions of groups and monoids, stored as tables.

``act[g][x]`` is ``g . x``. Stabilizers live in the acting group itself, so
``stabilizer(e, x)`` is ``{g : g . x = x}`` as a subgroup of ``e.actor``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional, Sequence

from .algebra import (
    FiniteGroup,
    FiniteMonoid,
    GroupHom,
    Subgroup,
    check_cap,
    conjugacy_classes_of_subgroups,
    cosets,
    greedy_generators,
    make_subgroup,
    permutation_group,
)
from .errors import (
    ActorMismatch,
    InvalidAction,
    MonoidActorUnsupported,
    NotByAutomorphisms,
    PointOutOfRange,
)


@dataclass(frozen=True)
class GAction:
    actor: FiniteMonoid = field(repr=False)
    points: int
    act: tuple
    name: str = field(default="E", compare=False)

    def __call__(self, g: int, x: int) -> int:
        return self.act[g][x]

    @property
    def is_group_action(self) -> bool:
        return self.actor.is_group


@dataclass(frozen=True)
class EquivariantMap:
    source: GAction = field(repr=False)
    target: GAction = field(repr=False)
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]

    @property
    def is_bijective(self) -> bool:
        return self.source.points == self.target.points and len(set(self.map)) == self.target.points

    @property
    def is_surjective(self) -> bool:
        return len(set(self.map)) == self.target.points


def make_action(actor: FiniteMonoid, points: int, table: Sequence[Sequence[int]], name: str = "E") -> GAction:
    """Validate and freeze an action table (one row per actor element)."""
    if len(table) != actor.size or any(len(row) != points for row in table):
        raise InvalidAction(f"action table must be {actor.size} x {points}")
    act = tuple(tuple(int(v) for v in row) for row in table)
    for g, row in enumerate(act):
        for x, y in enumerate(row):
            if not 0 <= y < points:
                raise PointOutOfRange(f"act({g}, {x}) = {y} outside 0..{points - 1}")
    e = actor.identity
    for x in range(points):
        if act[e][x] != x:
            raise InvalidAction(f"identity moves point {x}")
    for a in actor.elements:
        for b in actor.elements:
            ab = actor.compose[a][b]
            for x in range(points):
                if act[a][act[b][x]] != act[ab][x]:
                    raise InvalidAction(f"act({a}, act({b}, {x})) != act({a}*{b}, {x})")
    return GAction(actor, points, act, name)


def make_map(source: GAction, target: GAction, mapping: Sequence[int]) -> EquivariantMap:
    if source.actor != target.actor:
        raise ActorMismatch("source and target have different actors")
    m = tuple(int(v) for v in mapping)
    if len(m) != source.points or any(not 0 <= v < target.points for v in m):
        raise PointOutOfRange("map has wrong shape")
    for g in source.actor.elements:
        for x in range(source.points):
            if m[source.act[g][x]] != target.act[g][m[x]]:
                raise InvalidAction(f"map not equivariant at ({g}, {x})")
    return EquivariantMap(source, target, m)


def _require_group(e: GAction) -> FiniteGroup:
    if not e.actor.is_group:
        raise MonoidActorUnsupported(f"{e.actor.name} is not a group")
    return e.actor


def _check_point(e: GAction, x: int) -> None:
    if not 0 <= x < e.points:
        raise PointOutOfRange(f"point {x} outside 0..{e.points - 1}")


# --------------------------------------------------------------------------
# basic constructions


def trivial_action(g: FiniteMonoid, points: int = 1) -> GAction:
    return GAction(g, points, tuple(tuple(range(points)) for _ in g.elements), "trivial")


def empty_action(g: FiniteMonoid) -> GAction:
    return GAction(g, 0, tuple(() for _ in g.elements), "empty")


def regular_action(g: FiniteMonoid) -> GAction:
    """``g`` acting on itself by left multiplication."""
    return GAction(g, g.size, tuple(tuple(row) for row in g.compose), "regular")


def coset_action(g: FiniteGroup, h: Subgroup) -> GAction:
    """Action on left cosets ``xH``; point 0 is ``H`` itself."""
    make_subgroup(g, h.members)
    cs = cosets(g, h)
    where = {}
    for i, c in enumerate(cs):
        for m in c:
            where[m] = i
    table = tuple(tuple(where[g.compose[a][c[0]]] for c in cs) for a in g.elements)
    return GAction(g, len(cs), table, f"{g.name}/{list(h.members)}")


def disjoint_union(parts: Sequence[GAction]) -> tuple[GAction, list[EquivariantMap]]:
    """Coproduct of actions with its injections."""
    if not parts:
        raise InvalidAction("disjoint_union of nothing needs an actor; use empty_action")
    actor = parts[0].actor
    for p in parts:
        if p.actor != actor:
            raise ActorMismatch("summands have different actors")
    offsets = []
    n = 0
    for p in parts:
        offsets.append(n)
        n += p.points
    table = tuple(
        tuple(off + p.act[g][x] for p, off in zip(parts, offsets) for x in range(p.points))
        for g in actor.elements
    )
    total = GAction(actor, n, table, "+".join(p.name for p in parts))
    inj = [EquivariantMap(p, total, tuple(off + x for x in range(p.points)))
           for p, off in zip(parts, offsets)]
    return total, inj


def restrict_action(e: GAction, f: GroupHom) -> GAction:
    """Pull ``e`` back along ``f: H -> e.actor``."""
    if f.target != e.actor:
        raise ActorMismatch("homomorphism target is not the actor")
    return GAction(f.source, e.points, tuple(e.act[f.map[h]] for h in f.source.elements), e.name)


def subaction(e: GAction, pts: Iterable[int]) -> tuple[GAction, EquivariantMap]:
    """Restriction to an invariant subset, with its inclusion."""
    keep = sorted(set(pts))
    idx = {x: i for i, x in enumerate(keep)}
    rows = []
    for g in e.actor.elements:
        row = []
        for x in keep:
            y = e.act[g][x]
            if y not in idx:
                raise InvalidAction(f"subset not invariant: {g} sends {x} to {y}")
            row.append(idx[y])
        rows.append(tuple(row))
    sub = GAction(e.actor, len(keep), tuple(rows), e.name)
    return sub, EquivariantMap(sub, e, tuple(keep))


# --------------------------------------------------------------------------
# orbits and stabilizers


def orbits(e: GAction) -> list[tuple]:
    """Orbits sorted by least point."""
    _require_group(e)
    seen = set()
    out = []
    for x in range(e.points):
        if x in seen:
            continue
        orb = {e.act[g][x] for g in e.actor.elements}
        seen |= orb
        out.append(tuple(sorted(orb)))
    return out


def is_transitive(e: GAction) -> bool:
    if e.points == 0:
        return False
    if e.actor.is_group:
        return len(orbits(e)) == 1
    # monoid: cyclic on every generator means the whole set is one M-orbit
    return all(len({e.act[g][x] for g in e.actor.elements}) == e.points for x in range(e.points))


def is_cyclic(e: GAction) -> bool:
    """Some point generates the whole set (a quotient of the regular action)."""
    return any(len({e.act[g][x] for g in e.actor.elements}) == e.points for x in range(e.points))


def stabilizer(e: GAction, x: int) -> Subgroup:
    g = _require_group(e)
    _check_point(e, x)
    return Subgroup(g, tuple(a for a in g.elements if e.act[a][x] == x))


def fixed_points(e: GAction) -> list[int]:
    return [x for x in range(e.points) if all(e.act[g][x] == x for g in e.actor.elements)]


def action_kernel(e: GAction) -> Subgroup:
    g = _require_group(e)
    ident = tuple(range(e.points))
    return Subgroup(g, tuple(a for a in g.elements if e.act[a] == ident))


# --------------------------------------------------------------------------
# equivariant maps


def _actor_generators(actor: FiniteMonoid) -> list[int]:
    if actor.is_group and actor.size > 1:
        return greedy_generators(actor)
    return [a for a in actor.elements if a != actor.identity]


def iter_equivariant_maps(e1: GAction, e2: GAction, bijective: bool = False) -> Iterator[tuple]:
    """Yield every equivariant map ``e1 -> e2`` as a tuple, in a fixed order.

    Backtracking: choose the image of the least unassigned point and propagate
    along generators; a conflict prunes the branch.
    """
    if e1.actor != e2.actor:
        raise ActorMismatch("actions have different actors")
    n1, n2 = e1.points, e2.points
    if bijective and n1 != n2:
        return
    if n1 == 0:
        yield ()
        return
    if n2 == 0:
        return
    gens = _actor_generators(e1.actor)
    s_rows = [e1.act[g] for g in gens]
    t_rows = [e2.act[g] for g in gens]
    assign = [-1] * n1
    used = [False] * n2

    def place(x, y, trail):
        stack = [(x, y)]
        while stack:
            a, b = stack.pop()
            cur = assign[a]
            if cur == b:
                continue
            if cur != -1:
                return False
            if bijective and used[b]:
                return False
            assign[a] = b
            if bijective:
                used[b] = True
            trail.append(a)
            for sr, tr in zip(s_rows, t_rows):
                stack.append((sr[a], tr[b]))
        return True

    def undo(trail):
        for a in trail:
            if bijective:
                used[assign[a]] = False
            assign[a] = -1

    def search(start):
        x = start
        while x < n1 and assign[x] != -1:
            x += 1
        if x == n1:
            yield tuple(assign)
            return
        for y in range(n2):
            if bijective and used[y]:
                continue
            trail = []
            if place(x, y, trail):
                yield from search(x + 1)
            undo(trail)

    yield from search(0)


def hom_actions(e1: GAction, e2: GAction) -> list[EquivariantMap]:
    return [EquivariantMap(e1, e2, m) for m in iter_equivariant_maps(e1, e2)]


def action_isomorphic(e1: GAction, e2: GAction) -> Optional[EquivariantMap]:
    """First bijective equivariant map ``e1 -> e2``, or None."""
    if e1.actor != e2.actor:
        raise ActorMismatch("actions have different actors")
    if e1.points != e2.points:
        return None
    for m in iter_equivariant_maps(e1, e2, bijective=True):
        return EquivariantMap(e1, e2, m)
    return None


def automorphisms(e: GAction) -> list[tuple]:
    return list(iter_equivariant_maps(e, e, bijective=True))


def automorphism_group(e: GAction) -> tuple[FiniteGroup, list[tuple]]:
    """Equivariant automorphisms under composition ``(a*b)(x) = a(b(x))``."""
    return permutation_group(automorphisms(e), e.points, f"Aut({e.name})")


# --------------------------------------------------------------------------
# classification and quotients


def classify_transitive(g: FiniteGroup, cap: Optional[int] = None) -> list[GAction]:
    """One coset action per conjugacy class of subgroups, largest first."""
    check_cap(f"group {g.name}", g.size, cap)
    return [coset_action(g, cls[0]) for cls in conjugacy_classes_of_subgroups(g, cap)]


def quotient_action(e: GAction, auts: Iterable[Sequence[int]]) -> tuple[GAction, EquivariantMap]:
    """Collapse the orbits of a set of equivariant automorphisms of ``e``.

    Returns the quotient action and the projection onto it; quotient points
    are ordered by the least point of their class.
    """
    perms = [tuple(p) for p in auts]
    n = e.points
    for p in perms:
        if len(p) != n or sorted(p) != list(range(n)):
            raise NotByAutomorphisms(f"{p} is not a permutation of the points")
        for g in e.actor.elements:
            for x in range(n):
                if p[e.act[g][x]] != e.act[g][p[x]]:
                    raise NotByAutomorphisms(f"{p} not equivariant at ({g}, {x})")
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for p in perms:
        for x in range(n):
            a, b = find(x), find(p[x])
            if a != b:
                parent[max(a, b)] = min(a, b)
    roots = sorted({find(x) for x in range(n)})
    label = {r: i for i, r in enumerate(roots)}
    proj = tuple(label[find(x)] for x in range(n))
    table = tuple(tuple(proj[e.act[g][r]] for r in roots) for g in e.actor.elements)
    q = GAction(e.actor, len(roots), table, f"{e.name}/~")
    return q, EquivariantMap(e, q, proj)


def right_translations(g: FiniteGroup, h: Subgroup) -> list[tuple]:
    """``x -> x h`` for ``h`` in ``H``: automorphisms of the regular action."""
    return [tuple(g.compose[x][m] for x in g.elements) for m in h.members]
