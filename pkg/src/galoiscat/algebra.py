"""Finite monoids and groups given by full composition tables.

Elements are the dense indices ``0..size-1``. ``compose[i][j]`` is the product
``i * j``; for automorphism groups of objects this is ``i o j`` (apply ``j``
first).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Optional, Sequence

from . import config
from .errors import (
    BadIdentity,
    BadInverse,
    NonAssociative,
    NotAHomomorphism,
    NotASubgroup,
    SizeCapExceeded,
    TableShapeError,
)


@dataclass(frozen=True)
class FiniteMonoid:
    size: int
    compose: tuple
    identity: int
    name: str = field(default="M", compare=False)

    def mul(self, a: int, b: int) -> int:
        return self.compose[a][b]

    @property
    def elements(self) -> range:
        return range(self.size)

    @property
    def is_group(self) -> bool:
        return False

    def units(self) -> list[int]:
        e = self.identity
        return [a for a in self.elements
                if any(self.compose[a][b] == e and self.compose[b][a] == e
                       for b in self.elements)]


@dataclass(frozen=True)
class FiniteGroup(FiniteMonoid):
    inverse: tuple = ()

    @property
    def is_group(self) -> bool:
        return True

    def inv(self, a: int) -> int:
        return self.inverse[a]

    def order(self, a: int) -> int:
        k, x = 1, a
        while x != self.identity:
            x = self.compose[x][a]
            k += 1
        return k

    def conj(self, g: int, h: int) -> int:
        """``g h g^-1``."""
        return self.compose[self.compose[g][h]][self.inverse[g]]

    def generated(self, gens: Iterable[int]) -> frozenset:
        gens = list(gens)
        seen = {self.identity}
        frontier = [self.identity]
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.compose[x][s]
                    if y not in seen:
                        seen.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(seen)

    def is_abelian(self) -> bool:
        t = self.compose
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))


def _check_shape(size, compose):
    if size < 1:
        raise TableShapeError("size must be positive")
    if len(compose) != size or any(len(row) != size for row in compose):
        raise TableShapeError(f"compose table must be {size}x{size}")
    for row in compose:
        for v in row:
            if not (0 <= v < size):
                raise TableShapeError(f"entry {v} out of range 0..{size - 1}")


def _find_identity(size, t):
    for e in range(size):
        if all(t[e][x] == x and t[x][e] == x for x in range(size)):
            return e
    return None


def _check_assoc(size, t):
    for i in range(size):
        ti = t[i]
        for j in range(size):
            tij = t[ti[j]]
            tj = t[j]
            for k in range(size):
                if tij[k] != ti[tj[k]]:
                    raise NonAssociative(i, j, k)


def validate_monoid(size: int, compose: Sequence[Sequence[int]], identity: Optional[int] = None,
                    name: str = "M") -> FiniteMonoid:
    compose = tuple(tuple(int(v) for v in row) for row in compose)
    _check_shape(size, compose)
    if identity is None:
        identity = _find_identity(size, compose)
        if identity is None:
            raise BadIdentity(0)
    else:
        for x in range(size):
            if compose[identity][x] != x or compose[x][identity] != x:
                raise BadIdentity(identity)
    _check_assoc(size, compose)
    return FiniteMonoid(size, compose, identity, name)


def validate_group(size: int, compose: Sequence[Sequence[int]], identity: Optional[int] = None,
                   inverse: Optional[Sequence[int]] = None, name: str = "G") -> FiniteGroup:
    """Check the group laws exhaustively.

    Laws are tried in the order identity, inverses, associativity and the
    first failure is raised with its witness.
    """
    compose = tuple(tuple(int(v) for v in row) for row in compose)
    _check_shape(size, compose)
    if identity is None:
        identity = _find_identity(size, compose)
        if identity is None:
            raise BadIdentity(0)
    else:
        for x in range(size):
            if compose[identity][x] != x or compose[x][identity] != x:
                raise BadIdentity(identity)
    if inverse is None:
        inv = []
        for a in range(size):
            row = compose[a]
            cands = [b for b in range(size) if row[b] == identity and compose[b][a] == identity]
            if not cands:
                raise BadInverse(a)
            inv.append(cands[0])
        inverse = inv
    else:
        inverse = [int(v) for v in inverse]
        if len(inverse) != size:
            raise TableShapeError("inverse row has wrong length")
        for a, b in enumerate(inverse):
            if not (0 <= b < size) or compose[a][b] != identity or compose[b][a] != identity:
                raise BadInverse(a)
    _check_assoc(size, compose)
    return FiniteGroup(size, compose, identity, name, tuple(inverse))


def check_cap(what: str, size: int, cap: Optional[int] = None) -> None:
    cap = config.caps().group if cap is None else cap
    if size > cap:
        raise SizeCapExceeded(what, size, cap)


# --------------------------------------------------------------------------
# subgroups


@dataclass(frozen=True)
class Subgroup:
    parent: FiniteGroup = field(compare=False, repr=False)
    members: tuple

    @property
    def order(self) -> int:
        return len(self.members)

    def __post_init__(self):
        object.__setattr__(self, "_set", frozenset(self.members))

    def __contains__(self, x) -> bool:
        return x in self._set

    def sort_key(self):
        return (len(self.members), self.members)


def make_subgroup(g: FiniteGroup, members: Iterable[int]) -> Subgroup:
    mem = frozenset(members)
    if g.identity not in mem:
        raise NotASubgroup("missing identity")
    for a in mem:
        if g.inverse[a] not in mem:
            raise NotASubgroup(f"not closed under inverse at {a}")
        for b in mem:
            if g.compose[a][b] not in mem:
                raise NotASubgroup(f"not closed at ({a}, {b})")
    return Subgroup(g, tuple(sorted(mem)))


def subgroup_generated(g: FiniteGroup, gens: Iterable[int]) -> Subgroup:
    return Subgroup(g, tuple(sorted(g.generated(gens))))


def trivial_subgroup(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, (g.identity,))


def whole_group(g: FiniteGroup) -> Subgroup:
    return Subgroup(g, tuple(g.elements))


def subgroups(g: FiniteGroup, cap: Optional[int] = None) -> list[Subgroup]:
    """All subgroups, ordered by size then member list.

    Every subgroup is a join of cyclic subgroups, so we close the set of
    cyclic subgroups under pairwise joins.
    """
    check_cap(f"group {g.name}", g.size, cap)
    cyclic = {g.generated([a]) for a in g.elements}
    found = set(cyclic)
    frontier = list(found)
    while frontier:
        nxt = []
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                j = g.generated(h | c)
                if j not in found:
                    found.add(j)
                    nxt.append(j)
        frontier = nxt
    out = [Subgroup(g, tuple(sorted(s))) for s in found]
    out.sort(key=Subgroup.sort_key)
    return out


def conjugate(g: FiniteGroup, h: Subgroup, x: int) -> Subgroup:
    return Subgroup(g, tuple(sorted({g.conj(x, m) for m in h.members})))


def is_normal(g: FiniteGroup, h: Subgroup) -> bool:
    s = set(h.members)
    return all(g.conj(x, m) in s for x in g.elements for m in h.members)


def conjugacy_classes_of_subgroups(g: FiniteGroup, cap: Optional[int] = None) -> list[list[Subgroup]]:
    subs = subgroups(g, cap)
    assigned = set()
    classes = []
    for h in subs:
        if h.members in assigned:
            continue
        cls = {conjugate(g, h, x).members for x in g.elements}
        assigned |= cls
        classes.append([Subgroup(g, m) for m in sorted(cls, key=lambda m: (len(m), m))])
    return classes


def normal_core(g: FiniteGroup, h: Subgroup) -> Subgroup:
    make_subgroup(g, h.members)
    core = set(h.members)
    for x in g.elements:
        core &= set(conjugate(g, h, x).members)
    return Subgroup(g, tuple(sorted(core)))


def cosets(g: FiniteGroup, h: Subgroup) -> list[tuple]:
    """Left cosets ``xH``: ``H`` first, the rest by least element."""
    seen = set()
    out = []
    for x in g.elements:
        if x in seen:
            continue
        c = tuple(sorted({g.compose[x][m] for m in h.members}))
        seen.update(c)
        out.append(c)
    out.sort(key=lambda c: (g.identity not in c, c[0]))
    return out


# --------------------------------------------------------------------------
# homomorphisms


@dataclass(frozen=True)
class GroupHom:
    source: FiniteGroup = field(repr=False)
    target: FiniteGroup = field(repr=False)
    map: tuple

    def __call__(self, x: int) -> int:
        return self.map[x]


def make_hom(source: FiniteMonoid, target: FiniteMonoid, mapping: Sequence[int]) -> GroupHom:
    mapping = tuple(int(v) for v in mapping)
    if len(mapping) != source.size or any(not (0 <= v < target.size) for v in mapping):
        raise NotAHomomorphism("map has wrong shape")
    if mapping[source.identity] != target.identity:
        raise NotAHomomorphism("identity not preserved")
    ts, tt = source.compose, target.compose
    for a in source.elements:
        for b in source.elements:
            if mapping[ts[a][b]] != tt[mapping[a]][mapping[b]]:
                raise NotAHomomorphism(f"product ({a}, {b}) not preserved")
    return GroupHom(source, target, mapping)


def hom_image(f: GroupHom) -> frozenset:
    return frozenset(f.map)


def hom_is_surjective(f: GroupHom) -> bool:
    return len(set(f.map)) == f.target.size


def hom_kernel(f: GroupHom) -> Subgroup:
    e = f.target.identity
    return Subgroup(f.source, tuple(x for x in f.source.elements if f.map[x] == e))


def compose_homs(g: GroupHom, f: GroupHom) -> GroupHom:
    """``g o f``."""
    return GroupHom(f.source, g.target, tuple(g.map[v] for v in f.map))


def identity_hom(g: FiniteGroup) -> GroupHom:
    return GroupHom(g, g, tuple(g.elements))


def opposite(g: FiniteMonoid) -> FiniteMonoid:
    t = g.compose
    table = tuple(tuple(t[j][i] for j in range(g.size)) for i in range(g.size))
    name = g.name[:-3] if g.name.endswith("^op") else g.name + "^op"
    if isinstance(g, FiniteGroup):
        return FiniteGroup(g.size, table, g.identity, name, g.inverse)
    return FiniteMonoid(g.size, table, g.identity, name)


def relabel(g: FiniteGroup, perm: Sequence[int], name: Optional[str] = None) -> FiniteGroup:
    """Copy of ``g`` with element ``x`` renamed ``perm[x]``."""
    n = g.size
    inv = [0] * n
    for x, y in enumerate(perm):
        inv[y] = x
    table = tuple(tuple(perm[g.compose[inv[i]][inv[j]]] for j in range(n)) for i in range(n))
    inverse = tuple(perm[g.inverse[inv[i]]] for i in range(n))
    return FiniteGroup(n, table, perm[g.identity], name or g.name, inverse)


# --------------------------------------------------------------------------
# isomorphism


def greedy_generators(g: FiniteGroup) -> list[int]:
    """Small generating set: repeatedly add the element enlarging the span most."""
    gens: list[int] = []
    span = frozenset([g.identity])
    while len(span) < g.size:
        best, best_span = None, span
        for a in g.elements:
            if a in span:
                continue
            s = g.generated(gens + [a])
            if len(s) > len(best_span):
                best, best_span = a, s
        gens.append(best)
        span = best_span
    return gens


def _order_profile(g: FiniteGroup):
    return sorted(g.order(a) for a in g.elements)


def _words(g: FiniteGroup, gens):
    """Each element as (parent element, generator position) in BFS order."""
    parent = {g.identity: None}
    order = [g.identity]
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        for k, s in enumerate(gens):
            y = g.compose[x][s]
            if y not in parent:
                parent[y] = (x, k)
                order.append(y)
    return order, parent


def group_isomorphic(g1: FiniteGroup, g2: FiniteGroup, cap: Optional[int] = None) -> Optional[GroupHom]:
    """Isomorphism ``g1 -> g2`` found by backtracking on generator images, or None."""
    check_cap(f"group {g1.name}", g1.size, cap)
    check_cap(f"group {g2.name}", g2.size, cap)
    if g1.size != g2.size or _order_profile(g1) != _order_profile(g2):
        return None
    gens = greedy_generators(g1)
    order, parent = _words(g1, gens)
    orders2 = [g2.order(b) for b in g2.elements]

    def extend(images):
        m = [None] * g1.size
        m[g1.identity] = g2.identity
        for x in order[1:]:
            px, k = parent[x]
            m[x] = g2.compose[m[px]][images[k]]
        if len(set(m)) != g1.size:
            return None
        t1, t2 = g1.compose, g2.compose
        for a in g1.elements:
            for b in g1.elements:
                if m[t1[a][b]] != t2[m[a]][m[b]]:
                    return None
        return tuple(m)

    def search(images):
        if len(images) == len(gens):
            return extend(images)
        want = g1.order(gens[len(images)])
        for b in g2.elements:
            if orders2[b] != want or b in images:
                continue
            r = search(images + [b])
            if r is not None:
                return r
        return None

    m = search([])
    return None if m is None else GroupHom(g1, g2, m)


def permutation_group(perms: Iterable[Sequence[int]], degree: int, name: str = "Perm"):
    """Group generated by permutations of ``range(degree)``.

    Returns ``(group, elements)``; elements are sorted tuples, so the identity
    is element 0. Product is composition: ``(p*q)(i) = p[q[i]]``.
    """
    ident = tuple(range(degree))
    gens = [tuple(p) for p in perms]
    seen = {ident}
    frontier = [ident]
    cap = config.caps().group
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = tuple(s[i] for i in x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
                    if len(seen) > cap:
                        raise SizeCapExceeded(f"permutation group {name}", len(seen), cap)
        frontier = nxt
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    table = tuple(tuple(index[tuple(p[i] for i in q)] for q in elems) for p in elems)
    inverse = []
    for p in elems:
        inv = [0] * degree
        for i, v in enumerate(p):
            inv[v] = i
        inverse.append(index[tuple(inv)])
    return FiniteGroup(len(elems), table, 0, name, tuple(inverse)), elems


def group_from_products(size, mul, identity=0, name="G") -> FiniteGroup:
    table = [[mul(a, b) for b in range(size)] for a in range(size)]
    return validate_group(size, table, identity, name=name)


def direct_product(g: FiniteGroup, h: FiniteGroup, name=None) -> FiniteGroup:
    pairs = list(product(g.elements, h.elements))
    idx = {p: i for i, p in enumerate(pairs)}
    table = tuple(
        tuple(idx[(g.compose[a][c], h.compose[b][d])] for (c, d) in pairs) for (a, b) in pairs
    )
    inverse = tuple(idx[(g.inverse[a], h.inverse[b])] for (a, b) in pairs)
    return FiniteGroup(len(pairs), table, idx[(g.identity, h.identity)],
                       name or f"{g.name}x{h.name}", inverse)
