"""Finite covers of finite connected graphs by permutation voltages.

A cover with ``n`` sheets assigns a permutation of ``range(n)`` to every edge
``(u, v)``: walking the edge from ``u`` to ``v`` moves sheet ``i`` to sheet
``perm[i]``. Voltages on the spanning tree are the identity, so a cover is
determined by one permutation per non-tree edge, i.e. by an action of the
free fundamental group on the fiber over the basepoint.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import permutations, product
from typing import Optional, Sequence

from . import config
from .actions import GAction
from .algebra import FiniteGroup, permutation_group
from .category import FiniteConcreteCategory, build_gset_category
from .errors import Disconnected, InvalidAction, SizeCapExceeded


@dataclass(frozen=True)
class BaseGraph:
    name: str
    n_vertices: int
    edges: tuple             # (u, v) per edge; loops and multi-edges allowed
    base: int
    tree: tuple              # indices of spanning-tree edges

    @property
    def non_tree(self) -> tuple:
        t = set(self.tree)
        return tuple(i for i in range(len(self.edges)) if i not in t)

    @property
    def rank(self) -> int:
        return len(self.edges) - len(self.tree)


def make_graph(n_vertices: int, edges: Sequence[tuple], base: int = 0, name: str = "B") -> BaseGraph:
    """Validate a graph and choose its breadth-first spanning tree from ``base``."""
    edges = tuple((int(u), int(v)) for u, v in edges)
    if not 0 <= base < n_vertices:
        raise InvalidAction(f"basepoint {base} is not a vertex")
    for u, v in edges:
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise InvalidAction(f"edge ({u}, {v}) has an unknown endpoint")
    seen = {base}
    tree = []
    queue = deque([base])
    while queue:
        x = queue.popleft()
        for i, (u, v) in enumerate(edges):
            if u == v:
                continue
            y = v if u == x else u if v == x else None
            if y is not None and y not in seen:
                seen.add(y)
                tree.append(i)
                queue.append(y)
    if len(seen) != n_vertices:
        raise Disconnected(f"graph {name} is not connected")
    return BaseGraph(name, n_vertices, edges, base, tuple(sorted(tree)))


def bouquet(r: int) -> BaseGraph:
    """One vertex with ``r`` loops."""
    return make_graph(1, [(0, 0)] * r, 0, f"wedge of {r} circles")


@dataclass(frozen=True)
class GraphCover:
    base: BaseGraph
    sheets: int
    voltages: tuple          # one permutation per non-tree edge, in edge order

    def voltage(self, edge: int) -> tuple:
        nt = self.base.non_tree
        if edge in nt:
            return self.voltages[nt.index(edge)]
        return tuple(range(self.sheets))


def _check_perm(p, n):
    if len(p) != n or sorted(p) != list(range(n)):
        raise InvalidAction(f"{list(p)} is not a permutation of {n} sheets")


def cover_from_action(base: BaseGraph, images: Sequence[Sequence[int]]) -> GraphCover:
    """Cover whose non-tree edges carry the given permutations."""
    images = tuple(tuple(p) for p in images)
    if len(images) != base.rank:
        raise InvalidAction(f"need {base.rank} permutations, got {len(images)}")
    n = len(images[0]) if images else 1
    for p in images:
        _check_perm(p, n)
    return GraphCover(base, n, images)


def normalize_voltages(base: BaseGraph, sheets: int, perms: dict) -> GraphCover:
    """Cover from voltages on arbitrary edges (missing ones are identities).

    Sheets over each vertex are relabelled by ``lam[v] = lam[u] o perm^-1``
    along the spanning tree, which makes every tree voltage the identity
    without changing the cover up to isomorphism over the base.
    """
    ident = tuple(range(sheets))
    volt = {e: tuple(perms.get(e, ident)) for e in range(len(base.edges))}
    for p in volt.values():
        _check_perm(p, sheets)

    def inv(p):
        q = [0] * len(p)
        for i, v in enumerate(p):
            q[v] = i
        return tuple(q)
    lam = {base.base: ident}
    pending = list(base.tree)
    while pending:
        rest = []
        for e in pending:
            u, v = base.edges[e]
            s = volt[e]
            if u in lam and v not in lam:
                lam[v] = tuple(lam[u][j] for j in inv(s))
            elif v in lam and u not in lam:
                lam[u] = tuple(lam[v][j] for j in s)
            elif u not in lam:
                rest.append(e)
        pending = rest
    out = []
    for e in base.non_tree:
        u, v = base.edges[e]
        li = inv(lam[u])
        out.append(tuple(lam[v][volt[e][li[i]]] for i in range(sheets)))
    return GraphCover(base, sheets, tuple(out))


def trivial_cover(base: BaseGraph, sheets: int) -> GraphCover:
    return GraphCover(base, sheets, tuple(tuple(range(sheets)) for _ in base.non_tree))


def cover_graph(cov: GraphCover) -> tuple[int, list]:
    """The covering graph: vertex ``(v, i)`` is numbered ``v * sheets + i``."""
    n = cov.sheets
    edges = []
    for e, (u, v) in enumerate(cov.base.edges):
        p = cov.voltage(e)
        for i in range(n):
            edges.append((u * n + i, v * n + p[i]))
    return cov.base.n_vertices * n, edges


def is_connected_cover(cov: GraphCover) -> bool:
    """Connectivity of the covering graph itself (union-find)."""
    nv, edges = cover_graph(cov)
    if nv == 0:
        return False
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x
    for u, v in edges:
        parent[find(u)] = find(v)
    return len({find(x) for x in range(nv)}) == 1


@dataclass(frozen=True)
class Monodromy:
    group: FiniteGroup
    elements: list           # permutation for each group element
    generators: tuple        # group element of each free generator
    action: GAction


def monodromy(cov: GraphCover) -> Monodromy:
    """Action on the fiber of the finite image of the free fundamental group."""
    n = cov.sheets
    g, elems = permutation_group(cov.voltages, n, "Mon")
    index = {p: i for i, p in enumerate(elems)}
    act = GAction(g, n, tuple(elems), "fiber")
    return Monodromy(g, elems, tuple(index[p] for p in cov.voltages), act)


# ----------------------------------------------------------------------
# classification


def _orbit_of(perms, start):
    seen = [start]
    pos = {start: 0}
    k = 0
    while k < len(seen):
        x = seen[k]
        for p in perms:
            y = p[x]
            if y not in pos:
                pos[y] = len(seen)
                seen.append(y)
        k += 1
    return seen


def _relabel(perms, order):
    pos = {x: i for i, x in enumerate(order)}
    return tuple(tuple(pos[p[x]] for x in order) for p in perms)


def _canonical_transitive(perms, points):
    """Least relabelling over breadth-first orders from every starting point."""
    return min(_relabel(perms, _orbit_of(perms, s)) for s in points)


def canonical_form(perms: Sequence[Sequence[int]], n: int) -> tuple:
    """Complete invariant of a tuple of permutations under simultaneous conjugacy.

    Orbits are put in canonical form separately and concatenated in sorted order.
    """
    perms = tuple(tuple(p) for p in perms)
    done, parts = set(), []
    for s in range(n):
        if s in done:
            continue
        orb = _orbit_of(perms, s)
        done.update(orb)
        parts.append(_canonical_transitive(_restrict(perms, orb), range(len(orb))))
    parts.sort(key=lambda t: (len(t[0]) if t else 0, t))
    out = [[] for _ in perms]
    off = 0
    for part in parts:
        size = len(part[0]) if part else 0
        for k, p in enumerate(part):
            out[k].extend(off + v for v in p)
        off += size
    return tuple(tuple(p) for p in out)


def _restrict(perms, orb):
    pos = {x: i for i, x in enumerate(orb)}
    return tuple(tuple(pos[p[x]] for x in orb) for p in perms)


def pointed_form(perms: Sequence[Sequence[int]]) -> tuple:
    """Complete invariant of a transitive tuple under conjugacy fixing sheet 0."""
    perms = tuple(tuple(p) for p in perms)
    return _relabel(perms, _orbit_of(perms, 0))


def classify_covers(base: BaseGraph, n: int, connected: bool = True, pointed: bool = True) -> list[GraphCover]:
    """Covers with ``n`` sheets up to isomorphism.

    By default these are connected covers with a marked sheet over the
    basepoint, which correspond to subgroups of index ``n`` of the free
    fundamental group. With ``pointed=False`` the mark is forgotten, giving
    conjugacy classes of such subgroups; with ``connected=False`` as well,
    every cover counts.
    """
    cap = config.caps().sheets
    if n > cap:
        raise SizeCapExceeded("sheets", n, cap)
    if pointed and not connected:
        raise ValueError("pointed classification is only defined for connected covers")
    r = base.rank
    if r == 0:
        return [trivial_cover(base, n)] if n == 1 or not connected else []
    perms = list(permutations(range(n)))
    found = set()
    for tup in product(perms, repeat=r):
        if connected and len(_orbit_of(tup, 0)) != n:
            continue
        found.add(pointed_form(tup) if pointed else canonical_form(tup, n))
    return [GraphCover(base, n, t) for t in sorted(found)]


def covers_are_isomorphic(c1: GraphCover, c2: GraphCover) -> bool:
    return c1.sheets == c2.sheets and canonical_form(c1.voltages, c1.sheets) == canonical_form(c2.voltages, c2.sheets)


# ----------------------------------------------------------------------
# deck transformations


def deck_transformations(cov: GraphCover) -> list[tuple]:
    """Sheet permutations commuting with every voltage."""
    if not is_connected_cover(cov):
        raise Disconnected("deck group of a disconnected cover")
    n = cov.sheets
    order = _orbit_of(cov.voltages, 0)
    out = []
    for t in range(n):
        tau = {0: t}
        ok = True
        for x in order:
            for p in cov.voltages:
                y, z = p[x], p[tau[x]]
                if y in tau:
                    if tau[y] != z:
                        ok = False
                        break
                else:
                    tau[y] = z
            if not ok:
                break
        if ok and len(set(tau.values())) == n:
            out.append(tuple(tau[x] for x in range(n)))
    return out


def deck_group(cov: GraphCover) -> FiniteGroup:
    g, _ = permutation_group(deck_transformations(cov), cov.sheets, "Deck")
    return g


def is_regular(cov: GraphCover) -> bool:
    return len(deck_transformations(cov)) == cov.sheets


def regular_closure(cov: GraphCover) -> GraphCover:
    """The regular cover with sheets the monodromy image, acted on by left translation."""
    mon = monodromy(cov)
    g = mon.group
    images = [tuple(g.compose[s][x] for x in g.elements) for s in mon.generators]
    return GraphCover(cov.base, g.size, tuple(images))


def covering_maps(c1: GraphCover, c2: GraphCover) -> list[tuple]:
    """Sheet maps ``f`` with ``f o perm1 = perm2 o f`` on every edge."""
    if c1.base != c2.base:
        raise InvalidAction("covers of different graphs")
    return list(_maps_commuting(c1, c2))


# ----------------------------------------------------------------------
# covers as a category


def _all_covers(base: BaseGraph, max_sheets: int) -> list[GraphCover]:
    out = [GraphCover(base, 0, tuple(() for _ in base.non_tree))]
    for n in range(1, max_sheets + 1):
        out.extend(classify_covers(base, n, connected=False, pointed=False))
    return out


def _maps_commuting(c1: GraphCover, c2: GraphCover):
    """Backtracking over sheet maps commuting with the voltages."""
    n1, n2 = c1.sheets, c2.sheets
    if n1 == 0:
        yield ()
        return
    if n2 == 0:
        return
    roots, done = [], set()
    for s in range(n1):
        if s not in done:
            orb = _orbit_of(c1.voltages, s)
            done.update(orb)
            roots.append(s)

    def extend(k, f):
        if k == len(roots):
            yield tuple(f[x] for x in range(n1))
            return
        for t in range(n2):
            g = dict(f)
            g[roots[k]] = t
            stack = [roots[k]]
            ok = True
            while stack and ok:
                x = stack.pop()
                for p1, p2 in zip(c1.voltages, c2.voltages):
                    y, z = p1[x], p2[g[x]]
                    if y in g:
                        if g[y] != z:
                            ok = False
                            break
                    else:
                        g[y] = z
                        stack.append(y)
            if ok:
                yield from extend(k + 1, g)
    yield from extend(0, {})


def covers_as_category(base: BaseGraph, max_sheets: int, through: Optional[GraphCover] = None,
                       max_orbits: Optional[int] = 2) -> FiniteConcreteCategory:
    """Covers of ``base`` with at most ``max_sheets`` sheets and all covering maps.

    Without ``through`` every cover up to isomorphism is an object and the
    category carries no truncation promise. With ``through`` only the covers
    whose monodromy factors through that of the given connected cover are
    kept, with at most ``max_orbits`` components beyond the connected ones;
    that category is the finite-set model of one level of the fundamental
    group and satisfies the axioms within its truncation.
    """
    cap = config.caps()
    if max_sheets > cap.sheets and through is None:
        raise SizeCapExceeded("sheets", max_sheets, cap.sheets)
    if through is not None:
        return _level_category(base, max_sheets, through, max_orbits)
    covers = _all_covers(base, max_sheets)
    if len(covers) > cap.objects:
        raise SizeCapExceeded("category objects", len(covers), cap.objects)
    src, dst, maps = [], [], []
    for i, c1 in enumerate(covers):
        for j, c2 in enumerate(covers):
            for m in _maps_commuting(c1, c2):
                src.append(i)
                dst.append(j)
                maps.append(m)
                if len(maps) > cap.arrows:
                    raise SizeCapExceeded("category arrows", len(maps), cap.arrows)
    names = [f"K{c.sheets}.{k}" for k, c in enumerate(covers)]
    cat = FiniteConcreteCategory(f"Cov({base.name})", names, [c.sheets for c in covers],
                                 src, dst, maps, maps, [f"f{k}" for k in range(len(maps))])
    cat.covers = covers
    return cat


def _level_category(base, max_sheets, through, max_orbits):
    if not is_connected_cover(through):
        raise Disconnected("the level cover must be connected")
    mon = monodromy(through)
    c = build_gset_category(mon.group, max_sheets, max_orbits, name=f"Cov({base.name}) via {mon.group.size}")
    c.covers = [GraphCover(base, e.points, tuple(e.act[s] for s in mon.generators)) for e in c.models]
    return c
