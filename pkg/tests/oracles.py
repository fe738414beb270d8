"""Brute-force reference computations.

These work directly on multiplication tables and permutation tuples and do
not call into galoiscat, so they can be used to check it.
"""

from itertools import combinations, permutations, product
from math import factorial


def table(g):
    return [list(row) for row in g.compose]


def identity_of(t):
    n = len(t)
    return next(e for e in range(n) if all(t[e][x] == x == t[x][e] for x in range(n)))


def inverses(t):
    e = identity_of(t)
    return [next(b for b in range(len(t)) if t[a][b] == e) for a in range(len(t))]


def all_subgroups(t):
    """Every subset containing the identity and closed under products."""
    n, e = len(t), identity_of(t)
    rest = [x for x in range(n) if x != e]
    out = []
    for k in range(len(rest) + 1):
        for extra in combinations(rest, k):
            s = frozenset((e,) + extra)
            if all(t[a][b] in s for a in s for b in s):
                out.append(s)
    return out


def conjugate(t, h, g):
    inv = inverses(t)
    return frozenset(t[t[g][x]][inv[g]] for x in h)


def subgroup_classes(t):
    subs = all_subgroups(t)
    seen, classes = set(), []
    for h in subs:
        if h in seen:
            continue
        cls = {conjugate(t, h, g) for g in range(len(t))}
        seen |= cls
        classes.append(cls)
    return classes


def is_normal(t, h):
    return all(conjugate(t, h, g) == h for g in range(len(t)))


def core(t, h):
    out = frozenset(range(len(t)))
    for g in range(len(t)):
        out &= conjugate(t, h, g)
    return out


def coset_table(t, h):
    """Left multiplication on the left cosets ``gH``, cosets listed by first appearance."""
    cosets = []
    for g in range(len(t)):
        c = frozenset(t[g][x] for x in h)
        if c not in cosets:
            cosets.append(c)
    idx = {c: i for i, c in enumerate(cosets)}
    rows = []
    for g in range(len(t)):
        rows.append(tuple(idx[frozenset(t[g][x] for x in c)] for c in cosets))
    return rows


def actions_isomorphic(rows1, rows2):
    """Exhaustive bijection search between two actions given as rows per element."""
    n = len(rows1[0]) if rows1 else 0
    if n != (len(rows2[0]) if rows2 else 0):
        return False
    for p in permutations(range(n)):
        if all(p[r1[x]] == r2[p[x]] for r1, r2 in zip(rows1, rows2) for x in range(n)):
            return True
    return False


def orders(t):
    e = identity_of(t)
    out = []
    for a in range(len(t)):
        k, x = 1, a
        while x != e:
            x = t[x][a]
            k += 1
        out.append(k)
    return sorted(out)


def hall_counts(n_max, rank=2):
    """Subgroups of index n in the free group of the given rank."""
    a = {}
    for n in range(1, n_max + 1):
        a[n] = n * factorial(n) ** (rank - 1) - sum(factorial(n - i) ** (rank - 1) * a[i] for i in range(1, n))
    return a


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(q)))


def _transitive(perms, n):
    seen, stack = {0}, [0]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def transitive_tuples(n, rank=2):
    return [ps for ps in product(permutations(range(n)), repeat=rank) if _transitive(ps, n)]


def pointed_cover_count(n, rank=2):
    """Connected pointed covers = transitive tuples / (n-1)! relabellings fixing sheet 0."""
    return len(transitive_tuples(n, rank)) // factorial(n - 1)


def unpointed_cover_count(n, rank=2):
    """Orbits of transitive tuples under simultaneous conjugation."""
    seen, count = set(), 0
    for ps in transitive_tuples(n, rank):
        if ps in seen:
            continue
        count += 1
        for s in permutations(range(n)):
            inv = [0] * n
            for i, v in enumerate(s):
                inv[v] = i
            seen.add(tuple(_compose(_compose(s, p), tuple(inv)) for p in ps))
    return count


def generated_group(perms, n):
    ident = tuple(range(n))
    seen, frontier = {ident}, [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for p in perms:
                y = _compose(p, x)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def centralizer_size(perms, n):
    """Permutations of the sheets commuting with every voltage."""
    return sum(1 for s in permutations(range(n))
               if all(_compose(s, p) == _compose(p, s) for p in perms))


def thread_count(groups, edges, nodes):
    """Compatible tuples in the product of all level groups."""
    count = 0
    for vals in product(*(range(groups[n].size) for n in nodes)):
        a = dict(zip(nodes, vals))
        if all(f.map[a[hi]] == a[lo] for (hi, lo), f in edges.items()):
            count += 1
    return count
