"""Finite concrete categories with a fiber functor into finite sets.

Arrows are dense integer ids. Each arrow carries its fiber map ``fmap`` and a
``key`` that identifies it inside its hom-set. When no explicit composition
table is given, keys are read as maps and composed as such; this is how the
G-set and M-set models work (the key is the underlying equivariant map).

Limits and colimits are never constructed. They are looked up among the
existing objects by checking the universal property against every object.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterable, Optional, Sequence

from . import config
from .actions import (
    GAction,
    classify_transitive,
    disjoint_union,
    empty_action,
    iter_equivariant_maps,
)
from .algebra import FiniteGroup, FiniteMonoid, opposite
from .errors import (
    ArrowNotInCategory,
    AxiomPrereqFailed,
    CategoryError,
    NoImageObject,
    SizeCapExceeded,
)


@dataclass(frozen=True)
class PointedObject:
    obj: int
    point: int


@dataclass(frozen=True)
class Truncation:
    """How a model category was cut down to finitely many objects.

    ``bound`` is the largest fiber size for which every limit or colimit is
    guaranteed to have a representative among the objects.
    """
    max_points: int
    max_orbits: Optional[int] = None

    @property
    def bound(self) -> int:
        if self.max_orbits is None:
            return self.max_points
        return min(self.max_points, self.max_orbits)


class FiniteConcreteCategory:
    def __init__(self, name: str, obj_names: Sequence[str], fiber_sizes: Sequence[int],
                 src: Sequence[int], dst: Sequence[int], fmaps: Sequence[Sequence[int]],
                 keys: Optional[Sequence[tuple]] = None, arr_names: Optional[Sequence[str]] = None,
                 identities: Optional[Sequence[int]] = None, comp: Optional[dict] = None,
                 truncation: Optional[Truncation] = None, models: Optional[Sequence] = None):
        self.name = name
        self.obj_names = list(obj_names)
        self.fiber_sizes = [int(k) for k in fiber_sizes]
        self.src = list(src)
        self.dst = list(dst)
        self.fmap = [tuple(m) for m in fmaps]
        self.keys = [tuple(k) for k in keys] if keys is not None else list(self.fmap)
        self.arr_names = list(arr_names) if arr_names is not None else [str(i) for i in range(len(self.src))]
        self.comp = dict(comp) if comp is not None else None
        self.truncation = truncation
        self.models = list(models) if models is not None else None
        n = len(self.obj_names)
        if len(self.fiber_sizes) != n:
            raise CategoryError("one fiber size per object required")
        m = len(self.src)
        if not (len(self.dst) == len(self.fmap) == len(self.keys) == len(self.arr_names) == m):
            raise CategoryError("arrow tables have inconsistent lengths")
        self._hom: dict = {}
        self._by_key: dict = {}
        for a in range(m):
            s, d = self.src[a], self.dst[a]
            if not (0 <= s < n and 0 <= d < n):
                raise CategoryError(f"arrow {self.arr_names[a]} has unknown endpoint")
            if len(self.fmap[a]) != self.fiber_sizes[s] or any(
                    not 0 <= v < self.fiber_sizes[d] for v in self.fmap[a]):
                raise CategoryError(f"fiber map of arrow {self.arr_names[a]} has wrong shape")
            self._hom.setdefault((s, d), []).append(a)
            k = (s, d, self.keys[a])
            if k in self._by_key:
                raise CategoryError(f"arrows {self.arr_names[self._by_key[k]]} and "
                                    f"{self.arr_names[a]} share a key")
            self._by_key[k] = a
        if identities is None:
            identities = []
            for x in range(n):
                ident = tuple(range(len(self.keys[self._hom[(x, x)][0]]))) if self._hom.get((x, x)) else None
                found = self._by_key.get((x, x, ident)) if ident is not None else None
                if found is None:
                    raise CategoryError(f"no identity for object {self.obj_names[x]}")
                identities.append(found)
        self.identity = list(identities)
        self._comp_cache: dict = {}
        self._cache: dict = {}

    # ------------------------------------------------------------------
    # structure

    @property
    def n_objects(self) -> int:
        return len(self.obj_names)

    @property
    def n_arrows(self) -> int:
        return len(self.src)

    @property
    def objects(self) -> range:
        return range(len(self.obj_names))

    def hom(self, x: int, y: int) -> list[int]:
        return self._hom.get((x, y), [])

    def compose(self, g: int, f: int) -> int:
        """``g o f``."""
        key = (g, f)
        r = self._comp_cache.get(key)
        if r is not None:
            return r
        if self.dst[f] != self.src[g]:
            raise ArrowNotInCategory(f"{self.arr_names[g]} o {self.arr_names[f]} not composable")
        if self.comp is not None:
            r = self.comp.get(key)
            if r is None:
                raise CategoryError(f"missing composite {self.arr_names[g]} o {self.arr_names[f]}")
        else:
            kg = self.keys[g]
            k = tuple(kg[v] for v in self.keys[f])
            r = self._by_key.get((self.src[f], self.dst[g], k))
            if r is None:
                raise CategoryError(f"composite {self.arr_names[g]} o {self.arr_names[f]} not in category")
        self._comp_cache[key] = r
        return r

    def arrow_id(self, name: str) -> int:
        try:
            return self.arr_names.index(name)
        except ValueError:
            raise ArrowNotInCategory(f"no arrow named {name!r}") from None

    def object_id(self, name) -> int:
        if isinstance(name, int):
            if 0 <= name < self.n_objects:
                return name
            raise CategoryError(f"no object {name}")
        try:
            return self.obj_names.index(name)
        except ValueError:
            raise CategoryError(f"no object named {name!r}") from None

    def check_arrow(self, f: int) -> None:
        if not isinstance(f, int) or not 0 <= f < self.n_arrows:
            raise ArrowNotInCategory(f"no arrow {f!r}")

    def within_bound(self, size: int) -> bool:
        return self.truncation is None or size <= self.truncation.bound

    def hom_count(self, x: int, y: int) -> int:
        return len(self._hom.get((x, y), ()))

    def _counts_into(self, y: int) -> tuple:
        k = ("into", y)
        v = self._cache.get(k)
        if v is None:
            v = tuple(self.hom_count(t, y) for t in self.objects)
            self._cache[k] = v
        return v

    def _counts_out(self, x: int) -> tuple:
        k = ("out", x)
        v = self._cache.get(k)
        if v is None:
            v = tuple(self.hom_count(x, t) for t in self.objects)
            self._cache[k] = v
        return v

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(repr((self.obj_names, self.fiber_sizes, self.src, self.dst, self.fmap)).encode())
        return h.hexdigest()[:16]

    def check_laws(self) -> None:
        """Identity, associativity and functoriality of the fiber, exhaustively."""
        for x in self.objects:
            i = self.identity[x]
            if self.src[i] != x or self.dst[i] != x:
                raise CategoryError(f"identity of {self.obj_names[x]} has wrong endpoints")
            if self.fmap[i] != tuple(range(self.fiber_sizes[x])):
                raise CategoryError(f"fiber of identity of {self.obj_names[x]} is not the identity")
        for f in range(self.n_arrows):
            if self.compose(self.identity[self.dst[f]], f) != f or self.compose(f, self.identity[self.src[f]]) != f:
                raise CategoryError(f"identity law fails at arrow {self.arr_names[f]}")
        out = {x: [] for x in self.objects}
        for a in range(self.n_arrows):
            out[self.src[a]].append(a)
        for f in range(self.n_arrows):
            for g in out[self.dst[f]]:
                gf = self.compose(g, f)
                if self.fmap[gf] != tuple(self.fmap[g][v] for v in self.fmap[f]):
                    raise CategoryError(f"fiber not functorial at {self.arr_names[g]} o {self.arr_names[f]}")
                for h in out[self.dst[g]]:
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f):
                        raise CategoryError(
                            f"associativity fails at ({self.arr_names[h]}, {self.arr_names[g]}, {self.arr_names[f]})")

    def describe_arrow(self, f: int) -> str:
        return f"{self.arr_names[f]}:{self.obj_names[self.src[f]]}->{self.obj_names[self.dst[f]]}"


# ----------------------------------------------------------------------
# derived categories


def full_subcategory(c: FiniteConcreteCategory, objs: Iterable[int], name: Optional[str] = None,
                     truncation="inherit") -> FiniteConcreteCategory:
    keep = sorted(set(objs))
    new = {x: i for i, x in enumerate(keep)}
    arrows = [a for a in range(c.n_arrows) if c.src[a] in new and c.dst[a] in new]
    anew = {a: i for i, a in enumerate(arrows)}
    comp = None
    if c.comp is not None:
        comp = {(anew[g], anew[f]): anew[h] for (g, f), h in c.comp.items() if g in anew and f in anew}
    trunc = c.truncation if truncation == "inherit" else truncation
    return FiniteConcreteCategory(
        name or c.name, [c.obj_names[x] for x in keep], [c.fiber_sizes[x] for x in keep],
        [new[c.src[a]] for a in arrows], [new[c.dst[a]] for a in arrows],
        [c.fmap[a] for a in arrows], [c.keys[a] for a in arrows], [c.arr_names[a] for a in arrows],
        [anew[c.identity[x]] for x in keep], comp, trunc,
        [c.models[x] for x in keep] if c.models is not None else None)


def with_fiber(c: FiniteConcreteCategory, fiber_sizes: Sequence[int],
               fmaps: Sequence[Sequence[int]], name: Optional[str] = None) -> FiniteConcreteCategory:
    """Same category, different fiber functor. Composition keeps using the old keys."""
    comp = c.comp
    if comp is None:
        comp = {}
        for f in range(c.n_arrows):
            for g in range(c.n_arrows):
                if c.src[g] == c.dst[f]:
                    comp[(g, f)] = c.compose(g, f)
    return FiniteConcreteCategory(
        name or c.name, c.obj_names, fiber_sizes, c.src, c.dst, fmaps,
        c.keys, c.arr_names, c.identity, comp, c.truncation, c.models)


# ----------------------------------------------------------------------
# arrow properties


def _cached(c, key, fn):
    v = c._cache.get(key)
    if v is None:
        v = fn()
        c._cache[key] = v
    return v


def is_mono(c: FiniteConcreteCategory, f: int) -> bool:
    c.check_arrow(f)

    def run():
        x = c.src[f]
        for t in c.objects:
            seen = set()
            for u in c.hom(t, x):
                v = c.compose(f, u)
                if v in seen:
                    return False
                seen.add(v)
        return True
    return _cached(c, ("mono", f), run)


def is_epi(c: FiniteConcreteCategory, f: int) -> bool:
    c.check_arrow(f)

    def run():
        y = c.dst[f]
        for z in c.objects:
            seen = set()
            for h in c.hom(y, z):
                v = c.compose(h, f)
                if v in seen:
                    return False
                seen.add(v)
        return True
    return _cached(c, ("epi", f), run)


def inverse_arrow(c: FiniteConcreteCategory, f: int) -> Optional[int]:
    c.check_arrow(f)
    x, y = c.src[f], c.dst[f]
    for g in c.hom(y, x):
        if c.compose(g, f) == c.identity[x] and c.compose(f, g) == c.identity[y]:
            return g
    return None


def is_iso(c: FiniteConcreteCategory, f: int) -> bool:
    return _cached(c, ("iso", f), lambda: inverse_arrow(c, f) is not None)


def _kernel_classes(c, f):
    """For each object T, the classes of ``hom(T, X)`` identified by ``f``."""
    def run():
        x = c.src[f]
        out = []
        for t in c.objects:
            groups: dict = {}
            for u in c.hom(t, x):
                groups.setdefault(c.compose(f, u), []).append(u)
            out.extend(g for g in groups.values() if len(g) > 1)
        return out
    return _cached(c, ("kernel", f), run)


def is_compatible(c: FiniteConcreteCategory, f: int, g: int) -> bool:
    """``g`` identifies every pair of generalized elements that ``f`` identifies."""
    for cls in _kernel_classes(c, f):
        first = c.compose(g, cls[0])
        if any(c.compose(g, u) != first for u in cls[1:]):
            return False
    return True


def strict_epi_witness(c: FiniteConcreteCategory, f: int) -> Optional[tuple]:
    """None if ``f`` is a strict epimorphism, else ``(g, factorizations)``.

    ``g: X -> Z`` is compatible with ``f`` and factors through ``f`` in a
    number of ways other than one.
    """
    c.check_arrow(f)

    def run():
        x, y = c.src[f], c.dst[f]
        for z in c.objects:
            pre: dict = {}
            for h in c.hom(y, z):
                pre.setdefault(c.compose(h, f), []).append(h)
            for g in c.hom(x, z):
                if not is_compatible(c, f, g):
                    continue
                hs = pre.get(g, [])
                if len(hs) != 1:
                    return (g, tuple(hs))
            for g, hs in pre.items():
                if len(hs) != 1:
                    return (g, tuple(hs))
        return ()
    w = _cached(c, ("sepi", f), run)
    return None if w == () else w


def is_strict_epi(c: FiniteConcreteCategory, f: int) -> bool:
    return strict_epi_witness(c, f) is None


# ----------------------------------------------------------------------
# universal-property search


@dataclass(frozen=True)
class UniversalCone:
    """An object together with legs (arrows out of it for limits, into it for colimits)."""
    obj: int
    legs: tuple


def find_limit(c: FiniteConcreteCategory, cone_at: Callable[[int], list],
               count_at: Optional[Callable[[int], int]] = None) -> Optional[UniversalCone]:
    """Find ``P`` and a cone at ``P`` through which every cone factors uniquely.

    ``cone_at(T)`` lists the cones with vertex ``T`` as tuples of arrows out
    of ``T``. Candidate vertices are first filtered by hom-set sizes, then
    ``hom(T, P) -> cones(T)`` is checked to be injective for every ``T``.
    """
    count_at = count_at or (lambda t: len(cone_at(t)))
    counts = tuple(count_at(t) for t in c.objects)
    for p in c.objects:
        if c._counts_into(p) != counts:
            continue
        for legs in cone_at(p):
            if _limit_injective(c, p, legs):
                return UniversalCone(p, tuple(legs))
    return None


def _limit_injective(c, p, legs) -> bool:
    for t in c.objects:
        seen = set()
        for u in c.hom(t, p):
            k = tuple(c.compose(l, u) for l in legs)
            if k in seen:
                return False
            seen.add(k)
    return True


def find_colimit(c: FiniteConcreteCategory, cocone_at: Callable[[int], list],
                 count_at: Optional[Callable[[int], int]] = None) -> Optional[UniversalCone]:
    """Dual of :func:`find_limit`; ``cocone_at(T)`` lists tuples of arrows into ``T``."""
    count_at = count_at or (lambda t: len(cocone_at(t)))
    counts = tuple(count_at(t) for t in c.objects)
    for q in c.objects:
        if c._counts_out(q) != counts:
            continue
        for legs in cocone_at(q):
            if _colimit_injective(c, q, legs):
                return UniversalCone(q, tuple(legs))
    return None


def _colimit_injective(c, q, legs) -> bool:
    for t in c.objects:
        seen = set()
        for u in c.hom(q, t):
            k = tuple(c.compose(u, l) for l in legs)
            if k in seen:
                return False
            seen.add(k)
    return True


def is_limit_cone(c, p: int, legs: Sequence[int], cone_at) -> bool:
    counts = tuple(len(cone_at(t)) for t in c.objects)
    return c._counts_into(p) == counts and _limit_injective(c, p, legs)


def is_colimit_cocone(c, q: int, legs: Sequence[int], cocone_at) -> bool:
    counts = tuple(len(cocone_at(t)) for t in c.objects)
    return c._counts_out(q) == counts and _colimit_injective(c, q, legs)


def terminal_object(c: FiniteConcreteCategory) -> Optional[int]:
    r = _cached(c, ("terminal",), lambda: find_limit(c, lambda t: [()]) or ())
    return r.obj if r != () else None


def initial_object(c: FiniteConcreteCategory) -> Optional[int]:
    r = _cached(c, ("initial",), lambda: find_colimit(c, lambda t: [()]) or ())
    return r.obj if r != () else None


def pullback_cones(c, f: int, g: int):
    x = c.src[f]
    y = c.src[g]

    def cone_at(t):
        by: dict = {}
        for v in c.hom(t, y):
            by.setdefault(c.compose(g, v), []).append(v)
        return [(u, v) for u in c.hom(t, x) for v in by.get(c.compose(f, u), ())]
    return cone_at


def pullback_counts(c, f: int, g: int):
    x = c.src[f]
    y = c.src[g]

    def count_at(t):
        nf: dict = {}
        for u in c.hom(t, x):
            w = c.compose(f, u)
            nf[w] = nf.get(w, 0) + 1
        n = 0
        for v in c.hom(t, y):
            n += nf.get(c.compose(g, v), 0)
        return n
    return count_at


def find_pullback(c: FiniteConcreteCategory, f: int, g: int) -> Optional[UniversalCone]:
    if c.dst[f] != c.dst[g]:
        raise ArrowNotInCategory("pullback needs a cospan")
    return _cached(c, ("pb", f, g), lambda: find_limit(
        c, pullback_cones(c, f, g), pullback_counts(c, f, g)) or ()) or None


def product_cones(c, x: int, y: int):
    return lambda t: [(u, v) for u in c.hom(t, x) for v in c.hom(t, y)]


def find_product(c: FiniteConcreteCategory, x: int, y: int) -> Optional[UniversalCone]:
    return _cached(c, ("prod", x, y), lambda: find_limit(
        c, product_cones(c, x, y), lambda t: c.hom_count(t, x) * c.hom_count(t, y)) or ()) or None


def coproduct_cocones(c, objs: Sequence[int]):
    objs = list(objs)
    return lambda t: list(product(*[c.hom(x, t) for x in objs]))


def find_coproduct(c: FiniteConcreteCategory, objs: Sequence[int]) -> Optional[UniversalCone]:
    key = ("coprod", tuple(objs))
    return _cached(c, key, lambda: find_colimit(
        c, coproduct_cocones(c, objs), lambda t: _prod(c.hom_count(x, t) for x in objs)) or ()) or None


def _prod(values) -> int:
    n = 1
    for v in values:
        n *= v
    return n


def is_coproduct_cocone(c: FiniteConcreteCategory, legs: Sequence[int], target: int) -> bool:
    if any(c.dst[l] != target for l in legs):
        return False
    objs = [c.src[l] for l in legs]
    counts = c._counts_out(target)
    if any(counts[t] != _prod(c.hom_count(x, t) for x in objs) for t in c.objects):
        return False
    return _colimit_injective(c, target, legs)


def coequalizer_cocones(c, f: int, g: int):
    y = c.dst[f]
    return lambda t: [(u,) for u in c.hom(y, t) if c.compose(u, f) == c.compose(u, g)]


def find_coequalizer(c: FiniteConcreteCategory, f: int, g: int) -> Optional[UniversalCone]:
    if c.src[f] != c.src[g] or c.dst[f] != c.dst[g]:
        raise ArrowNotInCategory("coequalizer needs a parallel pair")
    return _cached(c, ("coeq", f, g), lambda: find_colimit(c, coequalizer_cocones(c, f, g)) or ()) or None


def quotient_cocones(c, a: int, auts: Sequence[int]):
    auts = list(auts)
    return lambda t: [(u,) for u in c.hom(a, t) if all(c.compose(u, h) == u for h in auts)]


def find_quotient(c: FiniteConcreteCategory, a: int, auts: Sequence[int]) -> Optional[UniversalCone]:
    """Categorical quotient ``A -> A/H`` for a set ``H`` of automorphisms of ``A``."""
    key = ("quot", a, tuple(sorted(set(auts))))
    return _cached(c, key, lambda: find_colimit(c, quotient_cocones(c, a, auts)) or ()) or None


# ----------------------------------------------------------------------
# endomorphisms and automorphisms


def end_monoid(c: FiniteConcreteCategory, a: int) -> tuple[FiniteMonoid, list[int]]:
    """``[A, A]`` with ``i*j = i o j``; element ``k`` is arrow ``ends[k]``."""
    def run():
        ends = list(c.hom(a, a))
        idx = {e: i for i, e in enumerate(ends)}
        table = tuple(tuple(idx[c.compose(e1, e2)] for e2 in ends) for e1 in ends)
        ident = idx[c.identity[a]]
        invs = []
        for e in ends:
            inv = next((idx[g] for g in ends if c.compose(g, e) == c.identity[a]
                        and c.compose(e, g) == c.identity[a]), None)
            invs.append(inv)
        nm = f"End({c.obj_names[a]})"
        if all(v is not None for v in invs):
            return FiniteGroup(len(ends), table, ident, nm, tuple(invs)), ends
        return FiniteMonoid(len(ends), table, ident, nm), ends
    return _cached(c, ("end", a), run)


def aut_group(c: FiniteConcreteCategory, a: int) -> tuple[FiniteGroup, list[int]]:
    """``Aut(A)`` with ``i*j = i o j``; element ``k`` is arrow ``auts[k]``."""
    def run():
        auts = [e for e in c.hom(a, a) if is_iso(c, e)]
        idx = {e: i for i, e in enumerate(auts)}
        table = tuple(tuple(idx[c.compose(e1, e2)] for e2 in auts) for e1 in auts)
        inv = tuple(idx[inverse_arrow(c, e)] for e in auts)
        return FiniteGroup(len(auts), table, idx[c.identity[a]], f"Aut({c.obj_names[a]})", inv), auts
    return _cached(c, ("aut", a), run)


def precomposition_action(c: FiniteConcreteCategory, a: int, x: int) -> tuple[GAction, list[int]]:
    """``[A, X]`` as a left action of ``End(A)^op``: ``g . u = u o g``.

    Point ``k`` is the arrow ``arrows[k]``; the actor is the opposite of
    :func:`end_monoid` so that the action is a plain left action.
    """
    def run():
        m, ends = end_monoid(c, a)
        g = opposite(m)
        arrows = list(c.hom(a, x))
        idx = {u: k for k, u in enumerate(arrows)}
        table = tuple(tuple(idx[c.compose(u, e)] for u in arrows) for e in ends)
        return GAction(g, len(arrows), table, f"[{c.obj_names[a]},{c.obj_names[x]}]"), arrows
    return _cached(c, ("precomp", a, x), run)


# ----------------------------------------------------------------------
# factorization


def epi_mono_factor(c: FiniteConcreteCategory, f: int) -> tuple[int, int]:
    """``f = i o e`` with ``e`` a strict epi and ``i`` a mono.

    Candidates are tried in object order, so the witness is the least one.
    Raises :class:`NoImageObject` if no object of ``c`` realizes the image.
    """
    c.check_arrow(f)
    r = _cached(c, ("emf", f), lambda: _epi_mono_search(c, f))
    if r == ():
        raise NoImageObject(c.arr_names[f])
    return r


def _epi_mono_search(c, f):
    x, y = c.src[f], c.dst[f]
    img = len(set(c.fmap[f]))
    objs = sorted(c.objects, key=lambda i: (c.fiber_sizes[i] != img, i))
    for i_obj in objs:
        for i in c.hom(i_obj, y):
            if not is_mono(c, i):
                continue
            for e in c.hom(x, i_obj):
                if c.compose(i, e) == f and is_strict_epi(c, e):
                    return (e, i)
    return ()


def complement(c: FiniteConcreteCategory, i: int) -> Optional[int]:
    """An arrow ``j: J -> Y`` such that ``(i, j)`` is a coproduct cocone, if any."""
    y = c.dst[i]
    for jo in c.objects:
        for j in c.hom(jo, y):
            if is_coproduct_cocone(c, (i, j), y):
                return j
    return None


# ----------------------------------------------------------------------
# connectedness


def is_initial(c: FiniteConcreteCategory, x: int) -> bool:
    return all(c.hom_count(x, t) == 1 for t in c.objects)


def coproduct_split(c: FiniteConcreteCategory, x: int) -> Optional[tuple[int, int]]:
    """Legs ``(i1, i2)`` exhibiting ``x`` as a coproduct of two non-initial objects."""
    counts = c._counts_out(x)
    objs = [o for o in c.objects if not is_initial(c, o)]
    for a1 in objs:
        c1 = c._counts_out(a1)
        for a2 in objs:
            if a2 < a1:
                continue
            c2 = c._counts_out(a2)
            if any(c1[t] * c2[t] != counts[t] for t in c.objects):
                continue
            for i1 in c.hom(a1, x):
                for i2 in c.hom(a2, x):
                    if is_coproduct_cocone(c, (i1, i2), x):
                        return (i1, i2)
    return None


def is_connected(c: FiniteConcreteCategory, x: int) -> bool:
    """Not initial and not a coproduct of two non-initial objects."""
    return _cached(c, ("conn", x), lambda: not is_initial(c, x) and coproduct_split(c, x) is None)


@dataclass(frozen=True)
class Decomposition:
    obj: int
    components: tuple      # monos S_k -> X, one per connected component
    images: tuple          # fiber image of each component


def connected_decompose(c: FiniteConcreteCategory, x: int) -> Decomposition:
    """Split ``x`` into connected subobjects using minimal nonempty mono images.

    The components are checked to be pairwise disjoint in the fiber and to
    form a coproduct cocone onto ``x``; otherwise the axioms this relies on
    fail and :class:`AxiomPrereqFailed` is raised.
    """
    def run():
        images: dict = {}
        for s in c.objects:
            if c.fiber_sizes[s] == 0:
                continue
            for m in c.hom(s, x):
                if is_mono(c, m):
                    im = frozenset(c.fmap[m])
                    if im not in images:
                        images[im] = m
        minimal = [im for im in images if not any(o < im for o in images)]
        minimal.sort(key=lambda s: min(s))
        covered = set()
        for im in minimal:
            if covered & im:
                raise AxiomPrereqFailed("G", "G3", f"overlapping components in {c.obj_names[x]}")
            covered |= im
        if len(covered) != c.fiber_sizes[x]:
            raise AxiomPrereqFailed("G", "G3", f"components do not cover {c.obj_names[x]}")
        legs = tuple(images[im] for im in minimal)
        if legs:
            if not is_coproduct_cocone(c, legs, x):
                raise AxiomPrereqFailed("G", "G2", f"components of {c.obj_names[x]} are not a coproduct")
        elif not is_initial(c, x):
            raise AxiomPrereqFailed("G", "G5", f"{c.obj_names[x]} has empty fiber but is not initial")
        return Decomposition(x, legs, tuple(tuple(sorted(im)) for im in minimal))
    return _cached(c, ("decomp", x), run)


# ----------------------------------------------------------------------
# diagram of the fiber functor


class DiagramPoset:
    """Pointed objects ``(a, A)`` ordered by ``(a, A) <= (b, B)`` iff some arrow
    ``A -> B`` carries ``a`` to ``b``.

    The order is a preorder; nodes in one class are isomorphic pointed objects.
    Lower means finer: a meet of two nodes maps to both.
    """

    def __init__(self, c: FiniteConcreteCategory, objects: Optional[Iterable[int]] = None):
        self.c = c
        objs = sorted(set(objects)) if objects is not None else list(c.objects)
        self.objects = objs
        self.nodes = [PointedObject(o, p) for o in objs for p in range(c.fiber_sizes[o])]
        self.index = {n: i for i, n in enumerate(self.nodes)}
        n = len(self.nodes)
        up = [0] * n
        allowed = set(objs)
        for a in range(c.n_arrows):
            s, d = c.src[a], c.dst[a]
            if s not in allowed or d not in allowed:
                continue
            fm = c.fmap[a]
            for p in range(c.fiber_sizes[s]):
                up[self.index[PointedObject(s, p)]] |= 1 << self.index[PointedObject(d, fm[p])]
        down = [0] * n
        for i in range(n):
            m = up[i]
            j = 0
            while m:
                if m & 1:
                    down[j] |= 1 << i
                m >>= 1
                j += 1
        self.up = up
        self.down = down

    def le(self, u: PointedObject, v: PointedObject) -> bool:
        return bool(self.up[self.index[u]] >> self.index[v] & 1)

    def _members(self, mask: int) -> list[int]:
        out = []
        j = 0
        while mask:
            if mask & 1:
                out.append(j)
            mask >>= 1
            j += 1
        return out

    def glb(self, nodes: Sequence[PointedObject]) -> Optional[PointedObject]:
        """Greatest lower bound; the least node (object, point) of its class."""
        if not nodes:
            return self.top()
        lower = (1 << len(self.nodes)) - 1
        for u in nodes:
            lower &= self.down[self.index[u]]
        for j in self._members(lower):
            if lower & ~self.down[j] == 0:
                return self.nodes[j]
        return None

    def meet(self, u: PointedObject, v: PointedObject) -> Optional[PointedObject]:
        return self.glb([u, v])

    def top(self) -> Optional[PointedObject]:
        full = (1 << len(self.nodes)) - 1
        for j in range(len(self.nodes)):
            if self.down[j] == full:
                return self.nodes[j]
        return None

    def is_antisymmetric(self) -> Optional[tuple]:
        """None if the order is a partial order, else a pair of distinct equivalent nodes."""
        for i in range(len(self.nodes)):
            both = self.up[i] & self.down[i] & ~(1 << i)
            if both:
                return (self.nodes[i], self.nodes[self._members(both)[0]])
        return None

    def minimal_nodes(self) -> list[PointedObject]:
        """Nodes ``(a, A)`` whose object has no proper subobject through which ``a`` passes."""
        c = self.c
        out = []
        for node in self.nodes:
            proper = False
            for s in self.objects:
                for m in c.hom(s, node.obj):
                    if node.point in c.fmap[m] and is_mono(c, m) and not is_iso(c, m):
                        proper = True
                        break
                if proper:
                    break
            if not proper:
                out.append(node)
        return out

    def dominated_by(self, subset: Sequence[PointedObject]) -> Optional[PointedObject]:
        """A node with nothing from ``subset`` below it, or None if ``subset`` is cofinal."""
        mask = 0
        for u in subset:
            mask |= 1 << self.index[u]
        for j, node in enumerate(self.nodes):
            if not self.down[j] & mask:
                return node
        return None


def diagram_poset(c: FiniteConcreteCategory, restrict: str = "all") -> DiagramPoset:
    if restrict in ("all", "finite"):
        return DiagramPoset(c)
    if restrict == "connected":
        return DiagramPoset(c, [x for x in c.objects if c.fiber_sizes[x] and is_connected(c, x)])
    raise ValueError(f"unknown restriction {restrict!r}")


def connected_subcategory(c: FiniteConcreteCategory, name: Optional[str] = None) -> FiniteConcreteCategory:
    objs = [x for x in c.objects if c.fiber_sizes[x] > 0 and is_connected(c, x)]
    return full_subcategory(c, objs, name or f"Con({c.name})", truncation=None)


# ----------------------------------------------------------------------
# model categories


def _multisets(n_types, sizes, max_points, max_orbits):
    """Multisets of transitive types (sorted index tuples) within the caps."""
    out = []

    def rec(start, chosen, total):
        if chosen:
            out.append(tuple(chosen))
        if max_orbits is not None and len(chosen) >= max_orbits:
            return
        for t in range(start, n_types):
            if total + sizes[t] <= max_points:
                chosen.append(t)
                rec(t, chosen, total + sizes[t])
                chosen.pop()
    rec(0, [], 0)
    return out


def _type_names(sizes):
    names = []
    seen: dict = {}
    count = {s: sizes.count(s) for s in sizes}
    for s in sizes:
        k = seen.get(s, 0)
        seen[s] = k + 1
        names.append(f"O{s}" + (chr(ord("a") + k) if count[s] > 1 else ""))
    return names


def category_from_actions(actor: FiniteMonoid, actions: Sequence[GAction], names: Sequence[str],
                          name: str, truncation: Optional[Truncation]) -> FiniteConcreteCategory:
    """All equivariant maps between the given actions; fiber = underlying set."""
    cap = config.caps()
    if len(actions) > cap.objects:
        raise SizeCapExceeded("category objects", len(actions), cap.objects)
    src, dst, maps = [], [], []
    for i, e1 in enumerate(actions):
        for j, e2 in enumerate(actions):
            for m in iter_equivariant_maps(e1, e2):
                src.append(i)
                dst.append(j)
                maps.append(m)
                if len(maps) > cap.arrows:
                    raise SizeCapExceeded("category arrows", len(maps), cap.arrows)
    arr_names = [f"f{k}" for k in range(len(maps))]
    return FiniteConcreteCategory(name, names, [e.points for e in actions], src, dst, maps,
                                  maps, arr_names, None, None, truncation, actions)


def build_gset_category(g: FiniteGroup, max_points: int, max_orbits: Optional[int] = 2,
                        include_empty: bool = True, transitive_only: bool = False,
                        name: Optional[str] = None) -> FiniteConcreteCategory:
    """Finite G-sets up to isomorphism, with all equivariant maps.

    Objects: the empty G-set, every transitive G-set, and every G-set with at
    most ``max_points`` points and at most ``max_orbits`` orbits. Objects are
    sorted by (points, orbits, orbit types).
    """
    trans = classify_transitive(g)
    sizes = [e.points for e in trans]
    tnames = _type_names(sizes)
    if transitive_only:
        combos = [(t,) for t in range(len(trans))]
    else:
        combos = set(_multisets(len(trans), sizes, max_points, max_orbits))
        combos |= {(t,) for t in range(len(trans))}
        combos = list(combos)
    combos.sort(key=lambda m: (sum(sizes[t] for t in m), len(m), m))
    actions, names = [], []
    if include_empty:
        actions.append(empty_action(g))
        names.append("0")
    for m in combos:
        e, _ = disjoint_union([trans[t] for t in m])
        actions.append(e)
        names.append("+".join(tnames[t] for t in m))
    trunc = None if transitive_only else Truncation(max_points, max_orbits)
    return category_from_actions(g, actions, names, name or f"{g.name}-sets", trunc)


def _monoid_generators(m: FiniteMonoid) -> list[int]:
    gens: list[int] = []
    span = {m.identity}

    def close(s):
        s = set(s)
        frontier = list(s)
        while frontier:
            nxt = []
            for a in frontier:
                for b in gens:
                    for p in (m.compose[a][b], m.compose[b][a]):
                        if p not in s:
                            s.add(p)
                            nxt.append(p)
            frontier = nxt
        return s
    for a in m.elements:
        if a not in span:
            gens.append(a)
            span = close(span | {a})
    return gens


def monoid_actions(m: FiniteMonoid, n: int) -> list[GAction]:
    """All actions of ``m`` on ``n`` points up to isomorphism (brute force)."""
    from itertools import permutations
    gens = _monoid_generators(m)
    # express every element as a word in the generators
    word = {m.identity: ()}
    frontier = [m.identity]
    while frontier:
        nxt = []
        for a in frontier:
            for k, s in enumerate(gens):
                b = m.compose[s][a]
                if b not in word:
                    word[b] = (k,) + word[a]
                    nxt.append(b)
        frontier = nxt
    maps = list(product(range(n), repeat=n))
    ident = tuple(range(n))
    found: dict = {}
    for imgs in product(maps, repeat=len(gens)):
        table = []
        for a in m.elements:
            t = ident
            for k in reversed(word[a]):
                t = tuple(imgs[k][v] for v in t)
            table.append(t)
        ok = all(tuple(table[a][table[b][x]] for x in range(n)) == table[m.compose[a][b]]
                 for a in m.elements for b in m.elements)
        if not ok:
            continue
        canon = min(
            tuple(tuple(p[table[a][q[x]]] for x in range(n)) for a in m.elements)
            for p in permutations(range(n))
            for q in [_inverse_perm(p)])
        if canon not in found:
            found[canon] = GAction(m, n, canon, f"{m.name}-set")
    return [found[k] for k in sorted(found)]


def _inverse_perm(p):
    inv = [0] * len(p)
    for i, v in enumerate(p):
        inv[v] = i
    return tuple(inv)


def build_mset_category(m: FiniteMonoid, max_points: int, cyclic_only: bool = False,
                        name: Optional[str] = None) -> FiniteConcreteCategory:
    """All ``m``-sets on at most ``max_points`` points up to isomorphism.

    With ``cyclic_only`` only quotients of the regular action are kept
    (the monoid analogue of transitive sets).
    """
    from .actions import is_cyclic, regular_action, action_isomorphic
    acts = [empty_action(m)] if not cyclic_only else []
    for n in range(1, max_points + 1):
        for e in monoid_actions(m, n):
            if cyclic_only and not is_cyclic(e):
                continue
            acts.append(e)
    reg = regular_action(m)
    if not any(a.points == reg.points and action_isomorphic(a, reg) for a in acts):
        acts.append(reg)
    names = []
    for i, e in enumerate(acts):
        names.append("0" if e.points == 0 else f"X{i}")
    trunc = None if cyclic_only else Truncation(max_points, None)
    return category_from_actions(m, acts, names, name or f"{m.name}-sets", trunc)


def ens_times_arrow(max_points: int, name: str = "Ens x {0->1}") -> FiniteConcreteCategory:
    """Finite sets paired with the two-object poset ``0 -> 1``; the fiber is the first set.

    Limits and colimits are computed componentwise, so the category is as
    complete as finite sets are, but the fiber does not see the second
    component and so cannot reflect isomorphisms.
    """
    objs = [(a, b) for a in range(max_points + 1) for b in range(2)]
    objs.sort(key=lambda p: (p[0] + p[1], p))
    src, dst, fm, keys = [], [], [], []
    for i, (a1, b1) in enumerate(objs):
        for j, (a2, b2) in enumerate(objs):
            if b1 > b2:
                continue
            for u in product(range(a2), repeat=a1):
                for v in product(range(b2), repeat=b1):
                    src.append(i)
                    dst.append(j)
                    fm.append(u)
                    keys.append(u + tuple(a2 + w for w in v))
    names = [f"({a},{b})" for a, b in objs]
    return FiniteConcreteCategory(name, names, [a for a, _ in objs], src, dst, fm, keys,
                                  [f"f{k}" for k in range(len(src))], None, None,
                                  Truncation(max_points, None))
