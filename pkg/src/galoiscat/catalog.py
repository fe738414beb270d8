"""Named small groups and monoids used by tests, the corpus and the CLI."""

from __future__ import annotations

import re
from .algebra import FiniteGroup, FiniteMonoid, permutation_group, validate_group, validate_monoid


def cyclic(n: int, name=None) -> FiniteGroup:
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return validate_group(n, table, 0, name=name or f"C{n}")


def klein_four() -> FiniteGroup:
    table = [[a ^ b for b in range(4)] for a in range(4)]
    return validate_group(4, table, 0, name="V4")


def symmetric(n: int) -> FiniteGroup:
    gens = [tuple(range(n))]
    if n > 1:
        gens = [tuple([1, 0] + list(range(2, n))), tuple(list(range(1, n)) + [0])]
    g, _ = permutation_group(gens, n, f"S{n}")
    return g


def alternating(n: int) -> FiniteGroup:
    if n < 3:
        return cyclic(1, name=f"A{n}")
    gens = []
    for k in range(2, n):
        # 3-cycle (0 1 k)
        p = list(range(n))
        p[0], p[1], p[k] = 1, k, 0
        gens.append(tuple(p))
    g, _ = permutation_group(gens, n, f"A{n}")
    return g


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of the n-gon, order 2n (D4 has order 8)."""
    rot = tuple((i + 1) % n for i in range(n))
    ref = tuple((-i) % n for i in range(n))
    g, _ = permutation_group([rot, ref], n, f"D{n}")
    return g


def quaternion() -> FiniteGroup:
    # units 1, i, j, k as 0..3; element (s, u) -> 4*s + u
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (0, 1), (0, 2): (0, 2), (0, 3): (0, 3),
        (1, 0): (0, 1), (1, 1): (1, 0), (1, 2): (0, 3), (1, 3): (1, 2),
        (2, 0): (0, 2), (2, 1): (1, 3), (2, 2): (1, 0), (2, 3): (0, 1),
        (3, 0): (0, 3), (3, 1): (0, 2), (3, 2): (1, 1), (3, 3): (1, 0),
    }

    def mul(a, b):
        sa, ua = divmod(a, 4)
        sb, ub = divmod(b, 4)
        s, u = unit_mul[(ua, ub)]
        return 4 * ((sa + sb + s) % 2) + u

    table = [[mul(a, b) for b in range(8)] for a in range(8)]
    return validate_group(8, table, 0, name="Q8")


def trivial_group() -> FiniteGroup:
    return cyclic(1, name="C1")


def idempotent_monoid() -> FiniteMonoid:
    """``{1, e}`` with ``e*e = e``."""
    return validate_monoid(2, [[0, 1], [1, 1]], 0, name="E2")


def left_zero_monoid() -> FiniteMonoid:
    """``{1, a, b}`` with ``xy = x`` for ``x, y`` in ``{a, b}``."""
    return validate_monoid(3, [[0, 1, 2], [1, 1, 1], [2, 2, 2]], 0, name="L3")


def nilpotent_monoid() -> FiniteMonoid:
    """``{1, x, 0}`` with ``x*x = 0``."""
    return validate_monoid(3, [[0, 1, 2], [1, 2, 2], [2, 2, 2]], 0, name="N3")


def full_transformations(n: int) -> FiniteMonoid:
    from itertools import product as _product
    maps = sorted(_product(range(n), repeat=n), key=lambda m: (m != tuple(range(n)), m))
    idx = {m: i for i, m in enumerate(maps)}
    table = [[idx[tuple(f[g[i]] for i in range(n))] for g in maps] for f in maps]
    return validate_monoid(len(maps), table, 0, name=f"T{n}")


CORPUS = ("C2", "C3", "C4", "V4", "S3", "D4", "Q8", "A4")


def named_group(name: str) -> FiniteGroup:
    """Resolve ``C4``, ``Z/4``, ``V4``, ``S3``, ``A4``, ``D4``, ``Q8``, ``C1``..."""
    key = name.strip()
    m = re.fullmatch(r"(?:C|Z/|Z)(\d+)", key)
    if m:
        n = int(m.group(1))
        return cyclic(n, name=key)
    m = re.fullmatch(r"S(\d+)", key)
    if m:
        return symmetric(int(m.group(1)))
    m = re.fullmatch(r"A(\d+)", key)
    if m:
        return alternating(int(m.group(1)))
    m = re.fullmatch(r"D(\d+)", key)
    if m:
        return dihedral(int(m.group(1)))
    if key in ("V4", "K4"):
        return klein_four()
    if key == "Q8":
        return quaternion()
    raise KeyError(f"unknown group name {name!r}")


def named_monoid(name: str) -> FiniteMonoid:
    table = {"E2": idempotent_monoid, "L3": left_zero_monoid, "N3": nilpotent_monoid}
    if name in table:
        return table[name]()
    m = re.fullmatch(r"T(\d+)", name)
    if m:
        return full_transformations(int(m.group(1)))
    return named_group(name)
