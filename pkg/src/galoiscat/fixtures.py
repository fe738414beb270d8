"""Small categories that break chosen axioms on purpose.

Each recipe returns a :class:`Fixture`: the category, the object the suite is
run against (for the representable suites), and the exact set of axioms the
suite is expected to reject. A few targets cannot fail alone; for those the
expected set lists every axiom that is forced to fail with it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .actions import action_isomorphic, regular_action
from .algebra import make_subgroup
from .catalog import idempotent_monoid, klein_four, named_group, symmetric, trivial_group
from .category import (
    FiniteConcreteCategory,
    build_gset_category,
    build_mset_category,
    ens_times_arrow,
    full_subcategory,
    with_fiber,
)


@dataclass(frozen=True)
class Fixture:
    name: str
    suite: str
    category: FiniteConcreteCategory
    obj: Optional[int]
    expected: frozenset
    target: str


def _regular_index(c: FiniteConcreteCategory) -> int:
    reg = regular_action(c.models[0].actor)
    for x, m in enumerate(c.models):
        if m.points == reg.points and action_isomorphic(m, reg) is not None:
            return x
    raise LookupError("no regular object")


def _points_index(c: FiniteConcreteCategory, n: int) -> int:
    return next(x for x in c.objects if c.fiber_sizes[x] == n)


def rc0_all_gsets(group: str = "S3", max_points: Optional[int] = None) -> Fixture:
    g = named_group(group)
    c = build_gset_category(g, max_points or g.size)
    return Fixture("rc0-all-gsets", "RC", c, _regular_index(c), frozenset({"RC0"}), "RC0")


def rc2_cyclic_msets() -> Fixture:
    """Cyclic sets over the two-element idempotent monoid with ``A`` the monoid itself.

    A non-invertible endomorphism of a finite object has an idempotent power,
    which is never an epimorphism, so RC0 fails together with RC2.
    """
    c = build_mset_category(idempotent_monoid(), 2, cyclic_only=True)
    return Fixture("rc2-cyclic-msets", "RC", c, _regular_index(c), frozenset({"RC0", "RC2"}), "RC2")


def c0_with_empty(group: str = "S3") -> Fixture:
    """Transitive G-sets together with the empty G-set."""
    g = named_group(group)
    c = build_gset_category(g, g.size, transitive_only=True)
    return Fixture("c0-with-empty", "C", c, None, frozenset({"C0"}), "C0")


def c1_missing_quotient() -> Fixture:
    """Transitive S3-sets without the three-point orbit: the regular object has no quotient by a transposition."""
    c = build_gset_category(symmetric(3), 6, include_empty=False, transitive_only=True)
    keep = [x for x in c.objects if c.fiber_sizes[x] != 3]
    return Fixture("c1-missing-quotient", "C", full_subcategory(c, keep, "S3-sets without S3/C2"),
                   None, frozenset({"C1"}), "C1")


def c2_fixed_point_fiber() -> Fixture:
    """Transitive S3-sets with fiber ``X^K + {*}`` for ``K`` generated by a transposition.

    The regular orbit has no ``K``-fixed points while the three-point orbit
    has one, so the strict epi between them is not sent to a surjection.
    Quotient maps are strict epis too, so C1 fails with C2, and the added
    point ``*`` is never comparable with a fixed point, so meets fail (C3).
    """
    g = symmetric(3)
    c = build_gset_category(g, 6, include_empty=False, transitive_only=True)
    k = next(x for x in g.elements if x != g.identity and g.order(x) == 2)
    kk = make_subgroup(g, [g.identity, k])
    fixed = [tuple(v for v in range(m.points) if all(m.act[h][v] == v for h in kk.members)) for m in c.models]
    sizes = [len(fx) + 1 for fx in fixed]
    fmaps = []
    for a in range(c.n_arrows):
        src, dst = fixed[c.src[a]], fixed[c.dst[a]]
        pos = {v: i for i, v in enumerate(dst)}
        fmaps.append(tuple(pos[c.keys[a][v]] for v in src) + (len(dst),))
    f = with_fiber(c, sizes, fmaps, "S3-sets with fixed-point fiber")
    return Fixture("c2-fixed-point-fiber", "C", f, None, frozenset({"C1", "C2", "C3"}), "C2")


def c3_missing_regular() -> Fixture:
    """Transitive V4-sets without the regular orbit: two distinct two-point orbits have no common refinement."""
    g = klein_four()
    c = build_gset_category(g, 4, include_empty=False, transitive_only=True)
    keep = [x for x in c.objects if c.fiber_sizes[x] != 4]
    return Fixture("c3-missing-regular", "C", full_subcategory(c, keep, "V4-sets without V4"),
                   None, frozenset({"C3"}), "C3")


def g2_no_initial(group: str = "S3") -> Fixture:
    g = named_group(group)
    c = build_gset_category(g, g.size, max_orbits=1, include_empty=False)
    return Fixture("g2-no-initial", "G", c, None, frozenset({"G2"}), "G2")


def g6_forgetful_projection(max_points: int = 3) -> Fixture:
    return Fixture("g6-projection", "G", ens_times_arrow(max_points), None, frozenset({"G6"}), "G6")


def g6_constant_fiber(group: str = "C2") -> Fixture:
    """Constant one-point fiber. It also fails to send the initial object to the empty set."""
    g = named_group(group)
    c = build_gset_category(g, g.size)
    f = with_fiber(c, [1] * c.n_objects, [(0,)] * c.n_arrows, "constant fiber")
    return Fixture("g6-constant-fiber", "G", f, None, frozenset({"G5", "G6"}), "G6")


def e5_disconnected(max_points: int = 3) -> Fixture:
    c = build_gset_category(trivial_group(), max_points, max_orbits=None, name="Ens")
    return Fixture("e5-two-points", "E", c, _points_index(c, 2), frozenset({"E5"}), "E5")


def e6_not_generator(max_points: int = 2) -> Fixture:
    c = build_mset_category(idempotent_monoid(), max_points)
    return Fixture("e6-point", "E", c, _points_index(c, 1), frozenset({"E6"}), "E6")


def all_fixtures() -> list[Fixture]:
    return [rc0_all_gsets(), rc2_cyclic_msets(), c0_with_empty(), c1_missing_quotient(),
            c2_fixed_point_fiber(), c3_missing_regular(), g2_no_initial(), g6_forgetful_projection(),
            g6_constant_fiber(), e5_disconnected(), e6_not_generator()]
