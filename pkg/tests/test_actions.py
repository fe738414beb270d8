from itertools import product

import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import CORPUS, groups
from galoiscat.actions import (
    action_isomorphic,
    action_kernel,
    automorphism_group,
    classify_transitive,
    coset_action,
    disjoint_union,
    fixed_points,
    hom_actions,
    is_transitive,
    make_action,
    make_map,
    orbits,
    quotient_action,
    regular_action,
    right_translations,
    stabilizer,
    subaction,
    trivial_action,
)
from galoiscat.algebra import conjugate, normal_core, subgroup_generated, subgroups, trivial_subgroup, whole_group
from galoiscat.catalog import named_group, named_monoid
from galoiscat.errors import (
    ActorMismatch,
    InvalidAction,
    MonoidActorUnsupported,
    NotByAutomorphisms,
    PointOutOfRange,
)


def _elem(g, order):
    return next(a for a in g.elements if g.order(a) == order)


def _s3():
    g = named_group("S3")
    return g, subgroup_generated(g, [_elem(g, 2)]), subgroup_generated(g, [_elem(g, 3)])


def _brute_maps(e1, e2):
    return [m for m in product(range(e2.points), repeat=e1.points)
            if all(m[e1.act[g][x]] == e2.act[g][m[x]] for g in e1.actor.elements for x in range(e1.points))]


def test_trivial_action_orbits():
    g = named_group("S3")
    assert orbits(trivial_action(g, 3)) == [(0,), (1,), (2,)]


def test_regular_action_one_orbit():
    for name in CORPUS:
        g = named_group(name)
        e = regular_action(g)
        assert orbits(e) == [tuple(range(g.size))]
        assert stabilizer(e, 3 % g.size) == trivial_subgroup(g)


def test_s3_on_three_cosets():
    g, h, k = _s3()
    e = coset_action(g, h)
    assert e.points == 3 and len(orbits(e)) == 1
    assert stabilizer(e, 0).members == h.members
    assert stabilizer(trivial_action(g), 0) == whole_group(g)


def test_coset_action_extremes():
    g = named_group("D4")
    assert coset_action(g, whole_group(g)).points == 1
    reg = coset_action(g, trivial_subgroup(g))
    assert action_isomorphic(reg, regular_action(g)) is not None


def test_s3_mod_a3_kernel():
    g, h, k = _s3()
    e = coset_action(g, k)
    assert e.points == 2
    assert action_kernel(e).members == k.members


@pytest.mark.parametrize("name", CORPUS)
def test_coset_action_matches_oracle(name):
    g = named_group(name)
    t = oracles.table(g)
    for h in subgroups(g):
        e = coset_action(g, h)
        assert oracles.actions_isomorphic(list(e.act), oracles.coset_table(t, frozenset(h.members)))
        assert stabilizer(e, 0) == h


@pytest.mark.parametrize("name,sizes", [("C1", [1]), ("S3", [1, 2, 3, 6])])
def test_classify_sizes(name, sizes):
    g = named_group(name)
    assert sorted(e.points for e in classify_transitive(g)) == sizes


@pytest.mark.parametrize("name,count", [("Q8", 6), ("S3", 4), ("D4", 8), ("A4", 5)])
def test_classify_counts(name, count):
    acts = classify_transitive(named_group(name))
    assert len(acts) == count == len(oracles.subgroup_classes(oracles.table(named_group(name))))
    assert all(is_transitive(e) for e in acts)
    for i, a in enumerate(acts):
        for b in acts[i + 1:]:
            assert action_isomorphic(a, b) is None


def test_hom_from_regular_is_points():
    g, h, _ = _s3()
    for e in (coset_action(g, h), trivial_action(g, 2), regular_action(g)):
        maps = hom_actions(regular_action(g), e)
        assert sorted(m.map[g.identity] for m in maps) == list(range(e.points))


def test_hom_from_point_is_fixed_points():
    g = named_group("C2")
    e, _ = disjoint_union([trivial_action(g), regular_action(g), trivial_action(g)])
    maps = hom_actions(trivial_action(g), e)
    assert sorted(m.map[0] for m in maps) == fixed_points(e) == [0, 3]


def test_no_map_between_unrelated_cosets():
    g, h, k = _s3()
    assert hom_actions(coset_action(g, h), coset_action(g, k)) == []


@pytest.mark.parametrize("name", ["S3", "C4", "V4"])
def test_hom_actions_match_brute_force(name):
    g = named_group(name)
    acts = classify_transitive(g) + [trivial_action(g, 2)]
    for a in acts:
        for b in acts:
            assert sorted(m.map for m in hom_actions(a, b)) == sorted(_brute_maps(a, b))


def test_quotient_by_nothing():
    g, h, _ = _s3()
    e = coset_action(g, h)
    q, p = quotient_action(e, [])
    assert q.act == e.act and p.map == tuple(range(3))


def test_regular_mod_right_translations_is_coset_action():
    for name in ("S3", "D4"):
        g = named_group(name)
        for h in subgroups(g):
            q, _ = quotient_action(regular_action(g), right_translations(g, h))
            assert action_isomorphic(q, coset_action(g, h)) is not None


def test_v4_quotient_by_order_two():
    g = named_group("V4")
    h = subgroup_generated(g, [1])
    q, p = quotient_action(regular_action(g), right_translations(g, h))
    assert q.points == 2 and p.is_surjective


def test_quotient_rejects_non_automorphisms():
    g, h, _ = _s3()
    with pytest.raises(NotByAutomorphisms):
        quotient_action(coset_action(g, h), [(1, 0, 2)])


def test_iso_conjugate_cosets():
    g, h, k = _s3()
    e = coset_action(g, h)
    assert action_isomorphic(e, e).map == (0, 1, 2)
    for x in g.elements:
        assert action_isomorphic(e, coset_action(g, conjugate(g, h, x))) is not None
    assert action_isomorphic(e, coset_action(g, k)) is None


def test_iso_needs_same_actor():
    with pytest.raises(ActorMismatch):
        action_isomorphic(regular_action(named_group("C2")), regular_action(named_group("C3")))


def test_make_action_validation():
    g = named_group("C2")
    assert make_action(g, 2, [[0, 1], [1, 0]]).points == 2
    with pytest.raises(PointOutOfRange):
        make_action(g, 2, [[0, 1], [1, 2]])
    with pytest.raises(InvalidAction):
        make_action(g, 2, [[1, 0], [1, 0]])
    with pytest.raises(InvalidAction):
        make_action(named_group("C3"), 3, [[0, 1, 2], [1, 0, 2], [1, 0, 2]])


def test_make_map_validation():
    g = named_group("C2")
    reg = regular_action(g)
    pt = trivial_action(g)
    assert make_map(reg, pt, [0, 0]).is_surjective
    with pytest.raises(InvalidAction):
        make_map(pt, reg, [0])


def test_subaction_and_union():
    g, h, k = _s3()
    e, inj = disjoint_union([coset_action(g, h), coset_action(g, k)])
    assert e.points == 5 and [len(o) for o in orbits(e)] == [3, 2]
    sub, m = subaction(e, orbits(e)[1])
    assert action_isomorphic(sub, coset_action(g, k)) is not None
    assert all(e.act[x][m.map[p]] == m.map[sub.act[x][p]] for x in g.elements for p in range(2))


def test_monoid_transitivity_means_every_point_generates():
    m = named_monoid("E2")
    assert not is_transitive(regular_action(m))
    assert is_transitive(trivial_action(m))
    with pytest.raises(MonoidActorUnsupported):
        orbits(regular_action(m))


def test_automorphisms_of_regular():
    g = named_group("Q8")
    aut, perms = automorphism_group(regular_action(g))
    assert aut.size == 8 and len(perms) == 8


# properties

@given(groups, st.data())
def test_orbit_stabilizer(g, data):
    h = data.draw(st.sampled_from(subgroups(g)))
    e = coset_action(g, h)
    for x in range(e.points):
        assert len(stabilizer(e, x).members) * e.points == g.size


@given(groups, st.data())
def test_stabilizers_of_coset_action_are_conjugates(g, data):
    h = data.draw(st.sampled_from(subgroups(g)))
    e = coset_action(g, h)
    conj = {conjugate(g, h, x) for x in g.elements}
    assert {stabilizer(e, x) for x in range(e.points)} == conj
    assert action_kernel(e) == normal_core(g, h)


@given(groups)
def test_classify_matches_subgroup_classes(g):
    assert len(classify_transitive(g)) == len(oracles.subgroup_classes(oracles.table(g)))


@given(groups, st.data())
def test_isomorphism_iff_conjugate(g, data):
    subs = subgroups(g)
    h = data.draw(st.sampled_from(subs))
    k = data.draw(st.sampled_from(subs))
    conj = any(conjugate(g, h, x) == k for x in g.elements)
    assert (action_isomorphic(coset_action(g, h), coset_action(g, k)) is not None) == conj


@given(groups, st.data())
def test_union_orbits(g, data):
    subs = subgroups(g)
    parts = [coset_action(g, data.draw(st.sampled_from(subs))) for _ in range(data.draw(st.integers(1, 3)))]
    e, inj = disjoint_union(parts)
    assert sorted(len(o) for o in orbits(e)) == sorted(p.points for p in parts)
    assert e.points == sum(p.points for p in parts)
