import pytest
from hypothesis import given, strategies as st

import oracles
from strategies import CORPUS, groups
from galoiscat.algebra import (
    FiniteGroup,
    compose_homs,
    conjugacy_classes_of_subgroups,
    cosets,
    direct_product,
    group_isomorphic,
    hom_is_surjective,
    hom_kernel,
    identity_hom,
    is_normal,
    make_hom,
    make_subgroup,
    normal_core,
    opposite,
    subgroup_generated,
    subgroups,
    trivial_subgroup,
    validate_group,
    validate_monoid,
    whole_group,
)
from galoiscat.catalog import cyclic, named_group, named_monoid
from galoiscat.errors import (
    BadIdentity,
    BadInverse,
    NonAssociative,
    NotAHomomorphism,
    NotASubgroup,
    SizeCapExceeded,
    TableShapeError,
)


def test_trivial_table_is_a_group():
    g = validate_group(1, [[0]])
    assert g.size == 1 and g.identity == 0 and g.inverse == (0,)


def test_c3_inverse():
    g = validate_group(3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]])
    assert g.inv(1) == 2


def test_non_invertible_row():
    with pytest.raises(BadInverse) as exc:
        validate_group(3, [[0, 1, 2], [1, 1, 1], [2, 1, 2]])
    assert exc.value.witness == (1,)


def test_law_witnesses():
    with pytest.raises(BadIdentity):
        validate_group(2, [[0, 1], [0, 1]])
    with pytest.raises(NonAssociative) as exc:
        validate_group(3, [[0, 1, 2], [1, 2, 0], [2, 0, 2]])
    i, j, k = exc.value.witness
    t = [[0, 1, 2], [1, 2, 0], [2, 0, 2]]
    assert t[t[i][j]][k] != t[i][t[j][k]]
    with pytest.raises(TableShapeError):
        validate_group(2, [[0, 1]])
    with pytest.raises(TableShapeError):
        validate_group(2, [[0, 1], [1, 2]])


def test_wrong_supplied_inverse():
    with pytest.raises(BadInverse):
        validate_group(3, [[0, 1, 2], [1, 2, 0], [2, 0, 1]], inverse=[0, 1, 2])


def test_monoid_validation():
    m = validate_monoid(3, [[0, 1, 2], [1, 1, 1], [2, 1, 2]])
    assert not m.is_group and m.identity == 0
    assert m.units() == [0]


def test_cap(monkeypatch):
    monkeypatch.setenv("GALOIS_CAP", "4")
    with pytest.raises(SizeCapExceeded):
        subgroups(named_group("S3"))


@pytest.mark.parametrize("name", CORPUS + ["C1", "C6", "D3", "S4"])
def test_catalog_tables_are_groups(name):
    g = named_group(name)
    again = validate_group(g.size, g.compose, name=g.name)
    assert again == g


# subgroup enumeration against subset closure

@pytest.mark.parametrize("name,count", [("C1", 1), ("S3", 6), ("V4", 5), ("D4", 10), ("Q8", 6), ("A4", 10)])
def test_subgroup_counts(name, count):
    g = named_group(name)
    mine = {frozenset(h.members) for h in subgroups(g)}
    assert mine == set(oracles.all_subgroups(oracles.table(g)))
    assert len(mine) == count


def test_v4_subgroups_all_normal():
    g = named_group("V4")
    assert all(is_normal(g, h) for h in subgroups(g))


@pytest.mark.parametrize("name,count", [("S3", 4), ("D4", 8), ("Q8", 6), ("A4", 5), ("C4", 3), ("V4", 5)])
def test_conjugacy_class_counts(name, count):
    g = named_group(name)
    classes = conjugacy_classes_of_subgroups(g)
    want = oracles.subgroup_classes(oracles.table(g))
    assert len(classes) == len(want) == count
    assert {frozenset(frozenset(h.members) for h in cls) for cls in classes} == {
        frozenset(cls) for cls in want}


def test_abelian_classes_are_singletons():
    for name in ("C4", "V4", "C6"):
        assert all(len(cls) == 1 for cls in conjugacy_classes_of_subgroups(named_group(name)))


def test_core_of_transposition_in_s3():
    g = named_group("S3")
    t = next(a for a in g.elements if g.order(a) == 2)
    h = subgroup_generated(g, [t])
    assert normal_core(g, h) == trivial_subgroup(g)


def test_core_of_center_in_d4():
    g = named_group("D4")
    center = make_subgroup(g, [z for z in g.elements if all(g.mul(z, x) == g.mul(x, z) for x in g.elements)])
    assert center.order == 2
    assert normal_core(g, center) == center


@pytest.mark.parametrize("name", CORPUS)
def test_core_matches_intersection_of_conjugates(name):
    g = named_group(name)
    t = oracles.table(g)
    for h in subgroups(g):
        assert frozenset(normal_core(g, h).members) == oracles.core(t, frozenset(h.members))
        assert is_normal(g, h) == oracles.is_normal(t, frozenset(h.members))


def test_not_a_subgroup():
    g = named_group("S3")
    with pytest.raises(NotASubgroup):
        make_subgroup(g, [0, 1, 2])
    with pytest.raises(NotASubgroup):
        make_subgroup(g, [1])


def test_opposite_of_abelian_is_same_table():
    g = named_group("C4")
    assert opposite(g).compose == g.compose
    assert opposite(opposite(named_group("S3"))).compose == named_group("S3").compose


def test_s3_isomorphic_to_its_opposite_by_inversion():
    g = named_group("S3")
    op = opposite(g)
    f = make_hom(g, op, g.inverse)
    assert hom_is_surjective(f)
    assert group_isomorphic(g, op) is not None


def test_c4_not_v4():
    c4, v4 = named_group("C4"), named_group("V4")
    assert oracles.orders(oracles.table(c4)) != oracles.orders(oracles.table(v4))
    assert group_isomorphic(c4, v4) is None


def test_q8_not_d4():
    assert group_isomorphic(named_group("Q8"), named_group("D4")) is None


def test_hom_checks():
    c4, c2 = cyclic(4), cyclic(2)
    f = make_hom(c4, c2, [0, 1, 0, 1])
    assert hom_is_surjective(f)
    assert hom_kernel(f).members == (0, 2)
    with pytest.raises(NotAHomomorphism):
        make_hom(c4, c2, [0, 1, 1, 0])
    with pytest.raises(NotAHomomorphism):
        make_hom(c4, c2, [1, 0, 1, 0])
    assert compose_homs(identity_hom(c2), f).map == f.map


def test_cosets_partition():
    g = named_group("A4")
    for h in subgroups(g):
        cs = cosets(g, h)
        assert len(cs) * h.order == g.size
        assert sorted(x for c in cs for x in c) == list(g.elements)
        assert g.identity in cs[0]


def test_named_monoids():
    for name in ("E2", "L3", "N3"):
        m = named_monoid(name)
        assert not m.is_group and m.size <= 4
        validate_monoid(m.size, m.compose)


# properties

@given(groups)
def test_random_group_laws(g):
    t = g.compose
    assert all(t[t[a][b]][c] == t[a][t[b][c]] for a in g.elements for b in g.elements for c in g.elements)
    assert all(t[a][g.inv(a)] == g.identity for a in g.elements)


@given(groups)
def test_subgroups_match_oracle(g):
    mine = {frozenset(h.members) for h in subgroups(g)}
    assert mine == set(oracles.all_subgroups(oracles.table(g)))
    assert all(g.size % len(h) == 0 for h in mine)


@given(groups)
def test_core_is_normal_and_largest(g):
    for h in subgroups(g):
        k = normal_core(g, h)
        assert is_normal(g, k) and set(k.members) <= set(h.members)
        for n in subgroups(g):
            if set(n.members) <= set(h.members) and is_normal(g, n):
                assert set(n.members) <= set(k.members)


@given(groups)
def test_isomorphic_to_relabelling(g):
    iso = group_isomorphic(g, opposite(g))
    assert iso is not None
    t, u = g.compose, opposite(g).compose
    assert all(iso.map[t[a][b]] == u[iso.map[a]][iso.map[b]] for a in g.elements for b in g.elements)


@given(st.sampled_from(CORPUS), st.sampled_from(["C2", "C3"]))
def test_direct_product_order(a, b):
    g = direct_product(named_group(a), named_group(b))
    assert isinstance(g, FiniteGroup) and g.size == named_group(a).size * named_group(b).size
    assert len(subgroups(g)) >= len(subgroups(named_group(a)))


def test_whole_and_trivial():
    g = named_group("Q8")
    assert is_normal(g, whole_group(g)) and is_normal(g, trivial_subgroup(g))
