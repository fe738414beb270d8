import pytest
from hypothesis import given, settings, strategies as st

import oracles
from strategies import CORPUS
from galoiscat.actions import action_isomorphic, coset_action, is_transitive, regular_action
from galoiscat.algebra import group_isomorphic, hom_is_surjective, normal_core, subgroup_generated, subgroups
from galoiscat.catalog import named_group
from galoiscat.category import PointedObject, build_gset_category, category_from_actions, connected_subcategory
from galoiscat.errors import AxiomPrereqFailed, NotGalois
from galoiscat.galois import (
    ca_objects,
    cofinal_galois_diagram,
    commutes1,
    fiber_action,
    fundamental_group,
    galois_closure,
    galois_objects,
    is_galois,
    is_galois_iff_normal_check,
    subcategory_CA,
)

_CATS = {}


def transitive_cat(name):
    if name not in _CATS:
        g = named_group(name)
        _CATS[name] = connected_subcategory(build_gset_category(g, g.size))
    return _CATS[name]


def _by_model(c, e):
    return next(x for x in c.objects if c.models[x].points == e.points and action_isomorphic(c.models[x], e))


def _elem(g, order):
    return next(a for a in g.elements if g.order(a) == order)


def test_regular_is_galois():
    for name in CORPUS:
        g = named_group(name)
        c = transitive_cat(name)
        reg = _by_model(c, regular_action(g))
        for p in range(g.size):
            cert = is_galois(c, PointedObject(reg, p))
            assert cert is not None and cert.order == g.size
            assert sorted(cert.table) == list(range(g.size))


def test_three_point_s3_not_galois():
    g = named_group("S3")
    c = transitive_cat("S3")
    three = _by_model(c, coset_action(g, subgroup_generated(g, [_elem(g, 2)])))
    assert is_galois(c, PointedObject(three, 0)) is None


def test_point_is_galois():
    c = transitive_cat("D4")
    one = c.fiber_sizes.index(1)
    assert is_galois(c, PointedObject(one, 0)).order == 1


def test_empty_fiber_and_monoid_prereqs():
    c = build_gset_category(named_group("C2"), 2)
    with pytest.raises(AxiomPrereqFailed):
        is_galois(c, PointedObject(0, 0))
    with pytest.raises(AxiomPrereqFailed):
        galois_closure(c, 0)


def test_galois_iff_normal_examples():
    v4 = named_group("V4")
    assert all(is_galois_iff_normal_check(v4, h) for h in subgroups(v4))
    g = named_group("S3")
    for h, normal in ((subgroup_generated(g, [_elem(g, 3)]), True), (subgroup_generated(g, [_elem(g, 2)]), False)):
        c = category_from_actions(g, [coset_action(g, h)], ["G/H"], "one", None)
        assert (is_galois(c, PointedObject(0, 0)) is not None) == normal
        assert is_galois_iff_normal_check(g, h)


@pytest.mark.parametrize("name", CORPUS)
def test_galois_iff_normal_everywhere(name):
    g = named_group(name)
    t = oracles.table(g)
    c = transitive_cat(name)
    for h in subgroups(g):
        x = _by_model(c, coset_action(g, h))
        assert (is_galois(c, PointedObject(x, 0)) is not None) == oracles.is_normal(t, frozenset(h.members))


def test_closure_of_galois_is_itself():
    c = transitive_cat("S3")
    for cert in galois_objects(c):
        assert galois_closure(c, cert.node.obj).node.obj == cert.node.obj


def test_closure_of_three_points_is_regular():
    g = named_group("S3")
    c = transitive_cat("S3")
    three = _by_model(c, coset_action(g, subgroup_generated(g, [_elem(g, 2)])))
    cl = galois_closure(c, three)
    assert c.fiber_sizes[cl.node.obj] == 6
    assert len(cl.evaluation) == 3


@pytest.mark.parametrize("name", CORPUS)
def test_closure_is_core_quotient(name):
    g = named_group(name)
    t = oracles.table(g)
    c = transitive_cat(name)
    for h in subgroups(g):
        x = _by_model(c, coset_action(g, h))
        cl = galois_closure(c, x)
        want = oracles.coset_table(t, oracles.core(t, frozenset(h.members)))
        assert oracles.actions_isomorphic(list(c.models[cl.node.obj].act), want)
        assert action_isomorphic(c.models[cl.node.obj], coset_action(g, normal_core(g, h))) is not None


def test_closure_in_full_category_uses_components():
    g = named_group("S3")
    c = build_gset_category(g, 6)
    x = c.obj_names.index("O3+O2")
    cl = galois_closure(c, x)
    assert c.fiber_sizes[cl.node.obj] == 6 and len(cl.evaluation) == 5


def test_s3_diagram_nodes():
    d = cofinal_galois_diagram(transitive_cat("S3"))
    c = d.category
    assert sorted(c.fiber_sizes[n.node.obj] for n in d.nodes) == [1, 2, 6]
    assert all(hom_is_surjective(r) for r in d.rhos.values())


def test_single_object_diagram():
    g = named_group("C1")
    c = category_from_actions(g, [regular_action(g)], ["pt"], "pt", None)
    d = cofinal_galois_diagram(c)
    assert len(d.nodes) == 1 and d.rhos == {}
    assert fundamental_group(d).group.size == 1


@pytest.mark.parametrize("name", CORPUS)
def test_fundamental_group_recovers_g(name):
    g = named_group(name)
    c = transitive_cat(name)
    d = cofinal_galois_diagram(c)
    tg = fundamental_group(d)
    assert group_isomorphic(tg.group, g) is not None
    assert oracles.thread_count(d.system.groups, d.system.edges, d.system.nodes) == g.size
    for x in c.objects:
        e = fiber_action(d, tg, x)
        assert is_transitive(e) and e.points == c.fiber_sizes[x]


def test_ca_subcategories():
    g = named_group("S3")
    c = transitive_cat("S3")
    d = cofinal_galois_diagram(c)
    reg = _by_model(c, regular_action(g))
    one = c.fiber_sizes.index(1)
    assert ca_objects(c, d.certificate(reg)) == list(c.objects)
    assert ca_objects(c, d.certificate(one)) == [one]
    assert subcategory_CA(c, d.certificate(one)).n_objects == 1
    for (a, b) in d.transitions:
        assert set(ca_objects(c, d.certificate(b))) <= set(ca_objects(c, d.certificate(a)))
        for x in ca_objects(c, d.certificate(b)):
            assert commutes1(d, a, b, x)
    with pytest.raises(NotGalois):
        ca_objects(c, None)


@settings(max_examples=30)
@given(st.sampled_from(["S3", "D4", "Q8", "C4", "V4"]), st.data())
def test_closure_dominates_and_is_minimal(name, data):
    g = named_group(name)
    c = transitive_cat(name)
    h = data.draw(st.sampled_from(subgroups(g)))
    x = _by_model(c, coset_action(g, h))
    cl = galois_closure(c, x)
    k = normal_core(g, h)
    assert c.fiber_sizes[cl.node.obj] == g.size // k.order
    # any Galois object mapping onto x is at least as large
    for cert in galois_objects(c):
        if c.hom(cert.node.obj, x):
            assert c.fiber_sizes[cert.node.obj] % c.fiber_sizes[cl.node.obj] == 0
