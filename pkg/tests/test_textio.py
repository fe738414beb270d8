import os

import pytest
from hypothesis import given, settings, strategies as st

from strategies import CORPUS, groups
from galoiscat.actions import coset_action, disjoint_union, regular_action
from galoiscat.algebra import subgroups
from galoiscat.catalog import named_group, named_monoid
from galoiscat.category import build_gset_category, build_mset_category
from galoiscat.coverings import GraphCover, bouquet, make_graph
from galoiscat.errors import ParseError
from galoiscat.profinite import cyclic_chain
from galoiscat.textio import (
    format_action,
    format_category,
    format_graph,
    format_group,
    format_system,
    parse_action,
    parse_category,
    parse_graph,
    parse_group,
    parse_system,
    read_file,
    tokenize,
)

CORPUS_DIR = os.path.join(os.path.dirname(__file__), os.pardir, "corpus")


def _same_category(a, b):
    assert a.obj_names == b.obj_names
    assert list(a.fiber_sizes) == list(b.fiber_sizes)
    assert list(a.src) == list(b.src) and list(a.dst) == list(b.dst)
    assert list(a.fmap) == list(b.fmap)
    for g in range(a.n_arrows):
        for f in range(a.n_arrows):
            if a.dst[f] == a.src[g]:
                assert a.compose(g, f) == b.compose(g, f)


@pytest.mark.parametrize("name", CORPUS + ["E2", "L3", "N3"])
def test_group_round_trip(name):
    g = named_monoid(name)
    text = format_group(g)
    h = parse_group(text)
    assert h == g and h.is_group == g.is_group
    assert format_group(h) == text


@settings(max_examples=40)
@given(groups)
def test_group_round_trip_property(g):
    assert parse_group(format_group(g)) == g


def test_tokenize_positions_and_comments():
    rows = tokenize("# header\n  group  G 2 # trailing\n\n0 1\n")
    assert [[(t.text, t.line, t.col) for t in r] for r in rows] == [
        [("group", 2, 3), ("G", 2, 10), ("2", 2, 12)],
        [("0", 4, 1), ("1", 4, 3)],
    ]


@pytest.mark.parametrize("text,line,col", [
    ("group G 2\ncompose\n0 1\n1 x\n", 4, 3),
    ("group G 2\ncompose\n0 1\n1\n", 4, 1),
    ("group G 2\ncompose\n0 1\n1 2\n", 4, 3),
    ("grp G 2\n", 1, 1),
    ("group G 2\ncompose\n0 1\n1 0\nextra\n", 5, 1),
])
def test_group_errors_locate_token(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_group(text, "g.group")
    assert (ei.value.line, ei.value.column) == (line, col)
    assert str(ei.value).startswith(f"g.group:{line}:{col}:")


def test_non_group_table_is_rejected():
    # associative monoid with no inverse for 1
    with pytest.raises(ParseError):
        parse_group("group M 2\ncompose\n0 0\n0 1\n")


def test_broken_corpus_file():
    path = os.path.join(CORPUS_DIR, "broken.group")
    with pytest.raises(ParseError) as ei:
        parse_group(read_file(path), path)
    assert ei.value.line == 4 and ei.value.column == 3


@pytest.mark.parametrize("name", ["S3", "D4", "A4"])
def test_action_round_trip(name):
    g = named_group(name)
    parts = [coset_action(g, h) for h in subgroups(g)[:3]] + [regular_action(g)]
    e, _ = disjoint_union(parts)
    text = format_action(e)
    back = parse_action(text, actor=g)
    assert back.act == e.act and back.points == e.points
    assert format_action(back) == text


def test_action_resolves_catalog_and_files(tmp_path):
    g = named_group("C3")
    (tmp_path / "mine.group").write_text(format_group(g))
    text = "action rot over mine 3\n0 1 2\n1 2 0\n2 0 1\n"
    path = tmp_path / "rot.act"
    path.write_text(text)
    e = parse_action(text, str(path))
    assert e.actor == g
    assert parse_action(text.replace("mine", "C3")).actor == g


def test_action_errors():
    with pytest.raises(ParseError) as ei:
        parse_action("action a over NOPE 2\n")
    assert (ei.value.line, ei.value.column) == (1, 15)
    with pytest.raises(ParseError):                     # not an action: identity moves points
        parse_action("action a over C2 2\n1 0\n0 1\n")
    with pytest.raises(ParseError):
        parse_action("action a over C2 2\n0 1\n")


@pytest.mark.parametrize("name,pts", [("C2", 3), ("S3", 4), ("C4", 4)])
def test_category_round_trip(name, pts):
    c = build_gset_category(named_group(name), pts)
    text = format_category(c)
    back = parse_category(text)
    _same_category(c, back)
    assert back.truncation == c.truncation
    assert format_category(back) == text


def test_category_round_trip_with_comp_lines():
    c = build_gset_category(named_group("C3"), 3)
    text = format_category(c, with_comp=True)
    assert "\ncomp " in text
    back = parse_category(text)
    _same_category(c, back)
    _same_category(back, parse_category(format_category(back)))


def test_unfaithful_category_keeps_composition():
    c = build_mset_category(named_monoid("N3"), 2)
    text = format_category(c)
    back = parse_category(text)
    _same_category(c, back)


@pytest.mark.parametrize("fname", ["s3_gsets.cat", "s3_transitive.cat", "c4_gsets.cat"])
def test_corpus_categories_parse(fname):
    path = os.path.join(CORPUS_DIR, fname)
    c = parse_category(read_file(path), path)
    c.check_laws()
    assert format_category(c) == read_file(path)


@pytest.mark.parametrize("text,line,col", [
    ("category C\nobj a fiber 1\narr f a b : 0\n", 3, 9),
    ("category C\nobj a fiber 1\nobj a fiber 2\n", 3, 5),
    ("category C\nobj a fiber 1\narr f a a : 1\n", 3, 13),
    ("category C\nobj a fiber 1\nthing\n", 3, 1),
    ("category C\nobj a fiber 2\narr f a a : 0\n", 3, 13),
])
def test_category_errors(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_category(text)
    assert (ei.value.line, ei.value.column) == (line, col)


def test_category_without_identity_fails():
    with pytest.raises(ParseError):
        parse_category("category C\nobj a fiber 1\n")


def test_system_round_trip():
    s = cyclic_chain([1, 2, 3])
    text = format_system(s)
    back = parse_system(text)
    assert back.nodes == s.nodes
    assert {k: f.map for k, f in back.edges.items()} == {k: f.map for k, f in s.edges.items()}
    assert format_system(back) == text


def test_corpus_system():
    path = os.path.join(CORPUS_DIR, "chain.system")
    s = parse_system(read_file(path), path)
    assert [s.groups[n].size for n in s.nodes] == [8, 4, 2]


def test_system_errors():
    with pytest.raises(ParseError) as ei:
        parse_system("system s\nnode a group C2\nedge a -> b : 0 0\n")
    assert (ei.value.line, ei.value.column) == (3, 11)
    with pytest.raises(ParseError):                      # not a homomorphism
        parse_system("system s\nnode a group C4\nnode b group C2\nedge a -> b : 0 1 1 0\n")
    with pytest.raises(ParseError) as ei:
        parse_system("system s\nnode a group E2\n")
    assert ei.value.column == 14


def test_graph_round_trip():
    g = bouquet(2)
    cov = GraphCover(g, 3, ((1, 0, 2), (1, 2, 0)))
    text = format_graph(g, cov)
    g2, cov2 = parse_graph(text)
    assert g2.edges == g.edges and cov2.voltages == cov.voltages
    assert format_graph(g2, cov2) == text
    assert parse_graph(format_graph(g))[1] is None


def test_corpus_cover():
    path = os.path.join(CORPUS_DIR, "wedge2_s3.cover")
    g, cov = parse_graph(read_file(path), path)
    assert cov.sheets == 3 and cov.voltages == ((1, 0, 2), (1, 2, 0))


def test_tree_voltages_are_absorbed():
    text = "graph tri\nv 2\ne 0 1\ne 0 1\nsheets 2\nperm 0 : 1 0\n"
    g, cov = parse_graph(text)
    # the swap on the tree edge moves into the loop voltage
    assert cov.voltages == ((1, 0),)


@pytest.mark.parametrize("text,line,col", [
    ("graph g\ne 0 0\n", 2, 1),
    ("graph g\nv 1\ne 0 1\n", 3, 5),
    ("graph g\nv 1\ne 0 0\nsheets 2\nperm 0 : 0 0\n", 5, 10),
    ("graph g\nv 1\ne 0 0\nperm 0 : 0\n", 4, 1),
])
def test_graph_errors(text, line, col):
    with pytest.raises(ParseError) as ei:
        parse_graph(text)
    assert (ei.value.line, ei.value.column) == (line, col)


def test_disconnected_graph_is_parse_error():
    with pytest.raises(ParseError):
        parse_graph("graph g\nv 2\ne 0 0\n")


@settings(max_examples=40)
@given(st.integers(1, 4), st.integers(1, 4), st.data())
def test_graph_text_round_trip_property(nv, n, data):
    tree = [(data.draw(st.integers(0, v - 1)), v) for v in range(1, nv)]
    extra = data.draw(st.lists(st.tuples(st.integers(0, nv - 1), st.integers(0, nv - 1)), max_size=3))
    g = make_graph(nv, tree + extra, data.draw(st.integers(0, nv - 1)), "g")
    volts = tuple(tuple(data.draw(st.permutations(range(n)))) for _ in g.non_tree)
    cov = GraphCover(g, n, volts)
    g2, cov2 = parse_graph(format_graph(g, cov))
    assert g2.edges == g.edges and g2.base == g.base
    assert cov2.voltages == volts
