"""Plain-text interchange formats.

All formats are line oriented and whitespace separated; ``#`` starts a
comment. Parse errors carry the 1-based line and column of the offending
token. Writers emit a canonical form that parses back to an equal object.

Group-name references (in action and system files) are resolved by the
``resolve`` callback, which defaults to a ``<name>.group`` file next to the
input, then to the built-in catalog.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Callable, Optional

from .actions import GAction, make_action
from .algebra import FiniteMonoid, make_hom, validate_group, validate_monoid
from .catalog import named_monoid
from .category import FiniteConcreteCategory, Truncation
from .coverings import BaseGraph, GraphCover, make_graph, normalize_voltages
from .errors import GaloisError, ParseError
from .profinite import InverseSystem, make_system


@dataclass(frozen=True)
class Token:
    text: str
    line: int
    col: int


def tokenize(text: str, path: Optional[str] = None) -> list[list[Token]]:
    """Non-empty lines as lists of tokens, comments removed."""
    out = []
    for i, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        toks = []
        j = 0
        while j < len(body):
            if body[j].isspace():
                j += 1
                continue
            k = j
            while k < len(body) and not body[k].isspace():
                k += 1
            toks.append(Token(body[j:k], i, j + 1))
            j = k
        if toks:
            out.append(toks)
    return out


class _Reader:
    def __init__(self, text: str, path: Optional[str] = None):
        self.path = path
        self.rows = tokenize(text, path)
        self.pos = 0

    def error(self, msg: str, tok: Optional[Token] = None) -> ParseError:
        if tok is None:
            last = self.rows[-1][-1] if self.rows else Token("", 1, 1)
            return ParseError(msg, last.line, last.col + len(last.text), self.path)
        return ParseError(msg, tok.line, tok.col, self.path)

    def done(self) -> bool:
        return self.pos >= len(self.rows)

    def peek(self) -> Optional[list[Token]]:
        return None if self.done() else self.rows[self.pos]

    def next(self, what: str) -> list[Token]:
        if self.done():
            raise self.error(f"unexpected end of input, expected {what}")
        row = self.rows[self.pos]
        self.pos += 1
        return row

    def int(self, tok: Token, lo: Optional[int] = None, hi: Optional[int] = None) -> int:
        try:
            v = int(tok.text)
        except ValueError:
            raise self.error(f"expected an integer, got {tok.text!r}", tok) from None
        if (lo is not None and v < lo) or (hi is not None and v > hi):
            raise self.error(f"{v} out of range", tok)
        return v

    def ints(self, toks: list[Token], n: Optional[int], lo=None, hi=None, what="integers") -> list[int]:
        if n is not None and len(toks) != n:
            t = toks[n] if len(toks) > n else (toks[-1] if toks else None)
            raise self.error(f"expected {n} {what}, got {len(toks)}", t)
        return [self.int(t, lo, hi) for t in toks]

    def keyword(self, row: list[Token], word: str) -> None:
        if row[0].text != word:
            raise self.error(f"expected {word!r}, got {row[0].text!r}", row[0])

    def finish(self) -> None:
        if not self.done():
            raise self.error("trailing input", self.rows[self.pos][0])


def _ident(name: str) -> str:
    """A name as a single token."""
    return "_".join(name.split()) or "_"


def _wrap(r: _Reader, tok: Token, fn):
    """Re-raise validation failures as parse errors at ``tok``."""
    try:
        return fn()
    except ParseError:
        raise
    except GaloisError as err:
        raise r.error(str(err), tok) from None


# ----------------------------------------------------------------------
# groups and monoids


def parse_group(text: str, path: Optional[str] = None) -> FiniteMonoid:
    """``group <name> <size>`` (or ``monoid``), a ``compose`` block, optional ``inverse`` row."""
    r = _Reader(text, path)
    head = r.next("a group header")
    if head[0].text not in ("group", "monoid"):
        raise r.error(f"expected 'group' or 'monoid', got {head[0].text!r}", head[0])
    if len(head) != 3:
        raise r.error("header is '<group|monoid> <name> <size>'", head[min(len(head) - 1, 2)])
    name = head[1].text
    size = r.int(head[2], 1)
    row = r.next("'compose'")
    r.keyword(row, "compose")
    if len(row) != 1:
        raise r.error("'compose' stands on its own line", row[1])
    table = [r.ints(r.next("a compose row"), size, 0, size - 1) for _ in range(size)]
    inverse = None
    if not r.done():
        row = r.next("'inverse'")
        r.keyword(row, "inverse")
        if head[0].text == "monoid":
            raise r.error("monoids have no inverse row", row[0])
        inverse = r.ints(row[1:] if len(row) > 1 else r.next("an inverse row"), size, 0, size - 1)
    r.finish()
    if head[0].text == "monoid":
        return _wrap(r, head[0], lambda: validate_monoid(size, table, name=name))
    return _wrap(r, head[0], lambda: validate_group(size, table, inverse=inverse, name=name))


def format_group(g: FiniteMonoid) -> str:
    kind = "group" if g.is_group else "monoid"
    lines = [f"{kind} {_ident(g.name)} {g.size}", "compose"]
    lines += [" ".join(map(str, row)) for row in g.compose]
    if g.is_group:
        lines += ["inverse", " ".join(map(str, g.inverse))]
    return "\n".join(lines) + "\n"


def default_resolver(path: Optional[str]) -> Callable[[str], FiniteMonoid]:
    base = os.path.dirname(path) if path else "."

    def resolve(name: str) -> FiniteMonoid:
        for cand in (os.path.join(base, f"{name}.group"), os.path.join(base, f"{name.lower()}.group")):
            if os.path.exists(cand):
                with open(cand) as fh:
                    return parse_group(fh.read(), cand)
        return named_monoid(name)
    return resolve


def _resolve(r: _Reader, tok: Token, resolve) -> FiniteMonoid:
    try:
        return resolve(tok.text)
    except KeyError:
        raise r.error(f"unknown group {tok.text!r}", tok) from None


# ----------------------------------------------------------------------
# actions


def parse_action(text: str, path: Optional[str] = None,
                 resolve: Optional[Callable[[str], FiniteMonoid]] = None,
                 actor: Optional[FiniteMonoid] = None) -> GAction:
    """``action <name> over <group-name> <points>`` then one row of images per element."""
    r = _Reader(text, path)
    head = r.next("an action header")
    r.keyword(head, "action")
    if len(head) != 5 or head[2].text != "over":
        raise r.error("header is 'action <name> over <group-name> <points>'", head[min(len(head) - 1, 2)])
    g = actor if actor is not None else _resolve(r, head[3], resolve or default_resolver(path))
    n = r.int(head[4], 0)
    rows = [r.ints(r.next("an action row"), n, 0, max(n - 1, 0)) for _ in range(g.size)]
    r.finish()
    return _wrap(r, head[0], lambda: make_action(g, n, rows, head[1].text))


def format_action(e: GAction, group_name: Optional[str] = None) -> str:
    lines = [f"action {_ident(e.name)} over {_ident(group_name or e.actor.name)} {e.points}"]
    lines += [" ".join(map(str, row)) for row in e.act]
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# categories


def parse_category(text: str, path: Optional[str] = None) -> FiniteConcreteCategory:
    """Objects, arrows with their fiber maps, and optionally the composition table.

    Without ``comp`` lines composition is read off the fiber maps, which
    then must be distinct within each hom-set. An optional
    ``truncation <max_points> <max_orbits|none>`` line records the caps the
    category was built with.
    """
    r = _Reader(text, path)
    head = r.next("a category header")
    r.keyword(head, "category")
    if len(head) != 2:
        raise r.error("header is 'category <name>'", head[-1])
    objs, fibers, obj_tok = [], [], {}
    arrows = []                               # (name, src, dst, fmap, tok)
    comps = []
    truncation = None
    while not r.done():
        row = r.next("a category line")
        kw = row[0].text
        if kw == "obj":
            if len(row) != 4 or row[2].text != "fiber":
                raise r.error("expected 'obj <id> fiber <k>'", row[0])
            if row[1].text in obj_tok:
                raise r.error(f"duplicate object {row[1].text!r}", row[1])
            obj_tok[row[1].text] = len(objs)
            objs.append(row[1].text)
            fibers.append(r.int(row[3], 0))
        elif kw == "arr":
            if len(row) < 5 or row[4].text != ":":
                raise r.error("expected 'arr <id> <src> <dst> : <k integers>'", row[0])
            for t in row[2:4]:
                if t.text not in obj_tok:
                    raise r.error(f"unknown object {t.text!r}", t)
            s, d = obj_tok[row[2].text], obj_tok[row[3].text]
            fm = r.ints(row[5:], fibers[s], 0, max(fibers[d] - 1, 0), "fiber values")
            if fibers[d] == 0 and fm:
                raise r.error("map into an empty fiber", row[5])
            arrows.append((row[1].text, s, d, tuple(fm), row[1]))
        elif kw == "comp":
            if len(row) != 5 or row[3].text != "=":
                raise r.error("expected 'comp <g> <f> = <h>'", row[0])
            comps.append(row)
        elif kw == "truncation":
            if len(row) != 3:
                raise r.error("expected 'truncation <max_points> <max_orbits|none>'", row[0])
            mo = None if row[2].text == "none" else r.int(row[2], 1)
            truncation = Truncation(r.int(row[1], 0), mo)
        else:
            raise r.error(f"unknown keyword {kw!r}", row[0])
    names = {}
    for k, (nm, *_rest) in enumerate(arrows):
        if nm in names:
            raise r.error(f"duplicate arrow {nm!r}", arrows[k][4])
        names[nm] = k
    src = [a[1] for a in arrows]
    dst = [a[2] for a in arrows]
    fmaps = [a[3] for a in arrows]
    arr_names = [a[0] for a in arrows]
    if not comps:
        return _wrap(r, head[0], lambda: FiniteConcreteCategory(
            head[1].text, objs, fibers, src, dst, fmaps, None, arr_names, None, None, truncation))
    comp = {}
    for row in comps:
        ids = []
        for t in (row[1], row[2], row[4]):
            if t.text not in names:
                raise r.error(f"unknown arrow {t.text!r}", t)
            ids.append(names[t.text])
        g, f, h = ids
        if dst[f] != src[g] or src[h] != src[f] or dst[h] != dst[g]:
            raise r.error("composite has the wrong endpoints", row[0])
        if (g, f) in comp and comp[(g, f)] != h:
            raise r.error("conflicting composite", row[0])
        comp[(g, f)] = h
    idents = []
    for x in range(len(objs)):
        cands = [a for a in range(len(arrows)) if src[a] == x and dst[a] == x
                 and all(comp.get((a, f), f) == f for f in range(len(arrows)) if dst[f] == x)
                 and all(comp.get((g, a), g) == g for g in range(len(arrows)) if src[g] == x)]
        if not cands:
            raise r.error(f"object {objs[x]!r} has no identity", head[0])
        idents.append(cands[0])
    keys = [(k,) for k in range(len(arrows))]
    return _wrap(r, head[0], lambda: FiniteConcreteCategory(
        head[1].text, objs, fibers, src, dst, fmaps, keys, arr_names, idents, comp, truncation))


def _faithful(c: FiniteConcreteCategory) -> bool:
    for x in c.objects:
        for y in c.objects:
            hs = c.hom(x, y)
            if len({c.fmap[a] for a in hs}) != len(hs):
                return False
    return True


def format_category(c: FiniteConcreteCategory, with_comp: Optional[bool] = None) -> str:
    if with_comp is None:
        with_comp = c.comp is not None or not _faithful(c)
    lines = [f"category {_ident(c.name)}"]
    if c.truncation is not None:
        mo = c.truncation.max_orbits
        lines.append(f"truncation {c.truncation.max_points} {'none' if mo is None else mo}")
    for x in c.objects:
        lines.append(f"obj {c.obj_names[x]} fiber {c.fiber_sizes[x]}")
    for a in range(c.n_arrows):
        vals = " ".join(map(str, c.fmap[a]))
        lines.append(f"arr {c.arr_names[a]} {c.obj_names[c.src[a]]} {c.obj_names[c.dst[a]]} :" + (f" {vals}" if vals else ""))
    if with_comp:
        for g in range(c.n_arrows):
            for f in range(c.n_arrows):
                if c.dst[f] == c.src[g]:
                    lines.append(f"comp {c.arr_names[g]} {c.arr_names[f]} = {c.arr_names[c.compose(g, f)]}")
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# inverse systems


def parse_system(text: str, path: Optional[str] = None,
                 resolve: Optional[Callable[[str], FiniteMonoid]] = None) -> InverseSystem:
    """``system <name>``, ``node <id> group <group-name>``, ``edge <hi> -> <lo> : <|hi| integers>``."""
    r = _Reader(text, path)
    resolve = resolve or default_resolver(path)
    head = r.next("a system header")
    r.keyword(head, "system")
    if len(head) != 2:
        raise r.error("header is 'system <name>'", head[-1])
    nodes, groups, edges = [], {}, {}
    while not r.done():
        row = r.next("a system line")
        if row[0].text == "node":
            if len(row) != 4 or row[2].text != "group":
                raise r.error("expected 'node <id> group <group-name>'", row[0])
            if row[1].text in groups:
                raise r.error(f"duplicate node {row[1].text!r}", row[1])
            g = _resolve(r, row[3], resolve)
            if not g.is_group:
                raise r.error(f"{row[3].text} is not a group", row[3])
            nodes.append(row[1].text)
            groups[row[1].text] = g
        elif row[0].text == "edge":
            if len(row) < 5 or row[2].text != "->" or row[4].text != ":":
                raise r.error("expected 'edge <hi> -> <lo> : <integers>'", row[0])
            hi, lo = row[1].text, row[3].text
            for t in (row[1], row[3]):
                if t.text not in groups:
                    raise r.error(f"unknown node {t.text!r}", t)
            vals = r.ints(row[5:], groups[hi].size, 0, groups[lo].size - 1)
            edges[(hi, lo)] = _wrap(r, row[0], lambda: make_hom(groups[hi], groups[lo], vals))
        else:
            raise r.error(f"unknown keyword {row[0].text!r}", row[0])
    return _wrap(r, head[0], lambda: make_system(head[1].text, nodes, groups, edges))


def format_system(s: InverseSystem) -> str:
    lines = [f"system {_ident(s.name)}"]
    for n in s.nodes:
        lines.append(f"node {n} group {_ident(s.groups[n].name)}")
    for (hi, lo), f in s.edges.items():
        lines.append(f"edge {hi} -> {lo} : " + " ".join(map(str, f.map)))
    return "\n".join(lines) + "\n"


# ----------------------------------------------------------------------
# graphs and covers


def parse_graph(text: str, path: Optional[str] = None) -> tuple[BaseGraph, Optional[GraphCover]]:
    """A graph, and a cover of it when ``sheets`` is present.

    ``perm`` lines may sit on any edge; voltages are normalized so that the
    spanning tree carries identities.
    """
    r = _Reader(text, path)
    head = r.next("a graph header")
    r.keyword(head, "graph")
    if len(head) != 2:
        raise r.error("header is 'graph <name>'", head[-1])
    nv, base, edges, sheets, perms = None, 0, [], None, {}
    for row in iter(lambda: None if r.done() else r.next("a graph line"), None):
        kw = row[0].text
        if kw == "v":
            if len(row) != 2:
                raise r.error("expected 'v <count>'", row[0])
            nv = r.int(row[1], 1)
        elif kw == "e":
            if nv is None:
                raise r.error("'v' must come before edges", row[0])
            if len(row) != 3:
                raise r.error("expected 'e <u> <v>'", row[0])
            edges.append((r.int(row[1], 0, nv - 1), r.int(row[2], 0, nv - 1)))
        elif kw == "base":
            if nv is None or len(row) != 2:
                raise r.error("expected 'base <v>' after 'v'", row[0])
            base = r.int(row[1], 0, nv - 1)
        elif kw == "sheets":
            if len(row) != 2:
                raise r.error("expected 'sheets <n>'", row[0])
            sheets = r.int(row[1], 1)
        elif kw == "perm":
            if sheets is None:
                raise r.error("'sheets' must come before 'perm'", row[0])
            if len(row) < 3 or row[2].text != ":":
                raise r.error("expected 'perm <edge-index> : <n integers>'", row[0])
            e = r.int(row[1], 0, len(edges) - 1)
            p = r.ints(row[3:], sheets, 0, sheets - 1)
            if sorted(p) != list(range(sheets)):
                raise r.error("not a permutation", row[3])
            perms[e] = tuple(p)
        else:
            raise r.error(f"unknown keyword {kw!r}", row[0])
    if nv is None:
        raise r.error("missing 'v <count>'")
    g = _wrap(r, head[0], lambda: make_graph(nv, edges, base, head[1].text))
    if sheets is None:
        return g, None
    return g, normalize_voltages(g, sheets, perms)


def format_graph(g: BaseGraph, cov: Optional[GraphCover] = None) -> str:
    lines = [f"graph {_ident(g.name)}", f"v {g.n_vertices}"]
    lines += [f"e {u} {v}" for u, v in g.edges]
    lines.append(f"base {g.base}")
    if cov is not None:
        lines.append(f"sheets {cov.sheets}")
        for e, p in zip(g.non_tree, cov.voltages):
            lines.append(f"perm {e} : " + " ".join(map(str, p)))
    return "\n".join(lines) + "\n"


def read_file(path: str) -> str:
    with open(path) as fh:
        return fh.read()
