"""Batch verifier.

Every subcommand prints ``KEY<TAB>VALUE`` lines (or aligned columns with
``--format human``) and exits 0 when every verdict passes, 1 when one fails
and 2 on unreadable input, parse errors or exceeded caps.
"""

from __future__ import annotations

import argparse
import os
import sys
import time
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from . import config
from .actions import classify_transitive, is_transitive, orbits, stabilizer
from .algebra import FiniteGroup, FiniteMonoid, is_normal
from .axioms import check_suite
from .catalog import named_monoid
from .category import FiniteConcreteCategory, initial_object
from .coverings import classify_covers, is_connected_cover, is_regular
from .equivalence import verify_equivalence_profinite, verify_grothendieck
from .errors import GaloisError, ParseError, SizeCapExceeded, SuiteFailed
from .galois import galois_closure, galois_objects
from .profinite import factor_action, limit_threads, pullback_action
from . import textio

SUITES = ("RC", "C", "G", "R", "R'", "E", "E'")


@dataclass
class RunConfig:
    command: str
    args: argparse.Namespace
    fmt: str = "machine"
    timing: bool = False


@dataclass
class Report:
    lines: list = field(default_factory=list)
    passed: bool = True
    status: Optional[int] = None

    def add(self, key: str, value) -> None:
        self.lines.append((key, str(value)))

    def fail(self, key: str, value) -> None:
        self.add(key, value)
        self.passed = False

    @property
    def exit_status(self) -> int:
        if self.status is not None:
            return self.status
        return 0 if self.passed else 1

    def render(self, fmt: str = "machine") -> str:
        if fmt == "human":
            width = max((len(k) for k, _ in self.lines), default=0)
            return "".join(f"{k.ljust(width)}  {v}\n" for k, v in self.lines)
        return "".join(f"{k}\t{v}\n" for k, v in self.lines)


# ----------------------------------------------------------------------
# input helpers


def _read(path: str) -> str:
    with open(path) as fh:
        return fh.read()


def _group(ref: str) -> FiniteMonoid:
    """A group file, or a catalog name such as ``S3``."""
    if os.path.exists(ref):
        return textio.parse_group(_read(ref), ref)
    try:
        return named_monoid(ref)
    except KeyError:
        raise FileNotFoundError(f"{ref}: no such file or catalog group") from None


def _category(path: str) -> FiniteConcreteCategory:
    c = textio.parse_category(_read(path), path)
    c.check_laws()
    return c


def _object(c: FiniteConcreteCategory, name: Optional[str]) -> int:
    if name is None:
        raise GaloisError("this command needs --object")
    try:
        return c.object_id(name)
    except GaloisError:
        if name.isdigit():
            return c.object_id(int(name))
        raise


def _perm(p) -> str:
    return ",".join(map(str, p))


# ----------------------------------------------------------------------
# subcommands


def cmd_validate(cfg: RunConfig, r: Report) -> None:
    for path in cfg.args.input:
        text = _read(path)
        rows = textio.tokenize(text, path)
        kind = rows[0][0].text if rows else ""
        r.add("file", path)
        if kind in ("group", "monoid"):
            g = textio.parse_group(text, path)
            r.add("kind", "group" if g.is_group else "monoid")
            r.add("name", g.name)
            r.add("order", g.size)
            if isinstance(g, FiniteGroup):
                r.add("abelian", "yes" if g.is_abelian() else "no")
            canon = textio.format_group(g)
            r.add("roundtrip", "PASS" if textio.format_group(textio.parse_group(canon)) == canon else "FAIL")
        elif kind == "action":
            e = textio.parse_action(text, path)
            r.add("kind", "action")
            r.add("name", e.name)
            r.add("points", e.points)
            r.add("orbits", len(orbits(e)))
            r.add("transitive", "yes" if is_transitive(e) else "no")
        elif kind == "category":
            c = _category(path)
            r.add("kind", "category")
            r.add("name", c.name)
            r.add("objects", c.n_objects)
            r.add("arrows", c.n_arrows)
            r.add("digest", c.digest())
            r.add("laws", "PASS")
        elif kind == "system":
            s = textio.parse_system(text, path)
            tg = limit_threads(s)
            r.add("kind", "system")
            r.add("nodes", len(s.nodes))
            r.add("thread_group_order", tg.group.size)
        elif kind == "graph":
            b, cov = textio.parse_graph(text, path)
            r.add("kind", "cover" if cov is not None else "graph")
            r.add("vertices", b.n_vertices)
            r.add("edges", len(b.edges))
            r.add("rank", b.rank)
            if cov is not None:
                r.add("sheets", cov.sheets)
                r.add("connected", "yes" if is_connected_cover(cov) else "no")
                r.add("regular", "yes" if is_regular(cov) else "no")
        else:
            raise ParseError(f"unknown record type {kind!r}", rows[0][0].line if rows else 1, 1, path)
    r.add("verdict", "PASS")


def cmd_check_axioms(cfg: RunConfig, r: Report) -> None:
    c = _category(cfg.args.input)
    a = _object(c, cfg.args.object) if cfg.args.suite in ("RC", "R", "R'", "E", "E'") else None
    rep = check_suite(c, cfg.args.suite, a)
    for k, v in rep.lines(c):
        r.add(k, v)
    r.passed = rep.passed


def cmd_classify_transitive(cfg: RunConfig, r: Report) -> None:
    g = _group(cfg.args.group)
    if not isinstance(g, FiniteGroup):
        raise GaloisError(f"{g.name} is not a group")
    acts = classify_transitive(g)
    r.add("group", g.name)
    r.add("order", g.size)
    r.add("count", len(acts))
    for k, e in enumerate(acts):
        h = stabilizer(e, 0)
        r.add(f"action.{k}", f"points={e.points} stabilizer_order={len(h.members)} "
                              f"normal={'yes' if is_normal(g, h) else 'no'}")
    r.add("verdict", "PASS")


def cmd_closure(cfg: RunConfig, r: Report) -> None:
    c = _category(cfg.args.input)
    x = _object(c, cfg.args.object)
    cl = galois_closure(c, x)
    cert = cl.certificate
    r.add("object", c.obj_names[x])
    r.add("closure", c.obj_names[cl.node.obj])
    r.add("point", cl.node.point)
    r.add("aut_order", cert.order)
    r.add("fiber_size", c.fiber_sizes[cl.node.obj])
    r.add("evaluation", " ".join(f"{c.arr_names[h]}->{p}" for h, p in zip(cert.auts, cert.table)))
    r.add("onto", " ".join(f"{p}:{c.arr_names[u]}" for p, u in enumerate(cl.evaluation)))
    r.add("verdict", "PASS")


def cmd_galois_scan(cfg: RunConfig, r: Report) -> None:
    c = _category(cfg.args.input)
    certs = galois_objects(c)
    r.add("category", c.name)
    r.add("galois_count", len(certs))
    for cert in certs:
        a = cert.node.obj
        r.add(f"galois.{c.obj_names[a]}", f"aut={cert.order} fiber={c.fiber_sizes[a]}")
    r.add("verdict", "PASS")


def cmd_factor_action(cfg: RunConfig, r: Report) -> None:
    s = textio.parse_system(_read(cfg.args.system), cfg.args.system)
    tg = limit_threads(s)
    rows = textio.tokenize(_read(cfg.args.action), cfg.args.action)
    over = rows[0][3].text if rows and len(rows[0]) > 3 else None
    if over in s.groups:
        # an action of one level, viewed as an action of the thread group
        e = textio.parse_action(_read(cfg.args.action), cfg.args.action, actor=s.groups[over])
        e = pullback_action(tg, over, e)
    else:
        e = textio.parse_action(_read(cfg.args.action), cfg.args.action, actor=tg.group)
    spec = factor_action(s, e, tg)
    r.add("thread_group_order", tg.group.size)
    r.add("level", spec.level)
    r.add("level_order", s.groups[spec.level].size)
    if len(spec.candidates) > 1:
        r.add("other_minimal_levels", " ".join(map(str, spec.candidates[1:])))
    for g, row in enumerate(spec.action.act):
        r.add(f"row.{g}", " ".join(map(str, row)))
    r.add("verdict", "PASS")


def cmd_classify_covers(cfg: RunConfig, r: Report) -> None:
    base, _ = textio.parse_graph(_read(cfg.args.base), cfg.args.base)
    n = cfg.args.sheets
    pointed = not cfg.args.unpointed
    covs = classify_covers(base, n, connected=not cfg.args.all, pointed=pointed)
    r.add("base", base.name)
    r.add("rank", base.rank)
    r.add("sheets", n)
    r.add("classification", "pointed" if pointed else "unpointed")
    r.add("count", len(covs))
    if not cfg.args.count_only:
        for k, cov in enumerate(covs):
            reg = "yes" if is_regular(cov) else "no"
            r.add(f"cover.{k}", " ".join(_perm(p) for p in cov.voltages) + f" regular={reg}")
    r.add("verdict", "PASS")


def cmd_reconstruct(cfg: RunConfig, r: Report) -> None:
    c = _category(cfg.args.input)
    expect = _group(cfg.args.expect) if cfg.args.expect else None
    if expect is not None and not isinstance(expect, FiniteGroup):
        raise GaloisError(f"{expect.name} is not a group")
    try:
        if initial_object(c) is not None:
            res = verify_grothendieck(c, expect)
        else:
            res = verify_equivalence_profinite(c, expect)
    except SuiteFailed as err:
        r.add("suite", err.suite)
        if err.report is not None:
            for k, v in err.report.lines(c):
                r.add(f"suite.{k}", v)
        r.fail("verdict", f"FAIL {err}")
        return
    for k, v in res.lines():
        r.add(k, v)
    r.passed = res.passed


COMMANDS: dict[str, Callable[[RunConfig, Report], None]] = {
    "validate": cmd_validate,
    "check-axioms": cmd_check_axioms,
    "classify-transitive": cmd_classify_transitive,
    "closure": cmd_closure,
    "galois-scan": cmd_galois_scan,
    "factor-action": cmd_factor_action,
    "classify-covers": cmd_classify_covers,
    "reconstruct": cmd_reconstruct,
}


def run(cfg: RunConfig) -> Report:
    r = Report()
    t0 = time.perf_counter()
    try:
        COMMANDS[cfg.command](cfg, r)
    except (ParseError, SizeCapExceeded, OSError, ValueError) as err:
        r.add("error", f"{type(err).__name__}: {err}")
        r.passed = False
        r.status = 2
    except GaloisError as err:
        r.fail("error", f"{type(err).__name__}: {err}")
        r.add("verdict", "FAIL")
    if cfg.timing:
        r.add("timing", f"{time.perf_counter() - t0:.3f}s")
    return r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("machine", "human"), default="machine")
    common.add_argument("--timing", action="store_true", help="append wall-clock time (breaks byte-identity)")
    common.add_argument("--caps", help="cap overrides, same syntax as GALOIS_CAP")
    p = argparse.ArgumentParser(prog="galoiscat", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def command(name, text):
        return sub.add_parser(name, help=text, parents=[common])

    s = command("validate", "parse and validate interchange files")
    s.add_argument("input", nargs="+")

    s = command("check-axioms", "run an axiom suite on a category file")
    s.add_argument("--suite", required=True, choices=SUITES)
    s.add_argument("--input", required=True)
    s.add_argument("--object")

    s = command("classify-transitive", "transitive actions up to isomorphism")
    s.add_argument("--group", required=True, help="group file or catalog name")

    s = command("closure", "Galois closure of an object")
    s.add_argument("--input", required=True)
    s.add_argument("--object", required=True)

    s = command("galois-scan", "list the Galois objects")
    s.add_argument("--input", required=True)

    s = command("factor-action", "minimal level of a thread-group action")
    s.add_argument("--system", required=True)
    s.add_argument("--action", required=True)

    s = command("classify-covers", "covers of a graph up to isomorphism")
    s.add_argument("--base", required=True)
    s.add_argument("--sheets", required=True, type=int)
    s.add_argument("--unpointed", action="store_true", help="forget the basepoint sheet")
    s.add_argument("--all", action="store_true", help="include disconnected covers")
    s.add_argument("--count-only", action="store_true")

    s = command("reconstruct", "recover the thread group and check the equivalence")
    s.add_argument("--input", required=True)
    s.add_argument("--expect", help="group file or catalog name")
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    saved = os.environ.get("GALOIS_CAP")
    if args.caps:
        os.environ["GALOIS_CAP"] = args.caps
    try:
        try:
            config.caps()
        except ValueError as err:
            sys.stderr.write(f"error\t{err}\n")
            return 2
        cfg = RunConfig(args.command, args, args.format, args.timing)
        rep = run(cfg)
        sys.stdout.write(rep.render(cfg.fmt))
        return rep.exit_status
    finally:
        # in-process callers keep their own environment
        if saved is None:
            os.environ.pop("GALOIS_CAP", None)
        else:
            os.environ["GALOIS_CAP"] = saved


if __name__ == "__main__":
    sys.exit(main())
