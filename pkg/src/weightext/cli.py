"""Command-line front end.

Exit codes: 0 success, 1 usage or I/O error, 2 schema error in an input
file, 3 validation failure.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from pathlib import Path
from typing import Any, Sequence

from . import io
from .extension import ONE, ExtTruncation, GroupElement, ext_dim, extend, is_isomorphic_to_base
from .graph import ExplicitGraph, GraphError, GraphProvider, PascalGraph, Report, Truncation, Vertex, parse_key, truncate, validate
from .harmonic import CoherentSystem, HarmonicError, check_extended, check_harmonic, from_extended, pullback, to_extended
from .k0 import K0Element, K0Error, check_element, delta, embed_mu, gamma_action, in_positive_cone, psi_from_state, psi_on_image, window_matrix
from .link import Link, LinkError, WeightSystem, standard_link, validate_link, weight_system
from .rational import format_ratio, parse_ratio
from .selftest import run_selftest
from .uq import GTGraph, build_uq, canonical_q, gt_dim, q_schur_principal, signatures, weyl_dim

EXIT_USAGE, EXIT_SCHEMA, EXIT_VALIDATION = 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _ratio_arg(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


# context


@dataclass
class Context:
    t: Truncation
    link: Link
    weights: WeightSystem
    graph: GraphProvider
    q: Fraction | None

    @property
    def grade_base(self) -> Fraction | None:
        return self.q if self.q is not None else self.weights.base


def _split_seeds(text: str) -> list[str]:
    return re.findall(r"\([^)]*\)|[^;\s]+", text)


def _seed_vertex(g: GraphProvider, token: str) -> Vertex:
    key = parse_key(token)
    if isinstance(g, PascalGraph):
        if not (isinstance(key, tuple) and len(key) == 2):
            raise UsageError(f"Pascal seeds are (n,k) pairs, got {token!r}")
        return PascalGraph.vertex(*key)
    if isinstance(g, GTGraph):
        if not isinstance(key, tuple):
            raise UsageError(f"U_q seeds are signatures like (1,0), got {token!r}")
        return GTGraph.vertex(key)
    return g.lookup(key)


def build_context(args: argparse.Namespace, default_depth: int = 2) -> Context:
    depth = args.depth if args.depth is not None else default_depth
    if depth < 0:
        raise UsageError("--depth must be non-negative")
    q = None
    if args.graph:
        g: GraphProvider = io.graph_from_json(io.read_json(args.graph))
    elif args.builtin == "pascal":
        g = PascalGraph()
    elif args.builtin == "uq":
        if args.q is None:
            raise UsageError("--builtin uq needs --q")
        q = args.q
        if q <= 0 or q == 1:
            raise UsageError(f"--q must be positive and different from 1, got {format_ratio(q)}")
        g = GTGraph()
    else:
        raise UsageError("choose a graph with --builtin or --graph")

    if args.seeds:
        seeds = [_seed_vertex(g, s) for s in _split_seeds(args.seeds)]
    elif isinstance(g, GTGraph):
        seeds = [GTGraph.vertex(lam) for lam in signatures(depth, args.max_size)]
    elif isinstance(g, ExplicitGraph):
        top = depth if args.depth is not None else g.top_level
        seeds = list(g.level_vertices(top))
    else:
        seeds = list(g.level_vertices(depth))

    if isinstance(g, GTGraph) and not args.link:
        t, link, w = build_uq(q, seeds)
        return Context(t, link, w, g, q)

    t = truncate(g, seeds)
    link = io.link_from_json(io.read_json(args.link), t) if args.link else standard_link(t)
    rep = validate_link(t, link)
    if not rep.ok:
        raise LinkError("; ".join(rep.errors[:3]))
    return Context(t, link, weight_system(t, link), g, q)


# output helpers


def table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    cells = [list(map(str, headers))] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(headers))]
    lines = ["  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * wd for wd in widths))
    return "\n".join(lines) + "\n"


def report_lines(*reports: Report) -> str:
    out = []
    for r in reports:
        out.append(f"{r.name}: {'ok' if r.ok else 'FAILED'}")
        out += [f"  error: {e}" for e in r.errors]
        out += [f"  warning: {e}" for e in r.warnings]
        out += [f"  note: {e}" for e in r.notes]
    return "\n".join(out) + "\n"


def _grade(g: GroupElement, base: Fraction | None) -> str:
    return "" if base is None else str(g.grade(base))


def _require_format(args, allowed: Sequence[str]) -> None:
    if args.format not in allowed:
        raise UsageError(f"--format {args.format} is not available for '{args.command}'")


def _gamma_for(ctx: Context, grade: int) -> GroupElement:
    base = ctx.grade_base
    if base is None:
        if grade != 0:
            raise UsageError("weight group is trivial; only grade 0 exists")
        return ONE
    return GroupElement.of(base, grade)


# commands


def cmd_graph(args, ctx: Context) -> tuple[str, bool]:
    rep = validate(ctx.t)
    if args.format == "dot":
        return io.truncation_dot(ctx.t), rep.ok
    if args.format == "json":
        return io.dumps(dict(io.graph_to_json(ctx.t), report=rep.to_dict())), rep.ok
    rows = [
        (v.level, v, ctx.t.dim(v), " ".join(str(p) for p, _ in ctx.t.parents(v)))
        for v in ctx.t.vertices()
    ]
    return table(["level", "vertex", "dim", "parents"], rows) + report_lines(rep), rep.ok


def cmd_link(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    rep = validate_link(ctx.t, ctx.link)
    if args.format == "json":
        return io.dumps(dict(io.link_to_json(ctx.link), report=rep.to_dict())), rep.ok
    rows = [(c, p, format_ratio(x)) for (c, p), x in sorted(ctx.link.kernel.items())]
    return table(["child", "parent", "kappa"], rows) + report_lines(rep), rep.ok


def cmd_kdim(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    w = ctx.weights
    if args.format == "json":
        data = io.weights_to_json(w)
        return io.dumps({"kdim": data["kdim"], "kdim_sq": data["kdim_sq"]}), True
    rows = [
        (v, ctx.t.dim(v), format_ratio(w.kdim_sq[v]), format_ratio(w.kdim[v]) if v in w.kdim else "irrational")
        for v in ctx.t.vertices()
    ]
    return table(["vertex", "dim", "kdim_sq", "kdim"], rows), True


def _base_text(w: WeightSystem) -> str:
    if w.trivial:
        return "trivial"
    return "none (not cyclic)" if w.base is None else format_ratio(w.base)


def cmd_weights(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    w = ctx.weights
    if not w.complete:
        raise LinkError("κ-dimension irrational; weights need exact κ-dimensions")
    if args.format == "json":
        return io.dumps(io.weights_to_json(w)), True
    rows = [(c, p, format_ratio(x)) for (c, p), x in sorted(w.rho.items())]
    tail = f"generators: {', '.join(format_ratio(g) for g in w.generators)}\nbase: {_base_text(w)}\n"
    return table(["child", "parent", "rho"], rows) + tail, True


def _cone(args, ctx: Context) -> ExtTruncation:
    g = _gamma_for(ctx, args.grade)
    return extend(ctx.t, ctx.weights, [(z, g) for z in ctx.t.levels[ctx.t.top_level]])


def _cone_report(x: ExtTruncation) -> Report:
    rep = Report("extension")
    for v in x.vertices():
        if ext_dim(x, v) != x.base.dim(v.z):
            rep.fail(f"ext_dim{v} = {ext_dim(x, v)} ≠ dim {x.base.dim(v.z)}")
    return rep


def cmd_extend(args, ctx: Context) -> tuple[str, bool]:
    x = _cone(args, ctx)
    rep = _cone_report(x)
    base = ctx.grade_base
    if args.format == "dot":
        return io.ext_dot(x), rep.ok
    if args.format == "json":
        return io.dumps(dict(io.ext_to_json(x, base), report=rep.to_dict())), rep.ok
    rows = [(v.level, v.z, v.gamma, _grade(v.gamma, base), ext_dim(x, v)) for v in x.vertices()]
    return table(["level", "z", "gamma", "grade", "dim"], rows) + report_lines(rep), rep.ok


def cmd_pipeline(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    t, w = ctx.t, ctx.weights
    reports = [validate(t), validate_link(t, ctx.link)]
    summary: dict[str, Any] = {
        "vertices": sum(1 for _ in t.vertices()),
        "top_level": t.top_level,
        "kdim_exact": w.complete,
        "gamma_trivial": w.trivial,
        "generators": [format_ratio(g) for g in w.generators],
        "base": None if w.base is None else format_ratio(w.base),
    }
    out: dict[str, Any] = {"graph": io.graph_to_json(t), "link": io.link_to_json(ctx.link)}
    if w.complete:
        x = _cone(args, ctx)
        reports.append(_cone_report(x))
        summary["extension_vertices"] = sum(1 for _ in x.vertices())
        summary["extension_isomorphic_to_base"] = is_isomorphic_to_base(x)
        out["weights"] = io.weights_to_json(w)
        out["extension"] = io.ext_to_json(x, ctx.grade_base)
        if ctx.q is not None and w.base != canonical_q(ctx.q):
            summary["note"] = f"base {summary['base']} is a proper power of q on this truncation"
    else:
        reports.append(Report("weights", notes=["κ-dimension irrational; weights not computed"]))
    ok = all(r.ok for r in reports)
    summary["ok"] = ok
    if args.format == "json":
        out["summary"] = summary
        out["reports"] = [r.to_dict() for r in reports]
        return io.dumps(out), ok
    lines = [f"{k}: {json.dumps(v, ensure_ascii=False) if not isinstance(v, str) else v}" for k, v in summary.items()]
    return "\n".join(lines) + "\n" + report_lines(*reports), ok


def _top_distribution(spec: str, ctx: Context) -> dict[Vertex, Fraction]:
    t = ctx.t
    top = list(t.levels[t.top_level])
    kind, _, arg = spec.partition(":")
    if kind == "uniform":
        return {z: Fraction(1, len(top)) for z in top}
    if kind == "binomial":
        if not isinstance(ctx.graph, PascalGraph):
            raise UsageError("binomial tops need --builtin pascal")
        p = _ratio_or_usage(arg)
        if not 0 <= p <= 1:
            raise UsageError("binomial parameter must lie in [0, 1]")
        n = t.top_level
        return {z: comb(n, z.key[1]) * p ** z.key[1] * (1 - p) ** (n - z.key[1]) for z in top}
    if kind == "delta":
        z = _seed_vertex(ctx.graph, arg)
        return {z: Fraction(1)}
    if kind == "file":
        data = io.read_json(arg)
        if not isinstance(data, dict):
            raise io.SchemaError("top distribution file must map keys to rationals")
        idx = io.vertex_index(t)
        return {io.lookup(idx, key, "top"): io._ratio(x, f"top[{key}]") for key, x in data.items()}
    raise UsageError(f"unknown --top spec {spec!r} (uniform, binomial:p, delta:KEY, file:PATH)")


def _ratio_or_usage(text: str) -> Fraction:
    try:
        return parse_ratio(text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _state(args, ctx: Context) -> CoherentSystem:
    if getattr(args, "system", None):
        return io.coherent_from_json(io.read_json(args.system), ctx.t)
    return pullback(ctx.t, ctx.link, _top_distribution(args.top, ctx))


def cmd_harmonic(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    nu = _state(args, ctx)
    reports = [check_harmonic(nu, ctx.link)]
    payload: dict[str, Any] = {"system": io.coherent_to_json(nu)}
    rows = [(z, format_ratio(x)) for row in nu.levels for z, x in row.items()]
    headers = ["vertex", "nu"]
    if args.action == "transform":
        nt = to_extended(nu, ctx.t, ctx.weights, args.beta)
        rep = check_extended(nt, ctx.t, ctx.weights)
        back = Report("round-trip")
        if rep.ok and from_extended(nt, ctx.t, ctx.weights) != nu:
            back.fail("from_extended(to_extended(nu)) differs from nu")
        reports += [rep, back]
        base = ctx.grade_base
        payload["extended"] = io.extended_to_json(nt, base)
        rows = [(v.z, v.gamma, _grade(v.gamma, base), format_ratio(x)) for row in nt.levels for v, x in row.items()]
        headers = ["z", "gamma", "grade", "nu~"]
    ok = all(r.ok for r in reports)
    if args.format == "json":
        payload["reports"] = [r.to_dict() for r in reports]
        return io.dumps(payload), ok
    return table(headers, rows) + report_lines(*reports), ok


def _element(args, ctx: Context) -> K0Element:
    if args.element:
        f = io.k0_from_json(io.read_json(args.element), ctx.t, ctx.grade_base)
    elif args.delta:
        key, sep, grade = args.delta.rpartition(",")
        if not sep:
            raise UsageError("--delta takes KEY,GRADE, e.g. \"(1),0\"")
        try:
            k = int(grade)
        except ValueError:
            raise UsageError(f"grade must be an integer, got {grade!r}") from None
        z = _seed_vertex(ctx.graph, key.strip())
        if z not in ctx.t:
            raise GraphError(f"vertex not in truncation: {z}")
        f = delta(z, _gamma_for(ctx, k))
    else:
        raise UsageError("give an element with --delta or --element")
    rep = check_element(f, ctx.t)
    if not rep.ok:
        raise K0Error(rep.errors[0])
    return f


def _k0_rows(f: K0Element, base: Fraction | None) -> list[tuple]:
    return [(f.level, v.z, v.gamma, _grade(v.gamma, base), format_ratio(x)) for v, x in f.values.items()]


K0_HEADERS = ["level", "z", "gamma", "grade", "value"]


def cmd_k0(args, ctx: Context) -> tuple[str, bool]:
    _require_format(args, ("json", "table"))
    f = _element(args, ctx)
    base = ctx.grade_base
    target = args.window_level if args.window_level is not None else f.level + 1
    if target < f.level or target > ctx.t.top_level:
        raise UsageError(f"--window-level must lie in [{f.level}, {ctx.t.top_level}]")
    chain = [f]
    while chain[-1].level < target:
        chain.append(embed_mu(chain[-1], ctx.t, ctx.weights).materialize())
    rep = Report(args.action)
    payload: dict[str, Any] = {"element": io.k0_to_json(f, base)}
    text = ""

    if args.action in ("embed", "cone"):
        for g in chain:
            sub = check_element(g, ctx.t)
            for e in sub.errors:
                rep.fail(f"level {g.level}: {e}")
            if args.action == "cone" and in_positive_cone(f) and not in_positive_cone(g):
                rep.fail(f"level {g.level}: image left the positive cone")
        payload["levels"] = [io.k0_to_json(g, base) for g in chain[1:]]
        if args.action == "cone":
            payload["in_cone"] = [in_positive_cone(g) for g in chain]
        text = table(K0_HEADERS, [r for g in chain[1:] for r in _k0_rows(g, base)])
        if args.matrix and len(chain) > 1:
            rows, cols = list(chain[-1].values), list(chain[-2].values)
            m = window_matrix(ctx.t, ctx.weights, rows, cols)
            payload["matrix"] = {
                "rows": [io.ext_vertex_to_json(v, base) for v in rows],
                "cols": [io.ext_vertex_to_json(v, base) for v in cols],
                "entries": io.matrix_rows(m),
            }
            text += "matrix (rows: level {}, cols: level {}):\n".format(chain[-1].level, chain[-2].level)
            text += "".join(" ".join(r) + "\n" for r in io.matrix_rows(m))
    elif args.action == "act":
        g = _gamma_for(ctx, args.by)
        moved = gamma_action(f, g)
        moved_chain = [moved]
        while moved_chain[-1].level < target:
            moved_chain.append(embed_mu(moved_chain[-1], ctx.t, ctx.weights).materialize())
        for a, b in zip(chain, moved_chain):
            if gamma_action(a, g) != b:
                rep.fail(f"level {a.level}: embedding does not commute with γ = {g}")
        payload["acted"] = io.k0_to_json(moved, base)
        payload["levels"] = [io.k0_to_json(b, base) for b in moved_chain[1:]]
        text = table(K0_HEADERS, [r for b in moved_chain for r in _k0_rows(b, base)])
    elif args.action == "psi":
        nu = _state(args, ctx)
        psi = psi_from_state(nu, ctx.t, ctx.weights, args.beta)
        g = _gamma_for(ctx, args.by)
        values = {
            "psi(f)": psi(f),
            "psi(root)": psi(delta(ctx.t.root, ONE)),
            "psi(gamma.f)": psi(gamma_action(f, g)),
            "gamma^beta psi(f)": g.power_value(args.beta) * psi(f),
        }
        if f.level < ctx.t.top_level:
            values["psi(iota f)"] = psi_on_image(psi, f, ctx.t, ctx.weights)
            if values["psi(iota f)"] != values["psi(f)"]:
                rep.fail("ψ(f) ≠ ψ(ι f)")
        if values["psi(root)"] != 1:
            rep.fail("ψ(δ_(root,1)) ≠ 1")
        if values["psi(gamma.f)"] != values["gamma^beta psi(f)"]:
            rep.fail("ψ(γ·f) ≠ γ^β ψ(f)")
        payload["psi"] = {k: format_ratio(v) for k, v in values.items()}
        text = table(["quantity", "value"], [(k, format_ratio(v)) for k, v in values.items()])
    if args.format == "json":
        payload["report"] = rep.to_dict()
        return io.dumps(payload), rep.ok
    return text + report_lines(rep), rep.ok


def cmd_uq(args, ctx: Context) -> tuple[str, bool]:
    if args.format == "dot":
        return io.ext_dot(_cone(args, ctx)), True
    q, w = ctx.q, ctx.weights
    rows, data, ok = [], [], True
    for v in ctx.t.vertices():
        lam = v.key
        kd, schur = w.kdim[v], q_schur_principal(lam, q)
        agree = kd == schur and gt_dim(lam) == weyl_dim(lam) == ctx.t.dim(v)
        ok &= agree
        rows.append((v.level, v, gt_dim(lam), format_ratio(kd), format_ratio(schur), "yes" if agree else "NO"))
        data.append(
            {"signature": str(v), "level": v.level, "dim": str(gt_dim(lam)), "kdim": format_ratio(kd),
             "schur_principal": format_ratio(schur), "agree": agree}
        )
    if args.format == "json":
        return io.dumps({"q": format_ratio(q), "base": _base_text(w), "signatures": data}), ok
    tail = f"weight group base: {_base_text(w)}\n"
    return table(["n", "signature", "dim", "kdim", "schur", "agree"], rows) + tail, ok


def cmd_selftest(args) -> tuple[str, bool]:
    report = run_selftest(args.threads)
    if args.format == "table":
        lines = [f"[{'PASS' if c['passed'] else 'FAIL'}] {c['id']} {c['name']} ({c['checks']} checks)" for c in report["criteria"]]
        for c in report["criteria"]:
            lines += [f"    {c['id']}: {m}" for m in c["failures"]]
        return "\n".join(lines) + "\n", report["passed"]
    return io.dumps(report), report["passed"]


# parser


def _common(p: argparse.ArgumentParser, fmt_default: str = "table") -> None:
    src = p.add_argument_group("graph source")
    src.add_argument("--builtin", choices=("pascal", "uq"), help="built-in graph")
    src.add_argument("--graph", metavar="FILE", help="graph JSON file")
    src.add_argument("--link", metavar="FILE", help="link JSON file (default: standard link, or the U_q link)")
    src.add_argument("--q", type=_ratio_arg, help="deformation parameter p/q for --builtin uq")
    src.add_argument("--seeds", help='seed vertices, e.g. "(1,0);(1,1)"')
    src.add_argument("--depth", type=int, help="truncation level when no seeds are given")
    src.add_argument("--max-size", type=int, default=4, help="largest |lambda| for default U_q seeds (default 4)")
    p.add_argument("--format", choices=("json", "dot", "table"), default=fmt_default)
    p.add_argument("--output", "-o", metavar="FILE", help="write output here instead of stdout")
    p.add_argument("--beta", type=int, default=-1, help="scaling exponent (default -1)")
    p.add_argument("--grade", type=int, default=0, help="grade of the extension-cone seeds (default 0)")
    p.add_argument("--threads", type=int, default=1, help="worker processes for library parallelism")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="weightext", description="Weight-extended branching graphs, exactly.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, help_ in [
        ("graph", "truncation, dimensions and validation"),
        ("link", "link kernel and its validation"),
        ("kdim", "kappa-dimensions"),
        ("weights", "edge weights and the weight group"),
        ("extend", "extension cone over the top level"),
        ("pipeline", "graph, link, kdim, weights and extension in one run"),
        ("uq", "U_q signature, dimension and kdim tables"),
    ]:
        _common(sub.add_parser(name, help=help_))

    h = sub.add_parser("harmonic", help="coherent systems and their extended form")
    h.add_argument("action", nargs="?", choices=("pullback", "check", "transform"), default="pullback")
    _common(h)
    h.add_argument("--top", default="uniform", help="uniform | binomial:p | delta:KEY | file:PATH")
    h.add_argument("--system", metavar="FILE", help="coherent system JSON (replaces --top)")

    k = sub.add_parser("k0", help="dimension-group windows")
    k.add_argument("action", nargs="?", choices=("embed", "cone", "act", "psi"), default="embed")
    _common(k)
    k.add_argument("--delta", help='generator as KEY,GRADE, e.g. "(1),0"')
    k.add_argument("--element", metavar="FILE", help="K0 element JSON")
    k.add_argument("--window-level", type=int, help="embed up to this level (default: one step)")
    k.add_argument("--by", type=int, default=1, help="grade of gamma for act/psi (default 1)")
    k.add_argument("--matrix", action="store_true", help="also print the last embedding block")
    k.add_argument("--top", default="uniform", help="state for psi: uniform | binomial:p | delta:KEY | file:PATH")
    k.add_argument("--system", metavar="FILE", help="coherent system JSON for psi")

    s = sub.add_parser("selftest", help="run the invariant suites")
    s.add_argument("--format", choices=("json", "table"), default="json")
    s.add_argument("--output", "-o", metavar="FILE")
    s.add_argument("--threads", type=int, default=1)
    return parser


COMMANDS = {
    "graph": cmd_graph,
    "link": cmd_link,
    "kdim": cmd_kdim,
    "weights": cmd_weights,
    "extend": cmd_extend,
    "pipeline": cmd_pipeline,
    "harmonic": cmd_harmonic,
    "k0": cmd_k0,
    "uq": cmd_uq,
}


def run(args: argparse.Namespace) -> tuple[str, bool]:
    if args.command == "selftest":
        return cmd_selftest(args)
    if args.command == "uq" and args.builtin not in (None, "uq"):
        raise UsageError("'uq' works on the built-in U_q graph only")
    if args.command == "uq":
        args.builtin = "uq"
    default_depth = 2
    if args.command == "k0" and args.window_level is not None:
        default_depth = args.window_level
    if args.command == "harmonic" and args.builtin == "pascal":
        default_depth = 4
    ctx = build_context(args, default_depth)
    return COMMANDS[args.command](args, ctx)


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if getattr(args, "threads", 1) < 1:
            raise UsageError("--threads must be at least 1")
        text, ok = run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except io.SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return EXIT_SCHEMA
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (GraphError, LinkError, HarmonicError, K0Error) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return 0 if ok else EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
