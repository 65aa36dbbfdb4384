"""Command-line front end.  Every command prints one JSON report."""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys

from . import __version__
from .autos import (
    Automorphism, enumerate_torelli_generators, format_generator, generator_name, out0_generators,
    tau1_formula, tau1_magnus, torelli_h1_report,
)
from .corpus import CorpusGuard, corpus_report
from .graph import Graph, GraphError, load_graph
from .magnus import depth_to_json, lcs_depth, magnus
from .rigidity import (
    SubgroupSpec, decomposition_tree, describe_image, exclude_generator_set, exclude_to_free,
    isolated_vertices, project_generator, project_generator_set, rank_bound_check,
    restrict_generator_set, restrict_to_component, sl_dimension,
)
from .words import GroupElement

DEFAULT_MAX_DEGREE = 8

_FAMILIES = {
    "cycle": Graph.cycle,
    "complete": Graph.complete,
    "discrete": Graph.discrete,
    "path": Graph.path,
}


class UsageError(ValueError):
    pass


def resolve_graph(ref: str) -> Graph:
    """A graph file (JSON or DOT), or a family shorthand such as ``cycle:5``."""
    if not os.path.exists(ref) and ":" in ref:
        fam, _, n = ref.partition(":")
        if fam in _FAMILIES and n.isdigit():
            return _FAMILIES[fam](int(n))
    try:
        return load_graph(ref)
    except FileNotFoundError:
        raise UsageError(f"no such graph file: {ref}") from None


def fingerprint(graph: Graph) -> dict:
    edges = ";".join(f"{graph.label(u)}-{graph.label(v)}" for u, v in graph.edges)
    return {
        "vertices": graph.n,
        "edge_hash": hashlib.sha256(edges.encode()).hexdigest(),
    }


def max_degree() -> int:
    raw = os.environ.get("RAAG_MAX_DEGREE", str(DEFAULT_MAX_DEGREE))
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"RAAG_MAX_DEGREE must be an integer, got {raw!r}") from None


def _degree(args, default=None) -> int:
    d = args.degree if args.degree is not None else (default or max_degree())
    if d < 1:
        raise UsageError("degree must be at least 1")
    if d > max_degree():
        raise UsageError(f"degree {d} exceeds RAAG_MAX_DEGREE={max_degree()}")
    return d


def _labels(graph, vs):
    return [graph.label(v) for v in sorted(vs)]


# ---------------------------------------------------------------------------
# commands


def cmd_analyze(graph: Graph, args) -> dict:
    pre = graph.preorder
    return {
        "classes": [
            {"vertices": _labels(graph, c), "abelian": ab}
            for c, ab in zip(pre.classes, pre.abelian)
        ],
        "maximal_classes": [_labels(graph, pre.classes[i]) for i in pre.maximal],
        "center": _labels(graph, graph.center_vertices()),
        "d_sl": sl_dimension(graph),
        "F": graph.max_independent_set_size(),
        "tree": decomposition_tree(graph).to_dict(),
    }


def _element(graph, args) -> GroupElement:
    return GroupElement.parse(graph, args.word)


def cmd_nf(graph, args):
    g = _element(graph, args)
    return {"normal_form": str(g), "length": g.length, "positive": g.is_positive,
            "support": _labels(graph, g.support)}


def cmd_magnus(graph, args):
    s = magnus(_element(graph, args), _degree(args), args.mod)
    return s.to_dict()


def cmd_depth(graph, args):
    g = _element(graph, args)
    return {"depth": depth_to_json(lcs_depth(g, _degree(args)))}


def _tau1_json(m):
    return [list(row) for row in m]


def cmd_torelli(graph, args):
    gens = enumerate_torelli_generators(graph)
    rows = []
    for gen in gens:
        row = {"generator": format_generator(gen, graph), "name": generator_name(graph, gen)}
        if args.tau1:
            f = tau1_formula(graph, gen)
            m = tau1_magnus(Automorphism.from_generator(graph, gen))
            row["tau1"] = {"formula": _tau1_json(f), "magnus": _tau1_json(m), "agree": f == m}
        rows.append(row)
    out = {"generators": rows, "count": len(rows)}
    if args.h1:
        out["h1"] = list(torelli_h1_report(graph).as_tuple())
    return out


def _image_payload(graph, gens, per_gen, spec_fn):
    source = SubgroupSpec(graph, gens)
    table = [describe_image(graph, g, per_gen(g)) for g in gens]
    try:
        image = spec_fn()
        monotone = True
    except AssertionError:
        image, monotone = None, False
    return {
        "images": table,
        "d_sl_source": source.sl_dimension(),
        "d_sl_image": None if image is None else image.sl_dimension(),
        "target": None if image is None else _labels(image.graph, image.graph.vertices),
        "monotone": monotone,
    }


def cmd_project(graph, args):
    if args.cls is None:
        raise UsageError("project needs --class")
    v = graph.vertex(args.cls)
    gens = out0_generators(graph)
    out = _image_payload(
        graph, gens,
        lambda g: project_generator(graph, [v], g),
        lambda: project_generator_set(graph, [v], gens),
    )
    out["target"] = _labels(graph, graph.link_of_set(graph.preorder.classes[graph.preorder.class_of(v)]))
    return out


def cmd_restrict(graph, args):
    gens = out0_generators(graph)
    if args.free:
        out = _image_payload(
            graph, gens,
            lambda g: exclude_to_free(graph, g),
            lambda: exclude_generator_set(graph, gens),
        )
        out["target"] = _labels(graph, isolated_vertices(graph))
        return out
    if args.component is None:
        raise UsageError("restrict needs --component VERTEX or --free")
    v = graph.vertex(args.component)
    comp = next(c for c in graph.components() if v in c)
    out = _image_payload(
        graph, gens,
        lambda g: restrict_to_component(graph, comp, g),
        lambda: restrict_generator_set(graph, comp, gens),
    )
    out["target"] = _labels(graph, comp)
    return out


def cmd_rank_bound(graph, args):
    if args.rank is None:
        raise UsageError("rank-bound needs --rank")
    return rank_bound_check(graph, args.rank).to_dict()


def cmd_corpus(args):
    if args.max_vertices is None:
        raise UsageError("corpus needs --max-vertices")
    return corpus_report(args.max_vertices)


# ---------------------------------------------------------------------------
# plumbing


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="raag", description="Invariants of right-angled Artin groups.")
    p.add_argument("--pretty", action="store_true", help="indent the JSON output")
    sub = p.add_subparsers(dest="command", required=True)

    def graph_cmd(name, **kw):
        sp = sub.add_parser(name, **kw)
        sp.add_argument("graph", help="graph file (JSON or DOT) or family such as cycle:5")
        sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
        return sp

    graph_cmd("analyze")
    for name in ("nf", "magnus", "depth"):
        sp = graph_cmd(name)
        sp.add_argument("word")
        sp.add_argument("--degree", type=int)
        sp.add_argument("--mod", type=int, default=0)
    for name in ("torelli", "tau1"):
        sp = graph_cmd(name)
        sp.add_argument("--tau1", action="store_true")
        sp.add_argument("--h1", action="store_true")
    sp = graph_cmd("project")
    sp.add_argument("--class", dest="cls")
    sp = graph_cmd("restrict")
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--component")
    grp.add_argument("--free", action="store_true")
    sp = graph_cmd("rank-bound")
    sp.add_argument("--rank", type=int)
    sp = sub.add_parser("corpus")
    sp.add_argument("--max-vertices", type=int)
    sp.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS)
    return p


_GRAPH_COMMANDS = {
    "analyze": cmd_analyze,
    "nf": cmd_nf,
    "magnus": cmd_magnus,
    "depth": cmd_depth,
    "torelli": cmd_torelli,
    "tau1": cmd_torelli,
    "project": cmd_project,
    "restrict": cmd_restrict,
    "rank-bound": cmd_rank_bound,
}


def run(argv) -> tuple[int, dict | None]:
    """Execute a command line; returns (exit code, JSON object or None after --help)."""
    argv = list(argv)
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        if exc.code == 0:
            return 0, None  # --help already printed its text
        return 2, {"error": {"type": "UsageError", "message": "invalid arguments"}, "exit": exc.code}
    echo = [a for a in argv if a != "--pretty"]
    try:
        if args.command == "corpus":
            report = {"command": echo, "graph": None, "payload": cmd_corpus(args)}
        else:
            if args.command == "tau1":
                args.tau1 = True
            graph = resolve_graph(args.graph)
            payload = _GRAPH_COMMANDS[args.command](graph, args)
            report = {"command": echo, "graph": fingerprint(graph), "payload": payload}
    except GraphError as exc:
        err = {"type": "GraphError", "message": str(exc)}
        if exc.line is not None:
            err.update(line=exc.line, column=exc.column)
        return 1, {"error": err}
    except (ValueError, CorpusGuard) as exc:
        return 1, {"error": {"type": type(exc).__name__, "message": str(exc)}}
    report["version"] = __version__
    return 0, report


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    code, obj = run(argv)
    if obj is None:
        return code
    pretty = "--pretty" in argv
    text = json.dumps(obj, sort_keys=True, indent=2 if pretty else None,
                      separators=None if pretty else (",", ":"))
    (sys.stdout if code == 0 else sys.stderr).write(text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
