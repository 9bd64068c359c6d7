"""Command-line front end.

Every subcommand reads a graph file (``-`` for stdin) in the ``n m`` /
``tail head`` text format.  ``--json`` switches to a machine-readable
envelope ``{"graph", "command", "result"}`` with big numbers as strings.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from .census import EnumerationLimit, brute_count, graph_descriptor, random_pairs, verify_identities
from .multigraph import GraphError, Multigraph, parse_graph, require_connected
from .orientations import PartialOrientation
from .reductions import (
    CLASS_KINDS,
    ReferencePair,
    canonical_rep,
    default_pair,
    q_connected_pair,
    random_pair,
)
from .reliability import McEstimate, parse_probability, reliability
from .tutte import OrientationClass, chromatic_count, tutte_polynomial

CLASS_NAMES = [c.value for c in OrientationClass]


def _rational(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _pair(G: Multigraph, text: str) -> ReferencePair:
    if text == "default":
        return default_pair(G)
    kind, _, arg = text.partition(":")
    if kind == "q":
        return q_connected_pair(G, int(arg))
    if kind == "random":
        return random_pair(G, random.Random(int(arg)))
    if kind == "file":
        with open(arg) as fh:
            return ReferencePair.from_text(fh.read())
    raise ValueError(f"unknown pair {text!r}; use default, q:V, random:SEED or file:PATH")


def _read_graph(path: str) -> Multigraph:
    if path == "-":
        return parse_graph(sys.stdin.read())
    with open(path) as fh:
        return parse_graph(fh.read())


# -- subcommands: each returns (human text, json result, exit status) -------

def cmd_tutte(G, args):
    T = tutte_polynomial(G)
    triples = [[i, j, str(c)] for i, j, c in T.to_triples()]
    text = f"T(x,y) = {T}\n" + "\n".join(f"{i} {j} {c}" for i, j, c in triples)
    return text, triples, 0


def cmd_count(G, args):
    cls = OrientationClass(args.cls)
    pair = _pair(G, args.pair)
    values = {}
    if args.method in ("formula", "both"):
        values["formula"] = chromatic_count(G, cls, args.k, args.l)
    if args.method in ("brute", "both"):
        values["brute"] = brute_count(G, cls, pair, args.k, args.l)
    status = 0 if len(set(values.values())) <= 1 else 1
    text = " ".join(str(v) for v in values.values())
    result = {key: str(v) for key, v in values.items()}
    if args.method == "both":
        result["equal"] = status == 0
    return text, result, status


def cmd_canonical(G, args):
    cls = OrientationClass(args.cls)
    if cls not in CLASS_KINDS:
        raise ValueError(f"canonical forms exist for {[c.value for c in CLASS_KINDS]}")
    O = PartialOrientation.from_string(G, args.orientation)
    pair = _pair(G, args.pair)
    rep, trace = canonical_rep(O, pair, cls)
    lines = [str(rep)] + [f"  {i + 1}. {mv.describe()}" for i, mv in enumerate(trace)]
    result = {
        "input": str(O),
        "canonical": str(rep),
        "trace": [{"move": mv.kind.value, "detail": mv.describe()} for mv in trace],
    }
    return "\n".join(lines), result, 0


def _pairs_for(G, args):
    return [default_pair(G)] + random_pairs(G, args.pairs, args.seed)


def cmd_census(G, args):
    report = verify_identities(G, _pairs_for(G, args), check_canonical=False)
    counts = {c.value: str(brute_count(G, c)) for c in OrientationClass}
    result = report.to_dict()
    result["counts"] = counts
    text = "\n".join(f"{name:<16} {v}" for name, v in counts.items()) + "\n" + report.format_table()
    return text, result, 0


def cmd_verify(G, args):
    report = verify_identities(G, _pairs_for(G, args))
    failed = report.failures()
    summary = f"{len(report.records) - len(failed)}/{len(report.records)} identities hold"
    text = report.format_table() + "\n" + summary
    return text, report.to_dict(), 0 if not failed else 1


def cmd_reliability(G, args):
    p = parse_probability(args.p)
    pair = _pair(G, args.pair) if args.method == "mc-cutmin" else None
    value = reliability(G, p, args.method, trials=args.trials, seed=args.seed, pair=pair)
    if isinstance(value, McEstimate):
        text = f"{value.estimate:.6f} +/- {value.stderr:.6f} ({value.trials} trials, seed {value.seed})"
        return text, value.to_dict(), 0
    return _rational(value), _rational(value), 0


COMMANDS = {
    "tutte": cmd_tutte,
    "count": cmd_count,
    "canonical": cmd_canonical,
    "census": cmd_census,
    "verify": cmd_verify,
    "reliability": cmd_reliability,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="partorient", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("graph", help="graph file in 'n m' + edge-line format, or - for stdin")
        p.add_argument("--json", action="store_true", help="emit JSON")
        return p

    add("tutte", "Tutte polynomial as (i, j, coefficient) triples")

    p = add("count", "count partial orientations of a class")
    p.add_argument("--class", dest="cls", required=True, choices=CLASS_NAMES)
    p.add_argument("--method", choices=["formula", "brute", "both"], default="formula")
    p.add_argument("-k", type=int, default=1, help="colours for oriented edges")
    p.add_argument("-l", type=int, default=1, help="colours for unoriented edges")
    p.add_argument("--pair", default="default", help="default | q:V | random:SEED | file:PATH")

    p = add("canonical", "reduce an orientation to its class representative")
    p.add_argument("--orientation", required=True, help="one of 0/+/- per edge")
    p.add_argument("--class", dest="cls", required=True,
                   choices=[c.value for c in CLASS_KINDS])
    p.add_argument("--pair", default="default", help="default | q:V | random:SEED | file:PATH")

    for name, help_text in (("census", "brute counts and identity report"),
                            ("verify", "check every identity; nonzero exit on failure")):
        p = add(name, help_text)
        p.add_argument("--pairs", type=int, default=2, help="random reference pairs besides the default")
        p.add_argument("--seed", type=int, default=0)

    p = add("reliability", "reliability polynomial at p")
    p.add_argument("--p", required=True, help="probability as a/b or decimal")
    p.add_argument("--method", choices=["exact", "mc-subgraph", "mc-cutmin"], default="exact")
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pair", default="default", help="reference pair for mc-cutmin")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        G = _read_graph(args.graph)
        require_connected(G)
        text, result, status = COMMANDS[args.command](G, args)
    except (GraphError, EnumerationLimit, ValueError, OSError) as exc:
        print(f"partorient: error: {exc}", file=sys.stderr)
        return 2
    if args.json:
        print(json.dumps({"graph": graph_descriptor(G), "command": args.command, "result": result}))
    else:
        print(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
