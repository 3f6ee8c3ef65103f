"""Command-line front end: ``mdl gen | invariant | verify | export-lp | atlas``.

Exit codes: 0 success, 1 usage or input error, 2 budget-limited result,
3 verification failure.
"""

from __future__ import annotations

import argparse
import contextlib
import csv
import io
import logging
import re
import sys
from typing import Iterator, Optional, Sequence, TextIO

from . import __version__
from .atlas import INVARIANTS, build_atlas, solve_invariant, write_atlas
from .families import FamilySpec
from .graph import DisconnectedGraphError, Graph, all_pairs_distances, read_edgelist, format_edgelist
from .ilp import build_doubly_ilp, build_strong_ilp, write_lp
from .search import default_budget
from .verify import CHECKS, run_check

EXIT_OK, EXIT_INPUT, EXIT_BUDGET, EXIT_FAIL = 0, 1, 2, 3

log = logging.getLogger("mdl")

_FAMILY_PREFIX = re.compile(r"^\s*[JK]\s*:")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def parse_range(text: str) -> tuple[int, int]:
    """``"4..8"`` -> (4, 8); ``"5"`` -> (5, 5). ``"9..4"`` is an empty range."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad range {text!r}; expected a..b or a") from None


def load_source(source: str) -> tuple[Graph, Optional[FamilySpec]]:
    """A family spec like ``J:5,2`` or the path of an edge-list file."""
    if _FAMILY_PREFIX.match(source):
        spec = FamilySpec.parse(source)
        return spec.graph(), spec
    try:
        with open(source, encoding="utf-8") as fh:
            return read_edgelist(fh), None
    except OSError as exc:
        raise UsageError(f"cannot read {source!r}: {exc.strerror or exc}") from None


def format_vertex_set(g: Graph, vertices) -> str:
    """Subsets in ``{a,b}`` notation when labelled, 1-indexed ids otherwise."""
    vs = sorted(vertices)
    if g.labels is not None:
        return ", ".join(str(g.labels[v]) for v in vs)
    return ", ".join(str(v + 1) for v in vs)


@contextlib.contextmanager
def _output(path: Optional[str]) -> Iterator[TextIO]:
    if path is None or path == "-":
        yield sys.stdout
        return
    try:
        fh = open(path, "w", encoding="utf-8", newline="")
    except OSError as exc:
        raise UsageError(f"cannot write {path!r}: {exc.strerror or exc}") from None
    with fh:
        yield fh


def _edges_csv(g: Graph) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    labelled = g.labels is not None
    w.writerow(["u", "v", "u_label", "v_label"] if labelled else ["u", "v"])
    for u, v in g.edges:
        row = [u + 1, v + 1]
        if labelled:
            row += [str(g.labels[u]), str(g.labels[v])]
        w.writerow(row)
    return buf.getvalue()


# -- commands ----------------------------------------------------------------


def cmd_gen(args) -> int:
    g, _ = load_source(args.source)
    text = format_edgelist(g) if args.format == "edgelist" else _edges_csv(g)
    with _output(args.output) as out:
        out.write(text)
    return EXIT_OK


def cmd_invariant(args) -> int:
    g, spec = load_source(args.source)
    if not all_pairs_distances(g).connected:
        raise DisconnectedGraphError("input graph is disconnected")
    res = solve_invariant(spec if spec is not None else g, args.which, args.budget)
    name = str(spec) if spec is not None else args.source
    lines = [
        f"graph: {name} ({g.n_vertices} vertices, {g.n_edges} edges)",
        f"{args.which}: {res.value}",
        f"status: {res.status}",
    ]
    if res.lower_bound is not None and not res.optimal:
        lines.append(f"lower bound: {res.lower_bound}")
    if args.which != "diam":
        lines.append(f"certificate: {format_vertex_set(g, res.certificate)}")
    lines += [f"nodes: {res.nodes_explored}", f"time: {res.elapsed:.3f}s"]
    with _output(args.output) as out:
        out.write("\n".join(lines) + "\n")
    return EXIT_OK if res.optimal else EXIT_BUDGET


def cmd_verify(args) -> int:
    ids = list(CHECKS) if args.theorem == "all" else [args.theorem]
    verdicts = []
    limited = False
    with _output(args.output) as out:
        for check_id in ids:
            for outcome in run_check(check_id, args.n, args.k, args.budget):
                out.write(outcome.line() + "\n")
                out.flush()
                verdicts.append(outcome.verdict)
                limited = limited or outcome.budget_limited
        out.write(f"{verdicts.count('PASS')} passed, {verdicts.count('FAIL')} failed, "
                  f"{verdicts.count('SKIP')} skipped\n")
    # skips from size guards are reported but do not change the exit code
    if "FAIL" in verdicts:
        return EXIT_FAIL
    return EXIT_BUDGET if limited else EXIT_OK


def cmd_export_lp(args) -> int:
    g, _ = load_source(args.source)
    dm = all_pairs_distances(g)
    if not dm.connected:
        raise DisconnectedGraphError("input graph is disconnected")
    model = build_strong_ilp(dm) if args.mode == "strong" else build_doubly_ilp(dm)
    text = write_lp(model)
    with _output(args.output) as out:
        out.write(text)
    n_vars, n_cons = model.counts()
    n_y = sum(1 for v in model.binaries if v.startswith("y_"))
    sys.stderr.write(
        f"{args.mode} model: {n_vars} variables ({n_y} y, {n_vars - n_y} x), {n_cons} constraints\n"
    )
    return EXIT_OK


def cmd_atlas(args) -> int:
    invariants = [s.strip() for s in args.invariants.split(",") if s.strip()]
    bad = [s for s in invariants if s not in INVARIANTS]
    if bad:
        raise UsageError(f"unknown invariant(s) {', '.join(bad)}; choose from {', '.join(INVARIANTS)}")
    rows = build_atlas(args.family, args.n, args.k, invariants, args.budget, formula=args.formula)
    with _output(args.output) as out:
        write_atlas(rows, out)
    return EXIT_BUDGET if any(r.status == "UpperBoundOnly" for r in rows) else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget", type=int, default=None,
                        help="branch-node budget per solve (default: $MDL_BUDGET or 50,000,000)")
    common.add_argument("--output", "-o", help="write to this file instead of standard output")
    common.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")

    p = _Parser(prog="mdl", description="Metric, strong and doubly metric dimensions of Johnson and Kneser graphs.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("gen", parents=[common], help="print a family graph as an edge list")
    s.add_argument("source", help="family spec (J:n,k or K:n,k) or edge-list file")
    s.add_argument("--format", choices=("edgelist", "csv"), default="edgelist")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("invariant", parents=[common], help="compute beta, beta_s, psi or diam exactly")
    s.add_argument("which", choices=INVARIANTS)
    s.add_argument("source", help="family spec (J:n,k or K:n,k) or edge-list file")
    s.set_defaults(func=cmd_invariant)

    s = sub.add_parser("verify", parents=[common], help="check closed forms against exact computation")
    s.add_argument("theorem", choices=[*CHECKS, "all"])
    s.add_argument("--n", type=parse_range, help="n range, e.g. 4..8 (default depends on the check)")
    s.add_argument("--k", type=parse_range, help="k range, e.g. 2..3")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("export-lp", parents=[common], help="write the 0/1 program in LP format")
    s.add_argument("source", help="family spec (J:n,k or K:n,k) or edge-list file")
    s.add_argument("--mode", choices=("strong", "doubly"), required=True)
    s.set_defaults(func=cmd_export_lp)

    s = sub.add_parser("atlas", parents=[common], help="tabulate invariants over a parameter range as CSV")
    s.add_argument("--family", choices=("J", "K"), required=True)
    s.add_argument("--n", type=parse_range, required=True)
    s.add_argument("--k", type=parse_range, required=True)
    s.add_argument("--invariants", default="beta_s", help=f"comma list from {','.join(INVARIANTS)}")
    s.add_argument("--formula", action="store_true", help="closed forms only (status Formula)")
    s.add_argument("--format", choices=("csv",), default="csv")
    s.set_defaults(func=cmd_atlas)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.budget is None:
        args.budget = default_budget()
    elif args.budget <= 0:
        sys.stderr.write("mdl: error: --budget must be positive\n")
        return EXIT_INPUT
    try:
        return args.func(args)
    except (UsageError, ValueError) as exc:  # includes edge-list and connectivity errors
        sys.stderr.write(f"mdl: error: {exc}\n")
        return EXIT_INPUT
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
