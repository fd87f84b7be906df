"""Command-line front end.

    lamred normalize [--strategy S] [--form hnf|whnf|nf] [--trace] [--max-steps N]
                     [--meter] [-e TERM | FILE | -]
    lamred trace     [--strategy S] [--form hnf|whnf] [--no-read-args] [-e TERM | FILE | -]
    lamred bench     --suite ski|church [--seed N] [--count N] [--size N]
                     [--strategy S|all] [--report table|json|csv] [--fuel N]
    lamred compare   [--suite ski|church|both] [--seed N] [--count N] [--size N] [--fuel N]

Exit status is 0 on success, 1 when a reduction runs out of fuel and 2 on
usage or parse errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Optional, Sequence

from lamred import bench, meter, rules, strategies, syntax, terms
from lamred.meter import Meter
from lamred.names import FreeVariableError
from lamred.strategies import Strategy
from lamred.terms import NonTerminating, UnsupportedInput

__all__ = ["main", "run"]

EXIT_OK = 0
EXIT_NONTERMINATING = 1
EXIT_USAGE = 2

_SUITE_DEFAULTS = {"ski": (500, 12), "church": (60, 200)}
_SUITE_TITLES = {"ski": "SKI", "church": "Church"}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lamred", description="Reduce lambda terms with suspensions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    names = [s.value for s in Strategy]

    n = sub.add_parser("normalize", help="reduce one term")
    n.add_argument("--strategy", choices=names, default="combined")
    n.add_argument("--form", choices=("hnf", "whnf", "nf"), default="nf")
    n.add_argument("--trace", action="store_true", help="print one STEP line per rule")
    n.add_argument("--max-steps", type=int, default=strategies.DEFAULT_FUEL,
                   help="beta-step budget (default %(default)s)")
    n.add_argument("--meter", action="store_true", help="print the meter report (JSON) to stderr")
    n.add_argument("--unicode", action="store_true", help="print with λ and full parentheses")
    _add_input(n)

    t = sub.add_parser("trace", help="log every rule applied while head-normalizing")
    t.add_argument("--strategy", choices=names, default="explicit")
    t.add_argument("--form", choices=("hnf", "whnf"), default="hnf")
    t.add_argument("--read-args", action=argparse.BooleanOptionalAction, default=True,
                   help="afterwards apply one reading rule to every suspended index "
                        "argument of the head normal form (explicit strategy)")
    t.add_argument("--max-steps", type=int, default=strategies.DEFAULT_FUEL)
    _add_input(t)

    b = sub.add_parser("bench", help="run a benchmark suite")
    b.add_argument("--suite", choices=("ski", "church"), required=True)
    _add_corpus(b)
    b.add_argument("--strategy", choices=names + ["all"], default="all")
    b.add_argument("--report", choices=("table", "json", "csv"), default="table")

    c = sub.add_parser("compare", help="heap usage of all three strategies")
    c.add_argument("--suite", choices=("ski", "church", "both"), default="both")
    _add_corpus(c)
    return p


def _add_input(p):
    p.add_argument("-e", "--expr", help="the term itself instead of a file")
    p.add_argument("file", nargs="?", default="-", help="file holding one term, or - for stdin")


def _add_corpus(p):
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, help="cases (default 500 for ski, 60 for church)")
    p.add_argument("--size", type=int,
                   help="internal nodes per SKI tree or largest Church operand "
                        "(default 12 for ski, 200 for church)")
    p.add_argument("--fuel", type=int, default=bench.BENCH_FUEL,
                   help="beta-step budget per case (default %(default)s)")


def _read_source(args) -> str:
    if args.expr is not None:
        return args.expr
    if args.file == "-":
        return sys.stdin.read()
    with open(args.file, encoding="utf-8") as fh:
        return fh.read()


def _suite_spec(args, suite: str) -> bench.SuiteSpec:
    count, size = _SUITE_DEFAULTS[suite]
    return bench.SuiteSpec(suite, args.seed,
                           args.count if args.count is not None else count,
                           args.size if args.size is not None else size,
                           args.fuel)


# -- normalize and trace -----------------------------------------------------


class _Tracer:
    def __init__(self, root, out, snapshots: bool):
        self.root = root
        self.out = out
        self.snapshots = snapshots
        self.step = 0

    def __call__(self, rule, node):
        self.step += 1
        path = rules.path_to(self.root, node) if node is not None else "-"
        rec = rules.TraceRecord(self.step, rules.RuleId(rule), path,
                                syntax.format_term(self.root, unicode=True) if self.snapshots else "")
        print(rules.format_step(rec), file=self.out)
        if self.snapshots:
            print("TERM " + rec.snapshot, file=self.out)


def _cmd_normalize(args, out, err) -> int:
    t = syntax.parse_db(_read_source(args))
    m = Meter()
    hook = _Tracer(t, out, False) if args.trace else None
    try:
        if args.form == "nf":
            strategies.normalize_full(t, args.strategy, args.max_steps, m, hook)
        else:
            strategies.head_norm(t, args.strategy, args.form, args.max_steps, m, hook)
    finally:
        if args.meter:
            print(json.dumps(meter.report(m).to_json(), sort_keys=True), file=err)
    print(syntax.format_term(t, unicode=args.unicode), file=out)
    return EXIT_OK


def _suspended_index_args(t):
    """Suspension arguments of a head normal form whose skeleton is an index."""
    h = terms.deref(t)
    while h.tag == terms.LAM:
        h = terms.deref(h.a)
    args = []
    while h.tag == terms.APP:
        args.append(terms.deref(h.b))
        h = terms.deref(h.a)
    args.reverse()
    return [a for a in args if a.tag == terms.SUSP and terms.deref(a.a).tag == terms.BV]


def _cmd_trace(args, out, err) -> int:
    t = syntax.parse_db(_read_source(args))
    print("TERM " + syntax.format_term(t, unicode=True), file=out)
    tracer = _Tracer(t, out, True)
    strategies.head_norm(t, args.strategy, args.form, args.max_steps, None, tracer)
    if args.read_args and args.strategy == Strategy.EXPLICIT.value:
        for a in _suspended_index_args(t):
            strategies.read_root(a, None, tracer)
    return EXIT_OK


# -- bench and compare -------------------------------------------------------


def _results(spec: bench.SuiteSpec, which: str) -> list:
    cases = spec.cases()
    if which == "all":
        res = bench.compare(cases, tuple(Strategy), spec.fuel)
        return [res[s] for s in Strategy]
    return [bench.run_benchmark(cases, Strategy(which), spec.fuel)]


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = []
    for r in [header, *rows]:
        cells = [str(r[0]).ljust(widths[0])] + [str(x).rjust(w) for x, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _bench_table(spec, results) -> str:
    reps = [r.report for r in results]
    header = ["", *(r.strategy.value for r in results)]
    rows = [[k, *(rep.nodes_by_kind[k] for rep in reps)] for k in meter.NODE_KINDS]
    rows += [["%s (env)" % k, *(rep.env_by_kind[k] for rep in reps)] for k in meter.ENV_KINDS]
    rows += [
        ["total nodes", *("{:,}".format(rep.total_nodes) for rep in reps)],
        ["total bytes", *("{:,}".format(rep.total_bytes) for rep in reps)],
        ["beta steps", *(rep.beta_steps for rep in reps)],
        ["reading steps", *(rep.reading_steps for rep in reps)],
    ]
    skipped = sorted(set().union(*(set(r.nonterminating) | set(r.excluded) for r in results)))
    title = "%s suite: seed=%d count=%d size=%d fuel=%d rng=%s" % (
        spec.suite, spec.seed, spec.count, spec.size, spec.fuel, bench.RNG_ID)
    foot = "excluded (no normal form within fuel): %d" % len(skipped)
    if skipped:
        foot += "\n  " + "\n  ".join(skipped)
    bm = reps[0].byte_model if reps else meter.ByteModel.from_env()
    return "\n".join([title, _table(header, rows), foot, "byte model: " + bm.describe()])


def _bench_csv(results) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["strategy", *meter.NODE_KINDS, *meter.ENV_KINDS, "env_items", "total_nodes",
                "total_bytes", "beta_steps", "reading_steps", "nonterminating_cases"])
    for r in results:
        rep = r.report
        w.writerow([r.strategy.value, *(rep.nodes_by_kind[k] for k in meter.NODE_KINDS),
                    *(rep.env_by_kind[k] for k in meter.ENV_KINDS), rep.env_items,
                    rep.total_nodes, rep.total_bytes, rep.beta_steps, rep.reading_steps,
                    len(set(r.nonterminating) | set(r.excluded))])
    return buf.getvalue().rstrip("\n")


def _cmd_bench(args, out, err) -> int:
    spec = _suite_spec(args, args.suite)
    results = _results(spec, args.strategy)
    if args.report == "json":
        text = json.dumps([bench.report_json(spec, r) for r in results], indent=2, sort_keys=True)
    elif args.report == "csv":
        text = _bench_csv(results)
    else:
        text = _bench_table(spec, results)
    print(text, file=out)
    return EXIT_OK


def _cmd_compare(args, out, err) -> int:
    suites = ("ski", "church") if args.suite == "both" else (args.suite,)
    header = ["", "", *("%s" % s.value for s in Strategy)]
    rows = []
    notes = []
    for suite in suites:
        spec = _suite_spec(args, suite)
        results = _results(spec, "all")
        reps = [r.report for r in results]
        title = "[%s]" % _SUITE_TITLES[suite]
        rows.append([title, "nodes", *("{:,}".format(r.total_nodes) for r in reps)])
        rows.append(["", "bytes", *("{:,}".format(r.total_bytes) for r in reps)])
        notes.append("%s: seed=%d count=%d size=%d fuel=%d, %d case(s) excluded" % (
            title, spec.seed, spec.count, spec.size, spec.fuel, len(results[0].excluded)))
    print(_table(header, rows), file=out)
    for line in notes:
        print(line, file=out)
    print("byte model: " + meter.ByteModel.from_env().describe(), file=out)
    return EXIT_OK


_COMMANDS = {
    "normalize": _cmd_normalize,
    "trace": _cmd_trace,
    "bench": _cmd_bench,
    "compare": _cmd_compare,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    """Run one command and return its exit status."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    try:
        args = _build_parser().parse_args(argv)
        return _COMMANDS[args.command](args, out, err)
    except _UsageError as exc:
        print("lamred: error: %s" % exc, file=err)
        return EXIT_USAGE
    except (syntax.ParseError, FreeVariableError, UnsupportedInput, OSError, ValueError) as exc:
        print("lamred: error: %s" % exc, file=err)
        return EXIT_USAGE
    except NonTerminating as exc:
        print("lamred: %s" % exc, file=err)
        return EXIT_NONTERMINATING


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
