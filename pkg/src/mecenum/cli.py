"""Command-line front end.

Exit codes: 0 success, 1 malformed input or usage, 2 no consistent
extension, 3 oracle guard exceeded, 4 oracle check failed.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

from . import algorithms
from .bench import emit_csv, emit_plot_data, run_benchmark, write_meta
from .errors import GraphError, NotExtendable, TooLarge
from .graph import iter_graphs, parse_graph, shd, to_text
from .instances import GenConfig, cpdag_to_pdag, dag_to_cpdag, generate, header
from .meek import consistent_extension_mpdag, maximal_orientation
from .oracle import validate_enumeration

EXIT_MALFORMED = 1
EXIT_NOT_EXTENDABLE = 2
EXIT_TOO_LARGE = 3
EXIT_CHECK_FAILED = 4


class CliError(Exception):
    def __init__(self, msg: str, code: int = EXIT_MALFORMED):
        super().__init__(msg)
        self.code = code


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror}") from None


def _load(path: str):
    try:
        return parse_graph(_read_text(path))
    except GraphError as exc:
        raise CliError(f"{path}: {exc}") from None


@contextmanager
def _output(path: str | None):
    if path in (None, "-"):
        yield sys.stdout
        sys.stdout.flush()
    else:
        with open(path, "w", encoding="utf-8") as fh:
            yield fh


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _density(text: str):
    if text == "log2":
        return text
    try:
        return float(text) if "." in text else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"k must be a number or 'log2', got {text!r}")


def cmd_enumerate(args) -> int:
    g = _load(args.input)
    it = algorithms.get(args.algo)(g)
    with _output(args.output) as out:
        for i, member in enumerate(it):
            if args.limit is not None and i >= args.limit:
                break
            if i:
                out.write("\n")
            out.write(to_text(member.to_graph()))
    return 0


def cmd_count(args) -> int:
    g = _load(args.input)
    print(sum(1 for _ in algorithms.get(args.algo)(g)))
    return 0


def cmd_extend(args) -> int:
    g = _load(args.input)
    try:
        d = consistent_extension_mpdag(maximal_orientation(g))
    except NotExtendable as exc:
        raise CliError(f"no consistent extension: {exc}", EXIT_NOT_EXTENDABLE) from None
    with _output(args.output) as out:
        out.write(to_text(d))
    return 0


def cmd_gen(args) -> int:
    model = args.model.replace("-", "_")
    try:
        cfg = GenConfig(n=args.n, k=args.k, model=model, seed=args.seed)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    g = generate(cfg)
    if model != "chordal" and (args.to_cpdag or args.to_pdag):
        g = dag_to_cpdag(g)
    if args.to_pdag:
        g = cpdag_to_pdag(g, cfg)
    with _output(args.output) as out:
        out.write(header(cfg) + "\n")
        out.write(to_text(g))
    return 0


def cmd_check(args) -> int:
    g = _load(args.input)
    if args.outputs is not None:
        try:
            streams = {"stream": list(iter_graphs(_read_text(args.outputs)))}
        except GraphError as exc:
            raise CliError(f"{args.outputs}: {exc}") from None
    else:
        streams = {name: algorithms.get(name)(g) for name in algorithms.ALGORITHMS}
    failed = False
    for name, stream in streams.items():
        try:
            rep = validate_enumeration(g, stream)
        except TooLarge as exc:
            raise CliError(str(exc), EXIT_TOO_LARGE) from None
        status = "ok" if rep.ok else "FAIL"
        failed |= not rep.ok
        print(
            f"{name}\t{status}\texpected={rep.expected_count}\tactual={rep.actual_count}"
            f"\tduplicates={len(rep.duplicates)}\tmissing={len(rep.missing)}\textra={len(rep.extra)}"
        )
    return EXIT_CHECK_FAILED if failed else 0


def cmd_shd(args) -> int:
    try:
        graphs = list(iter_graphs(_read_text(args.input)))
    except GraphError as exc:
        raise CliError(f"{args.input}: {exc}") from None
    gaps = [shd(a, b) for a, b in zip(graphs, graphs[1:])]
    print(max(gaps) if gaps else 0)
    return 0


def cmd_bench(args) -> int:
    algos = [a for a in args.algos.split(",") if a]
    for a in algos:
        if a not in algorithms.ALGORITHMS:
            raise CliError(f"unknown algorithm {a!r}")
    res = run_benchmark(
        algos,
        args.model.replace("-", "_"),
        args.sizes,
        args.seeds,
        k=args.k,
        max_outputs=args.limit,
        max_seconds=args.max_seconds,
        pdag=args.pdag,
        warmup=not args.no_warmup,
        exclude_first=args.exclude_first,
        parallel_instances=args.parallel_instances,
    )
    emit_csv(res.records, args.csv)
    write_meta(res.meta, args.csv + ".meta.json")
    if args.stats_csv:
        emit_csv(res.stats, args.stats_csv)
    if args.plot_data:
        emit_plot_data(res.stats, res.sizes, args.plot_data)
    for s in res.stats:
        print(
            f"{s.algorithm}\t{s.scenario}\tcount={s.count}\tmean_ms={s.mean_ns / 1e6:.4f}"
            f"\tp2={s.proportions[2]:.4f}",
            file=sys.stderr,
        )
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mecenum", description="Enumerate Markov equivalence classes.")
    sub = p.add_subparsers(dest="command", required=True)
    algo_names = list(algorithms.ALGORITHMS)

    e = sub.add_parser("enumerate", help="stream every DAG of the class")
    e.add_argument("--algo", choices=algo_names, default="mcs")
    e.add_argument("--input", required=True, help="graph file, or - for stdin")
    e.add_argument("--limit", type=int, default=None)
    e.add_argument("--output", default="-")
    e.set_defaults(func=cmd_enumerate)

    c = sub.add_parser("count", help="print the number of DAGs")
    c.add_argument("--algo", choices=algo_names, default="mcs")
    c.add_argument("--input", required=True)
    c.set_defaults(func=cmd_count)

    x = sub.add_parser("extend", help="print one consistent extension")
    x.add_argument("--input", required=True)
    x.add_argument("--output", default="-")
    x.set_defaults(func=cmd_extend)

    gn = sub.add_parser("gen", help="generate a random instance")
    gn.add_argument("--model", choices=["chordal", "dag-uniform", "dag-ba"], required=True)
    gn.add_argument("--n", type=int, required=True)
    gn.add_argument("--k", type=_density, default=3)
    gn.add_argument("--seed", type=int, default=0)
    gn.add_argument("--to-cpdag", action="store_true")
    gn.add_argument("--to-pdag", action="store_true", help="also orient random background edges")
    gn.add_argument("--output", default="-")
    gn.set_defaults(func=cmd_gen)

    ck = sub.add_parser("check", help="validate enumerators against the brute-force oracle")
    ck.add_argument("--input", required=True)
    ck.add_argument("--against-oracle", action="store_true", required=True)
    ck.add_argument("--outputs", default=None, help="validate this stream of DAGs instead")
    ck.set_defaults(func=cmd_check)

    sh = sub.add_parser("shd", help="max SHD between consecutive graphs of a stream")
    sh.add_argument("--input", required=True)
    sh.set_defaults(func=cmd_shd)

    b = sub.add_parser("bench", help="measure output delays")
    b.add_argument("--algos", required=True, help="comma-separated, e.g. mcs,meek")
    b.add_argument("--model", choices=["chordal", "dag-uniform", "dag-ba"], required=True)
    b.add_argument("--sizes", type=_int_list, required=True)
    b.add_argument("--seeds", type=_int_list, default=[0])
    b.add_argument("--k", type=_density, default=3)
    b.add_argument("--limit", type=int, required=True, help="max outputs per run")
    b.add_argument("--max-seconds", type=float, default=10.0)
    b.add_argument("--pdag", action="store_true", help="orient background edges first")
    b.add_argument("--no-warmup", action="store_true")
    b.add_argument("--exclude-first", action="store_true")
    b.add_argument("--parallel-instances", action="store_true")
    b.add_argument("--csv", required=True)
    b.add_argument("--stats-csv", default=None)
    b.add_argument("--plot-data", default=None)
    b.set_defaults(func=cmd_bench)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_MALFORMED if exc.code else 0
    try:
        return args.func(args)
    except CliError as exc:
        print(f"mecenum: {exc}", file=sys.stderr)
        return exc.code
    except BrokenPipeError:
        return 0


def main() -> None:
    sys.exit(run())
