"""Command-line front end.

Exit codes: 0 for a positive outcome (reduced kernel, YES, valid solution),
2 for a negative one (no-instance, NO, invalid solution), 1 for errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .fisg import enumerate_minimal_fisgs
from .formats import (
    FormatError,
    dump_report,
    kernel_report,
    parse_graph,
    parse_solution,
    serialize_graph,
    serialize_solution,
)
from .graph import Instance, violating_component
from .instgen import GenSpec, generate
from .kernel import NO_INSTANCE, kernelize, witness_size_bound
from .solver import export_hitting_set, solve

EXIT_OK, EXIT_ERROR, EXIT_NEGATIVE = 0, 1, 2


class CliError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # Usage errors exit 1; argparse's default 2 would read as a NO answer.
    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _read_instance(args: argparse.Namespace) -> Instance:
    try:
        text = Path(args.input).read_text()
    except OSError as exc:
        raise CliError(f"cannot read {args.input}: {exc.strerror}") from None
    try:
        g = parse_graph(text)
    except FormatError as exc:
        raise CliError(f"{args.input}: {exc}") from None
    if args.s < 1:
        raise CliError("--s must be >= 1")
    k = getattr(args, "k", 0)
    if k < 0:
        raise CliError("--k must be >= 0")
    return Instance(g, k, args.s)


def _emit(text: str, output: str | None) -> None:
    if output is None:
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_kernelize(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    if inst.s < 2:
        raise CliError("kernelize needs --s >= 2")
    kr = kernelize(inst)
    _emit(dump_report(kernel_report(kr, inst.s)), args.output)
    return EXIT_NEGATIVE if kr.status == NO_INSTANCE else EXIT_OK


def cmd_solve(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    sol = solve(inst, use_kernel=not args.no_kernel)
    if sol is None:
        print("NO")
        return EXIT_NEGATIVE
    print(" ".join(["YES", *map(str, sol.sorted())]))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    try:
        sol = parse_solution(Path(args.solution).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {args.solution}: {exc.strerror}") from None
    except FormatError as exc:
        raise CliError(f"{args.solution}: {exc}") from None
    unknown = sorted(set(sol) - set(inst.graph.adj))
    if unknown:
        raise CliError(f"solution names unknown vertices {unknown}")
    if len(set(sol)) > inst.k:
        print(f"INVALID size {len(set(sol))} exceeds k={inst.k}")
        return EXIT_NEGATIVE
    comp = violating_component(inst.graph.without(sol), inst.s)
    if comp is not None:
        print("INVALID component " + " ".join(map(str, sorted(comp))))
        return EXIT_NEGATIVE
    print("VALID")
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        spec = GenSpec(args.seed, args.s, args.clusters, args.missing, args.noise, args.prob)
        inst, planted = generate(spec)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    out = Path(args.output)
    out.write_text(serialize_graph(inst.graph))
    sidecar = out.with_name(out.name + ".planted")
    sidecar.write_text(f"# s={inst.s} k={inst.k} seed={args.seed}\n" + serialize_solution(planted))
    return EXIT_OK


def cmd_enumerate(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    try:
        found = enumerate_minimal_fisgs(inst.graph, inst.s, args.max_size)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    for f in found:
        print(" ".join(map(str, f.sorted_vertices())))
    return EXIT_OK


def cmd_export_hs(args: argparse.Namespace) -> int:
    inst = _read_instance(args)
    max_size = args.max_size or witness_size_bound(inst.s)
    if max_size < inst.s + 2:
        raise CliError(f"--max-size must be >= {inst.s + 2}")
    hs = export_hitting_set(inst, max_size)
    _emit(hs.to_text(), args.output)
    if not hs.complete:
        print(f"warning: max-size {max_size} may miss minimal forbidden subgraphs", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="splexkernel",
        description="Kernelize, solve and generate s-plex cluster vertex deletion instances.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name: str, help_text: str, with_k: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="graph file ('n m' header, then 'u v' lines)")
        p.add_argument("--s", type=int, required=True, help="plex parameter")
        if with_k:
            p.add_argument("--k", type=int, required=True, help="deletion budget")
        return p

    p = instance_cmd("kernelize", "reduce an instance and write a JSON report")
    p.add_argument("--output", help="report path (default: stdout)")
    p.set_defaults(func=cmd_kernelize)

    p = instance_cmd("solve", "decide an instance exactly")
    p.add_argument("--no-kernel", action="store_true", help="skip kernelization")
    p.set_defaults(func=cmd_solve)

    p = instance_cmd("verify", "check a solution file")
    p.add_argument("--solution", required=True, help="whitespace-separated vertex ids")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("gen", help="generate a planted instance")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--clusters", type=_int_list, required=True, help="cluster sizes, e.g. 5,4,6")
    p.add_argument("--missing", type=_int_list, default=[], help="non-edges per cluster, e.g. 1,0,2")
    p.add_argument("--noise", type=int, default=0, help="number of noise vertices (= k)")
    p.add_argument("--prob", type=float, default=0.5, help="noise edge probability")
    p.add_argument("--output", required=True, help="graph path; planted set goes to OUTPUT.planted")
    p.set_defaults(func=cmd_gen)

    p = instance_cmd("enumerate-fisgs", "list minimal forbidden subgraphs", with_k=False)
    p.add_argument("--max-size", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = instance_cmd("export-hs", "write the hitting-set instance")
    p.add_argument("--max-size", type=int, help="largest set (default: complete bound)")
    p.add_argument("--output", help="output path (default: stdout)")
    p.set_defaults(func=cmd_export_hs)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
