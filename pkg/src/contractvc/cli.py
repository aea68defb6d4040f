"""Command-line front end.

Subcommands: ``solve`` (the solver, or the brute oracle with ``--brute``),
``oracle``, ``verify`` (recheck a witness file), ``gen`` (hardness and
random instance generators), ``crosscheck`` (solver-vs-oracle sweep).

Exit codes: 0 = YES / valid, 1 = NO / invalid, 2 = error.  ``--json`` emits
a single machine-readable report object on stdout; timings inside it are
informational and excluded from golden comparisons.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from . import generators
from .digraph import dump_condensation_text
from .errors import ContractVCError
from .graph import read_edges_text, read_graph_text, write_graph_text
from .instances import CvcInstance, SolveStats, Verdict, witness_is_valid
from .oracles import oracle_contraction_vc
from .pipeline import solve

YES_EXIT, NO_EXIT, ERROR_EXIT = 0, 1, 2


@dataclass
class RunReport:
    verdict: str
    k: int
    d: int
    witness_edges: list | None
    vc_before: int | None
    vc_after: int | None
    branch_taken: str | None
    stats: dict
    elapsed_sec: float

    def to_json(self) -> str:
        return json.dumps(self.__dict__, sort_keys=True)

    def render(self) -> str:
        lines = [f"verdict: {self.verdict}", f"k: {self.k}", f"d: {self.d}"]
        if self.vc_before is not None:
            lines.append(f"vc_before: {self.vc_before}")
        if self.vc_after is not None:
            lines.append(f"vc_after: {self.vc_after}")
        if self.branch_taken:
            lines.append(f"branch: {self.branch_taken}")
        if self.witness_edges is not None:
            rendered = " ".join(f"{u}-{v}" for u, v in self.witness_edges)
            lines.append(f"witness: {rendered if rendered else '(empty)'}")
        lines.append(f"elapsed_sec: {self.elapsed_sec:.4f}")
        return "\n".join(lines)


def _report_from_verdict(verdict: Verdict, k: int, d: int) -> RunReport:
    stats = verdict.stats if verdict.stats is not None else SolveStats()
    witness = None
    if verdict.witness is not None:
        witness = [[u + 1, v + 1] for u, v in sorted(verdict.witness)]
    return RunReport(
        "YES" if verdict.answer else "NO",
        k,
        d,
        witness,
        stats.vc_before,
        stats.vc_after,
        stats.branch,
        stats.as_dict(),
        stats.elapsed,
    )


def _load_graph(path: str):
    return read_graph_text(Path(path).read_text())


def _emit(report: RunReport, as_json: bool) -> None:
    print(report.to_json() if as_json else report.render())


def _cmd_solve(args) -> int:
    g = _load_graph(args.graph)
    if args.k < 0 or args.d < 0:
        raise ContractVCError("k and d must be non-negative")
    inst = CvcInstance(g, args.k, args.d)
    dumps: list[str] = []
    hook = (lambda cond: dumps.append(dump_condensation_text(cond))) if args.dump_condensation else None
    if args.brute:
        verdict = oracle_contraction_vc(inst, want_witness=not args.no_witness)
    else:
        verdict = solve(inst, want_witness=not args.no_witness, threads=args.threads, on_condensation=hook)
    if args.dump_condensation:
        Path(args.dump_condensation).write_text("".join(dumps))
    _emit(_report_from_verdict(verdict, args.k, args.d), args.json)
    return YES_EXIT if verdict.answer else NO_EXIT


def _cmd_oracle(args) -> int:
    g = _load_graph(args.graph)
    verdict = oracle_contraction_vc(CvcInstance(g, args.k, args.d))
    _emit(_report_from_verdict(verdict, args.k, args.d), args.json)
    return YES_EXIT if verdict.answer else NO_EXIT


def _cmd_verify(args) -> int:
    g = _load_graph(args.graph)
    witness = read_edges_text(Path(args.witness).read_text())
    missing = [e for e in witness if e not in g.edge_set]
    if missing:
        raise ContractVCError(f"witness edge {missing[0]} not in graph")
    ok = witness_is_valid(g, args.k, args.d, witness)
    print("witness OK" if ok else "witness INVALID")
    return YES_EXIT if ok else NO_EXIT


def _cmd_gen(args) -> int:
    params: dict = {"seed": args.seed}
    k = d = None
    names: dict = {}
    extra: dict = {}
    if args.kind == "np-hard":
        mis = generators.random_mis_instance(args.q, args.seed)
        built = generators.gen_np_hard(mis, args.ell)
        g, k, d = built.instance.g, built.instance.k, built.instance.d
        names = built.names
        params.update(q=args.q, ell=args.ell)
    elif args.kind == "mis":
        mis = generators.random_mis_instance(args.q, args.seed)
        g = mis.g
        names = {f"class[{i + 1}]": sorted(c) for i, c in enumerate(mis.classes)}
        params.update(q=args.q)
    elif args.kind == "eif-chain":
        mis = generators.random_mis_instance(args.q, args.seed)
        built = generators.gen_eif_from_mis(mis)
        g = built.instance.g
        names = built.names
        params.update(q=args.q)
        extra["l"] = built.instance.l
    elif args.kind == "cvc-chain":
        mis = generators.random_mis_instance(args.q, args.seed)
        eif = generators.gen_eif_from_mis(mis)
        built = generators.gen_cvc_from_eif(eif.instance)
        g, k, d = built.instance.g, built.instance.k, built.instance.d
        names = built.names
        params.update(q=args.q, l=eif.instance.l)
    elif args.kind == "bipartite":
        g, cover = generators.random_bipartite_with_cover(args.nx, args.ny, args.p, args.seed)
        names = {"cover": sorted(cover)}
        params.update(nx=args.nx, ny=args.ny, p=args.p)
    else:
        raise ContractVCError(f"unknown generator kind {args.kind!r}")
    graph_path = Path(args.out + ".graph")
    sidecar_path = Path(args.out + ".json")
    graph_path.write_text(write_graph_text(g))
    sidecar = {
        "construction": args.kind,
        "params": params,
        "k": k,
        "d": d,
        "named_vertices": names,
    }
    sidecar.update(extra)
    sidecar_path.write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    print(f"wrote {graph_path} and {sidecar_path}")
    return YES_EXIT


def _cmd_crosscheck(args) -> int:
    import random as _random

    from .graph import rank_graph

    rng = _random.Random(args.seed)
    checked = failures = 0
    first_failure = None
    for trial in range(args.budget):
        n = rng.randint(2, args.max_n)
        g = generators.random_connected_graph(n, rng.randrange(1 << 30))
        rank = rank_graph(g)
        for k in range(rank + 1):
            for d in range(k + 1):
                inst = CvcInstance(g, k, d)
                got = solve(inst).answer
                expected = oracle_contraction_vc(inst, want_witness=False).answer
                checked += 1
                if got != expected:
                    failures += 1
                    if first_failure is None:
                        first_failure = (g, k, d, got, expected)
    print(f"crosscheck: {checked} instances, {failures} failures")
    if first_failure is not None:
        g, k, d, got, expected = first_failure
        print(f"first failure: k={k} d={d} solver={got} oracle={expected}")
        print(write_graph_text(g), end="")
        return NO_EXIT
    return YES_EXIT


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="contractvc",
        description="Reduce a graph's minimum vertex cover via edge contractions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="run the solver on a graph file")
    p_solve.add_argument("graph")
    p_solve.add_argument("-k", type=int, required=True, help="contraction budget")
    p_solve.add_argument("-d", type=int, required=True, help="required cover reduction")
    p_solve.add_argument("--brute", action="store_true", help="use the brute-force oracle")
    p_solve.add_argument("--no-witness", action="store_true", help="skip witness extraction")
    p_solve.add_argument("--json", action="store_true", help="emit a JSON report")
    p_solve.add_argument("--threads", type=int, default=1, help="fan-out parallelism")
    p_solve.add_argument(
        "--dump-condensation", metavar="PATH", help="write digraph condensations to PATH"
    )
    p_solve.set_defaults(func=_cmd_solve)

    p_oracle = sub.add_parser("oracle", help="run the exhaustive oracle")
    p_oracle.add_argument("graph")
    p_oracle.add_argument("-k", type=int, required=True)
    p_oracle.add_argument("-d", type=int, required=True)
    p_oracle.add_argument("--json", action="store_true")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_verify = sub.add_parser("verify", help="check a witness edge list")
    p_verify.add_argument("graph")
    p_verify.add_argument("-k", type=int, required=True)
    p_verify.add_argument("-d", type=int, required=True)
    p_verify.add_argument("witness", help="file of 'e <u> <v>' lines")
    p_verify.set_defaults(func=_cmd_verify)

    p_gen = sub.add_parser("gen", help="generate structured instances")
    p_gen.add_argument(
        "kind", choices=["np-hard", "mis", "eif-chain", "cvc-chain", "bipartite"]
    )
    p_gen.add_argument("--q", type=int, default=1, help="number of color classes")
    p_gen.add_argument("--ell", type=int, default=1, help="column parameter")
    p_gen.add_argument("--nx", type=int, default=3)
    p_gen.add_argument("--ny", type=int, default=3)
    p_gen.add_argument("--p", type=float, default=0.3)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True, help="output path prefix")
    p_gen.set_defaults(func=_cmd_gen)

    p_cross = sub.add_parser("crosscheck", help="solver-vs-oracle random sweep")
    p_cross.add_argument("--max-n", type=int, default=7)
    p_cross.add_argument("--budget", type=int, default=25, help="number of graphs")
    p_cross.add_argument("--seed", type=int, default=0)
    p_cross.set_defaults(func=_cmd_crosscheck)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ContractVCError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR_EXIT


if __name__ == "__main__":
    sys.exit(main())
