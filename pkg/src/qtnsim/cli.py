"""Command-line interface.

Exit codes: 0 on success, 1 on input errors (bad flags, malformed files),
2 when a requested contraction is infeasible under the rank cap.
"""

from __future__ import annotations

import argparse
import sys
import time

from .bench import (
    parse_bench_spec,
    random_regular_graph,
    read_csv,
    run_benchmark,
    summarize,
    write_csv,
    write_summary,
)
from .circuit import (
    ParseError,
    QaoaParams,
    build_qaoa_maxcut_circuit,
    fuse_zz,
    read_circuit,
    read_graph,
    write_circuit,
    write_graph,
)
from .contraction import DEFAULT_RANK_CAP, RankCapExceeded, contract, statevector_amplitude
from .network import circuit_to_network, line_graph
from .ordering import rgreedy_order
from .pipeline import MODE_ORDER, default_angles, get_mode

__all__ = ["main"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad arguments; keep 2 reserved for infeasibility
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_ordering_flags(parser):
    parser.add_argument("--n-repeats", type=int, default=10, help="rgreedy passes (default 10)")
    parser.add_argument("--temp", type=float, default=0.02, help="rgreedy temperature (default 0.02)")
    parser.add_argument("--seed", type=int, default=0, help="rgreedy seed (default 0)")


def _parse_angles(text: str) -> tuple[float, ...]:
    return tuple(float(v) for v in text.split(","))


def _cmd_gen_graph(args) -> int:
    graph = random_regular_graph(args.n, args.d, args.seed)
    write_graph(graph, args.output)
    print(f"wrote {graph.node_count} nodes, {graph.edge_count} edges to {args.output}")
    return 0


def _cmd_circuit(args) -> int:
    graph = read_graph(args.graph)
    if (args.gamma is None) != (args.beta is None):
        raise ValueError("--gamma and --beta must be given together")
    if args.gamma is not None:
        params = QaoaParams(args.gamma, args.beta)
        if params.p != args.p:
            raise ValueError(f"--p {args.p} does not match {params.p} angle pairs")
    else:
        params = default_angles(args.p)
    circuit = build_qaoa_maxcut_circuit(graph, params, fused=args.fused)
    write_circuit(circuit, args.output)
    print(f"wrote {circuit.gate_count} gates on {circuit.qubit_count} qubits to {args.output}")
    return 0


def _prepare(args):
    """Load circuit, apply the mode's fusion/network settings, build the line graph."""
    mode = get_mode(args.mode)
    circuit = read_circuit(args.circuit)
    if mode.fused:
        circuit = fuse_zz(circuit)
    bits = getattr(args, "bits", None) or "0" * circuit.qubit_count
    network = circuit_to_network(circuit, mode.network_mode, bits)
    return circuit, network, line_graph(network), bits


def _cmd_cost(args) -> int:
    _, _, lg, _ = _prepare(args)
    t0 = time.perf_counter()
    _, report = rgreedy_order(lg, n_repeats=args.n_repeats, temp=args.temp, seed=args.seed)
    seconds = time.perf_counter() - t0
    print(f"vertices {lg.vertex_count}")
    print(f"width {report.width}")
    print(f"log2_flops_2c {report.width}")
    print(f"flops_sum {report.flops_sum:.6g}")
    print(f"memory_bytes {report.memory_bytes:.0f}")
    print(f"order_seconds {seconds:.3f}")
    return 0


def _cmd_amplitude(args) -> int:
    circuit, network, lg, bits = _prepare(args)
    order, report = rgreedy_order(lg, n_repeats=args.n_repeats, temp=args.temp, seed=args.seed)
    value = contract(network, order, rank_cap=args.rank_cap)
    print(f"bits {bits}")
    print(f"width {report.width}")
    print(f"amplitude {value.real!r} {value.imag!r}")
    if args.oracle:
        reference = statevector_amplitude(circuit, bits)
        print(f"oracle {reference.real!r} {reference.imag!r}")
        print(f"abs_diff {abs(value - reference):.3e}")
    return 0


def _cmd_bench(args) -> int:
    spec = parse_bench_spec(args.spec)
    rows = run_benchmark(spec)
    write_csv(rows, args.output)
    print(f"wrote {len(rows)} rows to {args.output}")
    return 0


def _cmd_summarize(args) -> int:
    rows = read_csv(args.csv)
    summary = summarize(rows)
    write_summary(summary, args.output)
    print(f"wrote summary.md and aggregates.csv to {args.output}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="qtnsim", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="generate a random regular graph file")
    p.add_argument("--n", type=int, required=True, help="number of nodes")
    p.add_argument("--d", type=int, required=True, help="degree")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_gen_graph)

    p = sub.add_parser("circuit", help="build a MaxCut ansatz circuit file from a graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--p", type=int, required=True, help="number of rounds")
    p.add_argument("--gamma", type=_parse_angles, help="comma-separated cost angles")
    p.add_argument("--beta", type=_parse_angles, help="comma-separated mixer angles")
    p.add_argument("--fused", action="store_true", help="emit ZZ/XPow gates directly")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=_cmd_circuit)

    p = sub.add_parser("cost", help="estimate contraction cost of a circuit")
    p.add_argument("--circuit", required=True)
    p.add_argument("--mode", choices=MODE_ORDER, default="default")
    p.add_argument("--bits", help="output bitstring (default all zeros)")
    _add_ordering_flags(p)
    p.set_defaults(func=_cmd_cost)

    p = sub.add_parser("amplitude", help="contract a single amplitude")
    p.add_argument("--circuit", required=True)
    p.add_argument("--bits", help="output bitstring (default all zeros)")
    p.add_argument("--mode", choices=MODE_ORDER, default="default")
    p.add_argument("--oracle", action="store_true", help="also run the state-vector check")
    p.add_argument("--rank-cap", type=int, default=DEFAULT_RANK_CAP)
    _add_ordering_flags(p)
    p.set_defaults(func=_cmd_amplitude)

    p = sub.add_parser("bench", help="run a benchmark sweep from a spec file")
    p.add_argument("--spec", required=True)
    p.add_argument("-o", "--output", required=True, help="CSV output path")
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("summarize", help="aggregate a benchmark CSV into tables")
    p.add_argument("--csv", required=True)
    p.add_argument("-o", "--output", required=True, help="output directory")
    p.set_defaults(func=_cmd_summarize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except RankCapExceeded as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return 2
    except (ParseError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
