"""Benchmark harness: random regular graphs, sweeps, CSV rows and summaries.

Width budgets come from the memory model (peak bytes = 16 * 2^C): a 4 GB
laptop allows 16 * 2^C <= 4 * 2^30, i.e. C <= 28, and an 800 TB machine
allows C <= floor(log2(800 * 2^40 / 16)) = 45.
"""

from __future__ import annotations

import csv
import io
import math
import statistics
import time
from dataclasses import dataclass, field

import numpy as np

from .circuit import ParseError, ProblemGraph
from .contraction import DEFAULT_RANK_CAP, RankCapExceeded, contract
from .network import line_graph
from .ordering import rgreedy_order
from .pipeline import MODE_ORDER, build_network, default_angles, get_mode

__all__ = [
    "LAPTOP_WIDTH_BUDGET",
    "SUPERCOMPUTER_WIDTH_BUDGET",
    "random_regular_graph",
    "BenchSpec",
    "parse_bench_spec",
    "BenchRow",
    "CSV_HEADER",
    "run_benchmark",
    "rows_to_csv",
    "write_csv",
    "read_csv",
    "Summary",
    "summarize",
    "write_summary",
]

LAPTOP_WIDTH_BUDGET = 28
SUPERCOMPUTER_WIDTH_BUDGET = 45

_MAX_PAIRING_ATTEMPTS = 100_000


def random_regular_graph(n: int, d: int, seed: int) -> ProblemGraph:
    """Uniform d-regular simple graph on n nodes via configuration-model pairing.

    Stubs are shuffled and paired; any self-loop or repeated edge rejects the
    whole pairing and retries.  Deterministic for a fixed seed.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 0 or d >= n:
        raise ValueError(f"degree must satisfy 0 <= d < n, got d={d}, n={n}")
    if (n * d) % 2 != 0:
        raise ValueError(f"n*d must be even to pair all stubs, got n={n}, d={d}")

    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n), d)
    for _ in range(_MAX_PAIRING_ATTEMPTS):
        shuffled = rng.permutation(stubs)
        u = shuffled[0::2]
        v = shuffled[1::2]
        if np.any(u == v):
            continue
        lo = np.minimum(u, v)
        hi = np.maximum(u, v)
        keys = lo.astype(np.int64) * n + hi
        if len(np.unique(keys)) != len(keys):
            continue
        edges = sorted((int(a), int(b)) for a, b in zip(lo, hi))
        return ProblemGraph(n, tuple(edges))
    raise RuntimeError(
        f"no simple {d}-regular pairing found for n={n} after {_MAX_PAIRING_ATTEMPTS} attempts"
    )


@dataclass(frozen=True)
class BenchSpec:
    """One benchmark sweep: the cross product of seeds, sizes, depths and modes."""

    ns: tuple[int, ...]
    ps: tuple[int, ...]
    seeds: tuple[int, ...]
    modes: tuple[str, ...] = MODE_ORDER
    degree: int = 3
    n_repeats: int = 10
    temp: float = 0.02
    order_seed: int = 0
    contract: bool = False
    rank_cap: int = DEFAULT_RANK_CAP

    def __post_init__(self):
        for mode in self.modes:
            get_mode(mode)
        for n in self.ns:
            if (n * self.degree) % 2 != 0 or self.degree >= n:
                raise ValueError(f"infeasible regular graph: n={n}, d={self.degree}")


_SPEC_LIST_KEYS = {"n": "ns", "p": "ps", "seeds": "seeds"}
_SPEC_INT_KEYS = {"d": "degree", "n_repeats": "n_repeats", "order_seed": "order_seed", "rank_cap": "rank_cap"}


def parse_bench_spec(path) -> BenchSpec:
    """Parse the flat key=value sweep file (comma-separated lists)."""
    values: dict[str, object] = {}
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    for no, line in enumerate(raw, start=1):
        stripped = line.split("#", 1)[0].strip()
        if not stripped:
            continue
        if "=" not in stripped:
            raise ParseError(path, no, f"expected 'key = value', got {stripped!r}")
        key, _, value = stripped.partition("=")
        key = key.strip().lower()
        value = value.strip()
        try:
            if key in _SPEC_LIST_KEYS:
                values[_SPEC_LIST_KEYS[key]] = tuple(int(v) for v in value.split(","))
            elif key in _SPEC_INT_KEYS:
                values[_SPEC_INT_KEYS[key]] = int(value)
            elif key == "temp":
                values["temp"] = float(value)
            elif key == "modes":
                values["modes"] = tuple(m.strip() for m in value.split(","))
            elif key == "contract":
                if value.lower() not in ("true", "false"):
                    raise ValueError(f"expected true/false, got {value!r}")
                values["contract"] = value.lower() == "true"
            else:
                raise ValueError(f"unknown key {key!r}")
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
    for required in ("ns", "ps", "seeds"):
        if required not in values:
            raise ParseError(path, len(raw) or 1, f"missing required key {required!r}")
    try:
        return BenchSpec(**values)
    except ValueError as exc:
        raise ParseError(path, len(raw) or 1, str(exc)) from None


CSV_HEADER = (
    "graph_seed",
    "n",
    "degree",
    "p",
    "mode",
    "n_repeats",
    "temp",
    "order_seconds",
    "width",
    "log2_flops_2c",
    "memory_bytes",
    "contracted",
    "amp_re",
    "amp_im",
    "contract_seconds",
)


@dataclass
class BenchRow:
    graph_seed: int
    n: int
    degree: int
    p: int
    mode: str
    n_repeats: int
    temp: float
    order_seconds: float
    width: int
    log2_flops_2c: int
    memory_bytes: float
    contracted: bool
    amp_re: float | None = None
    amp_im: float | None = None
    contract_seconds: float | None = None

    def to_csv_fields(self) -> tuple[str, ...]:
        return (
            str(self.graph_seed),
            str(self.n),
            str(self.degree),
            str(self.p),
            self.mode,
            str(self.n_repeats),
            repr(self.temp),
            f"{self.order_seconds:.6f}",
            str(self.width),
            str(self.log2_flops_2c),
            f"{self.memory_bytes:.0f}",
            "true" if self.contracted else "false",
            "" if self.amp_re is None else repr(self.amp_re),
            "" if self.amp_im is None else repr(self.amp_im),
            "" if self.contract_seconds is None else f"{self.contract_seconds:.6f}",
        )


def _mode_sort_key(mode: str) -> int:
    return MODE_ORDER.index(mode) if mode in MODE_ORDER else len(MODE_ORDER)


def run_benchmark(spec: BenchSpec) -> list[BenchRow]:
    """Run the sweep; one row per (seed, n, p, mode) cell, in that order.

    Contraction is attempted only when requested and the found width fits the
    rank cap; a cell whose contraction still fails is recorded with
    contracted=false rather than aborting the sweep.
    """
    rows: list[BenchRow] = []
    for seed in spec.seeds:
        for n in spec.ns:
            graph = random_regular_graph(n, spec.degree, seed)
            for p in sorted(spec.ps):
                for mode_name in sorted(spec.modes, key=_mode_sort_key):
                    mode = get_mode(mode_name)
                    network = build_network(graph, p, mode, default_angles)
                    lg = line_graph(network)
                    t0 = time.perf_counter()
                    order, report = rgreedy_order(
                        lg, n_repeats=spec.n_repeats, temp=spec.temp, seed=spec.order_seed
                    )
                    order_seconds = time.perf_counter() - t0
                    row = BenchRow(
                        graph_seed=seed,
                        n=n,
                        degree=spec.degree,
                        p=p,
                        mode=mode.name,
                        n_repeats=spec.n_repeats,
                        temp=spec.temp,
                        order_seconds=order_seconds,
                        width=report.width,
                        log2_flops_2c=report.width,
                        memory_bytes=report.memory_bytes,
                        contracted=False,
                    )
                    if spec.contract and report.width <= spec.rank_cap:
                        t0 = time.perf_counter()
                        try:
                            amplitude = contract(network, order, rank_cap=spec.rank_cap)
                        except RankCapExceeded:
                            amplitude = None
                        if amplitude is not None:
                            row.contract_seconds = time.perf_counter() - t0
                            row.contracted = True
                            row.amp_re = amplitude.real
                            row.amp_im = amplitude.imag
                    rows.append(row)
    return rows


def rows_to_csv(rows: list[BenchRow]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for row in rows:
        writer.writerow(row.to_csv_fields())
    return buffer.getvalue()


def write_csv(rows: list[BenchRow], path) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(rows_to_csv(rows))


def read_csv(path) -> list[BenchRow]:
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != CSV_HEADER:
            raise ParseError(path, 1, f"expected header {','.join(CSV_HEADER)}")
        rows = []
        for no, fields in enumerate(reader, start=2):
            if not fields:
                continue
            if len(fields) != len(CSV_HEADER):
                raise ParseError(path, no, f"expected {len(CSV_HEADER)} columns, got {len(fields)}")
            try:
                rows.append(
                    BenchRow(
                        graph_seed=int(fields[0]),
                        n=int(fields[1]),
                        degree=int(fields[2]),
                        p=int(fields[3]),
                        mode=fields[4],
                        n_repeats=int(fields[5]),
                        temp=float(fields[6]),
                        order_seconds=float(fields[7]),
                        width=int(fields[8]),
                        log2_flops_2c=int(fields[9]),
                        memory_bytes=float(fields[10]),
                        contracted=fields[11] == "true",
                        amp_re=float(fields[12]) if fields[12] else None,
                        amp_im=float(fields[13]) if fields[13] else None,
                        contract_seconds=float(fields[14]) if fields[14] else None,
                    )
                )
            except ValueError as exc:
                raise ParseError(path, no, str(exc)) from None
    return rows


@dataclass
class Summary:
    """Aggregates over benchmark rows plus width-budget feasibility tables."""

    by_p: list[dict] = field(default_factory=list)
    by_n: list[dict] = field(default_factory=list)
    max_feasible_p: list[dict] = field(default_factory=list)
    max_feasible_n: list[dict] = field(default_factory=list)

    def to_markdown(self) -> str:
        lines = ["# Benchmark summary", ""]

        def table(title, header, rows, keys):
            lines.append(f"## {title}")
            lines.append("")
            lines.append("| " + " | ".join(header) + " |")
            lines.append("|" + "|".join("---" for _ in header) + "|")
            for row in rows:
                lines.append("| " + " | ".join(str(row[k]) for k in keys) + " |")
            lines.append("")

        table(
            "log2 FLOPs by depth p",
            ("p", "mode", "cells", "median log2 FLOPs", "sigma", "median width"),
            self.by_p,
            ("p", "mode", "count", "median_log2_flops", "sigma_log2_flops", "median_width"),
        )
        table(
            "log2 FLOPs by graph size n",
            ("n", "mode", "cells", "median log2 FLOPs", "sigma", "median width"),
            self.by_n,
            ("n", "mode", "count", "median_log2_flops", "sigma_log2_flops", "median_width"),
        )
        table(
            "Max feasible depth p per width budget",
            ("budget", "mode", "max p"),
            self.max_feasible_p,
            ("budget", "mode", "max_p"),
        )
        table(
            "Max feasible size n per width budget",
            ("budget", "mode", "max n"),
            self.max_feasible_n,
            ("budget", "mode", "max_n"),
        )
        return "\n".join(lines)

    def aggregates_csv(self) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(
            ("group", "key", "mode", "count", "median_log2_flops", "sigma_log2_flops", "median_width")
        )
        for row in self.by_p:
            writer.writerow(
                ("p", row["p"], row["mode"], row["count"], row["median_log2_flops"],
                 row["sigma_log2_flops"], row["median_width"])
            )
        for row in self.by_n:
            writer.writerow(
                ("n", row["n"], row["mode"], row["count"], row["median_log2_flops"],
                 row["sigma_log2_flops"], row["median_width"])
            )
        return buffer.getvalue()


def _group_stats(rows: list[BenchRow], key_name: str) -> list[dict]:
    groups: dict[tuple, list[BenchRow]] = {}
    for row in rows:
        groups.setdefault((getattr(row, key_name), row.mode), []).append(row)
    out = []
    for (key, mode), members in sorted(
        groups.items(), key=lambda item: (item[0][0], _mode_sort_key(item[0][1]))
    ):
        widths = [r.width for r in members]
        flops = [float(r.log2_flops_2c) for r in members]
        out.append(
            {
                key_name: key,
                "mode": mode,
                "count": len(members),
                "median_log2_flops": statistics.median(flops),
                "sigma_log2_flops": float(np.std(flops)),
                "median_width": statistics.median(widths),
            }
        )
    return out


def summarize(
    rows: list[BenchRow],
    budgets: tuple[int, ...] = (LAPTOP_WIDTH_BUDGET, SUPERCOMPUTER_WIDTH_BUDGET),
) -> Summary:
    """Median/1-sigma aggregates and max-feasible depth/size per width budget."""
    if not rows:
        raise ValueError("summarize requires at least one row")
    summary = Summary(by_p=_group_stats(rows, "p"), by_n=_group_stats(rows, "n"))
    modes = sorted({row.mode for row in rows}, key=_mode_sort_key)
    for budget in budgets:
        for mode in modes:
            feasible_p = [
                row["p"] for row in summary.by_p if row["mode"] == mode and row["median_width"] <= budget
            ]
            feasible_n = [
                row["n"] for row in summary.by_n if row["mode"] == mode and row["median_width"] <= budget
            ]
            summary.max_feasible_p.append(
                {"budget": budget, "mode": mode, "max_p": max(feasible_p, default=0)}
            )
            summary.max_feasible_n.append(
                {"budget": budget, "mode": mode, "max_n": max(feasible_n, default=0)}
            )
    return summary


def write_summary(summary: Summary, out_dir) -> None:
    """Write summary.md and aggregates.csv into `out_dir` (created if needed)."""
    import os

    os.makedirs(out_dir, exist_ok=True)
    with open(os.path.join(out_dir, "summary.md"), "w", encoding="utf-8") as fh:
        fh.write(summary.to_markdown())
    with open(os.path.join(out_dir, "aggregates.csv"), "w", encoding="utf-8") as fh:
        fh.write(summary.aggregates_csv())
