"""Elimination orderings over the line graph and the contraction cost model.

Eliminating a variable merges all tensors containing it, so the rank of the
produced intermediate equals the variable's degree in the evolving adjacency
graph (neighbors then form a clique).  The contraction width C is the
maximum such rank along an order; estimated FLOPs are 2^C and peak memory
16 * 2^C bytes at 16 bytes per complex entry.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from .circuit import ProblemGraph
from .network import LineGraph
from .pipeline import PipelineMode, build_line_graph, default_angles, get_mode

__all__ = [
    "ContractionOrder",
    "CostReport",
    "contraction_width",
    "greedy_order",
    "rgreedy_order",
    "feasible_max_p",
]


@dataclass(frozen=True)
class ContractionOrder:
    """Elimination sequence: a permutation of the line-graph vertex ids."""

    sequence: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "sequence", tuple(int(v) for v in self.sequence))
        if len(set(self.sequence)) != len(self.sequence):
            raise ValueError("order contains repeated vertices")

    def __len__(self) -> int:
        return len(self.sequence)


@dataclass(frozen=True)
class CostReport:
    """Contraction width and the derived cost estimates."""

    width: int
    step_ranks: tuple[int, ...]
    flops_2c: float
    flops_sum: float
    memory_bytes: float

    @classmethod
    def from_step_ranks(cls, step_ranks) -> "CostReport":
        ranks = tuple(int(r) for r in step_ranks)
        width = max(ranks, default=0)
        # 2^(rank+1): one multiply-add pair per entry of the summed-over slice
        flops_sum = float(sum(2.0 ** (r + 1) for r in ranks))
        return cls(
            width=width,
            step_ranks=ranks,
            flops_2c=2.0**width,
            flops_sum=flops_sum,
            memory_bytes=16.0 * 2.0**width,
        )


def _compact_adjacency(lg: LineGraph) -> tuple[tuple[int, ...], list[set[int]]]:
    """Relabel vertices to 0..V-1 (ascending id) and copy adjacency as sets."""
    vertices = lg.vertices
    index = {v: i for i, v in enumerate(vertices)}
    adjacency = [set(index[u] for u in lg.adjacency[v]) for v in vertices]
    return vertices, adjacency


def _eliminate(adjacency: list[set[int]], v: int) -> int:
    """Eliminate vertex v in place; returns the rank of the intermediate."""
    neighbors = list(adjacency[v])
    for i, a in enumerate(neighbors):
        sa = adjacency[a]
        sa.discard(v)
        for b in neighbors[i + 1 :]:
            if b not in sa:
                sa.add(b)
                adjacency[b].add(a)
    adjacency[v] = set()
    return len(neighbors)


def contraction_width(lg: LineGraph, order: ContractionOrder) -> CostReport:
    """Cost report for eliminating the line graph along `order`."""
    if sorted(order.sequence) != list(lg.vertices):
        raise ValueError("order is not a permutation of the line-graph vertices")
    vertices, adjacency = _compact_adjacency(lg)
    index = {v: i for i, v in enumerate(vertices)}
    ranks = [_eliminate(adjacency, index[v]) for v in order.sequence]
    return CostReport.from_step_ranks(ranks)


_DEAD = np.iinfo(np.int64).max


def _run_pass(adjacency: list[set[int]], choose) -> tuple[list[int], list[int]]:
    """Consume `adjacency`, eliminating all vertices; returns (order, ranks).

    `choose(degrees)` picks the next vertex from the current degree array, in
    which eliminated vertices are marked with the _DEAD sentinel.
    """
    nvert = len(adjacency)
    degrees = np.array([len(s) for s in adjacency], dtype=np.int64)
    order: list[int] = []
    ranks: list[int] = []
    for _ in range(nvert):
        v = choose(degrees)
        neighbors = adjacency[v]
        ranks.append(_eliminate(adjacency, v))
        for a in neighbors:
            degrees[a] = len(adjacency[a])
        degrees[v] = _DEAD
        order.append(v)
    return order, ranks


def _choose_min_degree(degrees: np.ndarray) -> int:
    # argmin returns the first minimum, i.e. the smallest vertex id
    return int(degrees.argmin())


def greedy_order(lg: LineGraph) -> ContractionOrder:
    """Deterministic min-degree elimination; ties broken by smallest vertex id."""
    vertices, adjacency = _compact_adjacency(lg)
    order, _ = _run_pass(adjacency, _choose_min_degree)
    return ContractionOrder(tuple(vertices[i] for i in order))


def _boltzmann_chooser(rng: np.random.Generator, temp: float):
    def choose(degrees: np.ndarray) -> int:
        alive = degrees != _DEAD
        lowest = degrees[alive].min()
        if temp == 0.0:
            weights = (alive & (degrees == lowest)).astype(np.float64)
        else:
            weights = np.exp(-(degrees - lowest) / temp, where=alive, out=np.zeros(len(degrees)))
        cumulative = np.cumsum(weights)
        draw = rng.random() * cumulative[-1]
        return int(np.searchsorted(cumulative, draw, side="right"))

    return choose


def rgreedy_order(
    lg: LineGraph, n_repeats: int = 10, temp: float = 0.02, seed: int = 0
) -> tuple[ContractionOrder, CostReport]:
    """Randomized-greedy ordering: best of `n_repeats` elimination passes.

    Pass 0 is the deterministic min-degree pass, so the result never loses to
    `greedy_order`.  Each later pass samples the next vertex with probability
    proportional to exp(-(degree - min_degree) / temp); temp = 0 degenerates
    to a uniform choice among minimum-degree vertices.  Pass k draws from a
    private RNG stream seeded with seed + k, and the best order is selected
    by (width, flops_sum, pass index).
    """
    if n_repeats < 1:
        raise ValueError("n_repeats must be >= 1")
    if temp < 0.0:
        raise ValueError("temp must be >= 0")
    vertices, _ = _compact_adjacency(lg)

    best: tuple[int, float, int, list[int], list[int]] | None = None
    for rep in range(n_repeats):
        _, adjacency = _compact_adjacency(lg)
        if rep == 0:
            choose = _choose_min_degree
        else:
            choose = _boltzmann_chooser(np.random.default_rng(seed + rep), temp)
        order, ranks = _run_pass(adjacency, choose)
        report = CostReport.from_step_ranks(ranks)
        key = (report.width, report.flops_sum, rep)
        if best is None or key < best[:3]:
            best = (*key, order, ranks)

    _, _, _, order, ranks = best
    return (
        ContractionOrder(tuple(vertices[i] for i in order)),
        CostReport.from_step_ranks(ranks),
    )


def feasible_max_p(
    graph: ProblemGraph,
    width_budget: int,
    mode: str | PipelineMode = "zz+diagonal",
    angle_rule=default_angles,
    n_repeats: int = 10,
    temp: float = 0.02,
    seed: int = 0,
    cutoff: int = 8,
) -> int:
    """Largest depth p in 1..cutoff whose rgreedy width fits the budget (0 if none)."""
    if width_budget < 0:
        raise ValueError("width_budget must be >= 0")
    mode = get_mode(mode)
    best_p = 0
    for p in range(1, cutoff + 1):
        lg = build_line_graph(graph, p, mode, angle_rule)
        _, report = rgreedy_order(lg, n_repeats=n_repeats, temp=temp, seed=seed)
        if report.width <= width_budget:
            best_p = p
    return best_p
