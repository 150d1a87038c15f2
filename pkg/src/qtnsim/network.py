"""Circuit-to-tensor-network conversion and the line-graph view.

Every qubit wire threads a "current variable" through the network.  A
full-matrix gate introduces fresh output variables and a tensor of its
matrix; in diagonal mode a diagonal gate instead attaches its diagonal to
the wire's existing variables, adding no variables at all.  That reuse is
what shrinks the line graph and, downstream, the contraction width.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .circuit import Circuit, gate_matrix, is_diagonal

__all__ = [
    "NetworkMode",
    "Tensor",
    "TensorNetwork",
    "LineGraph",
    "circuit_to_network",
    "sliced_tensors",
    "line_graph",
    "network_stats",
]


class NetworkMode(Enum):
    FULL = "full"
    DIAGONAL = "diagonal"


@dataclass(frozen=True, eq=False)
class Tensor:
    """A small complex tensor over named binary variables.

    ``data`` has shape (2,) * rank with axis k indexed by ``variables[k]``.
    Rank 0 (scalars) is legal; the global circuit phase is stored that way.
    """

    id: int
    variables: tuple[int, ...]
    data: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(int(v) for v in self.variables))
        data = np.asarray(self.data, dtype=complex)
        object.__setattr__(self, "data", data)
        if data.shape != (2,) * len(self.variables):
            raise ValueError(
                f"tensor data shape {data.shape} does not match {len(self.variables)} variables"
            )
        if len(set(self.variables)) != len(self.variables):
            raise ValueError(f"repeated variable in tensor: {self.variables}")

    @property
    def rank(self) -> int:
        return len(self.variables)


@dataclass(frozen=True, eq=False)
class TensorNetwork:
    """Tensors over a shared variable universe, with output variables fixed.

    ``fixed`` maps a variable id to the output bit it is sliced to; contracting
    all unfixed variables yields the amplitude as a scalar.
    """

    tensors: tuple[Tensor, ...]
    variable_count: int
    fixed: dict[int, int]

    def __post_init__(self):
        object.__setattr__(self, "tensors", tuple(self.tensors))
        object.__setattr__(self, "fixed", dict(self.fixed))
        for t in self.tensors:
            for v in t.variables:
                if not (0 <= v < self.variable_count):
                    raise ValueError(f"tensor {t.id} references variable {v} outside universe")
        for v, bit in self.fixed.items():
            if not (0 <= v < self.variable_count):
                raise ValueError(f"fixed variable {v} outside universe")
            if bit not in (0, 1):
                raise ValueError(f"fixed value for variable {v} must be 0 or 1, got {bit}")

    def unfixed_variables(self) -> tuple[int, ...]:
        return tuple(v for v in range(self.variable_count) if v not in self.fixed)


def circuit_to_network(
    circuit: Circuit, mode: NetworkMode, output_bits: str
) -> TensorNetwork:
    """Convert a circuit plus an output bitstring into a tensor network.

    The initial state is |0...0> as explicit rank-1 (1, 0) tensors.  In FULL
    mode each 1-qubit gate adds one fresh variable (rank-2 tensor) and each
    2-qubit gate two fresh variables (rank-4 tensor).  In DIAGONAL mode a
    diagonal gate adds no variables: a 1-qubit diagonal contributes its
    diagonal as a rank-1 tensor on the wire's current variable, a diagonal
    2-qubit gate its diagonal reshaped to a rank-2 tensor on both wires'
    current variables.  Tensor index order is (outputs..., inputs...) with
    the first listed qubit most significant.  Each wire's final variable is
    fixed to the corresponding output bit, and the circuit phase is attached
    as a rank-0 tensor, so the full contraction equals
    <output_bits|circuit|0...0> exactly in both modes.
    """
    n = circuit.qubit_count
    if len(output_bits) != n or any(c not in "01" for c in output_bits):
        raise ValueError(f"output_bits must be a length-{n} string over 0/1, got {output_bits!r}")

    tensors: list[Tensor] = []
    next_var = 0
    current: list[int] = []
    for _ in range(n):
        v = next_var
        next_var += 1
        tensors.append(Tensor(len(tensors), (v,), np.array([1.0, 0.0], dtype=complex)))
        current.append(v)

    for gate in circuit.gates:
        matrix = gate_matrix(gate)
        if mode is NetworkMode.DIAGONAL and is_diagonal(gate):
            diag = np.diagonal(matrix).copy()
            if len(gate.qubits) == 1:
                q = gate.qubits[0]
                tensors.append(Tensor(len(tensors), (current[q],), diag))
            else:
                a, b = gate.qubits
                tensors.append(Tensor(len(tensors), (current[a], current[b]), diag.reshape(2, 2)))
        elif len(gate.qubits) == 1:
            q = gate.qubits[0]
            new = next_var
            next_var += 1
            tensors.append(Tensor(len(tensors), (new, current[q]), matrix))
            current[q] = new
        else:
            a, b = gate.qubits
            new_a, new_b = next_var, next_var + 1
            next_var += 2
            tensors.append(
                Tensor(len(tensors), (new_a, new_b, current[a], current[b]), matrix.reshape(2, 2, 2, 2))
            )
            current[a], current[b] = new_a, new_b

    fixed = {current[q]: int(output_bits[q]) for q in range(n)}
    tensors.append(Tensor(len(tensors), (), np.asarray(circuit.phase, dtype=complex)))
    return TensorNetwork(tuple(tensors), next_var, fixed)


def sliced_tensors(network: TensorNetwork) -> list[Tensor]:
    """Tensors with every fixed variable pinned to its output bit."""
    out = []
    for t in network.tensors:
        if any(v in network.fixed for v in t.variables):
            index = tuple(
                network.fixed[v] if v in network.fixed else slice(None) for v in t.variables
            )
            keep = tuple(v for v in t.variables if v not in network.fixed)
            out.append(Tensor(t.id, keep, t.data[index]))
        else:
            out.append(t)
    return out


@dataclass(frozen=True, eq=False)
class LineGraph:
    """Hypergraph of contraction variables: one hyperedge per tensor.

    ``vertices`` are the unfixed variable ids; ``adjacency`` is the derived
    simple graph connecting variables that co-occur in a hyperedge.
    """

    vertices: tuple[int, ...]
    hyperedges: tuple[tuple[int, ...], ...]
    adjacency: dict[int, frozenset[int]] = field(repr=False)

    @property
    def vertex_count(self) -> int:
        return len(self.vertices)

    @classmethod
    def from_hyperedges(cls, vertices, hyperedges) -> "LineGraph":
        vertices = tuple(sorted(int(v) for v in vertices))
        vertex_set = set(vertices)
        neighbor_sets: dict[int, set[int]] = {v: set() for v in vertices}
        clean = []
        for edge in hyperedges:
            edge = tuple(int(v) for v in edge)
            for v in edge:
                if v not in vertex_set:
                    raise ValueError(f"hyperedge references unknown vertex {v}")
            clean.append(edge)
            for i, a in enumerate(edge):
                for b in edge[i + 1 :]:
                    if a != b:
                        neighbor_sets[a].add(b)
                        neighbor_sets[b].add(a)
        adjacency = {v: frozenset(s) for v, s in neighbor_sets.items()}
        return cls(vertices, tuple(clean), adjacency)

    @classmethod
    def from_edges(cls, vertices, edges) -> "LineGraph":
        """Build from a plain graph: every edge becomes a 2-vertex hyperedge."""
        return cls.from_hyperedges(vertices, [tuple(e) for e in edges])


def line_graph(network: TensorNetwork) -> LineGraph:
    """Line-graph view of the network after slicing out fixed variables.

    One hyperedge per tensor, restricted to its unfixed variables; tensors
    fully reduced to scalars by the slicing contribute no hyperedge.
    """
    vertices = network.unfixed_variables()
    hyperedges = [t.variables for t in sliced_tensors(network) if t.rank >= 1]
    return LineGraph.from_hyperedges(vertices, hyperedges)


def network_stats(network: TensorNetwork) -> dict[str, int]:
    """Tensor count (scalars included), variable universe size, maximum rank."""
    max_rank = max((t.rank for t in network.tensors), default=0)
    return {
        "tensor_count": len(network.tensors),
        "variable_count": network.variable_count,
        "max_rank": max_rank,
    }
