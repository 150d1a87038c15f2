"""The four optimization configurations used throughout the benchmarks.

A pipeline mode decides two independent switches: whether the circuit is
rewritten with fused ZZ/XPow gates, and whether network construction treats
diagonal gates diagonally.
"""

from __future__ import annotations

from dataclasses import dataclass

from .circuit import Circuit, ProblemGraph, QaoaParams, build_qaoa_maxcut_circuit
from .network import LineGraph, NetworkMode, TensorNetwork, circuit_to_network, line_graph

__all__ = [
    "PipelineMode",
    "MODES",
    "MODE_ORDER",
    "get_mode",
    "default_angles",
    "build_circuit",
    "build_network",
    "build_line_graph",
]


@dataclass(frozen=True)
class PipelineMode:
    name: str
    fused: bool
    diagonal: bool

    @property
    def network_mode(self) -> NetworkMode:
        return NetworkMode.DIAGONAL if self.diagonal else NetworkMode.FULL


MODES: dict[str, PipelineMode] = {
    "default": PipelineMode("default", fused=False, diagonal=False),
    "diagonal": PipelineMode("diagonal", fused=False, diagonal=True),
    "zz": PipelineMode("zz", fused=True, diagonal=False),
    "zz+diagonal": PipelineMode("zz+diagonal", fused=True, diagonal=True),
}
MODE_ORDER: tuple[str, ...] = tuple(MODES)


def get_mode(mode: str | PipelineMode) -> PipelineMode:
    if isinstance(mode, PipelineMode):
        return mode
    try:
        return MODES[mode]
    except KeyError:
        raise ValueError(f"unknown mode {mode!r}; expected one of {', '.join(MODES)}") from None


def default_angles(p: int) -> QaoaParams:
    """Fixed benchmark angles; contraction widths do not depend on them."""
    return QaoaParams(
        tuple(0.3 + 0.1 * q for q in range(p)),
        tuple(0.5 - 0.05 * q for q in range(p)),
    )


def build_circuit(
    graph: ProblemGraph, p: int, mode: str | PipelineMode, angle_rule=default_angles
) -> Circuit:
    return build_qaoa_maxcut_circuit(graph, angle_rule(p), fused=get_mode(mode).fused)


def build_network(
    graph: ProblemGraph,
    p: int,
    mode: str | PipelineMode,
    angle_rule=default_angles,
    output_bits: str | None = None,
) -> TensorNetwork:
    """Graph -> circuit -> network for one pipeline mode (all-zeros output by default)."""
    mode = get_mode(mode)
    circuit = build_circuit(graph, p, mode, angle_rule)
    bits = output_bits if output_bits is not None else "0" * graph.node_count
    return circuit_to_network(circuit, mode.network_mode, bits)


def build_line_graph(
    graph: ProblemGraph,
    p: int,
    mode: str | PipelineMode,
    angle_rule=default_angles,
    output_bits: str | None = None,
) -> LineGraph:
    return line_graph(build_network(graph, p, mode, angle_rule, output_bits))
