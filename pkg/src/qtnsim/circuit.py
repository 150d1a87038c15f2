"""Gate-level circuit representation and the ZZ/X fusion rewrite.

The gate set is intentionally tiny: H, Z-power and X-power rotations, CNOT,
and the two-qubit ZZ interaction obtained by fusing a CNOT-conjugated Z
rotation.  Circuits carry an explicit global-phase scalar so rewrites
preserve the unitary exactly, not just up to phase.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "GateKind",
    "Gate",
    "Circuit",
    "ProblemGraph",
    "QaoaParams",
    "ParseError",
    "gate_matrix",
    "is_diagonal",
    "build_qaoa_maxcut_circuit",
    "fuse_zz",
    "read_graph",
    "write_graph",
    "read_circuit",
    "write_circuit",
]


class ParseError(ValueError):
    """Malformed graph or circuit file; message carries the line number."""

    def __init__(self, path, line_no: int, message: str):
        super().__init__(f"{path}:{line_no}: {message}")
        self.path = str(path)
        self.line_no = line_no


@dataclass(frozen=True)
class ProblemGraph:
    """Simple undirected graph defining a MaxCut instance (0-indexed nodes)."""

    node_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        if self.node_count < 1:
            raise ValueError("node_count must be >= 1")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop on node {u}")
            if not (0 <= u < self.node_count and 0 <= v < self.node_count):
                raise ValueError(f"edge ({u}, {v}) out of range for {self.node_count} nodes")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @property
    def edge_count(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class QaoaParams:
    """Angle vectors (radians) for the alternating cost/mixer layers."""

    gammas: tuple[float, ...]
    betas: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "gammas", tuple(float(g) for g in self.gammas))
        object.__setattr__(self, "betas", tuple(float(b) for b in self.betas))
        if len(self.gammas) != len(self.betas):
            raise ValueError(
                f"angle vectors must have equal length, got {len(self.gammas)} gammas "
                f"and {len(self.betas)} betas"
            )

    @property
    def p(self) -> int:
        return len(self.gammas)


class GateKind(Enum):
    H = "H"
    ZPOW = "ZPOW"
    XPOW = "XPOW"
    CNOT = "CNOT"
    ZZ = "ZZ"


_ARITY = {
    GateKind.H: 1,
    GateKind.ZPOW: 1,
    GateKind.XPOW: 1,
    GateKind.CNOT: 2,
    GateKind.ZZ: 2,
}
_PARAMETRIC = frozenset({GateKind.ZPOW, GateKind.XPOW, GateKind.ZZ})
_DIAGONAL_KINDS = frozenset({GateKind.ZPOW, GateKind.ZZ})


@dataclass(frozen=True)
class Gate:
    """One gate application: kind, target qubits, optional angle in radians."""

    kind: GateKind
    qubits: tuple[int, ...]
    param: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if self.param is not None:
            object.__setattr__(self, "param", float(self.param))
        arity = _ARITY[self.kind]
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind.value} acts on {arity} qubit(s), got {self.qubits}")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"repeated qubit in {self.kind.value} gate: {self.qubits}")
        if any(q < 0 for q in self.qubits):
            raise ValueError(f"negative qubit index in {self.qubits}")
        if (self.param is not None) != (self.kind in _PARAMETRIC):
            raise ValueError(f"{self.kind.value} parameter mismatch")

    @staticmethod
    def h(q: int) -> "Gate":
        return Gate(GateKind.H, (q,))

    @staticmethod
    def zpow(q: int, t: float) -> "Gate":
        return Gate(GateKind.ZPOW, (q,), t)

    @staticmethod
    def xpow(q: int, t: float) -> "Gate":
        return Gate(GateKind.XPOW, (q,), t)

    @staticmethod
    def cnot(control: int, target: int) -> "Gate":
        return Gate(GateKind.CNOT, (control, target))

    @staticmethod
    def zz(q1: int, q2: int, gamma: float) -> "Gate":
        return Gate(GateKind.ZZ, (q1, q2), gamma)


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over `qubit_count` qubits plus a global-phase scalar."""

    qubit_count: int
    gates: tuple[Gate, ...] = ()
    phase: complex = 1.0 + 0.0j

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "phase", complex(self.phase))
        if self.qubit_count < 1:
            raise ValueError("qubit_count must be >= 1")
        if abs(abs(self.phase) - 1.0) > 1e-12:
            raise ValueError(f"phase must have unit modulus, got |phase| = {abs(self.phase)}")
        for g in self.gates:
            if max(g.qubits) >= self.qubit_count:
                raise ValueError(f"gate {g} out of range for {self.qubit_count} qubits")

    @property
    def gate_count(self) -> int:
        return len(self.gates)


_SQRT2_INV = 1.0 / math.sqrt(2.0)
_H_MATRIX = np.array([[1, 1], [1, -1]], dtype=complex) * _SQRT2_INV
_CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def gate_matrix(gate: Gate) -> np.ndarray:
    """Dense matrix in the computational basis, first listed qubit most significant.

    Conventions: ZPow(t) = diag(1, e^{-it}), XPow(t) = H ZPow(t) H, and
    ZZ(g) = diag(e^{ig}, e^{-ig}, e^{-ig}, e^{ig}); with these,
    CNOT . ZPow(2g on target) . CNOT = e^{-ig} ZZ(g) holds exactly.
    """
    if gate.kind is GateKind.H:
        return _H_MATRIX.copy()
    if gate.kind is GateKind.ZPOW:
        return np.array([[1, 0], [0, cmath.exp(-1j * gate.param)]], dtype=complex)
    if gate.kind is GateKind.XPOW:
        z = np.array([[1, 0], [0, cmath.exp(-1j * gate.param)]], dtype=complex)
        return _H_MATRIX @ z @ _H_MATRIX
    if gate.kind is GateKind.CNOT:
        return _CNOT_MATRIX.copy()
    if gate.kind is GateKind.ZZ:
        rho = cmath.exp(1j * gate.param)
        return np.diag([rho, rho.conjugate(), rho.conjugate(), rho]).astype(complex)
    raise ValueError(f"unknown gate kind {gate.kind}")


def is_diagonal(gate: Gate) -> bool:
    """Whether the gate matrix is diagonal in the computational basis.

    Decided structurally by kind: Z powers and ZZ are diagonal, H / X powers /
    CNOT are not.
    """
    return gate.kind in _DIAGONAL_KINDS


def build_qaoa_maxcut_circuit(
    graph: ProblemGraph, params: QaoaParams, fused: bool = False
) -> Circuit:
    """Construct the MaxCut ansatz circuit for `graph` at depth `params.p`.

    Layer 0 applies H to every qubit.  Each round then applies the cost layer
    (edges in listed order) followed by the mixer layer (qubits ascending).
    With ``fused=False`` an edge becomes CNOT, ZPow(2*gamma) on the target,
    CNOT, and the mixer is the H ZPow(2*beta) H sandwich.  With ``fused=True``
    an edge becomes a single ZZ(gamma) gate (tracking the e^{-i*gamma} scalar
    in the circuit phase) and the mixer a single XPow(2*beta).
    """
    n = graph.node_count
    gates: list[Gate] = [Gate.h(q) for q in range(n)]
    phase = 1.0 + 0.0j
    for q in range(params.p):
        gamma = params.gammas[q]
        beta = params.betas[q]
        for (i, j) in graph.edges:
            if fused:
                gates.append(Gate.zz(i, j, gamma))
                phase *= cmath.exp(-1j * gamma)
            else:
                gates.append(Gate.cnot(i, j))
                gates.append(Gate.zpow(j, 2.0 * gamma))
                gates.append(Gate.cnot(i, j))
        for k in range(n):
            if fused:
                gates.append(Gate.xpow(k, 2.0 * beta))
            else:
                gates.append(Gate.h(k))
                gates.append(Gate.zpow(k, 2.0 * beta))
                gates.append(Gate.h(k))
    return Circuit(n, tuple(gates), phase)


def fuse_zz(circuit: Circuit) -> Circuit:
    """Rewrite CNOT.ZPow(2g).CNOT into ZZ(g) and H.ZPow(t).H into XPow(t).

    A pattern only matches when no other gate touches the involved qubits
    between its three members.  Each ZZ rewrite multiplies the circuit phase
    by e^{-ig} so the returned circuit's full unitary equals the input's
    exactly.  A single left-to-right scan; overlapping candidates resolve
    greedily in circuit order.  Idempotent on already-fused circuits.
    """
    gates = circuit.gates
    n = len(gates)

    # next_on[(q, i)] = position of the next gate after i acting on qubit q
    positions_on: dict[int, list[int]] = {}
    for i, g in enumerate(gates):
        for q in g.qubits:
            positions_on.setdefault(q, []).append(i)
    next_on: dict[tuple[int, int], int] = {}
    for q, positions in positions_on.items():
        for a, b in zip(positions, positions[1:]):
            next_on[(q, a)] = b

    consumed = [False] * n
    out: list[Gate] = []
    phase = circuit.phase
    for i in range(n):
        if consumed[i]:
            continue
        g = gates[i]
        if g.kind is GateKind.CNOT:
            c, t = g.qubits
            j = next_on.get((t, i))
            k = None if j is None else next_on.get((t, j))
            if (
                j is not None
                and k is not None
                and not consumed[j]
                and not consumed[k]
                and gates[j].kind is GateKind.ZPOW
                and gates[k].kind is GateKind.CNOT
                and gates[k].qubits == (c, t)
                and next_on.get((c, i)) == k
            ):
                gamma = gates[j].param / 2.0
                out.append(Gate.zz(c, t, gamma))
                phase *= cmath.exp(-1j * gamma)
                consumed[i] = consumed[j] = consumed[k] = True
                continue
        elif g.kind is GateKind.H:
            q = g.qubits[0]
            j = next_on.get((q, i))
            k = None if j is None else next_on.get((q, j))
            if (
                j is not None
                and k is not None
                and not consumed[j]
                and not consumed[k]
                and gates[j].kind is GateKind.ZPOW
                and gates[k].kind is GateKind.H
            ):
                out.append(Gate.xpow(q, gates[j].param))
                consumed[i] = consumed[j] = consumed[k] = True
                continue
        out.append(g)
        consumed[i] = True
    return Circuit(circuit.qubit_count, tuple(out), phase)


# --- text formats ---------------------------------------------------------
#
# Graph file:   first line "<node_count> <edge_count>", then one "u v" per line.
# Circuit file: header "qubits <N>"; optional "phase <re> <im>"; then one gate
# per line: H q | ZPOW q t | XPOW q t | CNOT c t | ZZ q1 q2 gamma.


def _content_lines(path) -> list[tuple[int, list[str]]]:
    with open(path, "r", encoding="utf-8") as fh:
        raw = fh.readlines()
    lines = []
    for no, line in enumerate(raw, start=1):
        stripped = line.split("#", 1)[0].strip()
        if stripped:
            lines.append((no, stripped.split()))
    return lines


def _parse_int(path, no: int, token: str, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(path, no, f"expected integer {what}, got {token!r}") from None


def _parse_float(path, no: int, token: str, what: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ParseError(path, no, f"expected number {what}, got {token!r}") from None


def read_graph(path) -> ProblemGraph:
    """Read a ProblemGraph from its text format."""
    lines = _content_lines(path)
    if not lines:
        raise ParseError(path, 1, "empty graph file")
    no, header = lines[0]
    if len(header) != 2:
        raise ParseError(path, no, "header must be '<node_count> <edge_count>'")
    node_count = _parse_int(path, no, header[0], "node count")
    edge_count = _parse_int(path, no, header[1], "edge count")
    if len(lines) - 1 != edge_count:
        raise ParseError(path, no, f"expected {edge_count} edge lines, found {len(lines) - 1}")
    edges = []
    for no, tokens in lines[1:]:
        if len(tokens) != 2:
            raise ParseError(path, no, "edge line must be 'u v'")
        edges.append((_parse_int(path, no, tokens[0], "node"), _parse_int(path, no, tokens[1], "node")))
    try:
        return ProblemGraph(node_count, tuple(edges))
    except ValueError as exc:
        raise ParseError(path, lines[0][0], str(exc)) from None


def write_graph(graph: ProblemGraph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"{graph.node_count} {graph.edge_count}\n")
        for u, v in graph.edges:
            fh.write(f"{u} {v}\n")


_GATE_LINE_SPEC = {
    "H": (GateKind.H, 1, False),
    "ZPOW": (GateKind.ZPOW, 1, True),
    "XPOW": (GateKind.XPOW, 1, True),
    "CNOT": (GateKind.CNOT, 2, False),
    "ZZ": (GateKind.ZZ, 2, True),
}


def read_circuit(path) -> Circuit:
    """Read a Circuit from its text format."""
    lines = _content_lines(path)
    if not lines:
        raise ParseError(path, 1, "empty circuit file")
    no, header = lines[0]
    if len(header) != 2 or header[0].lower() != "qubits":
        raise ParseError(path, no, "header must be 'qubits <N>'")
    qubit_count = _parse_int(path, no, header[1], "qubit count")
    if qubit_count < 1:
        raise ParseError(path, no, "qubit count must be >= 1")

    phase = 1.0 + 0.0j
    body = lines[1:]
    if body and body[0][1][0].lower() == "phase":
        no, tokens = body[0]
        if len(tokens) != 3:
            raise ParseError(path, no, "phase line must be 'phase <re> <im>'")
        phase = complex(
            _parse_float(path, no, tokens[1], "phase real part"),
            _parse_float(path, no, tokens[2], "phase imaginary part"),
        )
        body = body[1:]

    gates = []
    for no, tokens in body:
        keyword = tokens[0].upper()
        if keyword not in _GATE_LINE_SPEC:
            raise ParseError(path, no, f"unknown gate {tokens[0]!r}")
        kind, arity, has_param = _GATE_LINE_SPEC[keyword]
        expected = 1 + arity + (1 if has_param else 0)
        if len(tokens) != expected:
            raise ParseError(path, no, f"{keyword} line needs {expected - 1} argument(s)")
        qubits = tuple(_parse_int(path, no, t, "qubit index") for t in tokens[1 : 1 + arity])
        param = _parse_float(path, no, tokens[-1], "angle") if has_param else None
        try:
            gate = Gate(kind, qubits, param)
        except ValueError as exc:
            raise ParseError(path, no, str(exc)) from None
        if max(qubits) >= qubit_count:
            raise ParseError(path, no, f"qubit index out of range for {qubit_count} qubits")
        gates.append(gate)
    try:
        return Circuit(qubit_count, tuple(gates), phase)
    except ValueError as exc:
        raise ParseError(path, lines[0][0], str(exc)) from None


def write_circuit(circuit: Circuit, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"qubits {circuit.qubit_count}\n")
        if circuit.phase != 1.0 + 0.0j:
            fh.write(f"phase {circuit.phase.real!r} {circuit.phase.imag!r}\n")
        for g in circuit.gates:
            qubits = " ".join(str(q) for q in g.qubits)
            if g.param is None:
                fh.write(f"{g.kind.value} {qubits}\n")
            else:
                fh.write(f"{g.kind.value} {qubits} {g.param!r}\n")
