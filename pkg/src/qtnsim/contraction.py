"""Bucket-elimination contraction plus brute-force verification oracles.

`contract` eliminates one variable at a time: all tensors containing it are
multiplied together (aligned on the union of their variables) and the
variable summed out.  `direct_sum` evaluates the same sum by enumerating
every assignment of the contracted variables, and `statevector_amplitude`
replays the circuit on a dense state vector; all three must agree.
"""

from __future__ import annotations

import numpy as np

from .circuit import Circuit, gate_matrix
from .network import TensorNetwork, sliced_tensors
from .ordering import ContractionOrder

__all__ = [
    "DEFAULT_RANK_CAP",
    "RankCapExceeded",
    "contract",
    "direct_sum",
    "statevector",
    "statevector_amplitude",
]

DEFAULT_RANK_CAP = 30
_DIRECT_SUM_MAX_VARIABLES = 24
_STATEVECTOR_MAX_QUBITS = 24


class RankCapExceeded(RuntimeError):
    """An intermediate tensor would exceed the rank cap; contraction aborted
    before allocation."""

    def __init__(self, rank: int, cap: int):
        super().__init__(f"intermediate of rank {rank} exceeds rank cap {cap}")
        self.rank = rank
        self.cap = cap


def _product(vars_a, data_a, vars_b, data_b):
    """Elementwise product aligned on the union of the two variable tuples."""
    seen = set(vars_a)
    out_vars = vars_a + tuple(v for v in vars_b if v not in seen)
    label = {v: i for i, v in enumerate(out_vars)}
    data = np.einsum(
        data_a,
        [label[v] for v in vars_a],
        data_b,
        [label[v] for v in vars_b],
        list(range(len(out_vars))),
    )
    return out_vars, data


def _contract_with_ranks(
    network: TensorNetwork, order: ContractionOrder, rank_cap: int
) -> tuple[complex, list[int]]:
    unfixed = network.unfixed_variables()
    if sorted(order.sequence) != list(unfixed):
        raise ValueError("order is not a permutation of the network's unfixed variables")

    live: dict[int, tuple[tuple[int, ...], np.ndarray]] = {}
    by_var: dict[int, set[int]] = {v: set() for v in unfixed}
    next_id = 0
    for t in sliced_tensors(network):
        live[next_id] = (t.variables, t.data)
        for v in t.variables:
            by_var[v].add(next_id)
        next_id += 1

    scalar = 1.0 + 0.0j
    ranks: list[int] = []
    for v in order.sequence:
        bucket = sorted(by_var.pop(v))
        if not bucket:
            # variable appears in no tensor: summing an empty product over it
            scalar *= 2.0
            ranks.append(0)
            continue
        union: dict[int, None] = {}
        for tid in bucket:
            union.update(dict.fromkeys(live[tid][0]))
        result_rank = len(union) - 1
        if result_rank > rank_cap:
            raise RankCapExceeded(result_rank, rank_cap)
        ranks.append(result_rank)

        vars_acc, data_acc = live[bucket[0]]
        for tid in bucket[1:]:
            vars_b, data_b = live[tid]
            vars_acc, data_acc = _product(vars_acc, data_acc, vars_b, data_b)
        axis = vars_acc.index(v)
        data_new = data_acc.sum(axis=axis)
        vars_new = vars_acc[:axis] + vars_acc[axis + 1 :]

        for tid in bucket:
            vars_t, _ = live.pop(tid)
            for u in vars_t:
                if u != v:
                    by_var[u].discard(tid)
        live[next_id] = (vars_new, data_new)
        for u in vars_new:
            by_var[u].add(next_id)
        next_id += 1

    for vars_t, data_t in live.values():
        assert vars_t == (), "non-scalar tensor survived a full elimination"
        scalar *= complex(data_t)
    return scalar, ranks


def contract(
    network: TensorNetwork, order: ContractionOrder, rank_cap: int = DEFAULT_RANK_CAP
) -> complex:
    """Contract all unfixed variables along `order`; returns the amplitude.

    Raises RankCapExceeded before allocating any intermediate whose rank
    would exceed `rank_cap`.
    """
    value, _ = _contract_with_ranks(network, order, rank_cap)
    return value


def direct_sum(network: TensorNetwork, max_variables: int = _DIRECT_SUM_MAX_VARIABLES) -> complex:
    """Evaluate the contraction by enumerating all 2^q variable assignments.

    Deliberately independent of `contract`: every Feynman path is evaluated
    as a plain product of tensor entries.  Rejects q > `max_variables`.
    """
    unfixed = network.unfixed_variables()
    q = len(unfixed)
    if q > max_variables:
        raise ValueError(f"direct_sum limited to {max_variables} variables, network has {q}")

    shift = {v: q - 1 - k for k, v in enumerate(unfixed)}
    tensors = sliced_tensors(network)
    total = 0.0 + 0.0j
    chunk = 1 << min(q, 20)
    for start in range(0, 1 << q, chunk):
        codes = np.arange(start, start + chunk, dtype=np.uint64)
        values = np.ones(len(codes), dtype=complex)
        for t in tensors:
            index = np.zeros(len(codes), dtype=np.int64)
            for v in t.variables:
                index = (index << 1) | ((codes >> np.uint64(shift[v])) & np.uint64(1)).astype(
                    np.int64
                )
            values *= t.data.reshape(-1)[index]
        total += values.sum()
    return complex(total)


def statevector(circuit: Circuit) -> np.ndarray:
    """Dense state (phase included) from applying the circuit to |0...0>.

    Axis k of the returned (2,)*N array is qubit k; flattened in C order the
    index of a bitstring has qubit 0 as its most significant bit.
    """
    n = circuit.qubit_count
    if n > _STATEVECTOR_MAX_QUBITS:
        raise ValueError(f"statevector limited to {_STATEVECTOR_MAX_QUBITS} qubits, got {n}")
    state = np.zeros((2,) * n, dtype=complex)
    state[(0,) * n] = 1.0
    for gate in circuit.gates:
        matrix = gate_matrix(gate)
        if len(gate.qubits) == 1:
            q = gate.qubits[0]
            state = np.tensordot(matrix, state, axes=([1], [q]))
            state = np.moveaxis(state, 0, q)
        else:
            a, b = gate.qubits
            state = np.tensordot(matrix.reshape(2, 2, 2, 2), state, axes=([2, 3], [a, b]))
            state = np.moveaxis(state, (0, 1), (a, b))
    return state * circuit.phase


def statevector_amplitude(circuit: Circuit, bits: str) -> complex:
    """<bits|circuit|0...0> via dense state-vector evolution (bit k = qubit k)."""
    n = circuit.qubit_count
    if len(bits) != n or any(c not in "01" for c in bits):
        raise ValueError(f"bits must be a length-{n} string over 0/1, got {bits!r}")
    state = statevector(circuit)
    return complex(state[tuple(int(c) for c in bits)])
