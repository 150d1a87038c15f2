"""Diagonal-aware tensor-network simulation of QAOA MaxCut amplitudes.

Builds MaxCut ansatz circuits, optionally fuses CNOT-conjugated Z rotations
into ZZ gates, converts circuits to tensor networks that exploit diagonal
gates, finds elimination orders with a randomized-greedy heuristic, and
contracts single amplitudes with brute-force oracles for verification.
"""

from .bench import (
    LAPTOP_WIDTH_BUDGET,
    SUPERCOMPUTER_WIDTH_BUDGET,
    BenchRow,
    BenchSpec,
    parse_bench_spec,
    random_regular_graph,
    read_csv,
    rows_to_csv,
    run_benchmark,
    summarize,
    write_csv,
    write_summary,
)
from .circuit import (
    Circuit,
    Gate,
    GateKind,
    ParseError,
    ProblemGraph,
    QaoaParams,
    build_qaoa_maxcut_circuit,
    fuse_zz,
    gate_matrix,
    is_diagonal,
    read_circuit,
    read_graph,
    write_circuit,
    write_graph,
)
from .contraction import (
    DEFAULT_RANK_CAP,
    RankCapExceeded,
    contract,
    direct_sum,
    statevector,
    statevector_amplitude,
)
from .network import (
    LineGraph,
    NetworkMode,
    Tensor,
    TensorNetwork,
    circuit_to_network,
    line_graph,
    network_stats,
    sliced_tensors,
)
from .ordering import (
    ContractionOrder,
    CostReport,
    contraction_width,
    feasible_max_p,
    greedy_order,
    rgreedy_order,
)
from .pipeline import (
    MODE_ORDER,
    MODES,
    PipelineMode,
    build_circuit,
    build_line_graph,
    build_network,
    default_angles,
    get_mode,
)

__version__ = "0.1.0"
