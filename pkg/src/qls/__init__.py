"""Path-interference circuits that load a classical vector into the entangled
index/value state ``sum_i |i>|a_i>`` with logarithmic parallel depth."""

from .circuit import (
    BranchStage,
    DepthReport,
    IndexHadamardStage,
    PathCircuit,
    PhaseStage,
    SwitchStage,
    WriteStage,
    dagger,
    depth_report,
    simulate,
    trace_states,
)
from .gates import (
    Branch,
    Condition,
    PairSet,
    Register,
    SwitchKind,
    apply_index_hadamard,
    apply_phase_flip,
    apply_switch,
    apply_xor_write,
)
from .loader import VectorSpec, build_block, build_loader, build_uL, pad_to_pow2, quantize
from .registers import BasisState, RegisterLayout, make_layout, pack, unpack
from .state import (
    SparseState,
    initial_state,
    inner_product,
    norm,
    prune,
    target_state,
    uniform_index_state,
)
from .textformat import CircuitParseError, parse, serialize
from .verify import (
    ancilla_off_probability,
    classical_load_steps,
    dense_unitary,
    fidelity,
    sample,
    unitarity_residual,
)

__version__ = "0.1.0"
