"""Simulator for a Grover-based private database query protocol."""
from .kernels import BACKEND
from .statevec import (
    MeasurementOutcome,
    RegisterShape,
    StateError,
    StateVector,
    hadamard_all,
    measure_subregister,
    prepare_uniform_index,
    probability_of,
)
from .oracles import oracle_d, oracle_k, oracle_p, oracle_s
from .grover import GroverScan, g_operator, grover_retrieve, grover_scan, max_iterations
from .protocol import (
    Database,
    OffsetMessage,
    ProtocolTranscript,
    compute_m,
    run_session,
    step1_key_state,
    step2_measure_offset,
    step3_rotate_encrypt,
    step45_retrieve_decrypt,
)

__version__ = "0.1.0"
