"""Quantum circuits for the single-site Yukawa model: Pauli encodings,
circuit synthesis, Pauli-string ordering and statevector dynamics."""

from .circuit import Circuit, CircuitBuilder, Gate, cnot_count
from .dynamics import (
    TimeSeries,
    analytic_boson_number,
    noninteracting_predicate,
    particle_numbers,
    quench_series,
    time_grid,
)
from .errors import CapacityError, DomainError
from .model import (
    ModelParams,
    boson_creation_operator,
    boson_displacement,
    boson_number_operator,
    build_hamiltonian,
    effective_coupling,
    generate_pauli_strings,
    total_hamiltonian,
)
from .order_opt import (
    OrderingGraph,
    Tour,
    build_ordering_graph,
    christofides,
    cnot_upper_bound,
    cost_report,
    held_karp,
)
from .pauli import PauliString, PauliSum, hamming_distance, hamming_weight
from .sim import (
    Statevector,
    apply_circuit,
    circuit_unitary,
    exact_propagator,
    expectation,
    operator_distance,
)
from .synth import (
    STAR,
    STAR_ANCILLA,
    compressed_two_qubit_circuit,
    euler_angles,
    gray_code_order,
    synthesize_ordered_strings,
    trotter_circuit,
    trotter_step_three_qubit,
)

__version__ = "0.1.0"
