"""
Qubit encodings and the single-site Yukawa Hamiltonian.

Register layout: qubit 0 holds the fermion (charge-zero sector, one qubit),
qubit ``j + 1`` holds binary digit ``j`` (weight ``2**j``) of the boson Fock
index. The boson register on its own uses qubits ``0 .. N-1`` for digits
``0 .. N-1``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import DomainError
from .pauli import PauliString, PauliSum, single_qubit_sum, tensor_all

__all__ = [
    "ModelParams",
    "effective_coupling",
    "boson_number_operator",
    "boson_creation_operator",
    "boson_annihilation_operator",
    "boson_displacement",
    "fermion_charge_operator",
    "fermion_charge_operator_unreduced",
    "fermion_number_operator",
    "build_hamiltonian",
    "total_hamiltonian",
    "generate_pauli_strings",
    "even_y_strings",
    "string_count",
]


@dataclass(frozen=True)
class ModelParams:
    """Physical inputs: fermion mass ``M``, boson mass ``m``, coupling ``eta``
    and the boson register width ``n_boson_qubits`` (cutoff ``2**N - 1``)."""

    M: float
    m: float
    eta: float
    n_boson_qubits: int = 1

    def __post_init__(self):
        if not (self.M > 0 and math.isfinite(self.M)):
            raise DomainError(f"fermion mass must be positive, got {self.M}")
        if not (self.m > 0 and math.isfinite(self.m)):
            raise DomainError(f"boson mass must be positive, got {self.m}")
        if not math.isfinite(self.eta):
            raise DomainError(f"coupling must be finite, got {self.eta}")
        if int(self.n_boson_qubits) != self.n_boson_qubits or self.n_boson_qubits < 1:
            raise DomainError(f"boson register width must be >= 1, got {self.n_boson_qubits}")

    @classmethod
    def from_ratios(cls, mass_ratio: float, coupling_ratio: float, n_boson_qubits: int = 1,
                    m: float = 1.0) -> "ModelParams":
        """Build from ``M/m`` and ``eta/m`` with the boson mass as the unit."""
        return cls(M=mass_ratio * m, m=m, eta=coupling_ratio * m, n_boson_qubits=n_boson_qubits)

    @property
    def cutoff(self) -> int:
        return 2 ** self.n_boson_qubits - 1

    @property
    def n_qubits(self) -> int:
        return self.n_boson_qubits + 1

    @property
    def omega(self) -> float:
        """Rabi frequency ``sqrt(m^2 + eta^2)`` of the one-boson truncation."""
        return math.hypot(self.m, self.eta)

    @property
    def t0(self) -> float:
        """Time unit ``2 pi / omega`` used on every dynamics plot."""
        return 2 * math.pi / self.omega


def effective_coupling(m: float, g: float, beta_v: float) -> float:
    """Effective single-site coupling ``4 m g beta^(3/2)``."""
    if m <= 0 or beta_v <= 0:
        raise DomainError("boson mass and velocity factor must be positive")
    return 4.0 * m * g * beta_v ** 1.5


def _check_width(n: int) -> None:
    if int(n) != n or n < 1:
        raise DomainError(f"boson register width must be a positive integer, got {n}")


def boson_number_operator(n: int) -> PauliSum:
    """``b†b = (1/2) sum_j 2^j (I - Z_j)`` on an ``n``-qubit boson register."""
    _check_width(n)
    terms = [(0.5 * (2 ** n - 1), PauliString.identity(n))]
    for j in range(n):
        terms.append((-0.5 * 2 ** j, PauliString.single("Z", j, n)))
    return PauliSum(terms, n_qubits=n)


def _bit(k: int, j: int) -> int:
    return (k >> j) & 1


def boson_creation_operator(n: int) -> PauliSum:
    """Truncated creation operator ``b†`` on ``n`` qubits.

    Sums ``sqrt(k) |k><k-1|`` for ``k = 1 .. 2^n - 1``; each projector factors
    into per-digit operators. Digits above the lowest set bit of ``k`` are
    unchanged (``I ± Z``), the lowest set bit is raised (``X - iY``) and the
    digits below it are lowered (``X + iY``).
    """
    _check_width(n)
    total = PauliSum.zero(n)
    for k in range(1, 2 ** n):
        factors = []
        for j in range(n):
            sign = -1 if _bit(k, j) else 1
            if any(_bit(k, i) for i in range(j)):
                factors.append(single_qubit_sum({"I": 1, "Z": sign}))
            else:
                factors.append(single_qubit_sum({"X": 1, "Y": sign * 1j}))
        total = total + math.sqrt(k) * tensor_all(factors)
    return total * 0.5 ** n


def boson_annihilation_operator(n: int) -> PauliSum:
    return boson_creation_operator(n).adjoint()


def boson_displacement(n: int) -> PauliSum:
    """Hermitian ``b + b†``; the imaginary parts cancel exactly."""
    bdag = boson_creation_operator(n)
    return (bdag + bdag.adjoint()).real()


def fermion_charge_operator() -> PauliSum:
    """``a†a + c†c - 1`` reduced to the charge-zero sector: ``-Z``."""
    return PauliSum.from_labels({"Z": -1.0})


def fermion_charge_operator_unreduced() -> PauliSum:
    """``a†a + c†c - 1 = (IZ + ZI)/2`` on the two Jordan-Wigner orbitals."""
    return PauliSum.from_labels({"IZ": 0.5, "ZI": 0.5})


def fermion_number_operator() -> PauliSum:
    """Fermion occupation of the reduced qubit, ``(I - Z)/2``."""
    return PauliSum.from_labels({"I": 0.5, "Z": -0.5})


def build_hamiltonian(params: ModelParams) -> tuple[PauliSum, PauliSum]:
    """Free and interaction parts ``(H0, Hint)`` on ``N + 1`` qubits.

    ``H0 = M (a†a + c†c) + m b†b`` with its constant dropped;
    ``Hint = (eta/2) (b + b†) ⊗ (-Z_fermion)``.
    """
    n = params.n_boson_qubits
    width = n + 1
    h0_terms = [(-params.M, PauliString.single("Z", 0, width))]
    for j in range(n):
        h0_terms.append((-0.5 * params.m * 2 ** j, PauliString.single("Z", j + 1, width)))
    h0 = PauliSum(h0_terms, n_qubits=width)
    hint = (0.5 * params.eta) * boson_displacement(n).tensor(fermion_charge_operator())
    for part in (h0, hint):
        if not part.is_hermitian():
            raise AssertionError("Hamiltonian construction lost hermiticity")
    return h0, hint.real()


def total_hamiltonian(params: ModelParams) -> PauliSum:
    h0, hint = build_hamiltonian(params)
    return h0 + hint


def even_y_strings(length: int) -> list[PauliString]:
    """All strings over {X, Y} of the given length with an even number of Y."""
    _check_width(length)
    out = []
    for letters in itertools.product("XY", repeat=length):
        if letters.count("Y") % 2 == 0:
            out.append(PauliString(letters))
    return sorted(out)


def generate_pauli_strings(n: int) -> list[PauliString]:
    """Pauli strings supporting ``b + b†`` on ``n`` boson qubits.

    Built by the recurrence ``S_1 = {X}``, ``S_{n+1} = {I⊗P} ∪ {Z⊗P} ∪ E_{n+1}``
    where the new digit is the most significant qubit and ``E_{n+1}`` is the
    even-Y set over {X, Y}. Returned sorted by label.
    """
    _check_width(n)
    identity = PauliString(("I",))
    zed = PauliString(("Z",))
    strings = [PauliString(("X",))]
    for size in range(1, n):
        grown = [identity.tensor(p) for p in strings] + [zed.tensor(p) for p in strings]
        grown += even_y_strings(size + 1)
        strings = grown
    return sorted(strings)


def string_count(n: int) -> int:
    """Closed-form size ``n 2^(n-1)`` of the displacement support."""
    _check_width(n)
    return n * 2 ** (n - 1)
