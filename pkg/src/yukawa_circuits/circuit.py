"""Gate-list circuit representation, JSON and plain-text serialization."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import DomainError

ROTATIONS = ("RX", "RY", "RZ")
FIXED_1Q = ("H", "S", "SDG", "X", "Y", "Z")
GATE_KINDS = ROTATIONS + FIXED_1Q + ("CNOT", "GLOBAL_PHASE")

_INVERSE_FIXED = {"H": "H", "S": "SDG", "SDG": "S", "X": "X", "Y": "Y", "Z": "Z"}

_S2 = 1 / math.sqrt(2)
_FIXED_MATRICES = {
    "H": np.array([[_S2, _S2], [_S2, -_S2]], dtype=complex),
    "S": np.array([[1, 0], [0, 1j]], dtype=complex),
    "SDG": np.array([[1, 0], [0, -1j]], dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class Gate:
    """One gate. ``qubits`` is ``(q,)`` for single-qubit gates,
    ``(control, target)`` for CNOT and empty for GLOBAL_PHASE."""

    kind: str
    qubits: tuple[int, ...] = ()
    angle: float | None = None

    def __post_init__(self):
        kind = self.kind.upper()
        object.__setattr__(self, "kind", kind)
        object.__setattr__(self, "qubits", tuple(int(q) for q in self.qubits))
        if kind not in GATE_KINDS:
            raise DomainError(f"unknown gate kind {self.kind!r}")
        expected = {"CNOT": 2, "GLOBAL_PHASE": 0}.get(kind, 1)
        if len(self.qubits) != expected:
            raise DomainError(f"{kind} acts on {expected} qubit(s), got {self.qubits}")
        if kind == "CNOT" and self.qubits[0] == self.qubits[1]:
            raise DomainError("CNOT control and target must differ")
        if any(q < 0 for q in self.qubits):
            raise DomainError("negative qubit index")
        if kind in ROTATIONS or kind == "GLOBAL_PHASE":
            if self.angle is None or not math.isfinite(self.angle):
                raise DomainError(f"{kind} needs a finite angle")
            object.__setattr__(self, "angle", float(self.angle))
        elif self.angle is not None:
            raise DomainError(f"{kind} takes no angle")

    def inverse(self) -> "Gate":
        if self.kind in ROTATIONS or self.kind == "GLOBAL_PHASE":
            return Gate(self.kind, self.qubits, -self.angle)
        if self.kind == "CNOT":
            return self
        return Gate(_INVERSE_FIXED[self.kind], self.qubits)

    def matrix(self) -> np.ndarray:
        """Local matrix: 2x2 for one-qubit gates, 1x1 phase for GLOBAL_PHASE.

        CNOT returns the 4x4 matrix in the (control, target) basis with the
        control as the high bit.
        """
        if self.kind in _FIXED_MATRICES:
            return _FIXED_MATRICES[self.kind]
        if self.kind == "GLOBAL_PHASE":
            return np.array([[np.exp(1j * self.angle)]])
        if self.kind == "CNOT":
            return np.array([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex)
        c, s = math.cos(self.angle / 2), math.sin(self.angle / 2)
        if self.kind == "RX":
            return np.array([[c, -1j * s], [-1j * s, c]])
        if self.kind == "RY":
            return np.array([[c, -s], [s, c]], dtype=complex)
        return np.array([[c - 1j * s, 0], [0, c + 1j * s]])

    def to_dict(self) -> dict:
        out = {"kind": self.kind, "qubits": list(self.qubits)}
        if self.angle is not None:
            out["angle"] = self.angle
        return out

    def __str__(self) -> str:
        qs = ",".join(str(q) for q in self.qubits)
        if self.angle is None:
            return f"{self.kind} {qs}"
        return f"{self.kind}({self.angle:.12g}) {qs}".rstrip()


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed register; gates apply first to last."""

    n_qubits: int
    gates: tuple[Gate, ...] = field(default_factory=tuple)

    def __post_init__(self):
        if int(self.n_qubits) != self.n_qubits or self.n_qubits < 1:
            raise DomainError(f"circuit width must be a positive integer, got {self.n_qubits}")
        gates = tuple(self.gates)
        for g in gates:
            if any(q >= self.n_qubits for q in g.qubits):
                raise DomainError(f"gate {g} outside register of width {self.n_qubits}")
        object.__setattr__(self, "gates", gates)
        object.__setattr__(self, "_cnots", sum(g.kind == "CNOT" for g in gates))

    @property
    def cnot_count(self) -> int:
        return self._cnots

    def __len__(self) -> int:
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def __add__(self, other: "Circuit") -> "Circuit":
        if not isinstance(other, Circuit):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise DomainError("cannot concatenate circuits of different width")
        return Circuit(self.n_qubits, self.gates + other.gates)

    def inverse(self) -> "Circuit":
        return Circuit(self.n_qubits, tuple(g.inverse() for g in reversed(self.gates)))

    def remap(self, mapping: Sequence[int], n_qubits: int | None = None) -> "Circuit":
        """Relabel qubit ``q`` as ``mapping[q]`` on a register of ``n_qubits``."""
        width = n_qubits if n_qubits is not None else self.n_qubits
        gates = tuple(Gate(g.kind, tuple(mapping[q] for q in g.qubits), g.angle) for g in self.gates)
        return Circuit(width, gates)

    def to_dict(self) -> dict:
        return {"n_qubits": self.n_qubits, "gates": [g.to_dict() for g in self.gates]}

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    @classmethod
    def from_dict(cls, data: dict) -> "Circuit":
        gates = tuple(Gate(d["kind"], tuple(d.get("qubits", ())), d.get("angle")) for d in data["gates"])
        return cls(int(data["n_qubits"]), gates)

    @classmethod
    def from_json(cls, text: str) -> "Circuit":
        return cls.from_dict(json.loads(text))

    def render(self) -> str:
        """One gate per line, suitable for diffing."""
        head = f"# qubits={self.n_qubits} gates={len(self.gates)} cnots={self.cnot_count}"
        return "\n".join([head] + [str(g) for g in self.gates]) + "\n"


class CircuitBuilder:
    """Mutable helper that accumulates gates and freezes into a :class:`Circuit`."""

    def __init__(self, n_qubits: int):
        self.n_qubits = n_qubits
        self._gates: list[Gate] = []

    def add(self, kind: str, *qubits: int, angle: float | None = None) -> "CircuitBuilder":
        self._gates.append(Gate(kind, qubits, angle))
        return self

    def rx(self, q, angle):
        return self.add("RX", q, angle=angle)

    def ry(self, q, angle):
        return self.add("RY", q, angle=angle)

    def rz(self, q, angle):
        return self.add("RZ", q, angle=angle)

    def cnot(self, control, target):
        return self.add("CNOT", control, target)

    def extend(self, gates: Iterable[Gate] | Circuit) -> "CircuitBuilder":
        self._gates.extend(gates)
        return self

    def build(self) -> Circuit:
        return Circuit(self.n_qubits, tuple(self._gates))


def cnot_count(circuit: Circuit) -> int:
    return circuit.cnot_count
