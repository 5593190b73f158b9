"""
Symbolic Pauli algebra over {I, X, Y, Z}^n with complex coefficients.

Qubit 0 is the least-significant qubit. Labels are printed with the
highest-index qubit leftmost, so ``"XZ"`` means X on qubit 1 and Z on qubit 0.
Dense matrices use the same convention: basis index bit j is qubit j.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Mapping

import numpy as np

from .errors import CapacityError, DomainError

PAULI_LETTERS = "IXYZ"

MAX_DENSE_QUBITS = 12
"""Largest register converted to a dense matrix."""

DROP_TOLERANCE = 1e-14
"""Coefficients at or below this magnitude are dropped on canonicalization."""

# single-qubit products: (a, b) -> (phase, a*b)
_PRODUCT = {
    ("I", "I"): (1, "I"), ("I", "X"): (1, "X"), ("I", "Y"): (1, "Y"), ("I", "Z"): (1, "Z"),
    ("X", "I"): (1, "X"), ("X", "X"): (1, "I"), ("X", "Y"): (1j, "Z"), ("X", "Z"): (-1j, "Y"),
    ("Y", "I"): (1, "Y"), ("Y", "X"): (-1j, "Z"), ("Y", "Y"): (1, "I"), ("Y", "Z"): (1j, "X"),
    ("Z", "I"): (1, "Z"), ("Z", "X"): (1j, "Y"), ("Z", "Y"): (-1j, "X"), ("Z", "Z"): (1, "I"),
}


@dataclass(frozen=True, order=False)
class PauliString:
    """A tensor product of single-qubit Paulis.

    ``ops[q]`` is the letter acting on qubit ``q``.
    """

    ops: tuple[str, ...]

    def __post_init__(self):
        ops = tuple(self.ops)
        if len(ops) < 1:
            raise DomainError("a Pauli string needs at least one qubit")
        for letter in ops:
            if letter not in PAULI_LETTERS:
                raise DomainError(f"invalid Pauli letter {letter!r}")
        object.__setattr__(self, "ops", ops)

    @classmethod
    def from_label(cls, label: str, msb_first: bool = True) -> "PauliString":
        """Parse a label such as ``"XZI"``.

        With ``msb_first`` (the package convention) the leftmost letter acts on
        the highest qubit; pass ``False`` to read qubit 0 first.
        """
        label = label.strip().upper()
        letters = tuple(reversed(label)) if msb_first else tuple(label)
        return cls(letters)

    @classmethod
    def identity(cls, n_qubits: int) -> "PauliString":
        return cls(("I",) * n_qubits)

    @classmethod
    def single(cls, letter: str, qubit: int, n_qubits: int) -> "PauliString":
        if not 0 <= qubit < n_qubits:
            raise DomainError(f"qubit {qubit} outside register of width {n_qubits}")
        ops = ["I"] * n_qubits
        ops[qubit] = letter
        return cls(tuple(ops))

    @property
    def n_qubits(self) -> int:
        return len(self.ops)

    @property
    def label(self) -> str:
        return "".join(reversed(self.ops))

    def __str__(self) -> str:
        return self.label

    def __repr__(self) -> str:
        return f"PauliString({self.label!r})"

    def __getitem__(self, qubit: int) -> str:
        return self.ops[qubit]

    def __len__(self) -> int:
        return len(self.ops)

    def __lt__(self, other: "PauliString") -> bool:
        return self.label < other.label

    def is_identity(self) -> bool:
        return all(p == "I" for p in self.ops)

    def support(self) -> tuple[int, ...]:
        """Qubits carrying a non-identity letter, ascending."""
        return tuple(q for q, p in enumerate(self.ops) if p != "I")

    def tensor(self, low: "PauliString") -> "PauliString":
        """``self ⊗ low``: ``low`` keeps qubits 0.., ``self`` is shifted above it."""
        return PauliString(low.ops + self.ops)

    def reversed(self) -> "PauliString":
        """Same letters with the qubit order mirrored."""
        return PauliString(tuple(reversed(self.ops)))

    def multiply(self, other: "PauliString") -> tuple[complex, "PauliString"]:
        if self.n_qubits != other.n_qubits:
            raise DomainError("Pauli strings of different length")
        phase: complex = 1
        out = []
        for a, b in zip(self.ops, other.ops):
            p, c = _PRODUCT[a, b]
            phase *= p
            out.append(c)
        return phase, PauliString(tuple(out))

    def to_matrix(self) -> np.ndarray:
        return _string_matrix(self, _check_dim(self.n_qubits))


def hamming_distance(p1: PauliString, p2: PauliString) -> int:
    """Number of qubits on which two strings carry different letters."""
    if p1.n_qubits != p2.n_qubits:
        raise DomainError(f"length mismatch: {p1.n_qubits} vs {p2.n_qubits}")
    return sum(a != b for a, b in zip(p1.ops, p2.ops))


def hamming_weight(p: PauliString) -> int:
    """Number of non-identity letters."""
    return sum(a != "I" for a in p.ops)


def _check_dim(n_qubits: int) -> int:
    if n_qubits > MAX_DENSE_QUBITS:
        raise CapacityError(
            f"dense matrix of {n_qubits} qubits exceeds the cap of {MAX_DENSE_QUBITS}"
        )
    return 1 << n_qubits


def _string_matrix(p: PauliString, dim: int) -> np.ndarray:
    xmask = zmask = 0
    n_y = 0
    for q, letter in enumerate(p.ops):
        if letter in "XY":
            xmask |= 1 << q
        if letter in "YZ":
            zmask |= 1 << q
        n_y += letter == "Y"
    cols = np.arange(dim)
    rows = cols ^ xmask
    # Y = i X Z, so each column picks up i^{#Y} (-1)^{popcount(col & zmask)}
    parity = np.zeros(dim, dtype=np.int64)
    masked = cols & zmask
    while masked.any():
        parity ^= masked & 1
        masked >>= 1
    values = (1j ** n_y) * (1 - 2 * parity)
    out = np.zeros((dim, dim), dtype=complex)
    out[rows, cols] = values
    return out


class PauliSum:
    """Canonical linear combination of equal-length Pauli strings.

    Duplicate strings are merged and near-zero coefficients dropped on
    construction; terms are kept sorted by label.
    """

    __slots__ = ("_terms", "_n_qubits")

    def __init__(self, terms: Mapping[PauliString, complex] | Iterable[tuple[complex, PauliString]] = (),
                 n_qubits: int | None = None):
        merged: dict[PauliString, complex] = {}
        items = terms.items() if isinstance(terms, Mapping) else ((s, c) for c, s in terms)
        for string, coeff in items:
            if not isinstance(coeff, Number):
                raise DomainError(f"coefficient {coeff!r} is not a number")
            coeff = complex(coeff)
            if not (math.isfinite(coeff.real) and math.isfinite(coeff.imag)):
                raise DomainError(f"non-finite coefficient {coeff!r}")
            if n_qubits is None:
                n_qubits = string.n_qubits
            elif string.n_qubits != n_qubits:
                raise DomainError("all strings in a PauliSum must have equal length")
            merged[string] = merged.get(string, 0j) + coeff
        if n_qubits is None:
            raise DomainError("an empty PauliSum needs an explicit n_qubits")
        self._n_qubits = int(n_qubits)
        self._terms = tuple(
            (s, merged[s]) for s in sorted(merged) if abs(merged[s]) > DROP_TOLERANCE
        )

    @classmethod
    def from_labels(cls, pairs: Mapping[str, complex]) -> "PauliSum":
        return cls({PauliString.from_label(k): v for k, v in pairs.items()})

    @classmethod
    def from_string(cls, string: PauliString, coeff: complex = 1.0) -> "PauliSum":
        return cls({string: coeff})

    @classmethod
    def zero(cls, n_qubits: int) -> "PauliSum":
        return cls({}, n_qubits=n_qubits)

    @classmethod
    def identity(cls, n_qubits: int, coeff: complex = 1.0) -> "PauliSum":
        return cls({PauliString.identity(n_qubits): coeff})

    @property
    def n_qubits(self) -> int:
        return self._n_qubits

    @property
    def terms(self) -> tuple[tuple[PauliString, complex], ...]:
        return self._terms

    def __iter__(self):
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def strings(self) -> list[PauliString]:
        return [s for s, _ in self._terms]

    def support(self) -> set[PauliString]:
        return {s for s, _ in self._terms}

    def coefficient(self, string: PauliString | str) -> complex:
        if isinstance(string, str):
            string = PauliString.from_label(string)
        for s, c in self._terms:
            if s == string:
                return c
        return 0j

    def as_dict(self) -> dict[str, complex]:
        return {s.label: c for s, c in self._terms}

    def __eq__(self, other) -> bool:
        if not isinstance(other, PauliSum):
            return NotImplemented
        return self._n_qubits == other._n_qubits and self._terms == other._terms

    def __hash__(self):
        return hash((self._n_qubits, self._terms))

    def isclose(self, other: "PauliSum", atol: float = 1e-12) -> bool:
        if self._n_qubits != other._n_qubits:
            return False
        a, b = dict(self._terms), dict(other._terms)
        return all(abs(a.get(k, 0) - b.get(k, 0)) <= atol for k in set(a) | set(b))

    def _coerce(self, other) -> "PauliSum":
        if isinstance(other, PauliSum):
            if other._n_qubits != self._n_qubits:
                raise DomainError("PauliSum width mismatch")
            return other
        if isinstance(other, Number):
            return PauliSum.identity(self._n_qubits, other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return PauliSum(_chain(self, other), n_qubits=self._n_qubits)

    __radd__ = __add__

    def __neg__(self):
        return PauliSum({s: -c for s, c in self._terms}, n_qubits=self._n_qubits)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Number):
            return PauliSum({s: c * other for s, c in self._terms}, n_qubits=self._n_qubits)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out: list[tuple[complex, PauliString]] = []
        for s1, c1 in self._terms:
            for s2, c2 in other._terms:
                phase, s = s1.multiply(s2)
                out.append((phase * c1 * c2, s))
        return PauliSum(out, n_qubits=self._n_qubits)

    def __rmul__(self, other):
        if isinstance(other, Number):
            return self * other
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, Number):
            return self * (1 / other)
        return NotImplemented

    def tensor(self, low: "PauliSum") -> "PauliSum":
        """``self ⊗ low`` with ``low`` on the lower qubits."""
        out = [(c1 * c2, s1.tensor(s2)) for s1, c1 in self._terms for s2, c2 in low._terms]
        return PauliSum(out, n_qubits=self._n_qubits + low._n_qubits)

    def adjoint(self) -> "PauliSum":
        return PauliSum({s: c.conjugate() for s, c in self._terms}, n_qubits=self._n_qubits)

    def is_hermitian(self, atol: float = 1e-12) -> bool:
        return all(abs(c.imag) <= atol for _, c in self._terms)

    def real(self) -> "PauliSum":
        """Copy with imaginary residues stripped; use only after checking hermiticity."""
        return PauliSum({s: c.real for s, c in self._terms}, n_qubits=self._n_qubits)

    def to_matrix(self) -> np.ndarray:
        return pauli_to_matrix(self)

    def to_json(self) -> str:
        return json.dumps(
            [{"coeff_re": c.real, "coeff_im": c.imag, "string": s.label} for s, c in self._terms]
        )

    @classmethod
    def from_json(cls, text: str, n_qubits: int | None = None) -> "PauliSum":
        records = json.loads(text)
        return cls(
            [(complex(r["coeff_re"], r["coeff_im"]), PauliString.from_label(r["string"]))
             for r in records],
            n_qubits=n_qubits,
        )

    def __repr__(self) -> str:
        if not self._terms:
            return f"PauliSum(0, n_qubits={self._n_qubits})"
        parts = []
        for s, c in self._terms:
            coeff = f"{c.real:.6g}" if abs(c.imag) <= 1e-15 else f"({c.real:.6g}{c.imag:+.6g}j)"
            parts.append(f"{coeff}*{s.label}")
        return " + ".join(parts)


def _chain(a: PauliSum, b: PauliSum):
    for s, c in a.terms:
        yield c, s
    for s, c in b.terms:
        yield c, s


def pauli_to_matrix(op: PauliSum | PauliString) -> np.ndarray:
    """Dense ``2^n x 2^n`` matrix of a Pauli string or sum."""
    if isinstance(op, PauliString):
        return op.to_matrix()
    dim = _check_dim(op.n_qubits)
    out = np.zeros((dim, dim), dtype=complex)
    for s, c in op.terms:
        out += c * _string_matrix(s, dim)
    return out


def single_qubit_sum(coeffs: Mapping[str, complex]) -> PauliSum:
    """One-qubit sum from a letter->coefficient map, e.g. ``{"X": .5, "Y": .5j}``."""
    return PauliSum({PauliString((k,)): v for k, v in coeffs.items()}, n_qubits=1)


def tensor_all(factors: Iterable[PauliSum]) -> PauliSum:
    """Tensor product of one-or-more sums, first factor on qubit 0."""
    factors = list(factors)
    if not factors:
        raise DomainError("tensor_all needs at least one factor")
    out = factors[0]
    for f in factors[1:]:
        out = f.tensor(out)
    return out
