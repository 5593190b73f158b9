"""Pauli algebra, boson encodings and Hamiltonian construction."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from yukawa_circuits.errors import DomainError
from yukawa_circuits.model import (
    ModelParams,
    boson_annihilation_operator,
    boson_creation_operator,
    boson_displacement,
    boson_number_operator,
    build_hamiltonian,
    effective_coupling,
    even_y_strings,
    fermion_charge_operator,
    fermion_charge_operator_unreduced,
    generate_pauli_strings,
    string_count,
)
from yukawa_circuits.pauli import PauliString, PauliSum, hamming_distance, hamming_weight

labels = st.text(alphabet="IXYZ", min_size=1, max_size=5)


def ladder_matrix(n):
    """Oracle: sqrt(k) |k><k-1| on the binary Fock register."""
    dim = 2 ** n
    out = np.zeros((dim, dim))
    for k in range(1, dim):
        out[k, k - 1] = math.sqrt(k)
    return out


# ---- Pauli strings ---------------------------------------------------------

def test_label_order_is_msb_first():
    p = PauliString.from_label("XZ")
    assert p[0] == "Z" and p[1] == "X"
    assert p.label == "XZ"
    assert PauliString.from_label("XZ", msb_first=False).label == "ZX"


def test_single_qubit_matrices():
    z = PauliString.from_label("Z").to_matrix()
    y = PauliString.from_label("Y").to_matrix()
    assert np.allclose(z, np.diag([1, -1]))
    assert np.allclose(y, [[0, -1j], [1j, 0]])


def test_matrix_puts_qubit0_on_low_bit():
    # Z on qubit 0 flips sign on odd indices
    m = PauliString.from_label("IZ").to_matrix()
    assert np.allclose(np.diag(m), [1, -1, 1, -1])


def test_invalid_letters_rejected():
    with pytest.raises(DomainError):
        PauliString.from_label("XQ")


@given(labels, labels)
def test_hamming_is_metric(a, b):
    n = max(len(a), len(b))
    pa, pb = PauliString.from_label(a.rjust(n, "I")), PauliString.from_label(b.rjust(n, "I"))
    assert hamming_distance(pa, pb) == hamming_distance(pb, pa)
    assert (hamming_distance(pa, pb) == 0) == (pa == pb)
    assert hamming_distance(pa, PauliString.identity(n)) == hamming_weight(pa)


@given(st.integers(1, 4).flatmap(lambda n: st.tuples(*[st.text("IXYZ", min_size=n, max_size=n)] * 3)))
def test_hamming_triangle_inequality(triple):
    a, b, c = (PauliString.from_label(s) for s in triple)
    assert hamming_distance(a, c) <= hamming_distance(a, b) + hamming_distance(b, c)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(*[st.text("IXYZ", min_size=n, max_size=n)] * 2)))
def test_string_product_matches_dense(pair):
    a, b = (PauliString.from_label(s) for s in pair)
    phase, c = a.multiply(b)
    assert np.allclose(a.to_matrix() @ b.to_matrix(), phase * c.to_matrix())


def test_tensor_places_argument_low():
    a, b = PauliString.from_label("X"), PauliString.from_label("Z")
    assert a.tensor(b).label == "XZ"
    assert np.allclose(a.tensor(b).to_matrix(), np.kron(a.to_matrix(), b.to_matrix()))


# ---- Pauli sums ------------------------------------------------------------

def test_sum_merges_and_drops_zeros():
    s = PauliSum.from_labels({"XZ": 1.0}) + PauliSum.from_labels({"XZ": -1.0, "ZZ": 2})
    assert s.as_dict() == {"ZZ": 2}


def test_sum_product_and_adjoint():
    a = PauliSum.from_labels({"X": 1, "Y": 1j})
    assert np.allclose((a * a).to_matrix(), a.to_matrix() @ a.to_matrix())
    assert np.allclose(a.adjoint().to_matrix(), a.to_matrix().conj().T)
    assert not a.is_hermitian()


def test_sum_json_roundtrip():
    s = PauliSum.from_labels({"XY": 0.5 - 0.25j, "ZI": 2.0})
    assert PauliSum.from_json(s.to_json()) == s


def test_sum_width_mismatch():
    with pytest.raises(DomainError):
        PauliSum.from_labels({"X": 1}) + PauliSum.from_labels({"XX": 1})


# ---- boson encoding --------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_creation_matches_ladder(n):
    assert np.allclose(boson_creation_operator(n).to_matrix(), ladder_matrix(n), atol=1e-12)
    assert np.allclose(boson_annihilation_operator(n).to_matrix(), ladder_matrix(n).T, atol=1e-12)


def test_creation_one_qubit_terms():
    assert boson_creation_operator(1).isclose(PauliSum.from_labels({"X": 0.5, "Y": -0.5j}))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_number_operator_diagonal(n):
    assert np.allclose(boson_number_operator(n).to_matrix(), np.diag(np.arange(2 ** n)))


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_displacement_support_equals_generated_strings(n):
    assert sorted(boson_displacement(n).support()) == generate_pauli_strings(n)


def test_displacement_spectrum_two_qubits():
    ev = np.linalg.eigvalsh(boson_displacement(2).to_matrix())
    r = [math.sqrt(3 + math.sqrt(6)), math.sqrt(3 - math.sqrt(6))]
    assert np.allclose(ev, sorted([-r[0], -r[1], r[1], r[0]]), atol=1e-10)


# ---- strings ---------------------------------------------------------------

def test_small_string_sets():
    assert [p.label for p in generate_pauli_strings(1)] == ["X"]
    # labels are msb first; the lowest-qubit-first reading is {XI, XZ, XX, YY}
    assert {p.label for p in generate_pauli_strings(2)} == {"IX", "ZX", "XX", "YY"}
    assert {p.reversed().label for p in generate_pauli_strings(2)} == {"XI", "XZ", "XX", "YY"}


@pytest.mark.parametrize("n", range(1, 9))
def test_string_count(n):
    strings = generate_pauli_strings(n)
    assert len(strings) == len(set(strings)) == string_count(n) == n * 2 ** (n - 1)


def test_even_y_strings():
    assert [p.label for p in even_y_strings(2)] == ["XX", "YY"]
    assert all(p.label.count("Y") % 2 == 0 for p in even_y_strings(5))
    assert len(even_y_strings(5)) == 16


# ---- Hamiltonian -----------------------------------------------------------

def test_one_qubit_hamiltonian_terms():
    h0, hint = build_hamiltonian(ModelParams(M=7, m=1, eta=1.7))
    assert h0.isclose(PauliSum.from_labels({"IZ": -7, "ZI": -0.5}))
    assert hint.isclose(PauliSum.from_labels({"XZ": -0.85}))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_hamiltonian_matches_dense_construction(n):
    p = ModelParams(M=2.5, m=1.3, eta=0.7, n_boson_qubits=n)
    h0, hint = build_hamiltonian(p)
    a = ladder_matrix(n)
    nb = a @ a.T
    zf = np.diag([1, -1])
    ident_b = np.eye(2 ** n)
    # dense free part: -M Z_f + m (b†b - Λ/2), constant dropped
    free = -p.M * np.kron(ident_b, zf) + p.m * np.kron(nb - (2 ** n - 1) / 2 * ident_b, np.eye(2))
    inter = p.eta / 2 * np.kron(a + a.T, -zf)
    assert np.allclose(h0.to_matrix(), free)
    assert np.allclose(hint.to_matrix(), inter)


def test_charge_operator_reduction():
    # charge zero means equal occupations: the sector is {|00>, |11>}, with
    # |11> (both empty) mapped to the reduced |0> and |00> (both filled) to |1>
    full = np.diag(fermion_charge_operator_unreduced().to_matrix()).real
    assert np.allclose(full, [1, 0, 0, -1])
    reduced = np.diag(fermion_charge_operator().to_matrix()).real
    assert np.allclose(reduced, [full[3], full[0]])


def test_effective_coupling():
    assert effective_coupling(1.0, 0.5, 1.0) == pytest.approx(2.0)
    with pytest.raises(DomainError):
        effective_coupling(-1, 1, 1)


def test_params_validation_and_ratios():
    p = ModelParams.from_ratios(7, 1.7, 2)
    assert (p.M, p.m, p.eta, p.cutoff, p.n_qubits) == (7, 1, 1.7, 3, 3)
    assert p.t0 == pytest.approx(2 * math.pi / math.hypot(1, 1.7))
    for bad in (dict(M=0, m=1, eta=1), dict(M=1, m=-1, eta=1), dict(M=1, m=1, eta=float("nan")),
                dict(M=1, m=1, eta=1, n_boson_qubits=0)):
        with pytest.raises(DomainError):
            ModelParams(**bad)


@settings(max_examples=25, deadline=None)
@given(st.floats(0.1, 10), st.floats(0.1, 10), st.floats(-3, 3), st.integers(1, 3))
def test_hamiltonian_hermitian(M, m, eta, n):
    h0, hint = build_hamiltonian(ModelParams(M, m, eta, n))
    assert h0.is_hermitian() and hint.is_hermitian()


# ---- worked values ---------------------------------------------------------

@pytest.mark.parametrize("args,expected", [((1, 1, 0.25), 0.5), ((2, 0, 0.1), 0.0), ((1, 1, 1), 4.0)])
def test_effective_coupling_values(args, expected):
    assert effective_coupling(*args) == pytest.approx(expected)


def test_number_operator_small_cases():
    assert boson_number_operator(1).isclose(PauliSum.from_labels({"I": 0.5, "Z": -0.5}))
    assert np.trace(boson_number_operator(3).to_matrix()).real == pytest.approx(28)


def test_displacement_small_cases():
    assert boson_displacement(1).isclose(PauliSum.from_labels({"X": 1.0}))
    d2 = boson_displacement(2)
    assert d2.coefficient("XX") == pytest.approx(1 / math.sqrt(2))
    m = d2.to_matrix()
    assert np.allclose(m, m.T) and np.allclose([m[0, 1], m[1, 2], m[2, 3]], [1, math.sqrt(2), math.sqrt(3)])


def test_two_qubit_interaction_magnitudes():
    _, hint = build_hamiltonian(ModelParams(M=1, m=1, eta=2, n_boson_qubits=2))
    mags = sorted(abs(c) for _, c in hint)
    r3 = math.sqrt(3)
    assert np.allclose(mags, sorted([(1 + r3) / 2, (r3 - 1) / 2, 1 / math.sqrt(2), 1 / math.sqrt(2)]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_free_theory_has_no_interaction(n):
    assert len(build_hamiltonian(ModelParams(M=1, m=1, eta=0, n_boson_qubits=n))[1]) == 0


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_truncated_commutator(n):
    a = ladder_matrix(n).T
    comm = a @ a.T - a.T @ a
    dim = 2 ** n
    assert np.allclose(comm[:dim - 1, :dim - 1], np.eye(dim - 1))
    assert comm[dim - 1, dim - 1] == pytest.approx(-(dim - 1))


def test_hamming_worked_values():
    xi, yy, xz = (PauliString.from_label(s, msb_first=False) for s in ("XI", "YY", "XZ"))
    assert hamming_distance(xi, yy) == 2 and hamming_distance(xz, xz) == 0
    assert hamming_weight(xz) == 2 and hamming_weight(xi) == 1


def test_fermion_number_on_occupied():
    from yukawa_circuits.model import fermion_number_operator
    assert np.allclose(fermion_number_operator().to_matrix(), np.diag([0, 1]))
