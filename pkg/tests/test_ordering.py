"""Ordering graph, exact and heuristic tours, cost report."""

import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from yukawa_circuits.errors import CapacityError, DomainError
from yukawa_circuits.model import generate_pauli_strings
from yukawa_circuits.order_opt import (
    OrderingGraph,
    build_ordering_graph,
    christofides,
    cnot_upper_bound,
    cost_report,
    held_karp,
)
from yukawa_circuits.pauli import PauliString
from yukawa_circuits.synth import ordered_string_cost


def brute_force(graph):
    best = None
    for perm in itertools.permutations(range(graph.k)):
        c = graph.tour_cost(perm)
        if best is None or c < best:
            best = c
    return best


def strings_of(labels):
    return [PauliString.from_label(s) for s in labels]


def test_graph_weights():
    g = build_ordering_graph(generate_pauli_strings(2))
    assert [p.label for p in g.strings] == ["IX", "XX", "YY", "ZX"]
    assert g.edge(None, PauliString.from_label("IX")) == 1
    assert g.edge(PauliString.from_label("XX"), PauliString.from_label("YY")) == 2
    assert (g.weights == g.weights.T).all() and g.is_metric()


def test_held_karp_two_qubits():
    g = build_ordering_graph(generate_pauli_strings(2))
    tour = held_karp(g)
    assert tour.cost == 7 == brute_force(g)
    assert tour.cost == ordered_string_cost(list(tour.order))


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda n: st.sets(st.text("IXYZ", min_size=n, max_size=n).filter(lambda s: set(s) != {"I"}),
                      min_size=1, max_size=7)))
def test_held_karp_matches_brute_force(labels):
    g = build_ordering_graph(strings_of(labels))
    tour = held_karp(g)
    assert tour.cost == brute_force(g)
    assert sorted(tour.order) == list(g.strings)


def test_held_karp_tie_break_is_lexicographic():
    g = build_ordering_graph(generate_pauli_strings(2))
    optimal = [perm for perm in itertools.permutations(range(g.k)) if g.tour_cost(perm) == 7]
    assert list(held_karp(g).order) == [g.strings[i] for i in min(optimal)]


def test_held_karp_cap():
    with pytest.raises(CapacityError):
        held_karp(build_ordering_graph(generate_pauli_strings(4)))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_christofides_within_guarantee(n):
    g = build_ordering_graph(generate_pauli_strings(n))
    exact, approx = held_karp(g).cost, christofides(g).cost
    assert exact <= approx <= 1.5 * exact


@pytest.mark.parametrize("n", range(1, 7))
def test_christofides_below_bound(n):
    tour = christofides(build_ordering_graph(generate_pauli_strings(n)))
    assert tour.cost <= cnot_upper_bound(n)
    assert len(tour.order) == n * 2 ** (n - 1)


def test_greedy_matching_variant():
    g = build_ordering_graph(generate_pauli_strings(3))
    tour = christofides(g, exact_matching=False)
    assert sorted(tour.order) == list(g.strings)
    assert tour.cost >= held_karp(g).cost


def test_christofides_rejects_non_metric():
    w = np.array([[0, 1, 1], [1, 0, 5], [1, 5, 0]])
    g = OrderingGraph(tuple(strings_of(["X", "Y"])), w)
    with pytest.raises(DomainError):
        christofides(g)


def test_christofides_deterministic():
    g = build_ordering_graph(generate_pauli_strings(4))
    assert christofides(g) == christofides(g)


def test_bound_values():
    assert [cnot_upper_bound(n) for n in (1, 2, 3, 8)] == [2, 8, 24, 2048]


def test_cost_report():
    rep = cost_report(4)
    assert rep.get(2, "EXACT") == 7
    assert rep.get(4, "EXACT") is None
    assert rep.violations() == []
    lines = rep.to_csv().splitlines()
    assert lines[0] == "N,method,cost,strings"
    assert "4,EXACT,,status=skipped" in lines
    with pytest.raises(DomainError):
        cost_report(2, ["nope"])


# ---- worked values ---------------------------------------------------------

def test_fig_graph_weights_and_singletons():
    xi, xz, xx, yy = strings_of(["IX", "ZX", "XX", "YY"])
    g = build_ordering_graph([xi, xz, xx, yy])
    assert g.edge(xi, yy) == 2 and g.edge(xi, None) == 1 and g.edge(xz, None) == 2
    assert g.tour_cost([g.strings.index(s) for s in (xi, xz, xx, yy)]) == 7
    single = build_ordering_graph(strings_of(["X"]))
    assert held_karp(single).cost == christofides(single).cost == 2
    assert build_ordering_graph(strings_of(["XX", "ZZ"])).edge(*strings_of(["XX", "ZZ"])) == 2
    assert 7 <= christofides(g).cost <= 10


def test_held_karp_on_random_subsets_of_three_qubit_set():
    rng = np.random.default_rng(3)
    pool = generate_pauli_strings(3)
    for _ in range(3):
        picked = [pool[i] for i in rng.choice(len(pool), 8, replace=False)]
        g = build_ordering_graph(picked)
        assert held_karp(g).cost == brute_force(g)


def test_held_karp_invariant_under_input_order():
    pool = generate_pauli_strings(3)
    rng = np.random.default_rng(4)
    ref = held_karp(build_ordering_graph(pool))
    shuffled = [pool[i] for i in rng.permutation(len(pool))]
    assert held_karp(build_ordering_graph(shuffled)) == ref


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_tours_synthesize_at_tour_cost(n):
    from yukawa_circuits.synth import STAR_ANCILLA, synthesize_ordered_strings
    g = build_ordering_graph(generate_pauli_strings(n))
    tours = [christofides(g)] + ([held_karp(g)] if g.k <= 16 else [])
    for tour in tours:
        rep = synthesize_ordered_strings(list(tour.order), [0.2] * g.k, STAR_ANCILLA, verify=False)
        assert rep.cnot_count == tour.cost


@pytest.mark.parametrize("n", range(1, 9))
def test_displacement_graphs_are_metric(n):
    assert build_ordering_graph(generate_pauli_strings(n)).is_metric()


def test_exact_cost_monotone():
    rep = cost_report(3, ["exact"])
    costs = [rep.get(n, "EXACT") for n in (1, 2, 3)]
    assert costs == sorted(costs) and costs[0] == 2
