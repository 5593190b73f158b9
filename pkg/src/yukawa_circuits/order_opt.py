"""
CNOT-cost estimation for Pauli-string orderings via a travelling-salesman model.

Nodes are Pauli strings plus one ancilla node standing for the start/end
layers of a star+ancilla circuit. String-string edges weigh the Hamming
distance, ancilla edges the Hamming weight, so a closed tour through the
ancilla costs exactly as many CNOTs as the synthesized circuit.
"""

from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .errors import CapacityError, DomainError
from .model import generate_pauli_strings
from .pauli import PauliString, hamming_distance, hamming_weight

ANCILLA = -1
"""Node id of the ancilla in tours and graph indices (matrix row 0)."""

HELD_KARP_MAX_NODES = 16
"""Largest number of string nodes accepted by :func:`held_karp`."""

EXACT = "EXACT"
HEURISTIC = "HEURISTIC"
BOUND = "BOUND"
METHODS = (EXACT, HEURISTIC, BOUND)

EXACT_MAX_QUBITS = 3
"""Largest boson register for which cost reports run the exact solver."""


@dataclass(frozen=True, eq=False)
class OrderingGraph:
    """Complete weighted graph over strings plus the ancilla.

    ``weights`` is an integer matrix with the ancilla at index 0 and
    ``strings[i]`` at index ``i + 1``. Strings are stored sorted by label.
    """

    strings: tuple[PauliString, ...]
    weights: np.ndarray

    @property
    def k(self) -> int:
        return len(self.strings)

    def weight(self, a: int, b: int) -> int:
        """Edge weight between node ids (``ANCILLA`` or a string index)."""
        return int(self.weights[a + 1, b + 1])

    def edge(self, a: PauliString | None, b: PauliString | None) -> int:
        """Edge weight by string value; ``None`` denotes the ancilla."""
        ia = ANCILLA if a is None else self.strings.index(a)
        ib = ANCILLA if b is None else self.strings.index(b)
        return self.weight(ia, ib)

    def tour_cost(self, order: Sequence[int]) -> int:
        path = [ANCILLA] + list(order) + [ANCILLA]
        return sum(self.weight(a, b) for a, b in zip(path, path[1:]))

    def is_metric(self) -> bool:
        w = self.weights.astype(np.int32)
        for mid in range(w.shape[0]):
            if np.any(w[:, mid][:, None] + w[mid, :][None, :] < w):
                return False
        return True


@dataclass(frozen=True)
class Tour:
    """String visiting order (ancilla implicitly first and last) and its cost."""

    order: tuple[PauliString, ...]
    cost: int

    def labels(self) -> list[str]:
        return [p.label for p in self.order]


def build_ordering_graph(strings: Iterable[PauliString]) -> OrderingGraph:
    nodes = sorted(set(strings))
    if not nodes:
        raise DomainError("ordering graph needs at least one string")
    length = nodes[0].n_qubits
    if any(p.n_qubits != length for p in nodes):
        raise DomainError("all strings must have equal length")
    letters = np.array([list(p.ops) for p in nodes])
    k = len(nodes)
    w = np.zeros((k + 1, k + 1), dtype=np.int64)
    w[1:, 1:] = (letters[:, None, :] != letters[None, :, :]).sum(axis=-1)
    weights = (letters != "I").sum(axis=-1)
    w[0, 1:] = weights
    w[1:, 0] = weights
    w.setflags(write=False)
    return OrderingGraph(tuple(nodes), w)


def _tour(graph: OrderingGraph, order: Sequence[int]) -> Tour:
    return Tour(tuple(graph.strings[i] for i in order), graph.tour_cost(order))


def held_karp(graph: OrderingGraph) -> Tour:
    """Exact minimum tour anchored at the ancilla (Bellman-Held-Karp).

    ``best[mask, j]`` is the cheapest completion from string ``j`` having
    visited ``mask``, back to the ancilla. Among optimal tours the
    lexicographically smallest index sequence is returned.
    """
    k = graph.k
    if k > HELD_KARP_MAX_NODES:
        raise CapacityError(
            f"{k} string nodes exceed the exact-solver cap of {HELD_KARP_MAX_NODES}; "
            "use christofides() instead"
        )
    w = graph.weights[1:, 1:]
    to_anc = graph.weights[1:, 0]
    from_anc = graph.weights[0, 1:]
    full = (1 << k) - 1
    inf = np.iinfo(np.int64).max // 4
    best = np.full((1 << k, k), inf, dtype=np.int64)
    best[full, :] = to_anc
    bits = 1 << np.arange(k)
    for mask in range(full - 1, 0, -1):
        free = (mask & bits) == 0
        nxt = np.flatnonzero(free)
        cand = w[:, nxt] + best[mask | bits[nxt], nxt][None, :]
        best[mask] = cand.min(axis=1)
    start = from_anc + best[bits, np.arange(k)]
    optimum = int(start.min())

    order = [int(np.flatnonzero(start == optimum)[0])]
    mask = 1 << order[0]
    while mask != full:
        cur = order[-1]
        remaining = best[mask, cur]
        for j in range(k):
            if not mask & (1 << j) and w[cur, j] + best[mask | (1 << j), j] == remaining:
                order.append(j)
                mask |= 1 << j
                break
    tour = _tour(graph, order)
    assert tour.cost == optimum
    return tour


def _euler_shortcut(multigraph: nx.MultiGraph) -> list[int]:
    seen: list[int] = []
    visited = set()
    for u, _ in nx.eulerian_circuit(multigraph, source=0):
        if u not in visited:
            visited.add(u)
            seen.append(u)
    return seen


def christofides(graph: OrderingGraph, exact_matching: bool = True) -> Tour:
    """Christofides tour: spanning tree, perfect matching on odd vertices,
    Euler circuit from the ancilla, shortcut to first occurrences.

    With ``exact_matching=False`` a greedy matching replaces the exact one and
    the 3/2 guarantee no longer applies.
    """
    k = graph.k
    if k == 1:
        return _tour(graph, [0])
    if not graph.is_metric():
        raise DomainError("Christofides requires weights obeying the triangle inequality")
    w = graph.weights
    complete = nx.Graph()
    complete.add_nodes_from(range(k + 1))
    for i in range(k + 1):
        for j in range(i + 1, k + 1):
            complete.add_edge(i, j, weight=int(w[i, j]))
    tree = nx.minimum_spanning_tree(complete)
    odd = [v for v in sorted(tree.nodes) if tree.degree(v) % 2]
    if exact_matching:
        matching = nx.min_weight_matching(complete.subgraph(odd))
    else:
        matching = _greedy_matching(odd, w)
    multi = nx.MultiGraph()
    multi.add_nodes_from(range(k + 1))
    multi.add_edges_from(sorted(tree.edges()))
    multi.add_edges_from(sorted(tuple(sorted(e)) for e in matching))
    walk = _euler_shortcut(multi)
    order = [v - 1 for v in walk if v != 0]
    return _tour(graph, order)


def _greedy_matching(odd: list[int], w: np.ndarray) -> list[tuple[int, int]]:
    pairs = sorted(itertools.combinations(odd, 2), key=lambda e: (w[e[0], e[1]], e))
    used: set[int] = set()
    out = []
    for a, b in pairs:
        if a not in used and b not in used:
            used.update((a, b))
            out.append((a, b))
    return out


def cnot_upper_bound(n: int) -> int:
    """Gray-code construction bound ``n 2^n`` on the first-order CNOT cost."""
    if n < 1:
        raise DomainError("register width must be >= 1")
    return n * 2 ** n


@dataclass(frozen=True)
class CostRow:
    N: int
    method: str
    cost: int | None
    strings: tuple[str, ...] = ()
    status: str = "ok"


@dataclass
class CostReport:
    rows: list[CostRow] = field(default_factory=list)

    def get(self, n: int, method: str) -> int | None:
        for r in self.rows:
            if r.N == n and r.method == method:
                return r.cost
        return None

    def violations(self) -> list[str]:
        """Relational checks: exact <= heuristic <= 1.5 exact, heuristic <= bound."""
        problems = []
        for n in sorted({r.N for r in self.rows}):
            ex, he, bo = self.get(n, EXACT), self.get(n, HEURISTIC), self.get(n, BOUND)
            if ex is not None and he is not None and not ex <= he <= 1.5 * ex:
                problems.append(f"N={n}: heuristic {he} outside [{ex}, {1.5 * ex}]")
            if he is not None and bo is not None and he > bo:
                problems.append(f"N={n}: heuristic {he} above bound {bo}")
            if ex is not None and bo is not None and ex > bo:
                problems.append(f"N={n}: exact {ex} above bound {bo}")
        return problems

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["N", "method", "cost", "strings"])
        for r in self.rows:
            if r.status == "ok":
                writer.writerow([r.N, r.method, r.cost, " ".join(r.strings)])
            else:
                writer.writerow([r.N, r.method, "", f"status={r.status}"])
        return buf.getvalue()

    def to_json(self) -> str:
        return json.dumps(
            [{"N": r.N, "method": r.method, "cost": r.cost, "strings": list(r.strings),
              "status": r.status} for r in self.rows],
            indent=2,
        )


def cost_report(n_max: int, methods: Iterable[str] = METHODS) -> CostReport:
    """Per-register-width CNOT costs of ``exp(-i (b + b†) dt)`` for each method.

    Exact rows beyond :data:`EXACT_MAX_QUBITS` are marked ``skipped``.
    """
    if n_max < 1:
        raise DomainError("n_max must be >= 1")
    methods = [m.upper() for m in methods]
    for m in methods:
        if m not in METHODS:
            raise DomainError(f"unknown method {m!r}")
    report = CostReport()
    for n in range(1, n_max + 1):
        graph = None
        for method in METHODS:
            if method not in methods:
                continue
            if method == BOUND:
                report.rows.append(CostRow(n, BOUND, cnot_upper_bound(n)))
                continue
            if method == EXACT and n > EXACT_MAX_QUBITS:
                report.rows.append(CostRow(n, EXACT, None, status="skipped"))
                continue
            graph = graph or build_ordering_graph(generate_pauli_strings(n))
            tour = held_karp(graph) if method == EXACT else christofides(graph)
            report.rows.append(CostRow(n, method, tour.cost, tuple(tour.labels())))
    return report


__all__ = [
    "ANCILLA",
    "OrderingGraph",
    "Tour",
    "build_ordering_graph",
    "held_karp",
    "christofides",
    "cnot_upper_bound",
    "CostRow",
    "CostReport",
    "cost_report",
    "hamming_distance",
    "hamming_weight",
]
