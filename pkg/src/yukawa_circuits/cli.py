"""Command-line driver: ``dynamics``, ``synth``, ``cost`` and ``strings``."""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import dynamics as dyn
from .errors import CapacityError, DomainError
from .model import ModelParams, build_hamiltonian, generate_pauli_strings, string_count, total_hamiltonian
from .order_opt import METHODS as COST_METHODS, cost_report
from .pauli import MAX_DENSE_QUBITS, PauliString
from .sim import Statevector, circuit_unitary, exact_propagator, operator_distance
from .synth import (
    STAR_ANCILLA,
    compressed_two_qubit_circuit,
    synthesize_ordered_strings,
    trotter_step_three_qubit,
)

EXIT_OK, EXIT_USAGE, EXIT_CAP, EXIT_INVARIANT = 0, 2, 3, 4
AMPLITUDE_TOL = 1e-6


class UsageError(Exception):
    """Bad user input; carries the offending field name."""

    def __init__(self, field: str, message: str):
        super().__init__(f"invalid {field}: {message}")
        self.field = field


def _fermion_amplitudes(text: str) -> np.ndarray:
    r = 1 / math.sqrt(2)
    table = {"0": [1, 0], "1": [0, 1], "+": [r, r], "-": [r, -r]}
    if text not in table:
        raise UsageError("--fermion", f"expected one of 0, 1, +, - (got {text!r})")
    return np.array(table[text], dtype=complex)


def parse_boson_state(text: str, n_boson_qubits: int) -> np.ndarray:
    """Fock index, ``+`` (uniform superposition) or ``amps:a0,a1,...``."""
    dim = 2 ** n_boson_qubits
    if text == "+":
        return np.full(dim, 1 / math.sqrt(dim), dtype=complex)
    if text.startswith("amps:"):
        try:
            amps = np.array([float(x) for x in text[5:].split(",")], dtype=complex)
        except ValueError:
            raise UsageError("--boson", f"amplitudes must be real numbers ({text!r})") from None
        if amps.size != dim:
            raise UsageError("--boson", f"need {dim} amplitudes, got {amps.size}")
        norm = np.linalg.norm(amps)
        if abs(norm - 1) > AMPLITUDE_TOL:
            raise UsageError("--boson", f"amplitudes have norm {norm:.8g}, not 1")
        return amps / norm
    try:
        k = int(text)
    except ValueError:
        raise UsageError("--boson", f"expected an integer, '+' or 'amps:...' (got {text!r})") from None
    if not 0 <= k < dim:
        raise UsageError("--boson", f"Fock index {k} outside 0..{dim - 1}")
    out = np.zeros(dim, dtype=complex)
    out[k] = 1
    return out


def _state_from_json(path: str, n_qubits: int) -> Statevector:
    try:
        data = json.loads(Path(path).read_text())
        amps = np.array([complex(re, im) for re, im in data["amplitudes"]])
    except (OSError, ValueError, KeyError, TypeError) as exc:
        raise UsageError("--state-json", str(exc)) from None
    if amps.size != 2 ** n_qubits:
        raise UsageError("--state-json", f"need {2 ** n_qubits} amplitudes, got {amps.size}")
    if abs(np.linalg.norm(amps) - 1) > AMPLITUDE_TOL:
        raise UsageError("--state-json", "amplitudes are not normalized")
    return Statevector.normalized(amps)


def _params(args) -> ModelParams:
    try:
        return ModelParams.from_ratios(args.M_over_m, args.eta_over_m, args.N)
    except DomainError as exc:
        raise UsageError("model parameters", str(exc)) from None


def _write(text: str, output: str | None) -> None:
    if output in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(output).write_text(text)


def cmd_dynamics(args) -> int:
    params = _params(args)
    if args.state_json:
        psi0 = _state_from_json(args.state_json, params.n_qubits)
    else:
        psi0 = Statevector.from_parts(parse_boson_state(args.boson, args.N), _fermion_amplitudes(args.fermion))
    try:
        times = dyn.time_grid(params, args.t_max, args.n_points)
    except DomainError as exc:
        raise UsageError("time grid", str(exc)) from None
    method = args.method.upper()
    series = dyn.quench_series(params, psi0, times, method, args.trotter_steps, args.trotter_order,
                               shots=args.shots, seed=args.seed)
    text = series.to_csv() if args.format == "csv" else series.to_json() + "\n"
    _write(text, args.output)
    summary = sys.stderr if args.output in (None, "-") else sys.stdout
    if method != dyn.EXACT:
        ref = dyn.quench_series(params, psi0, times, dyn.EXACT)
        dev = float(np.max(np.abs(series.n_boson - ref.n_boson)))
        print(f"{len(series.rows)} rows, method={method}, max |n_b - n_b exact| = {dev:.3e}", file=summary)
    else:
        print(f"{len(series.rows)} rows, method={method}", file=summary)
    return EXIT_OK


def _read_strings(path: str) -> list[PauliString]:
    try:
        lines = Path(path).read_text().split()
    except OSError as exc:
        raise UsageError("--strings-file", str(exc)) from None
    try:
        return [PauliString.from_label(s) for s in lines]
    except DomainError as exc:
        raise UsageError("--strings-file", str(exc)) from None


def cmd_synth(args) -> int:
    target = args.target.lower()
    if target == "compressed":
        params = ModelParams.from_ratios(args.M_over_m, args.eta_over_m, 1)
        circ = compressed_two_qubit_circuit(params, args.t)
        dist = operator_distance(circuit_unitary(circ), exact_propagator(total_hamiltonian(params), args.t))
        desc = f"exp(-i H t), N=1, t={args.t:.12g}"
    elif target == "trotter3":
        params = ModelParams.from_ratios(args.M_over_m, args.eta_over_m, 2)
        circ = trotter_step_three_qubit(params, args.dt)
        h0, hint = build_hamiltonian(params)
        half = exact_propagator(h0, args.dt / 2)
        ref = half @ exact_propagator(hint, args.dt) @ half
        dist = operator_distance(circuit_unitary(circ), ref)
        desc = f"second-order Trotter step, N=2, dt={args.dt:.12g}"
    elif target == "strings":
        if not args.strings_file:
            raise UsageError("--strings-file", "required for target 'strings'")
        strings = _read_strings(args.strings_file)
        if not strings:
            raise UsageError("--strings-file", "no strings found")
        report = synthesize_ordered_strings(strings, [args.theta] * len(strings), STAR_ANCILLA,
                                            verify=strings[0].n_qubits + 1 <= MAX_DENSE_QUBITS)
        circ, dist, desc = report.circuit, report.verification, report.target_description
    else:
        raise UsageError("--target", f"expected compressed, trotter3 or strings (got {args.target!r})")
    payload = {"target": desc, "cnot_count": circ.cnot_count,
               "verification_distance": dist, "circuit": circ.to_dict()}
    _write(json.dumps(payload, indent=2) + "\n", args.output)
    return EXIT_OK


def cmd_cost(args) -> int:
    methods = [m.strip().upper() for m in args.methods.split(",") if m.strip()]
    bad = [m for m in methods if m not in COST_METHODS]
    if bad or not methods:
        raise UsageError("--methods", f"unknown method(s) {bad}; choose from exact, heuristic, bound")
    if args.N < 1:
        raise UsageError("-N", "must be >= 1")
    report = cost_report(args.N, methods)
    _write(report.to_csv() if args.format == "csv" else report.to_json() + "\n", args.output)
    problems = report.violations()
    for p in problems:
        print(f"invariant violated: {p}", file=sys.stderr)
    return EXIT_INVARIANT if problems else EXIT_OK


def cmd_strings(args) -> int:
    if args.N < 1:
        raise UsageError("-N", "must be >= 1")
    strings = generate_pauli_strings(args.N)
    if len(strings) != string_count(args.N):
        print("string count disagrees with N*2^(N-1)", file=sys.stderr)
        return EXIT_INVARIANT
    lines = [p.label for p in strings] + [f"count {len(strings)}"]
    _write("\n".join(lines) + "\n", args.output)
    return EXIT_OK


def _add_model_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--M-over-m", dest="M_over_m", type=float, default=7.0, help="fermion/boson mass ratio")
    p.add_argument("--eta-over-m", dest="eta_over_m", type=float, default=1.7, help="coupling/boson mass ratio")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="yukawa-circuits",
                                     description="Circuits and quench dynamics for the single-site Yukawa model.")
    sub = parser.add_subparsers(dest="command", required=True)

    d = sub.add_parser("dynamics", help="particle numbers after a quench")
    _add_model_flags(d)
    d.add_argument("-N", type=int, default=1, help="boson register qubits")
    d.add_argument("--fermion", default="0", help="fermion state: 0, 1, + or -")
    d.add_argument("--boson", default="0", help="Fock index, '+', or amps:a0,a1,...")
    d.add_argument("--state-json", help="JSON file with 'amplitudes': [[re, im], ...] over N+1 qubits")
    d.add_argument("--method", default="exact", choices=["exact", "compressed", "trotter"],
                   type=str.lower)
    d.add_argument("--t-max", type=float, default=2.0, help="final time in units of t0")
    d.add_argument("--n-points", type=int, default=51)
    d.add_argument("--trotter-steps", type=int, default=10)
    d.add_argument("--trotter-order", type=int, default=2, choices=[1, 2])
    d.add_argument("--shots", type=int, help="sample this many shots per point (default: exact)")
    d.add_argument("--seed", type=int, default=0)
    d.add_argument("-o", "--output", help="output file (default stdout)")
    d.add_argument("--format", choices=["csv", "json"], default="csv")
    d.set_defaults(func=cmd_dynamics)

    s = sub.add_parser("synth", help="synthesize and verify a circuit")
    s.add_argument("--target", required=True, help="compressed, trotter3 or strings")
    _add_model_flags(s)
    s.add_argument("--t", type=float, default=1.0, help="evolution time for 'compressed'")
    s.add_argument("--dt", type=float, default=0.1, help="step size for 'trotter3'")
    s.add_argument("--strings-file", help="whitespace-separated ordered Pauli labels")
    s.add_argument("--theta", type=float, default=0.3, help="rotation angle for every string")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_synth)

    c = sub.add_parser("cost", help="CNOT cost of the displacement exponential per register width")
    c.add_argument("-N", type=int, required=True, help="largest register width")
    c.add_argument("--methods", default="exact,heuristic,bound")
    c.add_argument("-o", "--output")
    c.add_argument("--format", choices=["csv", "json"], default="csv")
    c.set_defaults(func=cmd_cost)

    g = sub.add_parser("strings", help="list the Pauli strings of b + b†")
    g.add_argument("-N", type=int, required=True)
    g.add_argument("-o", "--output")
    g.set_defaults(func=cmd_strings)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AssertionError as exc:
        print(f"invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
