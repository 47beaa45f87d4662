"""Shared random-circuit generators for the test suite."""

import math

from qvf.circuit import Circuit

GATE_POOL = ("h", "x", "y", "z", "s", "sdg", "t", "tdg", "u", "cx", "cz")


def random_gates(rng, n_qubits, n_gates):
    pool = GATE_POOL if n_qubits >= 2 else GATE_POOL[:-2]
    gates = []
    for _ in range(n_gates):
        name = pool[rng.integers(len(pool))]
        if name in ("cx", "cz"):
            q = tuple(rng.choice(n_qubits, size=2, replace=False))
        else:
            q = (int(rng.integers(n_qubits)),)
        params = tuple(rng.uniform(0, 2 * math.pi, size=3)) if name == "u" else ()
        gates.append((name, tuple(int(x) for x in q), params))
    return gates


def random_circuit(rng, max_qubits=4, max_gates=12):
    n = int(rng.integers(1, max_qubits + 1))
    gates = random_gates(rng, n, int(rng.integers(1, max_gates + 1)))
    k = int(rng.integers(1, n + 1))
    measured = tuple(int(q) for q in rng.permutation(n)[:k])
    name = f"random-{rng.integers(10**6)}" if rng.random() < 0.5 else None
    correct = None
    if rng.random() < 0.5:
        correct = {
            "".join(rng.choice(["0", "1"], size=k))
            for _ in range(int(rng.integers(1, 3)))
        }
    return Circuit(n, gates, measured, name=name, correct_states=correct)
