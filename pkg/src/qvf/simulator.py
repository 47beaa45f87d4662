"""Exact state-vector simulation and seeded shot sampling.

Amplitudes are stored in a dense complex vector of length 2^n with
little-endian indexing (bit q of index i = (i >> q) & 1).  Gates are
applied with vectorized index arithmetic: for each gate the basis indices
are split into groups that agree on every non-target bit, and the 2x2 or
4x4 matrix mixes the group members in place.

>>> from .circuit import Circuit
>>> run_exact(Circuit(1, [("h", (0,), ())], (0,))).entries
{'0': 0.4999999999999999, '1': 0.4999999999999999}
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .circuit import Circuit, index_to_bitstring
from .gates import gate_matrix

NORM_TOL = 1e-10

#: probabilities at or below this are dropped from distributions; the loss
#: is far below NORM_TOL even with every state populated
PROB_FLOOR = 1e-14


class SimulationError(RuntimeError):
    """Numerical invariant broken during simulation."""


@dataclass(frozen=True)
class OutcomeDistribution:
    """Map from measured bitstrings to probability or sampled count.

    ``shots`` is None in exact mode (values are probabilities summing to 1)
    and the shot count in sampled mode (values are integer counts summing
    to ``shots``).
    """

    entries: dict
    shots: int = None

    def probabilities(self) -> dict:
        """Entries normalized to probabilities in either mode."""
        if self.shots is None:
            return dict(self.entries)
        return {k: v / self.shots for k, v in self.entries.items()}


@lru_cache(maxsize=None)
def _group_indices(n_qubits: int, targets: tuple):
    """Basis indices with all target bits clear, plus per-target strides."""
    idx = np.arange(2 ** n_qubits)
    for q in targets:
        idx = idx[(idx >> q) & 1 == 0]
    return idx, tuple(1 << q for q in targets)


def apply_gate(state: np.ndarray, n_qubits: int, gate) -> np.ndarray:
    """Apply one gate in place and return the state."""
    mat = gate_matrix(gate.name, gate.params)
    base, strides = _group_indices(n_qubits, gate.qubits)
    if len(strides) == 1:
        s0 = strides[0]
        a0 = state[base]
        a1 = state[base + s0]
        state[base] = mat[0, 0] * a0 + mat[0, 1] * a1
        state[base + s0] = mat[1, 0] * a0 + mat[1, 1] * a1
    else:
        s0, s1 = strides
        offs = (0, s0, s1, s0 + s1)  # sub-index bit a <-> targets[a]
        amps = [state[base + o] for o in offs]
        for row, o in enumerate(offs):
            state[base + o] = (
                mat[row, 0] * amps[0]
                + mat[row, 1] * amps[1]
                + mat[row, 2] * amps[2]
                + mat[row, 3] * amps[3]
            )
    return state


def statevector(circuit: Circuit) -> np.ndarray:
    """Final amplitudes of the circuit applied to |0...0>."""
    state = np.zeros(2 ** circuit.n_qubits, dtype=complex)
    state[0] = 1.0
    for gate in circuit.gates:
        apply_gate(state, circuit.n_qubits, gate)
    norm = float(np.sum(np.abs(state) ** 2))
    if abs(norm - 1.0) > NORM_TOL:
        raise SimulationError(f"state norm drifted to {norm!r}")
    return state


@lru_cache(maxsize=None)
def _marginal_keys(n_qubits: int, measured: tuple) -> np.ndarray:
    """For each basis index, the packed index over the measured qubits."""
    idx = np.arange(2 ** n_qubits)
    keys = np.zeros_like(idx)
    for pos, q in enumerate(measured):
        keys |= ((idx >> q) & 1) << pos
    return keys


def measured_probabilities(circuit: Circuit) -> np.ndarray:
    """Probability vector over measured-qubit indices (exact, no RNG)."""
    probs = np.abs(statevector(circuit)) ** 2
    keys = _marginal_keys(circuit.n_qubits, circuit.measured)
    return np.bincount(keys, weights=probs, minlength=2 ** len(circuit.measured))


def distribution_from_vector(probs: np.ndarray, width: int) -> OutcomeDistribution:
    """Exact-mode distribution from a probability vector over bitstrings."""
    entries = {
        index_to_bitstring(i, width): float(p)
        for i, p in enumerate(probs)
        if p > PROB_FLOOR
    }
    return OutcomeDistribution(entries)


def run_exact(circuit: Circuit) -> OutcomeDistribution:
    """Exact output distribution marginalized onto the measured qubits."""
    return distribution_from_vector(
        measured_probabilities(circuit), len(circuit.measured)
    )


def sample_vector(
    probs: np.ndarray, width: int, shots: int, seed
) -> OutcomeDistribution:
    """Multinomial draw from a probability vector; seed-deterministic.

    ``seed`` may be anything ``numpy.random.default_rng`` accepts,
    including a SeedSequence.
    """
    if shots < 1:
        raise ValueError("shots must be >= 1")
    pvals = np.clip(np.asarray(probs, dtype=float), 0.0, None)
    total = pvals.sum()
    if abs(total - 1.0) > NORM_TOL:
        raise SimulationError(f"probabilities sum to {total!r}")
    rng = np.random.default_rng(seed)
    counts = rng.multinomial(shots, pvals / total)
    entries = {
        index_to_bitstring(i, width): int(c)
        for i, c in enumerate(counts)
        if c > 0
    }
    return OutcomeDistribution(entries, shots=shots)


def sample(circuit: Circuit, shots: int, seed, noise=None) -> OutcomeDistribution:
    """Sampled counts for a circuit; identical inputs give identical counts.

    With ``noise`` given, sampling draws from the noisy exact distribution.
    """
    if noise is not None:
        from .noise import measured_probabilities_noisy

        probs = measured_probabilities_noisy(circuit, noise)
    else:
        probs = measured_probabilities(circuit)
    return sample_vector(probs, len(circuit.measured), shots, seed)
