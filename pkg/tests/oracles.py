"""Independent brute-force reference implementations used by the test suite.

Everything in this module is deliberately written with a different mechanism
than the library under test:

* circuits are evaluated by building the full 2^n x 2^n unitary as an explicit
  product of expanded gate matrices (bit-by-bit index bookkeeping, no tensor
  reshaping, no in-place amplitude updates);
* metrics are recomputed with a separate fold over the distribution.

Circuits are described structurally as plain tuples so this module never
imports the package: a gate is ``(name, qubits, params)`` with ``qubits`` a
tuple of target indices and ``params`` a tuple of floats (empty for fixed
gates).  State indices are little-endian: bit ``q`` of index ``i`` is
``(i >> q) & 1``.  Output bitstrings put qubit 0 in the leftmost character.
"""

import cmath
import math

import numpy as np


def u_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """Generic single-qubit rotation.

    [[cos(t/2),            -e^{i lam} sin(t/2)     ],
     [e^{i phi} sin(t/2),   e^{i(phi+lam)} cos(t/2)]]
    """
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return np.array(
        [
            [c, -cmath.exp(1j * lam) * s],
            [cmath.exp(1j * phi) * s, cmath.exp(1j * (phi + lam)) * c],
        ],
        dtype=complex,
    )


_SQ2 = 1.0 / math.sqrt(2.0)

# Sub-index convention for multi-qubit matrices: bit a of the sub-index is the
# value of qubits[a].  For cx, qubits[0] is the control and qubits[1] the
# target, so the matrix below maps |c=1,t=0> (sub-index 1) to |c=1,t=1>
# (sub-index 3) and vice versa.
_FIXED = {
    "h": np.array([[_SQ2, _SQ2], [_SQ2, -_SQ2]], dtype=complex),
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
    "s": np.array([[1, 0], [0, 1j]], dtype=complex),
    "sdg": np.array([[1, 0], [0, -1j]], dtype=complex),
    "t": np.array([[1, 0], [0, cmath.exp(1j * math.pi / 4)]], dtype=complex),
    "tdg": np.array([[1, 0], [0, cmath.exp(-1j * math.pi / 4)]], dtype=complex),
    "cx": np.array(
        [
            [1, 0, 0, 0],
            [0, 0, 0, 1],
            [0, 0, 1, 0],
            [0, 1, 0, 0],
        ],
        dtype=complex,
    ),
    "cz": np.diag([1, 1, 1, -1]).astype(complex),
}


def gate_matrix(name: str, params=()) -> np.ndarray:
    if name == "u":
        return u_matrix(*params)
    return _FIXED[name]


def expand(mat: np.ndarray, qubits, n_qubits: int) -> np.ndarray:
    """Expand a 2^k x 2^k gate matrix to the full 2^n x 2^n space.

    Built entry by entry from the little-endian index decomposition; rows and
    columns agree on every non-target bit.
    """
    n_states = 2 ** n_qubits
    k = len(qubits)
    full = np.zeros((n_states, n_states), dtype=complex)
    for i in range(n_states):
        row_sub = 0
        for a, q in enumerate(qubits):
            row_sub |= ((i >> q) & 1) << a
        base = i
        for q in qubits:
            base &= ~(1 << q)
        for col_sub in range(2 ** k):
            j = base
            for a, q in enumerate(qubits):
                j |= ((col_sub >> a) & 1) << q
            full[i, j] = mat[row_sub, col_sub]
    return full


def circuit_unitary(n_qubits: int, gates) -> np.ndarray:
    """Product of all expanded gate matrices, last gate leftmost."""
    full = np.eye(2 ** n_qubits, dtype=complex)
    for name, qubits, params in gates:
        full = expand(gate_matrix(name, params), qubits, n_qubits) @ full
    return full


def bitstring(value: int, width: int) -> str:
    """Little-endian rendering: character p is bit p of ``value``."""
    return "".join("1" if (value >> p) & 1 else "0" for p in range(width))


def exact_distribution(n_qubits: int, gates, measured, tol: float = 1e-14):
    """Output probabilities marginalized onto the measured qubits.

    Returns a dict mapping bitstrings (character p = measured[p], qubit 0
    leftmost when measured is in ascending qubit order) to probabilities.
    """
    state = np.zeros(2 ** n_qubits, dtype=complex)
    state[0] = 1.0
    state = circuit_unitary(n_qubits, gates) @ state
    probs = np.abs(state) ** 2
    out: dict[str, float] = {}
    for i, p in enumerate(probs):
        if p <= tol:
            continue
        key_bits = 0
        for a, q in enumerate(measured):
            key_bits |= ((i >> q) & 1) << a
        key = bitstring(key_bits, len(measured))
        out[key] = out.get(key, 0.0) + float(p)
    return out


def metrics_fold(dist, correct, shots=None):
    """Recompute (pst, p_b, contrast, qvf) by direct folding.

    ``dist`` maps bitstrings to probabilities, or to counts when ``shots`` is
    given.  p_b is the largest mass on any state outside ``correct``.
    """
    total = float(shots) if shots is not None else 1.0
    pa = 0.0
    pb = 0.0
    for state, value in dist.items():
        p = value / total
        if state in correct:
            pa += p
        elif p > pb:
            pb = p
    contrast = (pa - pb) / (pa + pb)
    return pa, pb, contrast, 1.0 - (contrast + 1.0) / 2.0


def insert_fault(gates, gate_index: int, qubit: int, theta: float, phi: float):
    """Copy of ``gates`` with u(theta, phi, 0) added right after one gate."""
    out = list(gates)
    out.insert(gate_index + 1, ("u", (qubit,), (theta, phi, 0.0)))
    return out
