"""Dense statevector simulation of an L-qubit register.

Conventions used throughout the package:

* qubit ``i`` represents lattice site ``i``, 0-based;
  1-based site labels appear only in report output
* basis index ``b`` has bit ``i`` equal to ``(b >> i) & 1``, so qubit 0
  is the least significant bit
* bitstrings are written site 0 first: ``"0100"`` means site 1 occupied
* a set bit marks an occupied site
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

#: Hard cap on register width; a dense register needs 16 * 2**L bytes.
MAX_QUBITS = 24

GATE_KINDS = ("h", "hy", "rz", "cnot", "swap")

_INV_SQRT2 = 1.0 / np.sqrt(2.0)

H_MATRIX = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) * _INV_SQRT2

# Hermitian, involutive, and maps the z basis to the y basis:
# HY @ Z @ HY == Y.  Equal to rz(pi/2) @ H @ rz(-pi/2) with no phase slack.
HY_MATRIX = np.array([[1.0, -1.0j], [1.0j, -1.0]], dtype=complex) * _INV_SQRT2


@dataclass(frozen=True)
class GateInstruction:
    """A single gate: kind, target qubit(s), and the rz angle in radians."""

    kind: str
    targets: tuple[int, ...]
    theta: float | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        expected = 2 if self.kind in ("cnot", "swap") else 1
        if len(self.targets) != expected:
            raise ValueError(
                f"{self.kind} takes {expected} target(s), got {self.targets}"
            )
        if len(set(self.targets)) != len(self.targets):
            raise ValueError(f"{self.kind} targets must be distinct: {self.targets}")
        if any(q < 0 for q in self.targets):
            raise IndexError(f"negative qubit index in {self.targets}")
        if self.kind == "rz":
            if self.theta is None:
                raise ValueError("rz requires a rotation angle")
        elif self.theta is not None:
            raise ValueError(f"{self.kind} takes no angle")


def h(q: int) -> GateInstruction:
    return GateInstruction("h", (q,))


def hy(q: int) -> GateInstruction:
    return GateInstruction("hy", (q,))


def rz(q: int, theta: float) -> GateInstruction:
    return GateInstruction("rz", (q,), float(theta))


def cnot(control: int, target: int) -> GateInstruction:
    """CNOT; targets[0] is the control, targets[1] the target."""
    return GateInstruction("cnot", (control, target))


def swap(a: int, b: int) -> GateInstruction:
    return GateInstruction("swap", (a, b))


def swap_as_cnots(i: int, j: int) -> list[GateInstruction]:
    """Three CNOTs whose composition equals SWAP(i, j) exactly."""
    if i == j:
        raise ValueError(f"swap requires two distinct qubits, got {i} == {j}")
    return [cnot(i, j), cnot(j, i), cnot(i, j)]


def gate_matrix(gate: GateInstruction) -> np.ndarray:
    """Dense unitary of a gate.

    For two-qubit gates the 4x4 matrix acts on the index
    ``b = bit(targets[0]) + 2 * bit(targets[1])``.
    """
    if gate.kind == "h":
        return H_MATRIX.copy()
    if gate.kind == "hy":
        return HY_MATRIX.copy()
    if gate.kind == "rz":
        half = gate.theta / 2.0
        return np.diag([np.exp(-1j * half), np.exp(1j * half)])
    if gate.kind == "swap":
        m = np.eye(4, dtype=complex)
        m[[1, 2]] = m[[2, 1]]
        return m
    # cnot: control is the low bit of the 2-qubit index
    m = np.eye(4, dtype=complex)
    m[[1, 3]] = m[[3, 1]]
    return m


@dataclass
class StateVector:
    """Unit-norm amplitudes of an L-qubit register (length 2**L, complex)."""

    num_qubits: int
    amplitudes: np.ndarray

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())


def _check_num_qubits(L: int) -> None:
    if not 1 <= L <= MAX_QUBITS:
        raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}], got {L}")


def from_amplitudes(amplitudes) -> StateVector:
    """Build a StateVector from raw amplitudes, validating shape and norm."""
    amps = np.asarray(amplitudes, dtype=complex).ravel()
    dim = len(amps)
    L = dim.bit_length() - 1
    if dim != 1 << L or L < 1:
        raise ValueError(f"amplitude length {dim} is not a power of two >= 2")
    _check_num_qubits(L)
    nrm = np.linalg.norm(amps)
    if abs(nrm - 1.0) > 1e-9:
        raise ValueError(f"state not normalized: |psi| = {nrm}")
    return StateVector(L, amps.copy())


def one_hot_state(L: int, site: int) -> StateVector:
    """State with a single particle at ``site`` and all other sites empty."""
    _check_num_qubits(L)
    if not 0 <= site < L:
        raise IndexError(f"site {site} out of range for L={L}")
    amps = np.zeros(1 << L, dtype=complex)
    amps[1 << site] = 1.0
    return StateVector(L, amps)


def basis_state(L: int, index: int) -> StateVector:
    """Computational basis state |index> (bit i of index = occupation of site i)."""
    _check_num_qubits(L)
    if not 0 <= index < 1 << L:
        raise IndexError(f"basis index {index} out of range for L={L}")
    amps = np.zeros(1 << L, dtype=complex)
    amps[index] = 1.0
    return StateVector(L, amps)


def total_probability(state: StateVector) -> float:
    return float(np.sum(np.abs(state.amplitudes) ** 2))


def index_to_bitstring(index: int, L: int) -> str:
    """Render a basis index with site 0 as the first character."""
    return "".join("1" if (index >> i) & 1 else "0" for i in range(L))


def bitstring_to_index(bits: str) -> int:
    if any(c not in "01" for c in bits):
        raise ValueError(f"not a bitstring: {bits!r}")
    return sum(1 << i for i, c in enumerate(bits) if c == "1")


# ---------------------------------------------------------------------------
# in-place kernels; callers own the copy semantics


def _view_1q(amps: np.ndarray, q: int) -> np.ndarray:
    # axes: (more significant bits, bit q, less significant bits)
    return amps.reshape(-1, 2, 1 << q)


def _view_2q(amps: np.ndarray, qlo: int, qhi: int) -> np.ndarray:
    # axes: (rest, bit qhi, bits between, bit qlo, bits below)
    mid = 1 << (qhi - qlo - 1)
    return amps.reshape(-1, 2, mid, 2, 1 << qlo)


def _apply_1q_matrix(amps: np.ndarray, q: int, u: np.ndarray) -> None:
    v = _view_1q(amps, q)
    a = v[:, 0, :].copy()
    b = v[:, 1, :]
    v[:, 0, :] = u[0, 0] * a + u[0, 1] * b
    v[:, 1, :] = u[1, 0] * a + u[1, 1] * b


def _apply_rz(amps: np.ndarray, q: int, theta: float) -> None:
    v = _view_1q(amps, q)
    v[:, 0, :] *= np.exp(-0.5j * theta)
    v[:, 1, :] *= np.exp(0.5j * theta)


def _exchange(v: np.ndarray, sel_a, sel_b) -> None:
    tmp = v[sel_a].copy()
    v[sel_a] = v[sel_b]
    v[sel_b] = tmp


def _apply_swap(amps: np.ndarray, a: int, b: int) -> None:
    qlo, qhi = sorted((a, b))
    v = _view_2q(amps, qlo, qhi)
    _exchange(v, np.s_[:, 0, :, 1, :], np.s_[:, 1, :, 0, :])


def _apply_cnot(amps: np.ndarray, control: int, target: int) -> None:
    qlo, qhi = sorted((control, target))
    v = _view_2q(amps, qlo, qhi)
    if control == qhi:
        _exchange(v, np.s_[:, 1, :, 0, :], np.s_[:, 1, :, 1, :])
    else:
        _exchange(v, np.s_[:, 0, :, 1, :], np.s_[:, 1, :, 1, :])


def apply_gate_inplace(amps: np.ndarray, num_qubits: int, gate: GateInstruction) -> None:
    if max(gate.targets) >= num_qubits:
        raise IndexError(
            f"gate {gate.kind} targets {gate.targets} out of range for L={num_qubits}"
        )
    if gate.kind == "rz":
        _apply_rz(amps, gate.targets[0], gate.theta)
    elif gate.kind == "h":
        _apply_1q_matrix(amps, gate.targets[0], H_MATRIX)
    elif gate.kind == "hy":
        _apply_1q_matrix(amps, gate.targets[0], HY_MATRIX)
    elif gate.kind == "swap":
        _apply_swap(amps, *gate.targets)
    else:
        _apply_cnot(amps, *gate.targets)


def apply_pauli_inplace(amps: np.ndarray, num_qubits: int, q: int, code: int) -> None:
    """Apply a Pauli to qubit q; code 1=X, 2=Y, 3=Z (0 is a no-op)."""
    if not 0 <= q < num_qubits:
        raise IndexError(f"qubit {q} out of range for L={num_qubits}")
    if code == 0:
        return
    v = _view_1q(amps, q)
    if code == 1:
        _exchange(v, np.s_[:, 0, :], np.s_[:, 1, :])
    elif code == 2:
        a = v[:, 0, :].copy()
        v[:, 0, :] = -1j * v[:, 1, :]
        v[:, 1, :] = 1j * a
    elif code == 3:
        v[:, 1, :] *= -1.0
    else:
        raise ValueError(f"pauli code must be 0..3, got {code}")


def apply_gate(state: StateVector, gate: GateInstruction) -> StateVector:
    """Return the state with one gate applied; the input is left untouched."""
    out = state.amplitudes.copy()
    apply_gate_inplace(out, state.num_qubits, gate)
    return StateVector(state.num_qubits, out)


# ---------------------------------------------------------------------------
# measurement sampling


def shot_rng(seed: int, shot: int) -> np.random.Generator:
    """Independent per-shot stream; identical regardless of how shots are
    chunked over threads."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shot,)))


def sample_index(cumulative: np.ndarray, u: float) -> int:
    """Inverse-CDF draw from a cumulative probability array."""
    idx = int(np.searchsorted(cumulative, u, side="right"))
    return min(idx, len(cumulative) - 1)


def sample_bitstrings(state: StateVector, shots: int, seed: int) -> list[str]:
    """Draw i.i.d. measurement bitstrings from |amplitudes|^2.

    Each shot consumes exactly one uniform from its own seeded substream,
    so noiseless trajectory runs reproduce these draws shot for shot.
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    cumulative = np.cumsum(np.abs(state.amplitudes) ** 2)
    L = state.num_qubits
    out = []
    for s in range(shots):
        u = shot_rng(seed, s).random()
        out.append(index_to_bitstring(sample_index(cumulative, u), L))
    return out
