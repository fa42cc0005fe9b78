"""Monte-Carlo emulation of a noisy processor: per-gate Pauli errors,
readout flips, and shot-level trajectory sampling.

Error model: after each gate, with the per-gate-class probability, a
uniformly chosen non-identity Pauli is inserted on the gate's qubits
(15 choices after a CNOT, 3 after a single-qubit gate).  Readout applies
an independent classical flip per qubit.  SWAPs are lowered to their
three CNOTs first, so the two-qubit error probability applies per
physical CNOT.

Determinism: shot s draws from the substream SeedSequence(seed, (s,)),
so results are independent of thread count.  With all probabilities
zero, each shot consumes a single uniform for the measurement, exactly
matching ``statevec.sample_bitstrings``.
"""
from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, PotentialProfile, build_fcqw_walk, lower_swaps, simulate
from .observables import peak_amplitude, post_process, site_density_counts
from .statevec import (
    StateVector,
    apply_gate_inplace,
    apply_pauli_inplace,
    index_to_bitstring,
    one_hot_state,
    sample_index,
    shot_rng,
)

SWEEP_AXES = ("steps_at_fixed_L", "size_with_t_equals_L")


@dataclass(frozen=True)
class NoiseSpec:
    """Per-gate-class Pauli error probabilities, readout flip probability,
    and the base RNG seed.  Defaults are round numbers of NISQ magnitude;
    they are knobs, not device claims."""

    p_cnot: float = 7e-3
    p_1q: float = 3e-4
    p_readout: float = 1e-2
    seed: int = 0

    def __post_init__(self):
        for name in ("p_cnot", "p_1q", "p_readout"):
            p = getattr(self, name)
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {p}")

    def replace_seed(self, seed: int) -> "NoiseSpec":
        return NoiseSpec(self.p_cnot, self.p_1q, self.p_readout, seed)


@dataclass
class ShotResult:
    """Aggregated measurement outcomes: bitstring -> count."""

    counts: dict[str, int]
    shots: int

    def __post_init__(self):
        if sum(self.counts.values()) != self.shots:
            raise ValueError("counts must sum to the shot total")

    def to_json(self) -> str:
        return json.dumps(
            {"shots": self.shots, "counts": dict(sorted(self.counts.items()))}
        )

    @classmethod
    def from_json(cls, text: str) -> "ShotResult":
        data = json.loads(text)
        return cls(counts=dict(data["counts"]), shots=int(data["shots"]))


def _basis_index(state: StateVector) -> int | None:
    """Basis index if the state is (exactly) a computational basis state."""
    nz = np.flatnonzero(state.amplitudes)
    if len(nz) == 1:
        return int(nz[0])
    return None


def _apply_perm_gate_index(index: int, gate) -> int:
    """Track a basis index through rz/swap/cnot (all basis-permutation gates)."""
    if gate.kind == "swap":
        a, b = gate.targets
        ba, bb = (index >> a) & 1, (index >> b) & 1
        if ba != bb:
            index ^= (1 << a) | (1 << b)
    elif gate.kind == "cnot":
        c, t = gate.targets
        if (index >> c) & 1:
            index ^= 1 << t
    return index


def _draw_pauli(rng: np.random.Generator, gate) -> tuple[int, ...]:
    """Codes (0=I, 1=X, 2=Y, 3=Z) per target qubit, never all-identity."""
    if gate.kind == "cnot":
        code = int(rng.integers(1, 16))
        return (code & 3, (code >> 2) & 3)
    return (int(rng.integers(1, 4)),)


def run_noisy(
    circuit: Circuit,
    initial: StateVector,
    spec: NoiseSpec,
    shots: int,
    n_threads: int = 1,
) -> ShotResult:
    """Sample measurement outcomes of the circuit under the noise model.

    Each shot evolves a fresh trajectory.  Circuits built from rz/swap/cnot
    acting on a basis state map basis states to basis states, so those
    trajectories are tracked as integers; anything else runs through the
    dense statevector kernels.  Both paths consume the random stream
    identically: the per-gate error flags (one vector, skipped when both
    gate probabilities are zero), then one Pauli draw per flagged gate in
    order, one uniform for the measurement, and the readout flips (skipped
    when p_readout is zero).
    """
    if shots < 1:
        raise ValueError(f"shots must be >= 1, got {shots}")
    if initial.num_qubits != circuit.num_qubits:
        raise ValueError("initial state and circuit width differ")
    lowered = lower_swaps(circuit)
    gates = lowered.instructions
    L = lowered.num_qubits
    gate_probs = np.array(
        [spec.p_cnot if g.kind == "cnot" else spec.p_1q for g in gates]
    )
    draw_flags = bool(np.any(gate_probs > 0.0))

    start_index = _basis_index(initial)
    classical = start_index is not None and all(
        g.kind in ("rz", "swap", "cnot") for g in gates
    )

    if classical:
        # noiseless index after every gate, for first-error fast-forwarding
        traj = np.empty(len(gates) + 1, dtype=np.int64)
        traj[0] = start_index
        b = start_index
        for j, g in enumerate(gates):
            b = _apply_perm_gate_index(b, g)
            traj[j + 1] = b
        worker_state = traj
    else:
        final = simulate(lowered, initial)
        worker_state = (
            initial.amplitudes.copy(),
            np.cumsum(np.abs(final.amplitudes) ** 2),
        )

    def run_shot(s: int) -> int:
        rng = shot_rng(spec.seed, s)
        if draw_flags:
            flagged = np.flatnonzero(rng.random(len(gates)) < gate_probs)
        else:
            flagged = np.empty(0, dtype=int)

        if classical:
            traj_arr = worker_state
            if len(flagged) == 0:
                index = int(traj_arr[-1])
            else:
                first = int(flagged[0])
                index = int(traj_arr[first + 1])
                flag_set = set(int(f) for f in flagged)
                for q, code in zip(gates[first].targets, _draw_pauli(rng, gates[first])):
                    if code in (1, 2):
                        index ^= 1 << q
                for j in range(first + 1, len(gates)):
                    index = _apply_perm_gate_index(index, gates[j])
                    if j in flag_set:
                        for q, code in zip(gates[j].targets, _draw_pauli(rng, gates[j])):
                            if code in (1, 2):
                                index ^= 1 << q
            u = rng.random()  # stream-aligned with the statevector path
        else:
            init_amps, clean_cumulative = worker_state
            if len(flagged) == 0:
                cumulative = clean_cumulative
            else:
                amps = init_amps.copy()
                flag_set = set(int(f) for f in flagged)
                for j, g in enumerate(gates):
                    apply_gate_inplace(amps, L, g)
                    if j in flag_set:
                        for q, code in zip(g.targets, _draw_pauli(rng, g)):
                            apply_pauli_inplace(amps, L, q, code)
                cumulative = np.cumsum(np.abs(amps) ** 2)
            u = rng.random()
            index = sample_index(cumulative, u)

        if spec.p_readout > 0.0:
            flips = rng.random(L) < spec.p_readout
            for q in np.flatnonzero(flips):
                index ^= 1 << int(q)
        return index

    counts: dict[str, int] = {}
    if n_threads <= 1:
        indices = [run_shot(s) for s in range(shots)]
    else:
        bounds = np.linspace(0, shots, n_threads + 1, dtype=int)
        with ThreadPoolExecutor(max_workers=n_threads) as pool:
            chunks = pool.map(
                lambda se: [run_shot(s) for s in range(se[0], se[1])],
                zip(bounds[:-1], bounds[1:]),
            )
            indices = [i for chunk in chunks for i in chunk]
    for index in indices:
        bits = index_to_bitstring(index, L)
        counts[bits] = counts.get(bits, 0) + 1
    return ShotResult(counts=counts, shots=shots)


def amplitude_decay_sweep(
    axis: str,
    spec: NoiseSpec,
    values,
    L: int = 8,
    start_site: int = 0,
    shots: int = 2000,
    n_seeds: int = 1,
    profile_W: float = 0.0,
    n_threads: int = 1,
) -> list[tuple[int, float]]:
    """Mean post-processed peak amplitude of the noisy chiral walk.

    ``steps_at_fixed_L`` sweeps the step count t at fixed L;
    ``size_with_t_equals_L`` sweeps the lattice size with t = L.  Each
    point averages the peak amplitude over ``n_seeds`` independent runs of
    ``shots`` shots (seeds derived from spec.seed and the point).  Returns
    (x, mean amplitude) rows sorted by x.
    """
    if axis not in SWEEP_AXES:
        raise ValueError(f"axis must be one of {SWEEP_AXES}, got {axis!r}")
    xs = sorted(values)
    if not xs:
        raise ValueError("sweep range must be nonempty")
    rows = []
    for x in xs:
        if axis == "steps_at_fixed_L":
            size, steps = L, int(x)
        else:
            size, steps = int(x), int(x)
        profile = PotentialProfile.uniform(size, profile_W)
        circuit = build_fcqw_walk(size, profile, steps)
        init = one_hot_state(size, start_site)
        target = (start_site + steps) % size
        amps = []
        for k in range(n_seeds):
            child = np.random.SeedSequence(spec.seed, spawn_key=(int(x), k))
            seed = int(child.generate_state(1)[0])
            result = run_noisy(circuit, init, spec.replace_seed(seed), shots, n_threads)
            density = post_process(site_density_counts(result, size))
            amps.append(peak_amplitude(density, target))
        rows.append((int(x), float(np.mean(amps))))
    return rows
