"""Builders for the two circuit families: the discrete-step chiral walk
(onsite phase layer followed by a SWAP ladder) and the trotterized
non-chiral XY chain."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import (
    MAX_QUBITS,
    GateInstruction,
    StateVector,
    apply_gate_inplace,
    basis_state,
    cnot,
    h,
    hy,
    rz,
    swap,
    swap_as_cnots,
)

#: 0-based sites of the square-box barrier (1-based sites 2,3,7,8); the
#: walls flank the three-site well 3..5 used by the localization runs.
BOX_SITES = (1, 2, 6, 7)

CHIRALITIES = ("right", "left")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate sequence on a fixed-width register; immutable."""

    num_qubits: int
    instructions: tuple[GateInstruction, ...]
    label: str = ""

    def __post_init__(self):
        if not 1 <= self.num_qubits <= MAX_QUBITS:
            raise ValueError(f"num_qubits must be in [1, {MAX_QUBITS}]")
        object.__setattr__(self, "instructions", tuple(self.instructions))
        for g in self.instructions:
            if max(g.targets) >= self.num_qubits:
                raise IndexError(
                    f"instruction {g.kind}{g.targets} exceeds register width "
                    f"{self.num_qubits}"
                )

    def __len__(self) -> int:
        return len(self.instructions)


@dataclass(frozen=True, eq=False)
class PotentialProfile:
    """Per-site occupation pattern u_i and a global strength W.

    Site i carries the onsite gate rz(2 * W * u_i), so an occupied site
    acquires the phase e^{+i W u_i} per step.
    """

    u: np.ndarray
    W: float

    def __post_init__(self):
        u = np.asarray(self.u, dtype=float).ravel()
        u.setflags(write=False)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "W", float(self.W))

    @property
    def num_sites(self) -> int:
        return len(self.u)

    @classmethod
    def uniform(cls, L: int, W: float) -> "PotentialProfile":
        return cls(np.ones(L), W)

    @classmethod
    def box(cls, L: int, W: float) -> "PotentialProfile":
        if L <= max(BOX_SITES):
            raise ValueError(f"box profile needs L > {max(BOX_SITES)}, got {L}")
        u = np.zeros(L)
        u[list(BOX_SITES)] = 1.0
        return cls(u, W)

    @classmethod
    def random_symmetric(cls, L: int, W: float, rng: np.random.Generator) -> "PotentialProfile":
        """Anderson-style disorder: u_i independent uniform on [-1, 1]."""
        return cls(rng.uniform(-1.0, 1.0, size=L), W)


@dataclass(frozen=True)
class TrotterConfig:
    """Hopping strength J, total time t, and repetition count n."""

    J: float
    t: float
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"trotter repetitions must be >= 1, got {self.n}")
        if self.t < 0:
            raise ValueError(f"evolution time must be >= 0, got {self.t}")


def _check_profile(L: int, profile: PotentialProfile) -> None:
    if profile.num_sites != L:
        raise ValueError(
            f"profile has {profile.num_sites} sites but circuit has {L} qubits"
        )


def build_hopping_ladder(L: int, chirality: str = "right") -> Circuit:
    """Nearest-neighbour SWAP ladder composing to a one-site cyclic shift.

    ``right`` applies pairs (L-2,L-1), ..., (1,2), (0,1) so occupations move
    i -> i+1 (mod L); ``left`` applies them ascending, moving i -> i-1.
    The periodic wrap needs no long-range SWAP.
    """
    if L < 2:
        raise ValueError(f"hopping ladder needs L >= 2, got {L}")
    if chirality not in CHIRALITIES:
        raise ValueError(f"chirality must be one of {CHIRALITIES}, got {chirality!r}")
    order = range(L - 2, -1, -1) if chirality == "right" else range(L - 1)
    gates = [swap(i, i + 1) for i in order]
    return Circuit(L, tuple(gates), label=f"hopping_{chirality}")


def build_onsite_layer(profile: PotentialProfile) -> Circuit:
    """One rz(2 W u_i) per site; a diagonal layer."""
    gates = [rz(i, 2.0 * profile.W * profile.u[i]) for i in range(profile.num_sites)]
    return Circuit(profile.num_sites, tuple(gates), label="onsite")


def build_fcqw_step(L: int, profile: PotentialProfile, chirality: str = "right") -> Circuit:
    """One Floquet period: the onsite layer acts first, then the SWAP ladder."""
    _check_profile(L, profile)
    onsite = build_onsite_layer(profile)
    ladder = build_hopping_ladder(L, chirality)
    return Circuit(L, onsite.instructions + ladder.instructions, label="fcqw_step")


def build_fcqw_walk(
    L: int, profile: PotentialProfile, steps: int, chirality: str = "right"
) -> Circuit:
    """``steps`` repetitions of the Floquet step."""
    if steps < 0:
        raise ValueError(f"steps must be >= 0, got {steps}")
    step = build_fcqw_step(L, profile, chirality)
    return Circuit(L, step.instructions * steps, label=f"fcqw_t{steps}")


def build_xy_trotter(
    L: int,
    profile: PotentialProfile,
    cfg: TrotterConfig,
    periodic: bool = False,
) -> Circuit:
    """First-order trotterization of the XY chain with onsite sigma-z terms.

    Per repetition, each neighbour pair gets its sigma^x sigma^x block
    (H-conjugated CNOT-RZ-CNOT) immediately followed by its sigma^y sigma^y
    block (HY-conjugated), then every site with a nonzero potential gets
    rz(2 W u_i t / n).  Grouping the two blocks per pair keeps every prefix
    of a pair sequence particle-number conserving, which a layer-by-layer
    ordering (all xx, then all yy) does not.
    """
    if L < 2:
        raise ValueError(f"XY chain needs L >= 2, got {L}")
    _check_profile(L, profile)
    dt = cfg.t / cfg.n
    theta_hop = -2.0 * cfg.J * dt
    pairs = [(i, i + 1) for i in range(L - 1)]
    if periodic:
        pairs.append((L - 1, 0))
    gates: list[GateInstruction] = []
    for _ in range(cfg.n):
        for a, b in pairs:
            gates += [h(a), h(b), cnot(a, b), rz(b, theta_hop), cnot(a, b), h(a), h(b)]
            gates += [hy(a), hy(b), cnot(a, b), rz(b, theta_hop), cnot(a, b), hy(a), hy(b)]
        for i in range(L):
            if profile.W * profile.u[i] != 0.0:
                gates.append(rz(i, 2.0 * profile.W * profile.u[i] * dt))
    return Circuit(L, tuple(gates), label=f"xy_trotter_n{cfg.n}")


def lower_swaps(circuit: Circuit) -> Circuit:
    """Replace each SWAP with its three-CNOT realization."""
    gates: list[GateInstruction] = []
    for g in circuit.instructions:
        if g.kind == "swap":
            gates += swap_as_cnots(*g.targets)
        else:
            gates.append(g)
    return Circuit(circuit.num_qubits, tuple(gates), label=circuit.label)


def simulate(circuit: Circuit, initial: StateVector | None = None) -> StateVector:
    """Run the circuit exactly on a dense statevector."""
    if initial is None:
        initial = basis_state(circuit.num_qubits, 0)
    if initial.num_qubits != circuit.num_qubits:
        raise ValueError(
            f"state has {initial.num_qubits} qubits, circuit {circuit.num_qubits}"
        )
    amps = initial.amplitudes.copy()
    for g in circuit.instructions:
        apply_gate_inplace(amps, circuit.num_qubits, g)
    return StateVector(circuit.num_qubits, amps)
