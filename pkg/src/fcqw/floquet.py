"""Single-particle (one-excitation sector) analysis: L x L Floquet
operators, quasi-energy spectra under disorder, the winding number, and
the effective Hamiltonian -i log U."""
from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .circuits import Circuit, PotentialProfile, simulate
from .statevec import one_hot_state

UNITARITY_TOL = 1e-10

#: numerical-noise window: eigenphases this close below -pi are treated as +pi
_CUT_SNAP = 1e-12
#: genuine proximity to the log branch cut is rejected within this window
_CUT_TOL = 1e-9


class BranchCutError(ValueError):
    """An eigenphase sits on the wrapped side of the principal-log cut."""


class GridResolutionError(ValueError):
    """Phase increment too large to track; sample on a finer k grid."""


@dataclass
class SingleParticleOperator:
    """Unitary L x L matrix acting on the one-excitation sector."""

    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError(f"expected a square matrix, got shape {m.shape}")
        dev = unitarity_deviation(m)
        if dev >= UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary: max |U+U - I| = {dev:g}")
        self.matrix = m

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass
class QuasiEnergySpectrum:
    """Eigenphases in [0, 2pi), ascending, with column-matched eigenvectors."""

    eigenphases: np.ndarray
    eigenvectors: np.ndarray


@dataclass
class LevelSpacingStats:
    mean_spacing: float
    spacing_variance: float
    min_spacing: float


@dataclass(frozen=True)
class DisorderEnsemble:
    """Seeded ensemble of disorder realizations at strength W.

    ``uniform_symmetric`` draws u_i uniform on [-1, 1] per site;
    ``box_profile`` repeats the fixed square-box pattern.
    """

    realizations: int
    W: float
    distribution: str = "uniform_symmetric"
    seed: int = 0

    def __post_init__(self):
        if self.realizations < 1:
            raise ValueError("ensemble needs at least one realization")
        if self.distribution not in ("uniform_symmetric", "box_profile"):
            raise ValueError(f"unknown distribution {self.distribution!r}")


def unitarity_deviation(m: np.ndarray) -> float:
    return float(np.max(np.abs(m.conj().T @ m - np.eye(m.shape[0]))))


def sample_disorder_profiles(ensemble: DisorderEnsemble, L: int) -> list[PotentialProfile]:
    """One profile per realization, each from its own seeded substream."""
    profiles = []
    for r in range(ensemble.realizations):
        if ensemble.distribution == "box_profile":
            profiles.append(PotentialProfile.box(L, ensemble.W))
        else:
            rng = np.random.default_rng(
                np.random.SeedSequence(ensemble.seed, spawn_key=(r,))
            )
            profiles.append(PotentialProfile.random_symmetric(L, ensemble.W, rng))
    return profiles


# ---------------------------------------------------------------------------
# operators


def shift_matrix(L: int, chirality: str = "right") -> np.ndarray:
    """Cyclic one-site shift; ``right`` moves occupation i -> i+1 (mod L)."""
    s = np.zeros((L, L), dtype=complex)
    for i in range(L):
        if chirality == "right":
            s[(i + 1) % L, i] = 1.0
        else:
            s[(i - 1) % L, i] = 1.0
    return s


def onsite_phases(profile: PotentialProfile) -> np.ndarray:
    """Phases the onsite rz layer applies to each one-hot state.

    Site j's own gate contributes e^{+i W u_j} and every other site's gate
    contributes its empty-branch factor e^{-i W u_k}, so the one-excitation
    diagonal is exp(i W (2 u_j - sum(u))).
    """
    u = profile.u
    return profile.W * (2.0 * u - np.sum(u))


def fcqw_step_operator(
    L: int, profile: PotentialProfile, chirality: str = "right"
) -> SingleParticleOperator:
    """One-excitation matrix of one walk step: shift times diagonal phases."""
    if profile.num_sites != L:
        raise ValueError(f"profile has {profile.num_sites} sites, expected {L}")
    d = np.exp(1j * onsite_phases(profile))
    return SingleParticleOperator(shift_matrix(L, chirality) * d[np.newaxis, :])


def xy_chain_hamiltonian(
    L: int, profile: PotentialProfile, J: float = 1.0, periodic: bool = False
) -> np.ndarray:
    """One-excitation Hamiltonian of the XY chain with onsite sigma-z terms.

    Hopping matrix elements are -2J between neighbours; the diagonal is
    W (sum(u) - 2 u_j), i.e. an occupied site is shifted by -W u_j relative
    to the particle-free background.
    """
    if profile.num_sites != L:
        raise ValueError(f"profile has {profile.num_sites} sites, expected {L}")
    hmat = np.zeros((L, L), dtype=complex)
    for i in range(L - 1):
        hmat[i, i + 1] = hmat[i + 1, i] = -2.0 * J
    if periodic and L > 2:
        hmat[0, L - 1] = hmat[L - 1, 0] = -2.0 * J
    np.fill_diagonal(hmat, profile.W * (np.sum(profile.u) - 2.0 * profile.u))
    return hmat


def xy_step_operator(
    L: int,
    profile: PotentialProfile,
    J: float = 1.0,
    t: float = 1.0,
    periodic: bool = False,
) -> SingleParticleOperator:
    """Exact one-excitation propagator e^{-i H t} of the XY chain."""
    hmat = xy_chain_hamiltonian(L, profile, J, periodic)
    evals, evecs = np.linalg.eigh(hmat)
    u = (evecs * np.exp(-1j * evals * t)) @ evecs.conj().T
    return SingleParticleOperator(u)


def reduce_to_single_particle(circuit: Circuit) -> SingleParticleOperator:
    """Project a number-conserving circuit onto the one-excitation sector.

    Each one-hot state is evolved through the full 2**L simulation; any
    leakage out of the sector (or loss of unitarity of the reduced block)
    flags the circuit as not particle-number conserving.
    """
    L = circuit.num_qubits
    rows = [1 << i for i in range(L)]
    m = np.empty((L, L), dtype=complex)
    for i in range(L):
        psi = simulate(circuit, one_hot_state(L, i))
        col = psi.amplitudes[rows]
        leak = 1.0 - float(np.sum(np.abs(col) ** 2))
        if leak > UNITARITY_TOL:
            raise ValueError(
                f"circuit does not conserve particle number: one-hot site {i} "
                f"leaks {leak:g} out of the one-excitation sector"
            )
        m[:, i] = col
    return SingleParticleOperator(m)


# ---------------------------------------------------------------------------
# momentum space


def momentum_operator(k: float, W: float = 0.0) -> complex:
    """Bloch factor of the chiral walk with a uniform potential.

    The single band disperses as epsilon(k) = k + W (mod 2pi), W being the
    phase an occupied site gains per step.
    """
    return complex(np.exp(1j * (k + W)))


def chiral_momentum_family(n_k: int = 256, W: float = 0.0) -> np.ndarray:
    """The chiral walk's Bloch factors on a uniform k grid over [0, 2pi)."""
    ks = 2.0 * np.pi * np.arange(n_k) / n_k
    return np.exp(1j * (ks + W))


def xy_momentum_family(
    n_k: int = 256, J: float = 1.0, t: float = 1.0, onsite: float = 0.0
) -> np.ndarray:
    """Step propagators e^{-i t epsilon(k)} of the clean XY chain band,
    epsilon(k) = -4 J cos k + onsite."""
    ks = 2.0 * np.pi * np.arange(n_k) / n_k
    return np.exp(-1j * t * (-4.0 * J * np.cos(ks) + onsite))


def winding_number(samples) -> int:
    """Winding of det U_k around the unit circle over one Brillouin zone.

    ``samples`` is a closed loop: scalars or d x d unitaries on a uniform
    k grid (the wrap from the last sample back to the first is included).
    Computed as (1/2pi) * sum of arg det(U_{k+1} U_k^dagger), which is an
    exact integer up to floating-point residue.
    """
    u = np.asarray(samples, dtype=complex)
    if u.ndim == 1:
        u = u[:, np.newaxis, np.newaxis]
    if u.ndim != 3 or u.shape[1] != u.shape[2]:
        raise ValueError(f"expected scalars or square matrices, got shape {u.shape}")
    n_k = u.shape[0]
    if n_k < 8:
        raise ValueError(f"need at least 8 grid points, got {n_k}")
    for j in range(n_k):
        dev = unitarity_deviation(u[j])
        if dev >= UNITARITY_TOL:
            raise ValueError(f"sample {j} is not unitary: max |U+U - I| = {dev:g}")
    nxt = np.roll(np.arange(n_k), -1)
    increments = np.array(
        [np.angle(np.linalg.det(u[nxt[j]] @ u[j].conj().T)) for j in range(n_k)]
    )
    if np.any(np.abs(increments) >= np.pi - 0.1):
        raise GridResolutionError(
            f"phase increment {np.max(np.abs(increments)):.3f} rad is too close to "
            "the branch; sample the family on a finer k grid"
        )
    total = float(np.sum(increments)) / (2.0 * np.pi)
    w = round(total)
    residue = abs(total - w)
    if residue > 1e-6:
        raise ValueError(f"winding did not quantize: residue {residue:g}")
    return int(w)


# ---------------------------------------------------------------------------
# spectra


def quasi_energy_spectrum(op: SingleParticleOperator) -> QuasiEnergySpectrum:
    """Eigenphases in [0, 2pi) ascending with orthonormal eigenvectors.

    Schur decomposition of the (normal) unitary gives an orthonormal
    eigenbasis even for degenerate phases.  Ties are broken by the
    lexicographic order of the rounded eigenvector entries, keeping the
    output deterministic.
    """
    t, q = scipy.linalg.schur(op.matrix, output="complex")
    phases = np.angle(np.diag(t))
    phases = np.where(phases < 0.0, phases + 2.0 * np.pi, phases)
    phases[phases >= 2.0 * np.pi] -= 2.0 * np.pi

    def sort_key(j: int):
        vec_key = tuple(
            (round(float(z.real), 12), round(float(z.imag), 12))
            for z in q[:, j]
        )
        return (round(float(phases[j]), 12), vec_key)

    order = sorted(range(len(phases)), key=sort_key)
    return QuasiEnergySpectrum(phases[order], q[:, order])


def level_spacing_stats(spectrum: QuasiEnergySpectrum) -> LevelSpacingStats:
    """Circular nearest-neighbour spacing statistics of the eigenphases."""
    phases = np.sort(spectrum.eigenphases)
    if len(phases) < 2:
        raise ValueError("need at least two eigenphases for spacings")
    spacings = np.diff(phases, append=phases[0] + 2.0 * np.pi)
    return LevelSpacingStats(
        mean_spacing=float(np.mean(spacings)),
        spacing_variance=float(np.var(spacings)),
        min_spacing=float(np.min(spacings)),
    )


def predicted_chiral_eigenphases(L: int, profile: PotentialProfile) -> np.ndarray:
    """Analytic spectrum of shift x diagonal: the characteristic equation is
    lambda^L = e^{i sum(phases)}, so eigenphases are (sum + 2 pi n) / L."""
    total = float(np.sum(onsite_phases(profile)))
    phases = (total + 2.0 * np.pi * np.arange(L)) / L
    return np.sort(np.mod(phases, 2.0 * np.pi))


def effective_hamiltonian(op: SingleParticleOperator) -> np.ndarray:
    """Hermitian H with e^{iH} = U, phases on the principal branch (-pi, pi].

    Eigenvalues exactly at -1 map deterministically to +pi; eigenphases on
    the wrapped side of the cut (within 1e-9 past -pi, beyond numerical
    noise) raise :class:`BranchCutError` because the log is discontinuous
    there.
    """
    t, q = scipy.linalg.schur(op.matrix, output="complex")
    phases = np.angle(np.diag(t))
    phases = np.where(phases < -np.pi + _CUT_SNAP, phases + 2.0 * np.pi, phases)
    bad = phases < (-np.pi + _CUT_TOL)
    if np.any(bad):
        worst = phases[bad][0]
        raise BranchCutError(
            f"eigenphase {worst:.12f} lies within {_CUT_TOL:g} of the principal "
            "branch cut at pi"
        )
    hmat = (q * phases) @ q.conj().T
    return 0.5 * (hmat + hmat.conj().T)


# ---------------------------------------------------------------------------
# CSV export (complex entries as re,im pairs)


def save_spectrum_csv(spectrum: QuasiEnergySpectrum, path) -> None:
    dim = len(spectrum.eigenphases)
    header = ["n", "eigenphase"]
    for j in range(dim):
        header += [f"v{j}_re", f"v{j}_im"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for n in range(dim):
            vec = spectrum.eigenvectors[:, n]
            row = [n, repr(float(spectrum.eigenphases[n]))]
            for z in vec:
                row += [repr(float(z.real)), repr(float(z.imag))]
            writer.writerow(row)


def save_matrix_csv(matrix: np.ndarray, path) -> None:
    m = np.asarray(matrix, dtype=complex)
    header = []
    for j in range(m.shape[1]):
        header += [f"c{j}_re", f"c{j}_im"]
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        for row in m:
            flat = []
            for z in row:
                flat += [repr(float(z.real)), repr(float(z.imag))]
            writer.writerow(flat)
