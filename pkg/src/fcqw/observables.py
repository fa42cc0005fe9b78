"""Measured quantities: per-site occupation densities from exact states or
shot counts, the all-sector normalization that mitigates incoherent
bit-flip noise, the inverse participation ratio, and the wave-packet peak
amplitude."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .statevec import StateVector

_NORM_TOL = 1e-9


@dataclass
class SiteDistribution:
    """Per-site values p_i; ``normalized`` marks a proper distribution."""

    p: np.ndarray
    normalized: bool = False

    def __post_init__(self):
        self.p = np.asarray(self.p, dtype=float).ravel()

    @property
    def num_sites(self) -> int:
        return len(self.p)


def site_density_exact(state: StateVector) -> SiteDistribution:
    """Occupation expectation per site: p_i = sum over basis states with
    bit i set of |amplitude|^2.  Unnormalized (sums to the particle number)."""
    probs = np.abs(state.amplitudes) ** 2
    L = state.num_qubits
    idx = np.arange(len(probs))
    p = np.array([probs[(idx >> i) & 1 == 1].sum() for i in range(L)])
    return SiteDistribution(p, normalized=False)


def site_density_counts(result, L: int) -> SiteDistribution:
    """Occupation frequency per site from measured counts (unnormalized)."""
    p = np.zeros(L)
    for bits, count in result.counts.items():
        if len(bits) != L:
            raise ValueError(
                f"bitstring {bits!r} has length {len(bits)}, expected {L}"
            )
        for i, c in enumerate(bits):
            if c == "1":
                p[i] += count
    return SiteDistribution(p / result.shots, normalized=False)


def restricted_site_density_counts(result, L: int, weight: int = 1) -> SiteDistribution:
    """Per-site frequency keeping only bitstrings of the given Hamming
    weight, still divided by the total shot count (discard, don't rescale).
    This is the unmitigated baseline the all-sector normalization is
    compared against."""
    p = np.zeros(L)
    for bits, count in result.counts.items():
        if len(bits) != L:
            raise ValueError(
                f"bitstring {bits!r} has length {len(bits)}, expected {L}"
            )
        if bits.count("1") != weight:
            continue
        for i, c in enumerate(bits):
            if c == "1":
                p[i] += count
    return SiteDistribution(p / result.shots, normalized=False)


def post_process(raw: SiteDistribution) -> SiteDistribution:
    """Normalize over all particle-number sectors: P_i = p_i / sum_j p_j."""
    total = float(np.sum(raw.p))
    if total <= 0.0:
        raise ValueError("cannot normalize an all-zero site density")
    return SiteDistribution(raw.p / total, normalized=True)


def ipr(dist: SiteDistribution) -> float:
    """Inverse participation ratio sum_i p_i^2 of a normalized distribution;
    1 when fully localized, 1/L when uniform."""
    if not dist.normalized or abs(float(np.sum(dist.p)) - 1.0) > _NORM_TOL:
        raise ValueError("ipr requires a normalized site distribution")
    return float(np.sum(dist.p**2))


def peak_amplitude(dist: SiteDistribution, expected_site: int) -> float:
    """Value of the distribution at the ballistic position.  The caller
    supplies the expected site ((start + t) mod L for the chiral walk), so
    noise cannot move the probe with the argmax."""
    if not 0 <= expected_site < dist.num_sites:
        raise IndexError(
            f"site {expected_site} out of range for {dist.num_sites} sites"
        )
    return float(dist.p[expected_site])
