import numpy as np
import pytest

from fcqw.circuits import PotentialProfile, build_fcqw_walk, simulate
from fcqw.noise import ShotResult
from fcqw.observables import (
    SiteDistribution,
    ipr,
    peak_amplitude,
    post_process,
    restricted_site_density_counts,
    site_density_counts,
    site_density_exact,
)
from fcqw.statevec import (
    basis_state,
    bitstring_to_index,
    from_amplitudes,
    one_hot_state,
    sample_bitstrings,
)


class TestExactDensity:
    def test_one_hot(self):
        d = site_density_exact(one_hot_state(8, 3))
        assert np.array_equal(d.p, np.eye(8)[3])
        assert not d.normalized

    def test_equal_superposition(self):
        amps = np.zeros(8, dtype=complex)
        amps[bitstring_to_index("100")] = 1 / np.sqrt(2)
        amps[bitstring_to_index("010")] = 1 / np.sqrt(2)
        d = site_density_exact(from_amplitudes(amps))
        assert np.max(np.abs(d.p - [0.5, 0.5, 0.0])) < 1e-12

    def test_two_particle_state_sums_to_two(self):
        d = site_density_exact(basis_state(3, bitstring_to_index("110")))
        assert np.array_equal(d.p, [1.0, 1.0, 0.0])
        assert d.p.sum() == 2.0


class TestCountDensity:
    def test_all_shots_on_one_string(self):
        d = site_density_counts(ShotResult({"10": 7000}, 7000), 2)
        assert np.array_equal(d.p, [1.0, 0.0])

    def test_even_split(self):
        d = site_density_counts(ShotResult({"10": 1, "01": 1}, 2), 2)
        assert np.array_equal(d.p, [0.5, 0.5])

    def test_double_occupation(self):
        d = site_density_counts(ShotResult({"11": 100}, 100), 2)
        assert np.array_equal(d.p, [1.0, 1.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError, match="length"):
            site_density_counts(ShotResult({"101": 5}, 5), 2)

    def test_restricted_keeps_only_requested_weight(self):
        result = ShotResult({"100": 60, "110": 30, "000": 10}, 100)
        d = restricted_site_density_counts(result, 3, weight=1)
        assert np.max(np.abs(d.p - [0.6, 0.0, 0.0])) < 1e-12

    def test_matches_exact_density_at_many_shots(self):
        rng = np.random.default_rng(15)
        amps = rng.normal(size=8) + 1j * rng.normal(size=8)
        state = from_amplitudes(amps / np.linalg.norm(amps))
        draws = sample_bitstrings(state, 100_000, seed=3)
        counts: dict[str, int] = {}
        for s in draws:
            counts[s] = counts.get(s, 0) + 1
        d_counts = site_density_counts(ShotResult(counts, 100_000), 3)
        d_exact = site_density_exact(state)
        assert np.max(np.abs(d_counts.p - d_exact.p)) < 0.01


class TestPostProcess:
    def test_already_normalized(self):
        d = post_process(SiteDistribution(np.array([1.0, 0, 0, 0])))
        assert np.array_equal(d.p, [1, 0, 0, 0])
        assert d.normalized

    def test_halves(self):
        d = post_process(SiteDistribution(np.array([1.0, 1.0, 0.0, 0.0])))
        assert np.array_equal(d.p, [0.5, 0.5, 0.0, 0.0])

    def test_idempotent(self):
        d = SiteDistribution(np.array([0.2, 0.4, 0.1]))
        once = post_process(d)
        twice = post_process(once)
        assert np.array_equal(once.p, twice.p)

    def test_zero_density_rejected(self):
        with pytest.raises(ValueError, match="all-zero"):
            post_process(SiteDistribution(np.zeros(4)))

    def test_integrating_sectors_beats_discarding(self):
        # counts with number-violating strings: normalizing over all sectors
        # must give a larger peak than discarding them without rescaling
        counts = {"10000000": 500, "10100000": 300, "00000000": 200}
        result = ShotResult(counts, 1000)
        pp = post_process(site_density_counts(result, 8))
        restricted = restricted_site_density_counts(result, 8)
        assert peak_amplitude(pp, 0) > peak_amplitude(restricted, 0)


class TestIpr:
    def test_one_hot_is_one(self):
        assert ipr(post_process(SiteDistribution(np.eye(4)[1]))) == 1.0

    def test_uniform_is_inverse_length(self):
        assert abs(ipr(post_process(SiteDistribution(np.ones(8)))) - 0.125) < 1e-15

    def test_bounds_on_random_distributions(self):
        rng = np.random.default_rng(6)
        for _ in range(30):
            L = int(rng.integers(2, 12))
            d = post_process(SiteDistribution(rng.uniform(0.01, 1.0, size=L)))
            value = ipr(d)
            assert 1.0 / L - 1e-12 <= value <= 1.0 + 1e-12

    def test_unnormalized_rejected(self):
        with pytest.raises(ValueError, match="normalized"):
            ipr(SiteDistribution(np.array([0.5, 0.4])))

    def test_chiral_walk_ipr_is_one_for_any_potential(self):
        L = 8
        for W in (0.0, 1.0, 2.0, 3.0, 4.0):
            profile = PotentialProfile.box(L, W)
            for t in range(1, 9):
                state = simulate(build_fcqw_walk(L, profile, t), one_hot_state(L, 0))
                value = ipr(post_process(site_density_exact(state)))
                assert abs(value - 1.0) < 1e-12


class TestPeakAmplitude:
    def test_ideal_walk_peak_is_unity(self):
        L, t = 8, 5
        state = simulate(
            build_fcqw_walk(L, PotentialProfile.uniform(L, 0.0), t), one_hot_state(L, 0)
        )
        d = post_process(site_density_exact(state))
        assert abs(peak_amplitude(d, t % L) - 1.0) < 1e-12

    def test_uniform_distribution(self):
        d = post_process(SiteDistribution(np.ones(8)))
        assert abs(peak_amplitude(d, 3) - 0.125) < 1e-15

    def test_out_of_range_site(self):
        with pytest.raises(IndexError):
            peak_amplitude(SiteDistribution(np.ones(4)), 4)
