"""
Tests for frequency-manipulated startpoints and the ablation variants.
"""
import numpy as np
import pytest

from latentstart.core.fourier import band_energy, fft2, highpass_of, make_lowpass, split_bands
from latentstart.core.startpoint import (
    StartpointKind,
    StartpointSpec,
    frequency_manipulate,
    make_variant,
    parse_kind,
)
from latentstart.errors import ErrorCode, StartpointError
from latentstart.types import FilterKind, FilterSpec
from latentstart.utils import SeededRng


class TestFrequencyManipulation:
    """Low-band attenuation plus fresh noise."""

    def test_alpha_one_is_identity(self, rng):
        """Test alpha one is identity."""
        z = rng("z").normal((8, 8, 4))
        assert np.array_equal(frequency_manipulate(z, FilterSpec(), 1.0, 1.0, 5), z)

    def test_ideal_filter_energy_law(self, rng):
        """Test ideal filter energy law."""
        spec = FilterSpec(FilterKind.IDEAL, cutoff=0.5)
        z = rng("z").normal((16, 16, 2))
        mask = make_lowpass(spec, 16, 16)
        out = frequency_manipulate(z, spec, 0.7, 0.0, 0)
        assert band_energy(fft2(out), mask) == pytest.approx(
            0.49 * band_energy(fft2(z), mask), rel=1e-9
        )
        high = highpass_of(mask)
        assert band_energy(fft2(out), high) == pytest.approx(band_energy(fft2(z), high), rel=1e-9)

    def test_gaussian_filter_components(self, rng):
        """Test gaussian filter components."""
        spec = FilterSpec()
        z = rng("z").normal((16, 16, 1))
        spectrum = fft2(z)
        low, high = split_bands(spectrum, make_lowpass(spec, 16, 16))
        out = fft2(frequency_manipulate(z, spec, 0.7, 0.0, 0))
        assert np.max(np.abs(out - (0.7 * low + high))) < 1e-9

    def test_linear_without_noise(self, rng):
        """Test linear without noise."""
        z1, z2 = rng("z1").normal((8, 8, 1)), rng("z2").normal((8, 8, 1))
        spec = FilterSpec()
        combined = frequency_manipulate(2.0 * z1 - 0.5 * z2, spec, 0.6, 0.0, 0)
        separate = (2.0 * frequency_manipulate(z1, spec, 0.6, 0.0, 0)
                    - 0.5 * frequency_manipulate(z2, spec, 0.6, 0.0, 0))
        assert np.max(np.abs(combined - separate)) < 1e-10

    def test_seed_only_changes_noise_term(self, rng):
        """Test seed only changes noise term."""
        z = rng("z").normal((8, 8, 1))
        spec = FilterSpec()
        first = frequency_manipulate(z, spec, 0.7, 1.0, 1)
        second = frequency_manipulate(z, spec, 0.7, 1.0, 2)
        assert np.array_equal(first, frequency_manipulate(z, spec, 0.7, 1.0, 1))
        eta_1 = SeededRng(1, "noise").normal((8, 8, 1))
        eta_2 = SeededRng(2, "noise").normal((8, 8, 1))
        assert np.max(np.abs((first - second) - 0.3 * (eta_1 - eta_2))) < 1e-12

    @pytest.mark.parametrize("alpha", [-0.01, 1.01])
    def test_alpha_range(self, rng, alpha):
        """Test alpha range."""
        with pytest.raises(StartpointError) as excinfo:
            frequency_manipulate(rng("z").normal((8, 8, 1)), FilterSpec(), alpha, 0.0, 0)
        assert excinfo.value.code == ErrorCode.INVALID_ALPHA

    def test_negative_noise_sigma(self, rng):
        """Test negative noise sigma."""
        with pytest.raises(StartpointError):
            frequency_manipulate(rng("z").normal((8, 8, 1)), FilterSpec(), 0.5, -1.0, 0)


class TestVariants:
    """Ablation startpoints."""

    @pytest.fixture
    def z_T(self, rng):
        return rng("zT").normal((64, 64, 4))

    def test_inversion_is_unchanged(self, z_T):
        """Test inversion is unchanged."""
        out = make_variant(z_T, StartpointSpec(StartpointKind.INVERSION))
        assert np.array_equal(out, z_T)
        assert out is not z_T

    def test_scaled_uses_one_factor(self, z_T):
        """Test scaled uses one factor."""
        out = make_variant(z_T, StartpointSpec(StartpointKind.SCALED, seed=3))
        ratio = out / z_T
        assert np.allclose(ratio, ratio.flat[0])
        assert 0.5 <= ratio.flat[0] < 1.0
        assert np.unravel_index(np.argmax(out), out.shape) == np.unravel_index(
            np.argmax(z_T), z_T.shape)

    def test_scaled_per_bin(self, z_T):
        """Test scaled per bin."""
        out = make_variant(z_T, StartpointSpec(StartpointKind.SCALED, seed=3, per_bin_scale=True))
        ratio = out / z_T
        assert ratio.std() > 0.05
        assert np.all((ratio >= 0.5 - 1e-12) & (ratio < 1.0 + 1e-12))

    def test_noised_adds_unit_variance(self, z_T):
        """Test noised adds unit variance."""
        out = make_variant(z_T, StartpointSpec(StartpointKind.NOISED, seed=4))
        assert np.var(out - z_T) == pytest.approx(1.0, abs=0.05)

    def test_shifted_per_bin(self, z_T):
        """Test shifted per bin."""
        diff = make_variant(z_T, StartpointSpec(StartpointKind.SHIFTED, seed=5)) - z_T
        assert np.all((diff >= -0.5 - 1e-12) & (diff < 0.5 + 1e-12))
        assert diff.std() > 0.2

    def test_shifted_shared(self, z_T):
        """Test shifted shared."""
        diff = make_variant(z_T, StartpointSpec(StartpointKind.SHIFTED, seed=5,
                                                shared_shift=True)) - z_T
        assert np.allclose(diff, diff.flat[0])

    def test_random_ignores_input(self, z_T):
        """Test random ignores input."""
        spec = StartpointSpec(StartpointKind.RANDOM, seed=6)
        first = make_variant(z_T, spec)
        second = make_variant(np.zeros_like(z_T), spec)
        assert np.array_equal(first, second)
        assert first.shape == z_T.shape

    def test_freq_manipulated_delegates(self, z_T):
        """Test freq manipulated delegates."""
        spec = StartpointSpec(alpha=0.7, noise_sigma=0.5, seed=8)
        assert np.array_equal(make_variant(z_T, spec),
                              frequency_manipulate(z_T, spec.filter, 0.7, 0.5, 8))

    def test_variants_are_deterministic(self, z_T):
        """Test variants are deterministic."""
        for kind in StartpointKind:
            spec = StartpointSpec(kind, seed=11)
            assert np.array_equal(make_variant(z_T, spec), make_variant(z_T, spec))


class TestSpec:
    """StartpointSpec parsing and validation."""

    def test_unknown_kind(self):
        """Test unknown kind."""
        with pytest.raises(StartpointError) as excinfo:
            StartpointSpec("sideways")
        assert excinfo.value.code == ErrorCode.UNKNOWN_STARTPOINT
        with pytest.raises(StartpointError):
            parse_kind("sideways")

    def test_parse_kind(self):
        """Test parse kind."""
        assert parse_kind("freq_manipulated") is StartpointKind.FREQ_MANIPULATED
        assert parse_kind(StartpointKind.RANDOM) is StartpointKind.RANDOM

    def test_defaults(self):
        """Test defaults."""
        spec = StartpointSpec()
        assert spec.kind is StartpointKind.FREQ_MANIPULATED
        assert spec.alpha == 0.7
        assert spec.filter.sigma == 0.3
        assert spec.to_dict()["filter"]["kind"] == "gaussian"

    def test_invalid_seed(self):
        """Test invalid seed."""
        with pytest.raises(StartpointError):
            StartpointSpec(seed=-1)
