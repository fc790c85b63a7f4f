"""
Tests for content, spectral and Fréchet metrics.
"""
import numpy as np
import pytest

from latentstart.core.metrics import (
    FeatureSet,
    artfid_composite,
    band_ratio,
    content_embedding_distance,
    content_l2,
    frechet_gaussian,
    high_band_energy,
    pearson,
    score_batch,
    style_embedding_distance,
    trace_sqrt_product,
)
from latentstart.core.fourier import make_lowpass
from latentstart.errors import ErrorCode, MetricsError, ShapeError
from latentstart.types import FilterSpec


class TestContentL2:

    def test_identical(self, rng):
        """Test identical inputs."""
        g = rng("g").normal((4, 4, 1))
        assert content_l2(g, g) == 0.0

    def test_zero_output(self, rng):
        """Test zero output."""
        g = rng("g").normal((4, 4, 1))
        assert content_l2(np.zeros_like(g), g) == pytest.approx(1.0)

    def test_scaled(self, rng):
        """Test a scaled copy of the reference."""
        g = rng("g").normal((4, 4, 1))
        assert content_l2(2.0 * g, g) == pytest.approx(1.0)

    def test_zero_reference(self):
        """Test zero reference."""
        with pytest.raises(MetricsError):
            content_l2(np.ones((4, 4, 1)), np.zeros((4, 4, 1)))

    def test_shape_mismatch(self):
        """Test shape mismatch."""
        with pytest.raises(ShapeError):
            content_l2(np.ones((4, 4, 1)), np.ones((4, 5, 1)))


class TestFrechet:
    """Fréchet distance between Gaussian feature statistics."""

    def test_identical_sets(self, rng):
        """Test identical sets."""
        vectors = [rng("f").child(i).normal((3,)) for i in range(10)]
        features = FeatureSet.from_vectors(vectors)
        assert frechet_gaussian(features, features) == pytest.approx(0.0, abs=1e-10)

    def test_unit_mean_shift(self):
        """Test unit mean shift."""
        p = FeatureSet.from_moments([0.0], [[1.0]])
        q = FeatureSet.from_moments([1.0], [[1.0]])
        assert frechet_gaussian(p, q) == pytest.approx(1.0, abs=1e-12)

    def test_diagonal_covariances(self):
        """Test diagonal covariances."""
        p = FeatureSet.from_moments([0.0, 0.0], np.diag([1.0, 4.0]))
        q = FeatureSet.from_moments([1.0, 2.0], np.diag([9.0, 1.0]))
        expected = 5.0 + (np.sqrt(1.0) - np.sqrt(9.0)) ** 2 + (np.sqrt(4.0) - np.sqrt(1.0)) ** 2
        assert frechet_gaussian(p, q) == pytest.approx(expected, rel=1e-10)

    def test_trace_sqrt_against_brute_force(self, rng):
        """Test trace sqrt against brute force."""
        a = rng("a").normal((4, 4))
        b = rng("b").normal((4, 4))
        sigma_p, sigma_q = a @ a.T, b @ b.T
        eigenvalues = np.linalg.eigvals(sigma_p @ sigma_q)
        expected = float(np.sum(np.sqrt(np.clip(eigenvalues.real, 0.0, None))))
        assert trace_sqrt_product(sigma_p, sigma_q) == pytest.approx(expected, rel=1e-8)

    def test_symmetric(self, rng):
        """Test symmetric."""
        p = FeatureSet.from_vectors([rng("p").child(i).normal((3,)) for i in range(6)])
        q = FeatureSet.from_vectors([rng("q").child(i).normal((3,)) + 1 for i in range(6)])
        assert frechet_gaussian(p, q) == pytest.approx(frechet_gaussian(q, p), rel=1e-10)

    def test_not_psd(self):
        """Test a covariance that is not PSD."""
        with pytest.raises(MetricsError) as excinfo:
            FeatureSet.from_moments([0.0, 0.0], [[1.0, 2.0], [2.0, 1.0]])
        assert excinfo.value.code == ErrorCode.NOT_PSD

    def test_not_symmetric(self):
        """Test not symmetric."""
        with pytest.raises(MetricsError):
            FeatureSet.from_moments([0.0, 0.0], [[1.0, 0.5], [0.0, 1.0]])

    def test_dimension_mismatch(self):
        """Test dimension mismatch."""
        with pytest.raises(MetricsError):
            frechet_gaussian(FeatureSet.from_moments([0.0], [[1.0]]),
                             FeatureSet.from_moments([0.0, 0.0], np.eye(2)))

    def test_needs_two_vectors(self):
        """Test needs two vectors."""
        with pytest.raises(MetricsError):
            FeatureSet.from_vectors([np.zeros(3)])


class TestArtFID:

    @pytest.mark.parametrize("content, style, expected", [
        (0.0, 0.0, 1.0),
        (1.0, 1.0, 4.0),
        (0.4881, 13.448, 1.4881 * 14.448),
    ])
    def test_composite(self, content, style, expected):
        """Test composite."""
        assert artfid_composite(content, style) == pytest.approx(expected, rel=1e-12)

    def test_increasing_in_both_arguments(self):
        """Test increasing in both arguments."""
        assert artfid_composite(0.5, 2.0) < artfid_composite(0.6, 2.0)
        assert artfid_composite(0.5, 2.0) < artfid_composite(0.5, 2.1)

    def test_negative_input(self):
        """Test negative input."""
        with pytest.raises(MetricsError):
            artfid_composite(-0.1, 1.0)

    def test_score_batch(self, rng):
        """Test score batch."""
        contents = [rng("c").child(i).normal((8, 8, 1)) for i in range(4)]
        styles = [rng("s").child(i).normal((8, 8, 1)) for i in range(4)]
        scores = score_batch(contents, contents, styles)
        assert scores["content_dist"] == 0.0
        assert scores["style_dist"] >= 0.0
        assert scores["artfid"] == pytest.approx(1.0 + scores["style_dist"])


class TestBandRatio:
    """Low-band energy fraction."""

    def test_constant_grid(self):
        """Test constant grid."""
        assert band_ratio(np.full((8, 8, 1), 2.0), FilterSpec()) == pytest.approx(1.0, abs=1e-12)

    def test_impulse(self):
        """Test impulse."""
        grid = np.zeros((8, 8, 1))
        grid[3, 5, 0] = 1.0
        mask = make_lowpass(FilterSpec(), 8, 8)
        assert band_ratio(grid, FilterSpec()) == pytest.approx(np.mean(mask ** 2), rel=1e-12)

    def test_white_noise_matches_oracle(self, rng):
        """Test white noise matches oracle."""
        grid = rng("noise").normal((16, 16, 1))
        spectrum = np.fft.fftshift(np.fft.fft2(grid[:, :, 0]))
        mask = make_lowpass(FilterSpec(), 16, 16)[:, :, 0]
        expected = np.sum(np.abs(spectrum * mask) ** 2) / np.sum(np.abs(spectrum) ** 2)
        assert band_ratio(grid, FilterSpec()) == pytest.approx(expected, rel=1e-10)

    def test_translation_invariant(self, rng):
        """Test translation invariant."""
        grid = rng("noise").normal((16, 16, 2))
        moved = np.roll(grid, (3, -5), axis=(0, 1))
        assert band_ratio(moved, FilterSpec()) == pytest.approx(band_ratio(grid, FilterSpec()),
                                                                rel=1e-9)

    def test_zero_grid(self):
        """Test zero grid."""
        with pytest.raises(MetricsError):
            band_ratio(np.zeros((8, 8, 1)), FilterSpec())

    def test_high_band_energy_complements(self, rng):
        """Test high band energy complements."""
        grid = rng("noise").normal((8, 8, 1))
        spec = FilterSpec()
        assert high_band_energy(np.full((8, 8, 1), 3.0), spec) == pytest.approx(0.0, abs=1e-20)
        assert high_band_energy(grid, spec) > 0.0


class TestEmbeddingDistances:

    def test_zero_for_same_grid(self, rng):
        """Test zero for same grid."""
        grid = rng("g").normal((8, 8, 1))
        assert style_embedding_distance(grid, grid) == 0.0
        assert content_embedding_distance(grid, grid) == 0.0

    def test_style_sees_mean_shift(self, rng):
        """Test style sees mean shift."""
        grid = rng("g").normal((8, 8, 1))
        assert style_embedding_distance(grid, grid + 1.0) == pytest.approx(1.0, abs=1e-9)
        assert content_embedding_distance(grid, grid + 1.0) == pytest.approx(0.0, abs=1e-12)


class TestPearson:

    def test_perfect_correlation(self):
        """Test perfect correlation."""
        assert pearson([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == pytest.approx(1.0)
        assert pearson([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == pytest.approx(-1.0)

    def test_constant_sample(self):
        """Test constant sample."""
        with pytest.raises(MetricsError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_length_mismatch(self):
        """Test length mismatch."""
        with pytest.raises(MetricsError):
            pearson([1.0, 2.0], [1.0, 2.0, 3.0])
