"""
Tests for the style-transfer pipeline and the ablation drivers.
"""
from dataclasses import replace

import numpy as np
import pytest

from latentstart.core.guidance import build_negative_embedding
from latentstart.core.models import (
    GaussianComponent,
    extract_content,
    extract_style,
    label_embedding,
    make_conditional_mixture,
)
from latentstart.core.pipeline import (
    NegativeStage,
    TransferConfig,
    ablate_startpoints,
    ablation_table,
    filter_sweep,
    frequency_ablation,
    frequency_analysis,
    guidance_sweep,
    negative_mode_sweep,
    run_parallel,
    style_transfer,
)
from latentstart.core.startpoint import StartpointKind, StartpointSpec
from latentstart.data import checkerboard, label_draw, mode_pairs
from latentstart.errors import PipelineError, ShapeError, StartpointError

METRIC_KEYS = {"content_l2", "low_band_ratio", "output_low_band_ratio",
               "style_embedding_distance", "leakage_distance", "high_band_energy",
               "content_high_band_energy"}


@pytest.fixture
def pair(two_label_model):
    return label_draw(two_label_model, "a", seed=1), label_draw(two_label_model, "b", seed=2)


@pytest.fixture
def base_cfg(pair):
    content, style = pair
    return TransferConfig(content, style, seed=3)


@pytest.fixture
def mirrored_model(schedule):
    """Unit-scale labels at +checkerboard and -checkerboard."""
    board = checkerboard((8, 8, 1))
    return make_conditional_mixture(
        {"a": [GaussianComponent(board, 1.0)], "b": [GaussianComponent(-board, 1.0)]},
        schedule,
    )


class TestTransferConfig:
    """Run configuration defaults and validation."""

    def test_reference_defaults(self, base_cfg):
        """Test reference defaults."""
        data = base_cfg.to_dict()
        assert data["omega_i"] == 1.5
        assert data["cfg_omega"] == 5.0
        assert data["steps"] == 50
        assert data["negative_stage"] == "inversion"
        assert data["startpoint"]["kind"] == "freq_manipulated"
        assert data["startpoint"]["alpha"] == 0.7
        assert data["startpoint"]["filter"] == {"kind": "gaussian", "sigma": 0.3,
                                                "cutoff": 0.5, "order": 2}

    def test_run_seed_overrides_startpoint_seed(self, pair):
        """Test run seed overrides startpoint seed."""
        cfg = TransferConfig(*pair, startpoint=StartpointSpec(seed=1), seed=9)
        assert cfg.startpoint.seed == 9
        assert cfg.with_startpoint(kind=StartpointKind.RANDOM).startpoint.seed == 9

    def test_content_and_style_shapes_must_agree(self, pair):
        """Test content and style shapes must agree."""
        with pytest.raises(ShapeError):
            TransferConfig(pair[0], np.zeros((8, 9, 1)))


class TestStyleTransfer:
    """End-to-end runs."""

    def test_result_contents(self, two_label_model, schedule, base_cfg):
        """Test result contents."""
        result = style_transfer(two_label_model, schedule, base_cfg)
        assert result.output.shape == (8, 8, 1)
        assert set(result.metrics) == METRIC_KEYS
        assert len(result.inversion_trajectory) == 51
        assert len(result.sampling_trajectory) == 51
        assert np.array_equal(result.sampling_trajectory.initial, result.startpoint)
        manifest = result.manifest
        assert manifest["guidance"]["inversion"]["mode"] == "negative"
        assert manifest["guidance"]["sampling"] == {"mode": "cfg", "omega": 5.0,
                                                    "positive": "style", "negative": None}
        assert manifest["seeds"] == {"run": 3, "startpoint": 3}

    def test_deterministic(self, two_label_model, schedule, base_cfg):
        """Test deterministic."""
        first = style_transfer(two_label_model, schedule, base_cfg)
        second = style_transfer(two_label_model, schedule, base_cfg)
        assert np.array_equal(first.output, second.output)
        assert first.metrics == second.metrics

    def test_seed_changes_fresh_noise(self, two_label_model, schedule, base_cfg):
        """Test seed changes fresh noise."""
        first = style_transfer(two_label_model, schedule, base_cfg)
        other = style_transfer(two_label_model, schedule, replace(base_cfg, seed=4))
        assert np.array_equal(first.inversion_trajectory.final, other.inversion_trajectory.final)
        assert not np.array_equal(first.startpoint, other.startpoint)

    def test_reconstruction_without_guidance_effects(self, single_label_model, schedule, rng):
        """Test reconstruction without guidance effects."""
        content = checkerboard((8, 8, 1), amplitude=2.0) + 0.2 * rng("content").normal((8, 8, 1))
        cfg = TransferConfig(content, content, omega_i=1.0,
                             startpoint=StartpointSpec(alpha=1.0))
        result = style_transfer(single_label_model, schedule, cfg)
        assert result.metrics["content_l2"] < 1e-2

    def test_negative_condition_selects_style_label(self, two_label_model, pair):
        """Test that the negative condition selects the style image's label."""
        content, style = pair
        negative = build_negative_embedding(extract_style(content), extract_content(style))
        assert two_label_model.match(label_embedding(content)) == 0
        assert two_label_model.match(negative) == 1

    def test_negative_guidance_on_and_off(self, two_label_model, schedule, base_cfg):
        """Test negative guidance on (scale 1.5) against off (scale 1)."""
        off = style_transfer(two_label_model, schedule, replace(base_cfg, omega_i=1.0))
        on = style_transfer(two_label_model, schedule, base_cfg)
        assert off.manifest["guidance"]["inversion"]["omega_i"] == 1.0
        assert not np.allclose(on.inversion_trajectory.final, off.inversion_trajectory.final)
        assert not np.allclose(on.output, off.output)

    def test_negative_stage_sampling(self, two_label_model, schedule, base_cfg):
        """Test negative stage sampling."""
        cfg = replace(base_cfg, negative_stage=NegativeStage.SAMPLING)
        guidance = style_transfer(two_label_model, schedule, cfg).manifest["guidance"]
        assert guidance["inversion"]["mode"] == "none"
        assert guidance["sampling"]["mode"] == "dual"
        assert guidance["sampling"]["omega_plus"] == 5.0
        assert guidance["sampling"]["omega_minus"] == 1.5

    def test_other_step_count(self, two_label_model, schedule, base_cfg):
        """Test other step count."""
        result = style_transfer(two_label_model, schedule, replace(base_cfg, steps=10))
        assert len(result.sampling_trajectory) == 11
        assert result.manifest["schedule"]["t_sample"] == 10

    def test_failure_names_stage(self, two_label_model, schedule, rng):
        """Test failure names stage."""
        big = rng("big").normal((16, 16, 1))
        with pytest.raises(PipelineError) as excinfo:
            style_transfer(two_label_model, schedule, TransferConfig(big, big))
        assert excinfo.value.stage == "inversion"
        assert "inversion" in str(excinfo.value)
        assert isinstance(excinfo.value.cause, ShapeError)


class TestAblations:
    """Startpoint ablations and sweeps."""

    def test_ablation_matches_direct_runs(self, two_label_model, schedule, base_cfg):
        """Test ablation matches direct runs."""
        kinds = [StartpointKind.INVERSION, StartpointKind.RANDOM, StartpointKind.SCALED]
        results = ablate_startpoints(two_label_model, schedule, base_cfg, kinds)
        for kind, result in zip(kinds, results):
            direct = style_transfer(two_label_model, schedule, base_cfg.with_startpoint(kind=kind))
            assert np.array_equal(result.output, direct.output)

    def test_ablation_order_does_not_matter(self, two_label_model, schedule, base_cfg):
        """Test ablation order does not matter."""
        forward = ablate_startpoints(two_label_model, schedule, base_cfg, ["noised", "shifted"])
        backward = ablate_startpoints(two_label_model, schedule, base_cfg, ["shifted", "noised"])
        assert np.array_equal(forward[0].output, backward[1].output)
        assert np.array_equal(forward[1].output, backward[0].output)

    def test_threads_do_not_change_results(self, two_label_model, schedule, base_cfg):
        """Test threads do not change results."""
        kinds = ["inversion", "random", "freq_manipulated"]
        serial = ablate_startpoints(two_label_model, schedule, base_cfg, kinds, threads=1)
        pooled = ablate_startpoints(two_label_model, schedule, base_cfg, kinds, threads=3)
        for a, b in zip(serial, pooled):
            assert np.array_equal(a.output, b.output)

    def test_ablation_table(self, two_label_model, schedule, base_cfg):
        """Test ablation table."""
        results = ablate_startpoints(two_label_model, schedule, base_cfg, ["inversion", "random"])
        table = ablation_table(results)
        assert table.column("kind") == ["inversion", "random"]
        assert table.column("content_l2")[0] == results[0].metrics["content_l2"]

    def test_inversion_beats_random_start(self, schedule):
        """Test inversion beats random start."""
        mean_a = checkerboard((8, 8, 1))
        model = make_conditional_mixture(
            {"a": [GaussianComponent(mean_a, 1.0)], "b": [GaussianComponent(mean_a + 0.125, 1.0)]},
            schedule,
        )
        inversion, random = [], []
        for i, (content, style) in enumerate(mode_pairs(model, "a", "b", 20, seed=5,
                                                        noise_scale=1.0)):
            cfg = TransferConfig(content, style, seed=i)
            results = ablate_startpoints(model, schedule, cfg, ["inversion", "random"])
            inversion.append(results[0].metrics["content_l2"])
            random.append(results[1].metrics["content_l2"])
        assert all(a < b for a, b in zip(inversion, random))
        assert np.mean(inversion) < np.mean(random)

    def test_filter_sweep_low_band_ratio_grows_with_alpha(self, two_label_model, schedule,
                                                          base_cfg):
        """Test filter sweep low band ratio grows with alpha."""
        cfg = base_cfg.with_startpoint(noise_sigma=0.0)
        alphas = [0.5, 0.7, 0.9, 1.0]
        table = filter_sweep(two_label_model, schedule, cfg, [0.3], alphas)
        assert table.column("alpha") == alphas
        ratios = table.column("low_band_ratio")
        assert all(later >= earlier for earlier, later in zip(ratios, ratios[1:]))

    def test_filter_sweep_cell_matches_direct_run(self, two_label_model, schedule, base_cfg):
        """Test filter sweep cell matches direct run."""
        table = filter_sweep(two_label_model, schedule, base_cfg, [0.1, 0.5], [0.7])
        assert table.column("sigma") == [0.1, 0.5]
        spec = replace(base_cfg.startpoint.filter, sigma=0.5)
        direct = style_transfer(two_label_model, schedule,
                                base_cfg.with_startpoint(filter=spec, alpha=0.7))
        assert table.records()[1]["content_l2"] == direct.metrics["content_l2"]

    def test_guidance_sweep(self, two_label_model, schedule, base_cfg):
        """Test one row per negative guidance scale, each with its own result."""
        table = guidance_sweep(two_label_model, schedule, base_cfg, [0.0, 1.0, 2.0])
        assert table.column("omega_i") == [0.0, 1.0, 2.0]
        assert len(table) == 3
        assert len(set(table.column("content_l2"))) == 3

    def test_negative_mode_sweep_direction(self, two_label_model, schedule):
        """Test the seed-averaged distance to the negative mode over the guidance scale."""
        contents = [label_draw(two_label_model, "a", seed=s) for s in range(50)]
        omega_is = [0.0, 1.0, 1.5, 2.0]
        table = negative_mode_sweep(two_label_model, schedule, contents, "a", "b", omega_is,
                                    threads=4)
        assert table.column("omega_i") == omega_is
        distances = table.column("negative_distance")
        assert all(later < earlier for earlier, later in zip(distances, distances[1:]))
        between_modes = np.linalg.norm(checkerboard((8, 8, 1)) + 1.0)
        assert distances[0] - distances[2] >= 0.05 * between_modes

    def test_negative_mode_sweep_unit_scale_is_plain_round_trip(self, two_label_model, schedule):
        """Test that scale one reconstructs near the content mode."""
        contents = [label_draw(two_label_model, "a", seed=s) for s in range(5)]
        table = negative_mode_sweep(two_label_model, schedule, contents, "a", "b", [1.0])
        record = table.records()[0]
        assert record["positive_distance"] < record["negative_distance"]

    def test_negative_mode_sweep_needs_inputs(self, two_label_model, schedule):
        """Test that empty scale and content lists are rejected."""
        content = label_draw(two_label_model, "a")
        with pytest.raises(StartpointError):
            negative_mode_sweep(two_label_model, schedule, [content], "a", "b", [])
        with pytest.raises(StartpointError):
            negative_mode_sweep(two_label_model, schedule, [], "a", "b", [1.0])

    def test_run_parallel_keeps_order(self):
        """Test run parallel keeps order."""
        assert run_parallel(lambda x: x * x, list(range(10)), threads=4) == [
            x * x for x in range(10)]


class TestFrequencyExperiments:
    """High-band correlation and band-reconstruction analyses."""

    def test_unit_alpha_makes_both_arms_equal(self, two_label_model, schedule, base_cfg):
        """Test unit alpha makes both arms equal."""
        pairs = mode_pairs(two_label_model, "a", "b", 4, seed=2, noise_scale=1.0)
        cfg = base_cfg.with_startpoint(alpha=1.0)
        outcome = frequency_ablation(two_label_model, schedule, cfg, pairs)
        assert outcome["r_on"] == outcome["r_off"]
        assert len(outcome["table"]) == 4

    def test_manipulated_start_tracks_content_high_band(self, mirrored_model, schedule,
                                                        base_cfg):
        """Test that the pure band law raises the high-band correlation over 20 pairs."""
        pairs = mode_pairs(mirrored_model, "a", "b", 20, seed=2, noise_scale=1.0)
        cfg = base_cfg.with_startpoint(noise_sigma=0.0)
        outcome = frequency_ablation(mirrored_model, schedule, cfg, pairs, threads=2)
        assert outcome["r_on"] > outcome["r_off"]
        assert len(outcome["table"]) == 20

    def test_default_noise_correlations_are_recorded(self, mirrored_model, schedule, base_cfg):
        """Test the correlations recorded with the default noise term."""
        pairs = mode_pairs(mirrored_model, "a", "b", 20, seed=2, noise_scale=1.0)
        outcome = frequency_ablation(mirrored_model, schedule, base_cfg, pairs, threads=2)
        assert -1.0 <= outcome["r_on"] <= 1.0
        assert -1.0 <= outcome["r_off"] <= 1.0
        assert outcome["table"].column("pair") == list(range(20))

    def test_frequency_analysis(self, two_label_model, schedule, pair):
        """Test frequency analysis."""
        records = frequency_analysis(two_label_model, schedule, pair[0], [0.5, 1.0])
        assert [(r["band"], r["alpha"]) for r in records] == [
            ("low", 0.5), ("low", 1.0), ("high", 0.5), ("high", 1.0)]
        assert records[1]["content_l2"] == records[3]["content_l2"]
        assert records[1]["content_l2"] < records[0]["content_l2"]
