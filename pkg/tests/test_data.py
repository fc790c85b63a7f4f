"""
Tests for the synthetic image helpers.
"""
import numpy as np
import pytest

from latentstart.data import (
    PATTERNS,
    blobs,
    checkerboard,
    label_draw,
    mode_pairs,
    pattern,
    stripes,
)
from latentstart.errors import ConfigError, ErrorCode


def test_stripes_orientation():
    """Test stripes orientation."""
    vertical = stripes((4, 8, 2))
    assert vertical.shape == (4, 8, 2)
    assert np.array_equal(vertical[0], vertical[3])
    horizontal = stripes((8, 4, 1), vertical=False)
    assert np.array_equal(horizontal[:, 0], horizontal[:, 3])
    assert vertical[0, 1, 0] == pytest.approx(1.0)


def test_checkerboard_blocks():
    """Test checkerboard blocks."""
    board = checkerboard((4, 4, 1), block=2, amplitude=3.0)
    assert board[:, :, 0].tolist() == [[3, 3, -3, -3], [3, 3, -3, -3],
                                       [-3, -3, 3, 3], [-3, -3, 3, 3]]


def test_blobs_depend_on_seed():
    """Test blobs depend on seed."""
    assert np.array_equal(blobs((8, 8, 1), seed=1), blobs((8, 8, 1), seed=1))
    assert not np.array_equal(blobs((8, 8, 1), seed=1), blobs((8, 8, 1), seed=2))


@pytest.mark.parametrize("name", PATTERNS)
def test_named_patterns(name):
    """Test named patterns."""
    grid = pattern(name, (8, 8, 2), seed=3)
    assert grid.shape == (8, 8, 2)
    assert np.array_equal(grid, pattern(name, (8, 8, 2), seed=3))


def test_unknown_pattern():
    """Test unknown pattern."""
    with pytest.raises(ConfigError) as excinfo:
        pattern("spirals", (8, 8, 1))
    assert excinfo.value.code == ErrorCode.CONFIG_TYPE
    assert "checkerboard" in excinfo.value.hints[0]


def test_label_draw(two_label_model):
    """Test label draw."""
    draw = label_draw(two_label_model, "a", seed=4)
    assert draw.shape == (8, 8, 1)
    assert np.array_equal(draw, label_draw(two_label_model, "a", seed=4))
    assert not np.array_equal(draw, label_draw(two_label_model, "a", seed=5))
    with pytest.raises(ConfigError):
        label_draw(two_label_model, "c")


def test_mode_pairs_around_prototypes(two_label_model):
    """Test mode pairs around prototypes."""
    board = checkerboard((8, 8, 1))
    pairs = mode_pairs(two_label_model, "a", "b", 3, seed=1, noise_scale=0.0)
    assert len(pairs) == 3
    for content, style in pairs:
        assert np.array_equal(content, board)
        assert np.array_equal(style, np.full((8, 8, 1), -1.0))


def test_mode_pairs_are_distinct(two_label_model):
    """Test mode pairs are distinct."""
    pairs = mode_pairs(two_label_model, "a", "b", 2, seed=1)
    assert not np.array_equal(pairs[0][0], pairs[1][0])
    assert np.array_equal(pairs[0][0], mode_pairs(two_label_model, "a", "b", 2, seed=1)[0][0])
