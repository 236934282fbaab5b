"""
Property tests for eigensteps and synthesis.

Tests cover:
- Sampled interior tables validate and are interior
- Eigensteps of random FUNTFs interlace and add one per step
- Synthesis reproduces the requested eigensteps for any base data
- Recovered fiber coordinates synthesize back to the frame
- Straight segments between valid tables stay valid
"""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from funtf.eigensteps import is_interior, linear_path, of_frame, sample_interior, validate
from funtf.engine import random_funtf
from funtf.frames import check_funtf
from funtf.lifting import random_base_data, recover_base_data, synthesize
from funtf.schema import FieldTag

pytestmark = pytest.mark.property

shapes = st.sampled_from([(4, 2), (5, 2), (6, 2), (5, 3), (6, 3), (7, 3), (6, 4)])
seeds = st.integers(min_value=0, max_value=2**16)
fields = st.sampled_from([FieldTag.REAL, FieldTag.COMPLEX])
sample_shapes = st.sampled_from(
    [(4, 2), (5, 2), (5, 3), (6, 2), (6, 3), (6, 4), (7, 4), (7, 5), (8, 3), (8, 5)]
)


class TestEigenstepsProperties:
    """Properties of sampled and computed eigensteps."""

    @settings(max_examples=200, deadline=None)
    @given(shape=sample_shapes, seed=seeds)
    def test_samples_are_interior(self, shape: tuple[int, int], seed: int) -> None:
        """sample_interior returns valid interior tables for any seed."""
        N, d = shape
        table = sample_interior(N, d, rng=seed)
        assert validate(table).ok
        assert is_interior(table)
        np.testing.assert_allclose(table.values.sum(axis=1), np.arange(N + 1), atol=1e-9)

    @settings(max_examples=15, deadline=None)
    @given(shape=shapes, seed=seeds, field_tag=fields)
    def test_frame_eigensteps_validate(
        self, shape: tuple[int, int], seed: int, field_tag: FieldTag
    ) -> None:
        """The eigensteps of any FUNTF satisfy every defining condition."""
        N, d = shape
        table = of_frame(random_funtf(N, d, field_tag, rng=seed))
        assert validate(table).ok
        np.testing.assert_allclose(table.values.sum(axis=1), np.arange(N + 1), atol=1e-8)

    @settings(max_examples=20, deadline=None)
    @given(
        shape=shapes,
        seeds_pair=st.tuples(seeds, seeds),
        t=st.floats(min_value=0.0, max_value=1.0),
    )
    def test_segments_stay_valid(
        self, shape: tuple[int, int], seeds_pair: tuple[int, int], t: float
    ) -> None:
        """Eigensteps tables form a convex set."""
        N, d = shape
        start, end = (sample_interior(N, d, rng=seed) for seed in seeds_pair)
        segment = linear_path(start, end)
        assert validate(segment.at(t)).ok


class TestSynthesisProperties:
    """Properties of synthesize and recover_base_data."""

    @settings(max_examples=15, deadline=None)
    @given(shape=shapes, table_seed=seeds, base_seed=seeds, field_tag=fields)
    def test_synthesis_hits_the_table(
        self, shape: tuple[int, int], table_seed: int, base_seed: int, field_tag: FieldTag
    ) -> None:
        """Any base data gives a FUNTF with exactly the requested eigensteps."""
        N, d = shape
        table = sample_interior(N, d, rng=table_seed)
        frame = synthesize(table, random_base_data(table, field_tag, rng=base_seed))
        assert check_funtf(frame, 1e-7).ok
        assert of_frame(frame).max_deviation(table) < 1e-6

    @settings(max_examples=15, deadline=None)
    @given(shape=shapes, seed=seeds, field_tag=fields)
    def test_recovery_round_trip(self, shape: tuple[int, int], seed: int, field_tag: FieldTag) -> None:
        """Recovered coordinates synthesize back to the frame."""
        N, d = shape
        frame = random_funtf(N, d, field_tag, rng=seed)
        rebuilt = synthesize(of_frame(frame), recover_base_data(frame))
        assert rebuilt.distance(frame) < 1e-6
