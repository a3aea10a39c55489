"""Tests for the magic-state pipeline simulator."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tilestep.blocks import DataBlockKind, ProtocolId
from tilestep.errors import ConfigurationError, ValidationError
from tilestep.sim import (
    LayoutConfig,
    availability_times,
    layout_tiles,
    production_availability,
    replay_simulate,
    simulate,
    trace,
)

ONE = ProtocolId.P15TO1
FOUR = ProtocolId.P20TO4
TWELVE = ProtocolId.P116TO12
BIG = ProtocolId.P225TO1


def _cfg(block, *protocols):
    return LayoutConfig(block=block, protocols=tuple(protocols))


# ---------------------------------------------------------------------------
# Reference runs
# ---------------------------------------------------------------------------


class TestSimulateReferenceRuns:
    def test_single_column_compact(self):
        out = simulate(10, 1, _cfg(DataBlockKind.COMPACT, ONE))
        assert out.total_tiles == 29
        assert out.total_steps == 11
        assert out.idle_steps == 2

    def test_single_column_fast_two_producers(self):
        out = simulate(10, 1, _cfg(DataBlockKind.FAST, FOUR, FOUR))
        assert out.total_tiles == 57
        assert out.total_steps == 17
        assert out.idle_steps == 16

    def test_zero_columns(self):
        out = simulate(10, 0, _cfg(DataBlockKind.FAST, ONE))
        assert out.total_steps == 0
        assert out.idle_steps == 0
        assert out.total_tiles == 40
        assert out.consumed == 0
        assert out.produced == 0

    def test_deep_production_bound(self):
        out = simulate(100, 5833, _cfg(DataBlockKind.COMPACT, ONE))
        assert out.total_tiles == 164
        assert out.total_steps == 5833 * 11

    def test_consumed_counts_columns(self):
        out = simulate(10, 7, _cfg(DataBlockKind.INTERMEDIATE, FOUR))
        assert out.consumed == 7
        assert out.produced >= out.consumed


class TestProductionAvailability:
    def test_single_producer(self):
        assert production_availability((ONE,), 3) == 33

    def test_batch_producer(self):
        assert production_availability((FOUR,), 4) == 17
        assert production_availability((FOUR,), 5) == 34

    def test_merged_streams(self):
        assert production_availability((ONE, BIG), 2) == 15

    def test_nondecreasing(self):
        protocols = (ONE, FOUR, TWELVE)
        times = [production_availability(protocols, n) for n in range(1, 80)]
        assert all(b >= a for a, b in zip(times, times[1:]))

    def test_matches_vectorized_form(self):
        protocols = (FOUR, BIG)
        times = availability_times(protocols, 30)
        for n in range(1, 31):
            assert production_availability(protocols, n) == int(times[n - 1])

    def test_count_must_be_positive(self):
        with pytest.raises(ValidationError):
            production_availability((ONE,), 0)


# ---------------------------------------------------------------------------
# Tile accounting
# ---------------------------------------------------------------------------

# (qubits, columns, block, protocol multiset, expected tiles); columns do not
# affect tile totals, so each configuration is checked at one representative
# column count.
TILE_CASES = [
    # q=10, C=1
    (10, 1, DataBlockKind.COMPACT, (ONE,), 29),
    (10, 1, DataBlockKind.FAST, (ONE, BIG), 216),
    (10, 1, DataBlockKind.FAST, (ONE, FOUR), 54),
    (10, 1, DataBlockKind.COMPACT, (FOUR, FOUR), 46),
    (10, 1, DataBlockKind.FAST, (FOUR, FOUR), 57),
    # q=100, C=5833
    (100, 5833, DataBlockKind.COMPACT, (ONE,), 164),
    (100, 5833, DataBlockKind.FAST, (ONE, TWELVE, BIG, BIG, FOUR), 649),
    (100, 5833, DataBlockKind.FAST, (ONE, FOUR, FOUR), 267),
    (100, 5833, DataBlockKind.COMPACT, (FOUR, FOUR), 181),
    (100, 5833, DataBlockKind.FAST, (FOUR, FOUR), 256),
    # q=30, C=625
    (30, 625, DataBlockKind.COMPACT, (ONE,), 59),
    (30, 625, DataBlockKind.FAST, (FOUR, FOUR), 103),
    (30, 625, DataBlockKind.FAST, (ONE, FOUR, FOUR), 114),
    (30, 625, DataBlockKind.COMPACT, (FOUR, FOUR), 76),
    # q=50, C=417
    (50, 417, DataBlockKind.COMPACT, (ONE,), 89),
    (50, 417, DataBlockKind.FAST, (FOUR, FOUR), 148),
    (50, 417, DataBlockKind.FAST, (ONE, FOUR, FOUR), 159),
    (50, 417, DataBlockKind.COMPACT, (FOUR, FOUR), 106),
    # q=20, C=1333
    (20, 1333, DataBlockKind.COMPACT, (ONE,), 44),
    (20, 1333, DataBlockKind.FAST, (FOUR, FOUR), 80),
    (20, 1333, DataBlockKind.FAST, (ONE, FOUR, FOUR), 91),
    (20, 1333, DataBlockKind.COMPACT, (FOUR, FOUR), 61),
    # q=90, C=3000
    (90, 3000, DataBlockKind.COMPACT, (ONE,), 149),
    (90, 3000, DataBlockKind.FAST, (FOUR, FOUR), 234),
    (90, 3000, DataBlockKind.FAST, (ONE, FOUR, FOUR), 245),
    (90, 3000, DataBlockKind.COMPACT, (FOUR, FOUR), 166),
]


class TestTileAccounting:
    @pytest.mark.parametrize("qubits,columns,block,protocols,tiles", TILE_CASES)
    def test_reference_layouts(self, qubits, columns, block, protocols, tiles):
        cfg = _cfg(block, *protocols)
        assert simulate(qubits, columns, cfg).total_tiles == tiles

    def test_tiles_independent_of_columns(self):
        cfg = _cfg(DataBlockKind.INTERMEDIATE, ONE, FOUR)
        totals = {simulate(25, c, cfg).total_tiles for c in (0, 1, 10, 500)}
        assert len(totals) == 1

    def test_layout_tiles_matches_simulate(self):
        cfg = _cfg(DataBlockKind.FAST, TWELVE, BIG)
        assert layout_tiles(40, cfg) == simulate(40, 3, cfg).total_tiles


# ---------------------------------------------------------------------------
# Ordering properties
# ---------------------------------------------------------------------------

_protocol_lists = st.lists(st.sampled_from(list(ProtocolId)), min_size=1, max_size=3)


class TestMonotonicity:
    @given(
        protocols=_protocol_lists,
        extra=st.sampled_from(list(ProtocolId)),
        columns=st.integers(min_value=0, max_value=60),
        block=st.sampled_from(list(DataBlockKind)),
    )
    @settings(max_examples=60, deadline=None)
    def test_adding_a_producer_never_slows_the_run(self, protocols, extra, columns, block):
        base = simulate(12, columns, _cfg(block, *protocols))
        more = simulate(12, columns, _cfg(block, *protocols, extra))
        assert more.total_steps <= base.total_steps

    def test_steps_nondecreasing_in_columns(self):
        cfg = _cfg(DataBlockKind.COMPACT, FOUR)
        steps = [simulate(10, c, cfg).total_steps for c in range(0, 120)]
        assert all(b >= a for a, b in zip(steps, steps[1:]))

    @given(
        protocols=_protocol_lists,
        columns=st.integers(min_value=1, max_value=80),
        block=st.sampled_from(list(DataBlockKind)),
    )
    @settings(max_examples=60, deadline=None)
    def test_lower_bounds(self, protocols, columns, block):
        out = simulate(15, columns, _cfg(block, *protocols))
        floor_consume = columns * block.max_consume_steps
        floor_produce = production_availability(tuple(protocols), columns)
        assert out.total_steps >= max(floor_consume, floor_produce)
        assert out.idle_steps == out.total_steps - floor_consume


class TestReplayEquivalence:
    def test_random_small_instances(self):
        rng = np.random.default_rng(40961)
        kinds = list(DataBlockKind)
        ids = list(ProtocolId)
        for _ in range(250):
            q = int(rng.integers(1, 21))
            c = int(rng.integers(0, 51))
            cfg = _cfg(
                kinds[rng.integers(0, 3)],
                *(ids[i] for i in rng.integers(0, 4, size=rng.integers(1, 4))),
            )
            assert simulate(q, c, cfg) == replay_simulate(q, c, cfg)


# ---------------------------------------------------------------------------
# Traces and overrides
# ---------------------------------------------------------------------------


class TestTrace:
    def test_matches_simulate(self):
        cfg = _cfg(DataBlockKind.COMPACT, ONE)
        rows = trace(10, 6, cfg)
        out = simulate(10, 6, cfg)
        assert len(rows) == 6
        assert rows[-1].completion_step == out.total_steps
        assert sum(r.stalled_steps for r in rows) == out.idle_steps
        assert [r.column_index for r in rows] == [1, 2, 3, 4, 5, 6]

    def test_columns_chain(self):
        rows = trace(10, 9, _cfg(DataBlockKind.INTERMEDIATE, FOUR))
        for prev, cur in zip(rows, rows[1:]):
            assert cur.start_step == prev.completion_step
            assert cur.completion_step >= cur.availability_step

    def test_empty(self):
        assert trace(10, 0, _cfg(DataBlockKind.FAST, ONE)) == []


class TestConsumeOverrides:
    def test_faster_columns_shrink_the_run(self):
        cfg = _cfg(DataBlockKind.COMPACT, FOUR, FOUR)
        quick = np.full(40, 1, dtype=np.int64)
        out = simulate(10, 40, cfg, consume_times=quick)
        base = simulate(10, 40, cfg)
        assert out.total_steps <= base.total_steps
        assert out.idle_steps == out.total_steps - 40

    def test_worst_case_times_reproduce_default(self):
        cfg = _cfg(DataBlockKind.INTERMEDIATE, ONE)
        explicit = np.full(12, 5, dtype=np.int64)
        assert simulate(10, 12, cfg, consume_times=explicit) == simulate(10, 12, cfg)


class TestSimulateErrors:
    def test_empty_layout(self):
        with pytest.raises(ConfigurationError):
            simulate(10, 5, LayoutConfig(block=DataBlockKind.COMPACT, protocols=()))

    def test_bad_qubits(self):
        with pytest.raises(ValidationError):
            simulate(0, 5, _cfg(DataBlockKind.COMPACT, ONE))

    def test_negative_columns(self):
        with pytest.raises(ValidationError):
            simulate(10, -1, _cfg(DataBlockKind.COMPACT, ONE))


class TestLayoutConfig:
    def test_protocols_canonically_sorted(self):
        cfg = _cfg(DataBlockKind.FAST, BIG, ONE, FOUR)
        assert cfg.protocols == (ONE, FOUR, BIG)

    def test_counts_and_describe(self):
        cfg = _cfg(DataBlockKind.FAST, FOUR, ONE, FOUR)
        assert cfg.counts() == (1, 2, 0, 0)
        assert cfg.describe() == "15-to-1 x1;20-to-4 x2"
