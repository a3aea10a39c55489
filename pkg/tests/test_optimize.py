"""Tests for the four layout search strategies and objective selection."""

import numpy as np
import pytest

from tilestep.blocks import DataBlockKind, ProtocolId
from tilestep.circuits import CircuitSpec
from tilestep.errors import ConfigurationError, ResourceLimitError, ValidationError
from tilestep.optimize import (
    Algorithm,
    Objective,
    ObjectiveSelection,
    ResultEntry,
    ResultSet,
    brute_force,
    dp_optimize,
    greedy_metric,
    greedy_optimize,
    greedy_selection,
    multisets_up_to,
    random_config,
    random_optimize,
    select_balanced,
    select_for,
    select_min_steps,
    select_min_tiles,
)
from tilestep.sim import LayoutConfig, SimOutcome, simulate
from tilestep.blocks import all_protocols

ONE = ProtocolId.P15TO1
FOUR = ProtocolId.P20TO4


def _circuit(qubits, columns, cid="c"):
    return CircuitSpec(id=cid, qubits=qubits, columns=columns, t_gates=max(qubits, columns), seed=0)


SHS = _circuit(10, 1, "shs")
DLL = _circuit(100, 5833, "dll")


def _entry(tiles, steps, block=DataBlockKind.COMPACT, protocols=(ONE,)):
    outcome = SimOutcome(
        total_steps=steps,
        idle_steps=0,
        total_tiles=tiles,
        consumed=1,
        produced=1,
    )
    return ResultEntry(LayoutConfig(block, tuple(protocols)), outcome)


def _result_set(*entries):
    return ResultSet(Algorithm.BRUTE_FORCE, "synthetic", 5, tuple(entries))


# ---------------------------------------------------------------------------
# Random
# ---------------------------------------------------------------------------


class TestRandom:
    def test_fixed_mapping(self):
        assert random_config(Objective.MIN_TILES) == LayoutConfig(
            DataBlockKind.COMPACT, (ONE,)
        )
        assert random_config(Objective.BALANCED) == LayoutConfig(
            DataBlockKind.INTERMEDIATE, (ProtocolId.P116TO12,)
        )
        assert random_config(Objective.MIN_STEPS) == LayoutConfig(
            DataBlockKind.FAST, (FOUR,)
        )

    def test_outcome_is_simulated(self):
        sel = random_optimize(SHS, Objective.MIN_TILES)
        assert sel.entry.outcome == simulate(10, 1, sel.entry.config)
        assert sel.entry.outcome.total_tiles == 29


# ---------------------------------------------------------------------------
# Brute force
# ---------------------------------------------------------------------------


class TestBruteForce:
    def test_multiset_count(self):
        assert len(multisets_up_to(1)) == 4
        assert len(multisets_up_to(5)) == 125

    def test_entry_count(self):
        assert len(brute_force(SHS, cap=1).entries) == 12
        assert len(brute_force(SHS, cap=5).entries) == 375

    def test_no_duplicate_layouts(self):
        rs = brute_force(SHS, cap=3)
        keys = {(e.config.block, e.config.protocols) for e in rs.entries}
        assert len(keys) == len(rs.entries)

    def test_min_tiles_reference(self):
        sel = select_min_tiles(brute_force(SHS, cap=5))
        assert sel.entry.config == LayoutConfig(DataBlockKind.COMPACT, (ONE,))
        assert sel.entry.outcome.total_tiles == 29

    def test_min_steps_reference(self):
        sel = select_min_steps(brute_force(SHS, cap=5))
        assert sel.entry.outcome.total_steps == 11
        assert sel.entry.outcome.total_tiles == 29

    def test_complete_within_cap(self):
        rs = brute_force(SHS, cap=2)
        present = {(e.config.block, e.config.protocols) for e in rs.entries}
        for block in DataBlockKind:
            for protocols in multisets_up_to(2):
                assert (block, LayoutConfig(block, protocols).protocols) in present

    def test_zero_cap_rejected(self):
        with pytest.raises(ValidationError):
            brute_force(SHS, cap=0)

    def test_entries_reproducible(self):
        rs = brute_force(_circuit(12, 9), cap=2)
        for e in rs.entries:
            assert simulate(12, 9, e.config) == e.outcome


# ---------------------------------------------------------------------------
# DP
# ---------------------------------------------------------------------------


class TestDP:
    def test_min_tiles_matches_brute_force_on_reference(self):
        sel = select_min_tiles(dp_optimize(SHS, cap=5))
        assert sel.entry.config == LayoutConfig(DataBlockKind.COMPACT, (ONE,))
        assert sel.entry.outcome.total_tiles == 29

    @pytest.mark.parametrize("qubits,columns", [(10, 1), (10, 17), (20, 60), (30, 133)])
    def test_tile_parity_with_brute_force(self, qubits, columns):
        circ = _circuit(qubits, columns)
        dp_tiles = select_min_tiles(dp_optimize(circ, cap=5)).entry.outcome.total_tiles
        bf_tiles = select_min_tiles(brute_force(circ, cap=5)).entry.outcome.total_tiles
        assert dp_tiles == bf_tiles

    def test_deep_reference_tiles(self):
        sel = select_min_tiles(dp_optimize(DLL, cap=5))
        assert sel.entry.outcome.total_tiles == 164

    def test_entries_reproducible(self):
        circ = _circuit(15, 40)
        for e in dp_optimize(circ, cap=3).entries:
            assert simulate(15, 40, e.config) == e.outcome

    def test_zero_columns_rejected(self):
        with pytest.raises(ValidationError):
            dp_optimize(_circuit(10, 0))

    def test_state_cap_enforced(self):
        with pytest.raises(ResourceLimitError, match="2"):
            dp_optimize(_circuit(10, 50), cap=5, max_states=2)


# ---------------------------------------------------------------------------
# Greedy
# ---------------------------------------------------------------------------


class TestGreedy:
    def test_metric_values(self):
        by_id = {s.id: s for s in all_protocols(1e-4)}
        assert greedy_metric(by_id[ONE]) == 22.0
        assert greedy_metric(by_id[FOUR]) == 20.5
        assert greedy_metric(by_id[ProtocolId.P116TO12]) == pytest.approx(102.667, abs=1e-3)
        assert greedy_metric(by_id[ProtocolId.P225TO1]) == 191.0

    def test_selection_is_always_the_batch_protocol(self):
        for cap in (1, 2, 5):
            assert greedy_selection(cap) == (FOUR,) * cap

    def test_one_entry_per_block(self):
        rs = greedy_optimize(SHS, cap=1)
        assert len(rs.entries) == 3
        assert all(e.config.protocols == (FOUR,) for e in rs.entries)

    def test_min_tiles_reference(self):
        sel = select_min_tiles(greedy_optimize(SHS, cap=2))
        assert sel.entry.config.block is DataBlockKind.COMPACT
        assert sel.entry.outcome.total_tiles == 46

    def test_fast_entry_tiles_reference(self):
        rs = greedy_optimize(SHS, cap=2)
        fast = next(e for e in rs.entries if e.config.block is DataBlockKind.FAST)
        assert fast.outcome.total_tiles == 57

    def test_zero_cap_rejected(self):
        with pytest.raises(ValidationError):
            greedy_optimize(SHS, cap=0)


# ---------------------------------------------------------------------------
# Objective selection
# ---------------------------------------------------------------------------


class TestSelectMinTiles:
    def test_breaks_tile_ties_by_steps(self):
        rs = _result_set(_entry(29, 20), _entry(29, 11), _entry(40, 11))
        chosen = select_min_tiles(rs).entry.outcome
        assert (chosen.total_tiles, chosen.total_steps) == (29, 11)

    def test_single_entry(self):
        rs = _result_set(_entry(50, 50))
        assert select_min_tiles(rs).entry is rs.entries[0]

    def test_full_tie_prefers_compact(self):
        rs = _result_set(
            _entry(30, 10, DataBlockKind.FAST),
            _entry(30, 10, DataBlockKind.COMPACT),
            _entry(30, 10, DataBlockKind.INTERMEDIATE),
        )
        assert select_min_tiles(rs).entry.config.block is DataBlockKind.COMPACT


class TestSelectMinSteps:
    def test_breaks_step_ties_by_tiles(self):
        rs = _result_set(_entry(29, 20), _entry(40, 11), _entry(216, 11))
        chosen = select_min_steps(rs).entry.outcome
        assert (chosen.total_tiles, chosen.total_steps) == (40, 11)

    def test_single_entry(self):
        rs = _result_set(_entry(7, 9))
        assert select_min_steps(rs).entry is rs.entries[0]


class TestSelectBalanced:
    def test_midpoint_candidate_wins(self):
        rs = _result_set(_entry(29, 20), _entry(40, 11), _entry(34, 16))
        sel = select_balanced(rs)
        assert sel.midpoint == (34.5, 15.5)
        chosen = sel.entry.outcome
        assert (chosen.total_tiles, chosen.total_steps) == (34, 16)

    def test_single_entry_is_its_own_midpoint(self):
        rs = _result_set(_entry(12, 34))
        sel = select_balanced(rs)
        assert sel.midpoint == (12.0, 34.0)
        assert sel.entry is rs.entries[0]

    def test_equidistant_tie_prefers_fewer_tiles(self):
        rs = _result_set(_entry(20, 30), _entry(40, 10), _entry(29, 19), _entry(31, 21))
        sel = select_balanced(rs)
        assert sel.midpoint == (30.0, 20.0)
        chosen = sel.entry.outcome
        assert (chosen.total_tiles, chosen.total_steps) == (29, 19)

    def test_never_dominated_by_a_closer_point(self):
        rs = brute_force(_circuit(20, 37), cap=3)
        sel = select_balanced(rs)
        mt, ms = sel.midpoint
        chosen = sel.entry.outcome
        chosen_dist = (chosen.total_tiles - mt) ** 2 + (chosen.total_steps - ms) ** 2
        for e in rs.entries:
            o = e.outcome
            dist = (o.total_tiles - mt) ** 2 + (o.total_steps - ms) ** 2
            dominates = (
                o.total_tiles <= chosen.total_tiles
                and o.total_steps <= chosen.total_steps
                and (o.total_tiles, o.total_steps)
                != (chosen.total_tiles, chosen.total_steps)
            )
            assert not (dominates and dist < chosen_dist)


class TestSelectFor:
    def test_dispatch(self):
        rs = brute_force(SHS, cap=2)
        assert select_for(rs, Objective.MIN_TILES).objective is Objective.MIN_TILES
        assert select_for(rs, Objective.MIN_STEPS).midpoint is None
        assert select_for(rs, Objective.BALANCED).midpoint is not None

    def test_chosen_entry_comes_from_the_set(self):
        rs = greedy_optimize(SHS, cap=2)
        for objective in Objective:
            assert select_for(rs, objective).entry in rs.entries

    def test_empty_set_rejected(self):
        rs = ResultSet(Algorithm.GREEDY, "x", 1, ())
        for fn in (select_min_tiles, select_min_steps, select_balanced):
            with pytest.raises(ConfigurationError):
                fn(rs)


# ---------------------------------------------------------------------------
# Cross-strategy ordering
# ---------------------------------------------------------------------------


class TestOptimalityOrdering:
    @pytest.mark.parametrize("qubits,columns", [(10, 1), (10, 25), (20, 90), (30, 140)])
    def test_brute_force_bounds_every_strategy(self, qubits, columns):
        circ = _circuit(qubits, columns)
        bf = brute_force(circ, cap=5)
        bf_tiles = select_min_tiles(bf).entry.outcome.total_tiles
        bf_steps = select_min_steps(bf).entry.outcome.total_steps
        others = [
            dp_optimize(circ, cap=5),
            greedy_optimize(circ, cap=2),
        ]
        for rs in others:
            assert bf_tiles <= select_min_tiles(rs).entry.outcome.total_tiles
            assert bf_steps <= select_min_steps(rs).entry.outcome.total_steps
        for objective, pick in (
            (Objective.MIN_TILES, "total_tiles"),
            (Objective.MIN_STEPS, "total_steps"),
        ):
            rand = random_optimize(circ, objective)
            bound = bf_tiles if pick == "total_tiles" else bf_steps
            assert bound <= getattr(rand.entry.outcome, pick)
