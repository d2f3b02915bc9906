import json
from fractions import Fraction

import pytest

from epicoord import (
    InformationStructure,
    Partition,
    RandomStructureConfig,
    StateSpace,
    brute_force_common_p_belief,
    common_p_belief,
    fixedpoint_common_p_belief,
    largest_p_evident_indicating_event,
    random_structure,
)
from epicoord.oracle import structure_to_json


def single_state_structure():
    space = StateSpace(((1,),), (Fraction(1),))
    partition = Partition((frozenset({0}),), (0,))
    return InformationStructure(space, (partition, partition))


class TestBruteForce:
    def test_loudspeaker_broadcast_state(self, loudspeaker, loudspeaker_target):
        index = loudspeaker.space.index_of((1, 1))
        assert brute_force_common_p_belief(loudspeaker, loudspeaker_target, 0, index) == 1

    def test_full_space_target(self, loudspeaker):
        universe = loudspeaker.universe()
        for player in (0, 1):
            for state in range(len(loudspeaker)):
                assert brute_force_common_p_belief(loudspeaker, universe, player, state) == 1

    def test_singleton_space(self):
        structure = single_state_structure()
        assert brute_force_common_p_belief(structure, frozenset({0}), 0, 0) == 1
        assert brute_force_common_p_belief(structure, frozenset(), 0, 0) == 0

    def test_size_cap(self, messenger, messenger_target):
        with pytest.raises(ValueError, match="capped"):
            brute_force_common_p_belief(messenger, messenger_target, 0, 0)


class TestFixedpointVariant:
    def test_agrees_with_exhaustive(self):
        for seed in range(60):
            size = 2 + seed % 7
            config = RandomStructureConfig(
                seed=seed, num_states=size, uniform_measure=(seed % 5 == 0)
            )
            structure, target = random_structure(config)
            for player in (0, 1):
                for state in range(size):
                    assert fixedpoint_common_p_belief(
                        structure, target, player, state
                    ) == brute_force_common_p_belief(structure, target, player, state)

    def test_handles_the_18_state_messenger_space(self, messenger, messenger_target):
        index = messenger.space.index_of((1, 1, 0, 1, 0))
        assert fixedpoint_common_p_belief(messenger, messenger_target, 0, index) == Fraction(1, 4)
        index = messenger.space.index_of((1, 1, 1, 1, 1))
        assert fixedpoint_common_p_belief(messenger, messenger_target, 1, index) == 1

    def test_matches_engine_on_messenger(self, messenger, messenger_target):
        for player in (0, 1):
            for state in range(len(messenger)):
                assert fixedpoint_common_p_belief(
                    messenger, messenger_target, player, state
                ) == common_p_belief(messenger, messenger_target, player, state)


class TestLargestEvent:
    def test_level_zero_is_everything(self, loudspeaker, loudspeaker_target):
        assert largest_p_evident_indicating_event(
            loudspeaker, loudspeaker_target, Fraction(0)
        ) == loudspeaker.universe()

    def test_high_level_keeps_only_mutual_certainty(self, loudspeaker):
        target = frozenset({loudspeaker.space.index_of((1, 1))})
        event = largest_p_evident_indicating_event(loudspeaker, target, Fraction(99, 100))
        assert event == frozenset({loudspeaker.space.index_of((1, 1))})

    def test_unattainable_level_is_empty(self, loudspeaker):
        # no one is ever certain of the silent good state, so nothing survives at level 1
        target = frozenset({loudspeaker.space.index_of((1, 0))})
        assert largest_p_evident_indicating_event(loudspeaker, target, Fraction(1)) == frozenset()


class TestRandomStructure:
    def test_deterministic_in_seed(self):
        first = random_structure(RandomStructureConfig(seed=7))
        second = random_structure(RandomStructureConfig(seed=7))
        assert first == second
        assert first != random_structure(RandomStructureConfig(seed=8))

    def test_validity_over_many_seeds(self):
        for seed in range(100):
            structure, target = random_structure(RandomStructureConfig(seed=seed))
            assert sum(structure.space.measures, Fraction(0)) == 1
            assert all(m > 0 for m in structure.space.measures)
            assert target and target <= structure.universe()
            for partition in structure.partitions:
                covered = frozenset().union(*partition.blocks)
                assert covered == structure.universe()

    def test_single_state_config(self):
        structure, target = random_structure(RandomStructureConfig(seed=0, num_states=1))
        assert len(structure) == 1
        assert target == frozenset({0})
        assert structure.partitions[0].blocks == (frozenset({0}),)

    def test_config_bounds(self):
        with pytest.raises(ValueError):
            RandomStructureConfig(seed=0, num_states=13)
        with pytest.raises(ValueError):
            RandomStructureConfig(seed=0, num_states=0)

    def test_uniform_measure_style(self):
        structure, _ = random_structure(RandomStructureConfig(seed=3, uniform_measure=True))
        assert set(structure.space.measures) == {Fraction(1, 8)}


def test_structure_dump_is_json_serializable(loudspeaker, loudspeaker_target):
    dump = structure_to_json(loudspeaker, loudspeaker_target)
    text = json.dumps(dump)
    parsed = json.loads(text)
    assert parsed["states"] == [[0, 0], [0, 1], [1, 0], [1, 1]]
    assert parsed["measures"] == ["3/8", "3/8", "1/8", "1/8"]
    assert sorted(parsed["target"]) == [2, 3]
