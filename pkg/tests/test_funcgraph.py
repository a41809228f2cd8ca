import itertools

import pytest
from hypothesis import given, strategies as st

from endolattice import (
    FunctionTable,
    as_table,
    basin,
    components,
    distance,
    fixed_points,
    has_proper_cycle,
    is_prohibited,
    period_of,
    split,
)


def naive_distance(image, y, c):
    """Independent oracle: iterate the image table directly."""
    cur = y
    for t in range(len(image) + 1):
        if cur == c:
            return t
        cur = image[cur]
    return None


small_maps = st.integers(min_value=1, max_value=7).flatmap(
    lambda n: st.tuples(*(st.integers(0, n - 1) for _ in range(n))))


class TestFunctionTable:
    def test_valid(self):
        t = FunctionTable((0, 0, 1))
        assert t.n == 3 and t(2) == 1 and t.iterate(2, 2) == 0

    def test_out_of_range(self):
        with pytest.raises(ValueError, match="out of range"):
            FunctionTable((0, 3))

    def test_empty(self):
        with pytest.raises(ValueError):
            FunctionTable(())

    def test_as_table_coerces(self):
        assert as_table([1, 0]).image == (1, 0)


class TestComponents:
    def test_identity_singleton(self):
        a = components([0])
        assert len(a.components) == 1
        assert a.periods == (1,)
        assert a.fixed_points == (0,)

    def test_example_family_instance(self):
        a = components([0, 1, 3, 4, 2])
        assert a.components == ((0,), (1,), (2, 3, 4))
        assert a.periods == (1, 1, 3)
        assert a.anchors == (0, 1, 2)

    def test_tail_distances(self):
        a = components([0, 0, 1])
        assert a.distances == (0, 1, 2)
        assert len(a.components) == 1

    def test_cycle_distances_follow_anchor(self):
        # anchor 2, cycle 2 -> 3 -> 4 -> 2
        a = components([0, 1, 3, 4, 2])
        assert a.distances[2] == 0
        assert a.distances[3] == 2
        assert a.distances[4] == 1

    @given(small_maps)
    def test_component_invariants(self, image):
        a = components(image)
        n = len(image)
        # components partition the universe
        seen = sorted(x for comp in a.components for x in comp)
        assert seen == list(range(n))
        for cid, comp in enumerate(a.components):
            period = a.periods[cid]
            cycle = a.cycles[cid]
            assert period == len(cycle) >= 1
            assert a.anchors[cid] == min(cycle)
            # the recurrence d(f(y), c) = d(y, c) - 1 off the anchor
            anchor = a.anchors[cid]
            for y in comp:
                if y == anchor:
                    assert a.distances[image[y]] == (period - 1 if period > 1 else 0)
                else:
                    assert a.distances[image[y]] == a.distances[y] - 1
            # classes partition the component and shift down under the map
            cells = a.classes_of(cid)
            assert sorted(x for cell in cells for x in cell) == list(comp)
            assert all(cells)
            for i, cell in enumerate(cells):
                for u in cell:
                    assert a.class_indices[image[u]] == (i - 1) % period

    @given(small_maps)
    def test_distance_matches_naive_iteration(self, image):
        a = components(image)
        for cid, comp in enumerate(a.components):
            anchor = a.anchors[cid]
            for y in comp:
                assert distance(y, anchor, image) == naive_distance(image, y, anchor)


class TestPeriodOf:
    def test_pure_cycle(self):
        assert period_of(0, components([1, 2, 0])) == 3

    def test_example_instance(self):
        assert period_of(3, components([0, 1, 3, 4, 2])) == 3

    def test_tail_element(self):
        assert period_of(2, components([0, 0, 1])) == 1

    @given(small_maps)
    def test_constant_on_components(self, image):
        a = components(image)
        for comp in a.components:
            values = {period_of(x, a) for x in comp}
            assert len(values) == 1


class TestDistance:
    def test_self(self):
        assert distance(2, 2, [0, 1, 3, 4, 2]) == 0

    def test_two_steps(self):
        assert distance(3, 2, [0, 1, 3, 4, 2]) == 2

    def test_image_of_anchor_is_period_minus_one(self):
        f = [0, 1, 3, 4, 2]
        assert distance(f[2], 2, f) == 2

    def test_non_cyclic_target(self):
        with pytest.raises(ValueError, match="not cyclic"):
            distance(0, 1, [0, 0, 1])

    def test_wrong_component(self):
        with pytest.raises(ValueError, match="not in the component"):
            distance(0, 1, [0, 1])


class TestProhibited:
    def test_cross_class_pair(self):
        a = components([0, 1, 3, 4, 2])
        assert is_prohibited(2, 3, a)

    def test_reflexive_pair(self):
        a = components([0, 1, 3, 4, 2])
        assert not is_prohibited(3, 3, a)

    def test_cross_component_pair(self):
        a = components([0, 1, 3, 4, 2])
        assert not is_prohibited(0, 3, a)

    @given(small_maps)
    def test_symmetric_irreflexive(self, image):
        a = components(image)
        n = len(image)
        for x in range(n):
            assert not is_prohibited(x, x, a)
            for y in range(n):
                assert is_prohibited(x, y, a) == is_prohibited(y, x, a)

    @given(small_maps)
    def test_matches_divisibility_criterion(self, image):
        a = components(image)
        n = len(image)
        for x in range(n):
            for y in range(n):
                if a.component_id[x] != a.component_id[y]:
                    expected = False
                else:
                    period = a.periods[a.component_id[x]]
                    anchor = a.anchors[a.component_id[x]]
                    dx = naive_distance(image, x, anchor)
                    dy = naive_distance(image, y, anchor)
                    expected = period >= 2 and (dx - dy) % period != 0
                assert is_prohibited(x, y, a) == expected


class TestSplitAndFriends:
    def test_two_cycle(self):
        f = [1, 0]
        assert has_proper_cycle(f)
        assert fixed_points(f) == []
        assert split(f) == ([0, 1], [])

    def test_example_instance(self):
        f = [0, 1, 3, 4, 2]
        assert has_proper_cycle(f)
        assert fixed_points(f) == [0, 1]
        assert split(f) == ([2, 3, 4], [0, 1])

    def test_tree_map(self):
        f = [0, 0, 1]
        assert not has_proper_cycle(f)
        assert fixed_points(f) == [0]
        assert split(f) == ([], [0, 1, 2])

    @given(small_maps)
    def test_parts_are_closed_and_partition(self, image):
        a0, astar = split(image)
        n = len(image)
        assert sorted(a0 + astar) == list(range(n))
        assert all(image[x] in a0 for x in a0)
        assert all(image[x] in astar for x in astar)


class TestBasin:
    def test_tree_map(self):
        assert basin(0, components([0, 0, 1])) == [0, 1, 2]

    def test_isolated_fixed_point(self):
        assert basin(1, components([0, 1, 3, 4, 2])) == [1]

    def test_two_element_basin(self):
        assert basin(0, components([0, 1, 0, 4, 3])) == [0, 2]

    def test_not_fixed(self):
        with pytest.raises(ValueError, match="not a fixed point"):
            basin(2, components([0, 0, 1]))

    @given(small_maps)
    def test_basin_is_everything_reaching_the_fixed_point(self, image):
        a = components(image)
        n = len(image)
        for c in a.fixed_points:
            expected = sorted(
                x for x in range(n) if naive_distance(image, x, c) is not None)
            assert basin(c, a) == expected
