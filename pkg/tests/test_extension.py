import itertools

import numpy as np
import pytest
from hypothesis import given, strategies as st

from endolattice import (
    FIXED_POINT_MAX,
    FIXED_POINT_MIN,
    PLAIN,
    MonotoneExtensionError,
    PartialOrder,
    SiblingPolicy,
    acyclic_linear_extension,
    branch_lex_order,
    check_partial_order,
    component_order,
    components,
    f_compatible_closure,
    has_proper_cycle,
    is_monotone,
    is_prohibited,
    linear_sequence,
    szpilrajn_monotone,
)


def acyclic_maps(n):
    for image in itertools.product(range(n), repeat=n):
        if not has_proper_cycle(image):
            yield image


class TestSiblingPolicy:
    def test_modes(self):
        assert SiblingPolicy("plain").mode == "plain"
        with pytest.raises(ValueError, match="unknown sibling policy"):
            SiblingPolicy("best-effort")

    def test_fiber_totality(self):
        # within any fiber the keys are distinct, for every mode
        f = components([0, 0, 0, 1]).table
        for policy in (PLAIN, FIXED_POINT_MAX, FIXED_POINT_MIN):
            fiber = [0, 1, 2]  # preimages of 0
            keys = [policy.fiber_key(x, f) for x in fiber]
            assert len(set(keys)) == len(fiber)


class TestBranchLex:
    def test_basin_with_fixed_point_max(self):
        assert branch_lex_order([0, 1, 2], [0, 0, 1], FIXED_POINT_MAX) == [2, 1, 0]

    def test_singleton(self):
        assert branch_lex_order([3], [0, 1, 3, 4, 2]) == [3]

    def test_cycle_classes_are_singletons(self):
        a = components([0, 1, 3, 4, 2])
        for cell in a.classes_of(2):
            assert branch_lex_order(cell, [0, 1, 3, 4, 2], PLAIN, analysis=a) == cell

    def test_non_concurrent_pair_rejected(self):
        with pytest.raises(ValueError, match="not concurrent"):
            branch_lex_order([2, 3], [0, 1, 3, 4, 2])

    def test_first_divergence_decides(self):
        # fiber of 1 is {2, 3}; plain policy puts 2 first
        assert branch_lex_order([2, 3], [0, 0, 1, 1]) == [2, 3]
        # fixed-point-max pushes 0 above its own preimage 1
        assert branch_lex_order([0, 1, 2, 3], [0, 0, 1, 1], FIXED_POINT_MAX) == [2, 3, 1, 0]

    @given(st.integers(1, 6).flatmap(
        lambda n: st.tuples(*(st.integers(0, n - 1) for _ in range(n)))))
    def test_map_preserves_chain_order(self, image):
        """The image of a class chain lands monotonically in the image class."""
        analysis = components(image)
        for cid in range(len(analysis.components)):
            cells = analysis.classes_of(cid)
            for policy in (PLAIN, FIXED_POINT_MAX, FIXED_POINT_MIN):
                chains = [branch_lex_order(cell, image, policy, analysis=analysis)
                          for cell in cells]
                pos = {}
                for chain in chains:
                    for i, u in enumerate(chain):
                        pos[u] = i
                for chain in chains:
                    for u, v in itertools.combinations(chain, 2):
                        # u before v, so f(u) must not come after f(v)
                        assert pos[image[u]] <= pos[image[v]]


class TestAcyclicLinearExtension:
    def test_two_fixed_points(self):
        assert acyclic_linear_extension([0, 1], 0, 1) == [0, 1]

    def test_basin_tail_forced_below_hub(self):
        assert acyclic_linear_extension([0, 1, 0, 4, 3], 0, 1) == [2, 0, 1]

    def test_two_block_layout(self):
        assert acyclic_linear_extension([0, 0, 1, 3], 0, 3) == [2, 1, 0, 3]

    def test_rejects_non_fixed_hub(self):
        with pytest.raises(ValueError, match="not a fixed point"):
            acyclic_linear_extension([0, 0, 1, 3], 1, 3)

    def test_rejects_equal_hubs(self):
        with pytest.raises(ValueError, match="distinct"):
            acyclic_linear_extension([0, 1], 0, 0)

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_guarantees_exhaustively(self, n):
        for image in acyclic_maps(n):
            analysis = components(image)
            fps = analysis.fixed_points
            if len(fps) < 2:
                continue
            p, q = fps[0], fps[1]
            seq = acyclic_linear_extension(image, p, q, analysis=analysis)
            assert sorted(seq) == sorted(analysis.acyclic_part)
            order = PartialOrder.from_chain(seq)
            ok, _ = is_monotone(image, order)
            assert ok
            pos = {e: i for i, e in enumerate(seq)}
            down_p = {e for e in seq if pos[e] <= pos[p]}
            up_q = {e for e in seq if pos[e] >= pos[q]}
            assert down_p == set(analysis.basins[p])
            assert up_q == set(analysis.basins[q])
            assert pos[p] < pos[q]


class TestComponentOrder:
    def test_pure_cycle_gives_singleton_chains(self):
        chains = component_order(0, [1, 2, 0])
        assert chains == [[0], [2], [1]]

    def test_tail_class_becomes_two_chain(self):
        # 2-cycle {0, 1} with tail 2 -> 0: class of the anchor gains the tail
        chains = component_order(0, [1, 0, 0])
        assert chains == [[0], [1, 2]]

    def test_period_two_component(self):
        chains = component_order(3, [0, 1, 0, 4, 3])
        assert chains == [[3], [4]]

    def test_rejects_acyclic_component(self):
        with pytest.raises(ValueError, match="no proper cycle"):
            component_order(2, [0, 1, 0, 4, 3])

    @given(st.integers(2, 6).flatmap(
        lambda n: st.tuples(*(st.integers(0, n - 1) for _ in range(n)))))
    def test_chain_family_invariants(self, image):
        analysis = components(image)
        for cid, period in enumerate(analysis.periods):
            if period < 2:
                continue
            chains = component_order(analysis.anchors[cid], image, analysis=analysis)
            assert len(chains) == period
            members = sorted(x for ch in chains for x in ch)
            assert members == list(analysis.components[cid])
            # within a chain nothing is prohibited; across chains everything is
            for ch in chains:
                for u, v in itertools.combinations(ch, 2):
                    assert not is_prohibited(u, v, analysis)
            for c1, c2 in itertools.combinations(chains, 2):
                for u in c1:
                    for v in c2:
                        assert is_prohibited(u, v, analysis)


class TestFCompatibleClosure:
    def test_propagates_images(self):
        rel = f_compatible_closure(np.eye(3, dtype=bool), (2, 1), [0, 0, 1])
        assert rel is not None
        assert rel[2, 1] and rel[1, 0] and rel[2, 0]

    def test_existing_pair_is_noop(self):
        base = PartialOrder.from_pairs(3, [(2, 1)]).rel
        rel = f_compatible_closure(base, (2, 1), [0, 1, 2])
        assert np.array_equal(rel, base)

    def test_two_cycle_conflicts(self):
        assert f_compatible_closure(np.eye(2, dtype=bool), (0, 1), [1, 0]) is None

    def test_result_is_monotone_order(self):
        for image in acyclic_maps(4):
            rel = f_compatible_closure(np.eye(4, dtype=bool), (3, 1), image)
            if rel is None:
                continue
            assert check_partial_order(rel)[0]
            assert is_monotone(image, rel)[0]
            assert rel[3, 1]


class TestSzpilrajnMonotone:
    def test_identity_start(self):
        rel = szpilrajn_monotone(PartialOrder.identity(3), [0, 0, 1])
        assert (rel | rel.T).all()
        assert is_monotone([0, 0, 1], rel)[0]

    def test_already_linear_is_unchanged(self):
        chain = PartialOrder.from_chain([2, 1, 0])
        rel = szpilrajn_monotone(chain, [0, 0, 1])
        assert np.array_equal(rel, chain.rel)

    def test_seeded_pair_survives(self):
        start = PartialOrder.from_pairs(3, [(2, 0)])
        rel = szpilrajn_monotone(start, [0, 0, 1])
        assert rel[2, 0]
        assert (rel | rel.T).all()
        assert is_monotone([0, 0, 1], rel)[0]

    def test_rejects_proper_cycle(self):
        with pytest.raises(MonotoneExtensionError, match="proper cycle"):
            szpilrajn_monotone(PartialOrder.identity(2), [1, 0])

    @pytest.mark.parametrize("n", [2, 3, 4, 5])
    def test_always_succeeds_on_acyclic_maps(self, n):
        for image in acyclic_maps(n):
            rel = szpilrajn_monotone(PartialOrder.identity(n), image)
            assert (rel | rel.T).all()
            assert check_partial_order(rel)[0]
            assert is_monotone(image, rel)[0]

    def test_always_succeeds_on_acyclic_maps_n6(self):
        # szpilrajn_monotone re-verifies its own output before returning,
        # so completing all 16807 cycle-free maps without raising is the
        # assertion here; the external re-checks run at n <= 5 above.
        eye = PartialOrder.identity(6)
        done = 0
        for image in acyclic_maps(6):
            szpilrajn_monotone(eye, image)
            done += 1
        assert done == 7 ** 5

    def test_succeeds_from_random_monotone_seeds(self):
        rng = np.random.default_rng(7)
        for image in acyclic_maps(4):
            # seed one safe pair: an element below its own image's fixed point
            analysis = components(image)
            fp = analysis.fixed_points[0]
            others = [x for x in range(4) if x != fp and x in analysis.basins[fp]]
            if not others:
                continue
            x = others[rng.integers(len(others))]
            seed = f_compatible_closure(np.eye(4, dtype=bool), (x, fp), image)
            assert seed is not None
            rel = szpilrajn_monotone(seed, image)
            assert rel[x, fp]
            assert is_monotone(image, rel)[0]
