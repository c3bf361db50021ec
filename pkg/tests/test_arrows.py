import itertools
from math import inf

import pytest

from ramsey_forge import catalog, universes
from ramsey_forge.arrows import (
    Coloring,
    EmptyHomSetError,
    InternalConsistencyError,
    check_arrow,
    exhaustive_check_arrow,
    exhaustive_min_degree,
    is_bad_coloring,
    min_degree,
    oligo_count,
    oligo_search,
    sierpinski_coloring,
    sierpinski_pattern,
    transfer_check,
)
from ramsey_forge.structures import Embedding, enumerate_embeddings, restriction


def constant_coloring(base_hom, k=2, color=0):
    return Coloring(tuple(base_hom), k, (color,) * len(base_hom))


class TestOligoCount:
    def test_constant_coloring_gives_one(self):
        a, b, c = catalog.chain(2), catalog.chain(3), catalog.chain(6)
        chi = constant_coloring(enumerate_embeddings(a, c))
        for w in enumerate_embeddings(b, c):
            assert oligo_count(chi, w, a) == 1

    def test_empty_pattern_homset_gives_zero(self):
        a = catalog.complete_graph(3)
        b = catalog.cycle_graph(5)  # triangle-free, so hom(A, B) is empty
        # C: a pentagon and a triangle side by side, so both hom-sets to C
        # are nonempty while hom(A, B) stays empty
        c = catalog.graph(8, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
                              (5, 6), (6, 7), (7, 5)])
        chi = constant_coloring(enumerate_embeddings(a, c))
        w = enumerate_embeddings(b, c)[0]
        assert oligo_count(chi, w, a) == 0

    def test_pair_sum_parity_example(self):
        a, b, c = catalog.chain(2), catalog.chain(3), catalog.chain(6)
        hom_ac = enumerate_embeddings(a, c)
        # derived by hand: the three pairs inside {0,1,2} have sums 1, 2, 3
        chi = Coloring(hom_ac, 2,
                       tuple((e.map[0] + e.map[1]) % 2 for e in hom_ac))
        w = Embedding(b, c, (0, 1, 2))
        assert oligo_count(chi, w, a) == 2

    def test_foreign_composite_raises(self):
        a, c = catalog.chain(2), catalog.chain(6)
        hom_ac = enumerate_embeddings(a, c)
        truncated = Coloring(hom_ac[:5], 2, (0,) * 5)
        w = Embedding(catalog.chain(3), c, (3, 4, 5))
        with pytest.raises(InternalConsistencyError):
            oligo_count(truncated, w, a)


class TestOligoSearch:
    def test_constant_coloring(self):
        a, b, c = catalog.chain(2), catalog.chain(3), catalog.chain(6)
        chi = constant_coloring(enumerate_embeddings(a, c))
        count, w = oligo_search(chi, b, a, c)
        assert count == 1
        assert w.map == enumerate_embeddings(b, c)[0].map

    def test_single_color_k1(self):
        a, b, c = catalog.chain(2), catalog.chain(3), catalog.chain(5)
        chi = constant_coloring(enumerate_embeddings(a, c), k=1)
        assert oligo_search(chi, b, a, c)[0] == 1

    def test_empty_witness_homset_raises(self):
        a, b, c = catalog.chain(2), catalog.chain(4), catalog.chain(3)
        chi = constant_coloring(enumerate_embeddings(a, c))
        with pytest.raises(EmptyHomSetError):
            oligo_search(chi, b, a, c)

    def test_mixed_subpermutation_minimum_two(self):
        c = universes.rational_chain(8)
        chi = sierpinski_coloring(c)
        pattern = sierpinski_pattern(c)
        mixed = None
        for points in itertools.combinations(range(8), 4):
            b = restriction(c, points)
            if len(set(sierpinski_coloring(b).assignment)) == 2:
                mixed = b
                break
        assert mixed is not None
        count, _ = oligo_search(chi, mixed, pattern, c)
        assert count == 2


class TestCheckArrow:
    def test_six_chain_holds(self):
        v = check_arrow(catalog.chain(6), catalog.chain(3), catalog.chain(2), 2, 1)
        assert v.holds is True

    def test_five_chain_fails_with_verified_witness(self):
        b, a, c = catalog.chain(3), catalog.chain(2), catalog.chain(5)
        v = check_arrow(c, b, a, 2, 1)
        assert v.holds is False
        assert v.witness is not None
        assert is_bad_coloring(v.witness, b, a, c, 1)

    def test_empty_base_homset_vacuous(self):
        # no embeddings of a 3-chain into a 2-chain: nothing to color, and
        # the 2-chain still receives B, so any w is a witness
        v = check_arrow(catalog.chain(2), catalog.chain(2), catalog.chain(3),
                        2, 1)
        assert v.holds is True

    def test_both_homsets_empty_still_needs_a_witness(self):
        # the arrow definition demands some w even for the empty coloring;
        # with B not embedding in C the arrow fails (this is exactly what
        # keeps the transfer implications violation-free)
        v = check_arrow(catalog.chain(1), catalog.chain(3), catalog.chain(2),
                        2, 1)
        assert v.holds is False
        assert v.witness is not None and v.witness.assignment == ()

    def test_no_witness_embedding_fails(self):
        # copies of A exist but B does not embed at all
        v = check_arrow(catalog.chain(2), catalog.chain(4), catalog.chain(2),
                        2, 1)
        assert v.holds is False
        assert is_bad_coloring(v.witness, catalog.chain(4), catalog.chain(2),
                               catalog.chain(2), 1)

    def test_budget_exhaustion_is_undecided(self):
        v = check_arrow(catalog.chain(6), catalog.chain(3), catalog.chain(2),
                        2, 1, budget=5)
        assert v.holds is None
        assert not v.decided

    def test_invalid_parameters(self):
        with pytest.raises(ValueError):
            check_arrow(catalog.chain(3), catalog.chain(2), catalog.chain(1),
                        0, 1)
        with pytest.raises(ValueError):
            check_arrow(catalog.chain(3), catalog.chain(2), catalog.chain(1),
                        2, 0)

    def test_monotone_in_t(self):
        a, b = catalog.chain(2), catalog.chain(3)
        for nc in range(3, 7):
            c = catalog.chain(nc)
            for k in (2, 3):
                prev = False
                for t in (1, 2, 3):
                    holds = check_arrow(c, b, a, k, t).holds
                    assert not (prev and not holds)
                    prev = holds

    def test_antimonotone_in_k(self):
        a, b = catalog.chain(2), catalog.chain(3)
        for nc in range(3, 7):
            c = catalog.chain(nc)
            for t in (1, 2):
                for k in (3, 2):
                    pass
                if check_arrow(c, b, a, 3, t).holds:
                    assert check_arrow(c, b, a, 2, t).holds

    def test_oracle_equivalence_small_mixed_pool(self):
        instances = [
            (catalog.chain(5), catalog.chain(3), catalog.chain(2)),
            (catalog.chain(6), catalog.chain(3), catalog.chain(2)),
            (catalog.complete_graph(4), catalog.complete_graph(3),
             catalog.complete_graph(2)),
            (catalog.cycle_graph(5), catalog.path_graph(3),
             catalog.complete_graph(2)),
            (catalog.empty_graph(4), catalog.empty_graph(2),
             catalog.empty_graph(1)),
        ]
        for c, b, a in instances:
            n = len(enumerate_embeddings(a, c))
            if n > 16:
                continue
            for k in (2, 3):
                for t in (1, 2):
                    assert (check_arrow(c, b, a, k, t).holds
                            == exhaustive_check_arrow(c, b, a, k, t))


class TestExhaustiveOracle:
    def test_min_degree_values(self):
        a, b = catalog.chain(2), catalog.chain(3)
        assert exhaustive_min_degree(catalog.chain(6), b, a, 2) == 1
        assert exhaustive_min_degree(catalog.chain(5), b, a, 2) == 2

    def test_no_witness_is_infinite(self):
        assert exhaustive_min_degree(catalog.chain(2), catalog.chain(4),
                                     catalog.chain(2), 2) == inf

    def test_nothing_to_color_is_zero(self):
        assert exhaustive_min_degree(catalog.chain(2), catalog.chain(2),
                                     catalog.chain(3), 2) == 0


class TestMinDegree:
    def test_classic_values(self):
        a, b = catalog.chain(2), catalog.chain(3)
        assert min_degree(catalog.chain(6), b, a, 2) == 1
        assert min_degree(catalog.chain(5), b, a, 2) == 2

    def test_bounded_by_pattern_homset(self):
        # C = B: the degree can never exceed |hom(A, B)| or k
        a = catalog.chain(2)
        b = catalog.chain(3)
        hom_ab = len(enumerate_embeddings(a, b))
        for k in (2, 3, 5):
            d = min_degree(b, b, a, k)
            assert d is not None and d <= min(k, hom_ab)

    def test_empty_witness_raises(self):
        with pytest.raises(EmptyHomSetError):
            min_degree(catalog.chain(2), catalog.chain(4), catalog.chain(2), 2)


class TestSierpinski:
    def test_identity_all_agree(self):
        chi = sierpinski_coloring(catalog.permutation_structure([0, 1, 2]))
        assert set(chi.assignment) == {0}
        assert chi.k == 2

    def test_reversal_all_disagree(self):
        chi = sierpinski_coloring(catalog.permutation_structure([2, 1, 0]))
        assert set(chi.assignment) == {1}

    def test_rational_segment_uses_both_colors(self):
        chi = sierpinski_coloring(universes.rational_chain(8))
        assert set(chi.assignment) == {0, 1}

    def test_missing_second_order_rejected(self):
        from ramsey_forge.structures import StructureError
        with pytest.raises(StructureError):
            sierpinski_coloring(catalog.chain(3))


class TestTransfer:
    def test_direction_a_chains(self):
        assert transfer_check(catalog.chain(6), catalog.chain(7),
                              catalog.chain(3), catalog.chain(2),
                              2, 1, "a") is True

    def test_direction_b_identity(self):
        b = catalog.chain(3)
        assert transfer_check(catalog.chain(6), b, b, catalog.chain(2),
                              2, 1, "b") is True

    def test_direction_b_smaller_target(self):
        assert transfer_check(catalog.chain(6), catalog.chain(2),
                              catalog.chain(3), catalog.chain(2),
                              2, 1, "b") is True

    def test_empty_homset_precondition(self):
        with pytest.raises(EmptyHomSetError):
            transfer_check(catalog.chain(6), catalog.chain(5),
                           catalog.chain(3), catalog.chain(2), 2, 1, "b")

    def test_bad_direction(self):
        with pytest.raises(ValueError):
            transfer_check(catalog.chain(6), catalog.chain(7),
                           catalog.chain(3), catalog.chain(2), 2, 1, "x")


class TestColoringValidation:
    def test_color_out_of_range(self):
        hom = enumerate_embeddings(catalog.chain(2), catalog.chain(3))
        with pytest.raises(ValueError):
            Coloring(hom, 2, (0, 1, 2))

    def test_partial_assignment(self):
        hom = enumerate_embeddings(catalog.chain(2), catalog.chain(3))
        with pytest.raises(ValueError):
            Coloring(hom, 2, (0,))


class TestSymmetryReduction:
    def test_verdicts_match_unreduced_search(self):
        pool = [
            (catalog.chain(5), catalog.chain(3), catalog.chain(2)),
            (catalog.chain(6), catalog.chain(3), catalog.chain(2)),
            (catalog.cycle_graph(5), catalog.path_graph(3),
             catalog.complete_graph(2)),
            (catalog.complete_graph(4), catalog.complete_graph(3),
             catalog.complete_graph(2)),
            (catalog.empty_graph(4), catalog.empty_graph(3),
             catalog.empty_graph(2)),
        ]
        for c, b, a in pool:
            for k in (2, 3):
                for t in (1, 2):
                    plain = check_arrow(c, b, a, k, t)
                    reduced = check_arrow(c, b, a, k, t,
                                          symmetry_reduction=True)
                    assert plain.holds == reduced.holds
                    if reduced.holds is False:
                        assert is_bad_coloring(reduced.witness, b, a, c, t)

    def test_reduction_never_explores_more(self):
        c, b, a = (catalog.empty_graph(4), catalog.empty_graph(2),
                   catalog.empty_graph(1))
        plain = check_arrow(c, b, a, 2, 1)
        reduced = check_arrow(c, b, a, 2, 1, symmetry_reduction=True)
        assert plain.holds == reduced.holds
        assert reduced.nodes <= plain.nodes
