#!/usr/bin/env python3
"""Compact distance sets and the machinery they unlock.

A finite distance set splits into blocks at its jump numbers (values more
than doubled by their successor).  When closeness (within the least
positive value) coincides with sharing a block, the set is compact, and
three things follow: metric triples are classifiable by block pattern
alone, the 4-values condition holds, and spanned metric spaces amalgamate
strongly.  The star transform then flattens a multi-block space into a
one-block spectrum and back.
"""

from ramsey_forge.metric import (
    DistanceSet,
    FinMetricSpace,
    blocks,
    check_4values,
    choose_sigma,
    classify_triple,
    is_compact,
    is_metric_triple,
    metric_to_kgraph,
    recover_quotient_space,
    sap_amalgamate_metL,
    sim_partition,
    spans,
    star_transform,
)

S = DistanceSet.make([0, 1, 2, 5, 6])
bp = blocks(S)
print("set {0,1,2,5,6}: jumps", [str(v) for v in bp.jumps],
      "blocks", [[str(v) for v in blk] for blk in bp.blocks])
print("compact:", is_compact(S)[0],
      "| {0,1,2,3} compact:", is_compact(DistanceSet.make([0, 1, 2, 3])))

# On a compact set the triangle inequalities reduce to block patterns.
for triple in [(1, 2, 2), (1, 5, 6), (1, 1, 5)]:
    print(f"triple {triple}: {classify_triple(S, *triple):18}"
          f" metric={is_metric_triple(*triple)}")
print("4-values condition:", check_4values(S)[0])

# Two tight pairs far apart: the small-distance relation groups them.
M = FinMetricSpace.make([0, 1, 2, 5, 6], [
    [0, 1, 5, 5],
    [1, 0, 5, 5],
    [5, 5, 0, 2],
    [5, 5, 2, 0],
])
print("\nsimilarity classes:", sim_partition(M))
L = FinMetricSpace.make([0, 5, 6], [[0, 5], [5, 0]])
print("transversal realizing the spanning space:", spans(L, M))

# Strong amalgamation over the spanning space: new cross points take the
# representatives' distance across classes and the least positive value
# within one.
base = FinMetricSpace.make([0, 1, 2, 5, 6], [[0, 5], [5, 0]])
side1 = FinMetricSpace.make([0, 1, 2, 5, 6],
                            [[0, 5, 1], [5, 0, 5], [1, 5, 0]])
side2 = FinMetricSpace.make([0, 1, 2, 5, 6],
                            [[0, 5, 6], [5, 0, 2], [6, 2, 0]])
amalgam, into1, into2 = sap_amalgamate_metL(base, side1, side2,
                                            (0, 1), (0, 1), L)
print("\namalgam of the two one-point extensions:")
for row in amalgam.d:
    print("  ", [str(v) for v in row])

# The star transform adds one point per class inside a fresh one-block
# spectrum; recovery strips the class points and returns the original.
choice = choose_sigma(M.dset)
print("\ntarget spectrum:", [str(v) for v in choice.sigma.values],
      "eps:", choice.eps, "zeta:", choice.zeta)
star = star_transform(M, choice)
print("star has", star.space.size, "points; class points:", star.class_points)
recovered, kept = recover_quotient_space(star.space, star.class_points, choice)
print("round trip exact:", recovered.d == M.d)

# One-block spaces are complete edge-colored graphs in disguise.
one_block = FinMetricSpace.make([0, 3, 4], [[0, 3, 3], [3, 0, 4], [3, 4, 0]])
print("\none-block space as a colored graph:", metric_to_kgraph(one_block))
