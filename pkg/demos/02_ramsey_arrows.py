#!/usr/bin/env python3
"""Oligochromatic Ramsey arrows on hom-sets.

The arrow C -> (B)^A_{k,t} says: color the embeddings of A into C with k
colors however you like; some embedded copy of B only ever composes into
at most t colors.  With t = 1 this is the classical monochromatic Ramsey
statement, and the 2-pairs-in-chains instance recovers R(3,3) = 6.
"""

from ramsey_forge import catalog, universes
from ramsey_forge.arrows import (
    check_arrow,
    exhaustive_min_degree,
    is_bad_coloring,
    min_degree,
    oligo_search,
    sierpinski_coloring,
    sierpinski_pattern,
)
from ramsey_forge.structures import restriction

a, b = catalog.chain(2), catalog.chain(3)

# The classical threshold: 6 points force a monochromatic triple of pairs,
# 5 points do not.
six = check_arrow(catalog.chain(6), b, a, k=2, t=1)
five = check_arrow(catalog.chain(5), b, a, k=2, t=1)
print("6-chain -> (3-chain)^{2-chain}_{2,1}:", six.holds)
print("5-chain -> (3-chain)^{2-chain}_{2,1}:", five.holds)
print("  bad coloring found:", five.witness.assignment)
print("  verified bad against every w:",
      is_bad_coloring(five.witness, b, a, catalog.chain(5), 1))

# The minimal oligochromatic degree, by the pruned search and by the
# exhaustive coloring-enumeration oracle (two independent routes).
print("\nminimal t on the 5-chain:", min_degree(catalog.chain(5), b, a, 2),
      "| oracle:", exhaustive_min_degree(catalog.chain(5), b, a, 2))

# A two-order structure supports the order-agreement coloring: pairs get
# color 0 when both orders agree and 1 when they disagree.  Any embedded
# sub-permutation carrying both pair kinds is then pinned at exactly two
# colors, a finite echo of the unavoidable 2 on the rationals.
c = universes.rational_chain(8)
chi = sierpinski_coloring(c)
print("\ncolors used on the 8-point rational segment:",
      sorted(set(chi.assignment)))
mixed = next(
    restriction(c, pts)
    for pts in [(0, 1, 2, 3), (0, 1, 2, 4), (1, 2, 3, 4)]
    if len(set(sierpinski_coloring(restriction(c, pts)).assignment)) == 2
)
best, w = oligo_search(chi, mixed, sierpinski_pattern(c), c)
print("minimum colors over all embeddings of a mixed 4-sub-permutation:",
      best)
