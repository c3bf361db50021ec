#!/usr/bin/env python3
"""Finite structures, hom-sets, and isomorphism.

Everything in the workbench runs on finite relational structures over the
domain {0..n-1}: chains, graphs, oriented graphs, permutations (two linear
orders), linearly ordered posets.  This script builds a few and inspects
their embedding sets.
"""

from ramsey_forge import catalog
from ramsey_forge.structures import (
    are_isomorphic,
    enumerate_embeddings,
    restriction,
    structure_to_dot,
    structure_to_json,
)

# A chain is a strict total order; a graph is a symmetric irreflexive
# relation.  Tags in the signature enforce those shapes at construction.
c5 = catalog.chain(5)
k3 = catalog.complete_graph(3)
print("5-chain:", c5)
print("K3 as JSON:", structure_to_json(k3))

# hom(A, B) is the set of embeddings: injections that preserve AND reflect
# every relation.  For chains these are exactly the monotone injections.
hom = enumerate_embeddings(catalog.chain(2), c5)
print(f"\n|hom(2-chain, 5-chain)| = {len(hom)}  (C(5,2) = 10 pairs)")
print("maps in canonical order:", [e.map for e in hom])

# Induced substructures: restriction relabels onto an initial segment.
pentagon = catalog.cycle_graph(5)
print("\npentagon restricted to {0,1,2}:", restriction(pentagon, {0, 1, 2}))
print("...which is the path on 3 vertices:",
      restriction(pentagon, {0, 1, 2}) == catalog.path_graph(3))

# Isomorphism = surjective embedding; a witness map is returned.
d1 = catalog.oriented_graph(4, [(0, 1), (0, 2), (1, 3)])
d2 = catalog.oriented_graph(4, [(3, 2), (3, 1), (2, 0)])
ok, witness = are_isomorphic(d1, d2)
print(f"\ntwo 4-vertex DAGs isomorphic: {ok}, witness {witness.map}")

# DOT export for quick visualization of any binary-relation structure.
print("\nDOT for the oriented 3-cycle:")
print(structure_to_dot(catalog.oriented_graph(3, [(0, 1), (1, 2), (2, 0)])))
