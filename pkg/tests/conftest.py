"""Shared independent oracles for the test suite.

These deliberately re-derive definitions from scratch (no calls into the
library's search code) so that library results are checked against a
second route.
"""

from __future__ import annotations

import itertools

import pytest

from ramsey_forge.structures import FinStructure


def brute_force_embedding_maps(a: FinStructure, b: FinStructure
                               ) -> set[tuple[int, ...]]:
    """All embeddings of ``a`` into ``b`` by direct definition over every
    injection: injective, and every relation preserved and reflected."""
    out = set()
    for image in itertools.permutations(range(b.size), a.size):
        ok = True
        for spec, a_rel, b_rel in zip(a.signature.relations, a.relations,
                                      b.relations):
            for t in itertools.product(range(a.size), repeat=spec.arity):
                if (t in a_rel) != (tuple(image[v] for v in t) in b_rel):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(tuple(image))
    return out


def brute_force_isomorphism(a: FinStructure, b: FinStructure) -> bool:
    if a.size != b.size:
        return False
    return bool(brute_force_embedding_maps(a, b))


@pytest.fixture(scope="session")
def metric_corpus():
    """Deterministic corpus of spanned-amalgamation instances (>= 100).

    Each entry is ``(m, mp, mpp, f, g, l)`` ready for the strong
    amalgamation: the shared space is a two-class fixture, each side adds
    points attached to chosen classes at chosen first-block distances.
    """
    from fractions import Fraction

    from ramsey_forge import metric

    sets = [
        (0, 1, 2, 5, 6),
        (0, 1, 3),
        (0, 1, 3, 7),
        (0, 2, 3, 7, 8),
        (0, 1, 2, 5, 6, 14),
    ]
    corpus = []
    for values in sets:
        s = metric.DistanceSet.make(values)
        assert metric.is_compact(s)[0]
        bp = metric.blocks(s)
        if len(bp.nontrivial) < 2:
            continue
        b1 = bp.nontrivial[0]
        cross_options = [v for blk in bp.nontrivial[1:] for v in blk]
        for cross in cross_options:
            base = metric.FinMetricSpace.make(s, [[0, cross], [cross, 0]])
            l = metric.FinMetricSpace.make(s, [[0, cross], [cross, 0]])

            def extended(attach_class: int, near: Fraction):
                far = cross
                row = [near if i == attach_class else far for i in range(2)]
                d = [
                    [Fraction(0), cross, row[0]],
                    [cross, Fraction(0), row[1]],
                    [row[0], row[1], Fraction(0)],
                ]
                return metric.FinMetricSpace.make(s, d)

            for cls_p, cls_pp in itertools.product((0, 1), repeat=2):
                for near_p, near_pp in itertools.product(b1, repeat=2):
                    corpus.append((base,
                                   extended(cls_p, near_p),
                                   extended(cls_pp, near_pp),
                                   (0, 1), (0, 1), l))
    assert len(corpus) >= 100
    return corpus
