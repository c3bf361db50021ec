"""Binary digraphs, commuting cocones, amalgamation, and class checkers.

A binary digraph is a two-row shape: every bottom vertex sends exactly two
arrows up.  Decorating the rows with structures and the arrows with
embeddings gives a diagram; a commuting cocone is a tip structure with one
leg per top vertex making every bottom span agree.

Cocone tips are generated as the quotient of the disjoint union of the top
objects by the identifications the bottom spans force, then completed by
enumerating relation choices on undetermined tuples.  Point merging beyond
the forced quotient is never attempted: for hereditary class predicates
(every built-in class here is hereditary) a cocone exists on such a tip
whenever one exists at all, after restricting to the union of leg images.
The same pushout discipline drives :func:`amalgamate`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterator, Sequence

from .catalog import I_STAR, StructClass, is_linearly_ordered_poset
from .structures import (
    TAG_LINEAR,
    TAG_ORIENTED,
    TAG_SYMMETRIC,
    Embedding,
    FinStructure,
    Signature,
    StructureError,
    automorphisms,
    compose,
    enumerate_embeddings,
    first_embedding,
    is_embedding,
    restriction,
)

FOUND = "found"
IMPOSSIBLE = "impossible"
EXHAUSTED = "exhausted"
NONE_WITHIN_BOUND = "none-within-bound"


@dataclass(frozen=True)
class BinaryDigraph:
    """Two vertex rows with bottom-to-top arrows, out-degree exactly 2."""

    n_top: int
    n_bottom: int
    arrows: tuple[tuple[int, int], ...]  # (bottom source, top target) per arrow

    def __post_init__(self) -> None:
        if self.n_top < 0 or self.n_bottom < 0:
            raise ValueError("vertex counts must be nonnegative")
        degree = [0] * self.n_bottom
        for s, t in self.arrows:
            if not (0 <= s < self.n_bottom and 0 <= t < self.n_top):
                raise ValueError(f"arrow ({s},{t}) out of range")
            degree[s] += 1
        if any(d != 2 for d in degree):
            raise ValueError("every bottom vertex must have out-degree exactly 2")

    def arrows_of(self, bottom: int) -> tuple[int, int]:
        """The two arrow indices leaving ``bottom``."""
        idx = tuple(i for i, (s, _) in enumerate(self.arrows) if s == bottom)
        return idx  # type: ignore[return-value]


def connected_components(shape: BinaryDigraph) -> tuple[tuple[int, ...], ...]:
    """Walk-connected classes of top vertices, ordered by least member."""
    parent = list(range(shape.n_top))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for b in range(shape.n_bottom):
        i, j = shape.arrows_of(b)
        x, y = find(shape.arrows[i][1]), find(shape.arrows[j][1])
        if x != y:
            parent[max(x, y)] = min(x, y)

    classes: dict[int, list[int]] = {}
    for v in range(shape.n_top):
        classes.setdefault(find(v), []).append(v)
    return tuple(tuple(sorted(c)) for _, c in sorted(classes.items()))


@dataclass(frozen=True)
class StructDiagram:
    """A binary-digraph shape decorated with structures and embeddings."""

    shape: BinaryDigraph
    top_objects: tuple[FinStructure, ...]
    bottom_objects: tuple[FinStructure, ...]
    arrow_maps: tuple[Embedding, ...]

    def __post_init__(self) -> None:
        if len(self.top_objects) != self.shape.n_top:
            raise ValueError("top objects not aligned with shape")
        if len(self.bottom_objects) != self.shape.n_bottom:
            raise ValueError("bottom objects not aligned with shape")
        if len(self.arrow_maps) != len(self.shape.arrows):
            raise ValueError("arrow maps not aligned with shape arrows")
        for (s, t), emb in zip(self.shape.arrows, self.arrow_maps):
            if emb.source != self.bottom_objects[s] or emb.target != self.top_objects[t]:
                raise ValueError(f"arrow ({s},{t}) carries a mismatched embedding")

    def is_ab_diagram(self) -> bool:
        tops = set(self.top_objects)
        bottoms = set(self.bottom_objects)
        return len(tops) <= 1 and len(bottoms) <= 1


def ab_diagram(a: FinStructure, b: FinStructure,
               spans: Sequence[tuple[Sequence[int], Sequence[int], int, int]],
               n_top: int) -> StructDiagram:
    """Build an (A, B)-diagram from spans ``(u, v, i, j)``: one bottom copy
    of A per span, with u into top copy i and v into top copy j."""
    arrows = []
    maps = []
    for u, v, i, j in spans:
        bottom = len(maps) // 2
        arrows.append((bottom, i))
        maps.append(Embedding(a, b, tuple(u)))
        arrows.append((bottom, j))
        maps.append(Embedding(a, b, tuple(v)))
    shape = BinaryDigraph(n_top, len(spans), tuple(arrows))
    return StructDiagram(shape, (b,) * n_top, (a,) * len(spans), tuple(maps))


@dataclass(frozen=True)
class Cocone:
    tip: FinStructure
    legs: tuple[Embedding, ...]  # one per top vertex, into the tip


def check_commutes(diagram: StructDiagram, cocone: Cocone) -> bool:
    """True iff for every bottom span the two leg-composites agree as maps."""
    if len(cocone.legs) != diagram.shape.n_top:
        raise ValueError("cocone legs not aligned with top row")
    for b in range(diagram.shape.n_bottom):
        a1, a2 = diagram.shape.arrows_of(b)
        t1, t2 = diagram.shape.arrows[a1][1], diagram.shape.arrows[a2][1]
        e1 = compose(cocone.legs[t1], diagram.arrow_maps[a1])
        e2 = compose(cocone.legs[t2], diagram.arrow_maps[a2])
        if e1.map != e2.map:
            return False
    return True


@dataclass(frozen=True)
class CoconeSearch:
    status: str  # found | impossible | exhausted | none-within-bound
    cocone: Cocone | None = None


# ---------------------------------------------------------------------------
# relation completion machinery (shared by cocone search and amalgamation)


def _slot_options(tag: str, x: int, y: int) -> list[tuple[tuple[int, ...], ...]]:
    """Candidate tuple sets for one undetermined binary slot, sparsest first."""
    if tag == TAG_SYMMETRIC:
        return [(), ((x, y), (y, x))]
    if tag == TAG_LINEAR:
        return [((x, y),), ((y, x),)]
    if tag == TAG_ORIENTED:
        return [(), ((x, y),), ((y, x),)]
    return [(), ((x, y),), ((y, x),), ((x, y), (y, x))]


def _complete_structures(signature: Signature, size: int,
                         determined: list[dict[tuple[int, ...], bool]],
                         predicate: Callable[[FinStructure], bool] | None
                         ) -> Iterator[FinStructure]:
    """All valid structures extending the determined part, enumerated with
    sparser relation choices first."""
    slot_axes: list[tuple[int, list[tuple[tuple[int, ...], ...]]]] = []
    base: list[set[tuple[int, ...]]] = []
    for ri, spec in enumerate(signature.relations):
        pos = {t for t, present in determined[ri].items() if present}
        base.append(pos)
        if spec.arity == 2:
            for x in range(size):
                for y in range(x + 1, size):
                    if (x, y) in determined[ri] or (y, x) in determined[ri]:
                        continue
                    slot_axes.append((ri, _slot_options(spec.tag, x, y)))
        else:
            for t in itertools.product(range(size), repeat=spec.arity):
                if t not in determined[ri]:
                    slot_axes.append((ri, [(), (t,)]))

    for choice in itertools.product(*(options for _, options in slot_axes)):
        rels = [set(b) for b in base]
        for (ri, _), picked in zip(slot_axes, choice):
            rels[ri].update(picked)
        try:
            candidate = FinStructure(signature, size,
                                     tuple(frozenset(r) for r in rels))
        except StructureError:
            continue
        if predicate is not None and not predicate(candidate):
            continue
        yield candidate


def find_cocone(diagram: StructDiagram, max_tip_size: int,
                class_predicate: Callable[[FinStructure], bool] | None = None
                ) -> CoconeSearch:
    """Search for a commuting cocone over canonical tip candidates.

    The tip point set is the quotient of the disjoint union of top objects
    by the identifications forced by the bottom spans; candidates differ
    only in the relations chosen on tuples no top object determines.  Two
    outcomes are proofs: a forced merge inside one top object, or
    contradictory forced relations, make a cocone impossible outright.
    Exhausting the candidate space without a hit is reported separately
    from exceeding ``max_tip_size``.
    """
    shape = diagram.shape
    tops = diagram.top_objects
    if shape.n_top == 0:
        raise ValueError("diagram has no top objects")
    signature = tops[0].signature

    offsets = []
    total = 0
    for s in tops:
        offsets.append(total)
        total += s.size
    parent = list(range(total))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for b in range(shape.n_bottom):
        a1, a2 = shape.arrows_of(b)
        t1, t2 = shape.arrows[a1][1], shape.arrows[a2][1]
        e1, e2 = diagram.arrow_maps[a1], diagram.arrow_maps[a2]
        for v in range(diagram.bottom_objects[b].size):
            union(offsets[t1] + e1.map[v], offsets[t2] + e2.map[v])

    # a forced merge of two points of the same top object kills injectivity
    reps: dict[int, int] = {}
    class_of = [0] * total
    for ti, s in enumerate(tops):
        seen: dict[int, int] = {}
        for v in range(s.size):
            r = find(offsets[ti] + v)
            if r in seen:
                return CoconeSearch(IMPOSSIBLE)
            seen[r] = v
            if r not in reps:
                reps[r] = len(reps)
            class_of[offsets[ti] + v] = reps[r]
    q = len(reps)
    if q > max_tip_size:
        return CoconeSearch(NONE_WITHIN_BOUND)

    legs_maps = [tuple(class_of[offsets[ti] + v] for v in range(s.size))
                 for ti, s in enumerate(tops)]

    # forced relation values: positive from each top's tuples, negative from
    # reflection on tuples a single top covers completely
    determined: list[dict[tuple[int, ...], bool]] = [dict() for _ in signature.relations]
    for ri, spec in enumerate(signature.relations):
        for ti, s in enumerate(tops):
            in_top = {}
            for v in range(s.size):
                in_top[legs_maps[ti][v]] = v
            for t in itertools.product(sorted(in_top), repeat=spec.arity):
                val = tuple(in_top[cls] for cls in t) in s.relations[ri]
                prev = determined[ri].get(t)
                if prev is None:
                    determined[ri][t] = val
                elif prev != val:
                    return CoconeSearch(IMPOSSIBLE)

    for tip in _complete_structures(signature, q, determined, class_predicate):
        legs = tuple(Embedding(s, tip, legs_maps[ti], _checked=True)
                     for ti, s in enumerate(tops))
        for ti, s in enumerate(tops):
            assert is_embedding(legs_maps[ti], s, tip)
        cocone = Cocone(tip, legs)
        assert check_commutes(diagram, cocone)
        return CoconeSearch(FOUND, cocone)
    return CoconeSearch(EXHAUSTED)


# ---------------------------------------------------------------------------
# amalgamation


@dataclass(frozen=True)
class Amalgam:
    amalgam: FinStructure
    into_b: Embedding  # B -> D
    into_c: Embedding  # C -> D


@dataclass(frozen=True)
class AmalgamSearch:
    status: str  # found | exhausted | none-within-bound
    result: Amalgam | None = None


def enumerate_amalgams(a: FinStructure, b: FinStructure, c: FinStructure,
                       f: Embedding, g: Embedding, strong: bool = False,
                       bound: int | None = None,
                       predicate: Callable[[FinStructure], bool] | None = None
                       ) -> Iterator[Amalgam]:
    """All pushout-shaped amalgams of the span ``B <-f- A -g-> C``.

    The amalgam's point set is B plus the points of C outside g(A); no
    further identification is attempted, so the shared part of the two
    images is exactly the image of A and every amalgam produced here is a
    strong one.  Relation choices on mixed tuples are enumerated with the
    free superposition (no cross relations) first.
    """
    if f.source != a or g.source != a or f.target != b or g.target != c:
        raise StructureError("amalgamate: span embeddings do not match A, B, C")
    signature = b.signature
    size = b.size + c.size - a.size
    if bound is not None and size > bound:
        return

    g_image = {g.map[v]: v for v in range(a.size)}
    c_to_d = {}
    fresh = b.size
    for w in range(c.size):
        if w in g_image:
            c_to_d[w] = f.map[g_image[w]]
        else:
            c_to_d[w] = fresh
            fresh += 1
    b_to_d = tuple(range(b.size))
    c_map = tuple(c_to_d[w] for w in range(c.size))

    determined: list[dict[tuple[int, ...], bool]] = [dict() for _ in signature.relations]
    for ri, spec in enumerate(signature.relations):
        for t in itertools.product(range(b.size), repeat=spec.arity):
            determined[ri][t] = t in b.relations[ri]
        inv_c = {c_map[w]: w for w in range(c.size)}
        for t in itertools.product(sorted(inv_c), repeat=spec.arity):
            val = tuple(inv_c[p] for p in t) in c.relations[ri]
            prev = determined[ri].get(t)
            if prev is None:
                determined[ri][t] = val
            elif prev != val:
                return  # f and g disagree on the shared part; no amalgam

    for d in _complete_structures(signature, size, determined, predicate):
        fp = Embedding(b, d, b_to_d, _checked=True)
        gp = Embedding(c, d, c_map, _checked=True)
        assert is_embedding(fp.map, b, d) and is_embedding(gp.map, c, d)
        assert tuple(fp.map[v] for v in f.map) == tuple(gp.map[v] for v in g.map)
        overlap = set(fp.map) & set(gp.map)
        shared = {fp.map[f.map[v]] for v in range(a.size)}
        assert overlap == shared  # strong condition holds for every pushout
        yield Amalgam(d, fp, gp)


def amalgamate(a: FinStructure, b: FinStructure, c: FinStructure,
               f: Embedding, g: Embedding, strong: bool = False,
               bound: int | None = None,
               predicate: Callable[[FinStructure], bool] | None = None
               ) -> AmalgamSearch:
    """First amalgam of the span, or a status explaining the failure."""
    size = b.size + c.size - a.size
    if bound is not None and size > bound:
        return AmalgamSearch(NONE_WITHIN_BOUND)
    for amalgam in enumerate_amalgams(a, b, c, f, g, strong, bound, predicate):
        return AmalgamSearch(FOUND, amalgam)
    return AmalgamSearch(EXHAUSTED)


# ---------------------------------------------------------------------------
# Fraisse-style class property checks


@dataclass(frozen=True)
class ClassPropertyReport:
    property: str
    class_name: str
    max_size: int
    holds: bool
    counterexample: tuple | None
    undecided: tuple
    instances_checked: int

    def summary(self) -> str:
        state = "holds" if self.holds else "FAILS"
        extra = f", undecided={len(self.undecided)}" if self.undecided else ""
        return (f"{self.property} for {self.class_name} up to size "
                f"{self.max_size}: {state} "
                f"({self.instances_checked} instances{extra})")


def _orbit_representatives(x: FinStructure, y: FinStructure) -> tuple[Embedding, ...]:
    """Embeddings X -> Y up to post-composition with Aut(Y)."""
    homxy = enumerate_embeddings(x, y)
    if not homxy:
        return ()
    auts = automorphisms(y)
    seen: set[tuple[int, ...]] = set()
    reps = []
    for e in homxy:
        if e.map in seen:
            continue
        reps.append(e)
        for alpha in auts:
            seen.add(tuple(alpha.map[v] for v in e.map))
    return tuple(reps)


def _empty_structure(signature: Signature) -> FinStructure:
    return FinStructure(signature, 0,
                        tuple(frozenset() for _ in signature.relations))


def check_class_property(property_name: str, klass: StructClass, max_size: int,
                         amalgam_bound: int | None = None) -> ClassPropertyReport:
    """Exhaustively verify HP / JEP / AP / SAP over a class up to a size.

    Stops at the first counterexample.  Amalgams are searched over pushout
    candidates, complete for hereditary classes; when a caller-supplied
    ``amalgam_bound`` is too small to cover a pushout the instance is
    reported undecided rather than failed.
    """
    members = klass.members_up_to(max_size)
    checked = 0
    undecided: list[tuple] = []

    if property_name == "HP":
        for mi, x in enumerate(members):
            for r in range(1, x.size):
                for subset in itertools.combinations(range(x.size), r):
                    checked += 1
                    sub = restriction(x, subset)
                    if sub not in klass:
                        return ClassPropertyReport(property_name, klass.name,
                                                   max_size, False,
                                                   (mi, subset), (), checked)
        return ClassPropertyReport(property_name, klass.name, max_size, True,
                                   None, (), checked)

    if property_name == "JEP":
        empty = _empty_structure(klass.signature)
        nomap = Embedding(empty, empty, (), _checked=True)
        for xi, x in enumerate(members):
            fx = Embedding(empty, x, (), _checked=True)
            for yi, y in enumerate(members):
                fy = Embedding(empty, y, (), _checked=True)
                checked += 1
                bound = amalgam_bound if amalgam_bound is not None else x.size + y.size
                search = amalgamate(empty, x, y, fx, fy, strong=False,
                                    bound=bound, predicate=klass.predicate)
                if search.status == NONE_WITHIN_BOUND:
                    undecided.append((xi, yi))
                elif search.status != FOUND:
                    return ClassPropertyReport(property_name, klass.name,
                                               max_size, False, (xi, yi),
                                               tuple(undecided), checked)
        return ClassPropertyReport(property_name, klass.name, max_size, True,
                                   None, tuple(undecided), checked)

    if property_name not in ("AP", "SAP"):
        raise ValueError("property must be one of HP, JEP, AP, SAP")

    strong = property_name == "SAP"
    for ai, x in enumerate(members):
        for bi, yb in enumerate(members):
            reps_f = _orbit_representatives(x, yb)
            if not reps_f:
                continue
            for ci, yc in enumerate(members):
                reps_g = _orbit_representatives(x, yc)
                if not reps_g:
                    continue
                default = yb.size + yc.size - x.size
                bound = amalgam_bound if amalgam_bound is not None else default
                for f in reps_f:
                    for g in reps_g:
                        checked += 1
                        search = amalgamate(x, yb, yc, f, g, strong=strong,
                                            bound=bound,
                                            predicate=klass.predicate)
                        if search.status == NONE_WITHIN_BOUND:
                            undecided.append((ai, bi, ci, f.map, g.map))
                        elif search.status != FOUND:
                            return ClassPropertyReport(
                                property_name, klass.name, max_size, False,
                                (ai, bi, ci, f.map, g.map),
                                tuple(undecided), checked)
    return ClassPropertyReport(property_name, klass.name, max_size, True,
                               None, tuple(undecided), checked)


# ---------------------------------------------------------------------------
# linearly ordered posets: the three-point obstruction and permutationality


def _validate_lo_poset(p: FinStructure) -> None:
    if not is_linearly_ordered_poset(p):
        raise StructureError("not a linearly ordered poset "
                             "(po must be a strict partial order extended by omega)")


def embeds_I_star(p: FinStructure) -> bool:
    """Does the three-element obstruction embed into ``p``?"""
    _validate_lo_poset(p)
    return first_embedding(I_STAR, p) is not None


def is_permutational(p: FinStructure) -> tuple[int, ...] | None:
    """A second linear order whose meet with omega is the partial order.

    Returns the witness as a listing of the domain (least first), or None.
    A witness exists exactly when the three-point obstruction does not
    embed; the checkers are kept independent so that equivalence is
    testable.
    """
    _validate_lo_poset(p)
    po = p.rel("po")
    omega = p.rel("omega")
    n = p.size
    for listing in itertools.permutations(range(n)):
        position = {v: i for i, v in enumerate(listing)}
        ok = True
        for x in range(n):
            for y in range(n):
                if x == y:
                    continue
                meet = (x, y) in omega and position[x] < position[y]
                if meet != ((x, y) in po):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return listing
    return None
