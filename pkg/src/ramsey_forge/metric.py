"""Compact distance sets and the metric machinery built on them.

A finite distance set splits into blocks at its jump numbers (values more
than doubled by their successor).  Compactness ties the block structure to
actual distance gaps, which makes metric triples classifiable by block
pattern alone, forces the 4-values condition, and powers three
constructions implemented here: the strong amalgamation of spanned metric
spaces, the star transform squeezing a multi-block space into a one-block
spectrum, and the quotient recovery inverting it.

All arithmetic is exact (``fractions.Fraction``); the predicates here are
equality-sensitive and floating point would corrupt them.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .structures import TAG_SYMMETRIC, FinStructure, Signature

Rational = Fraction | int


class MetricError(ValueError):
    """A metric-space construction invariant is violated."""


class IntegrityError(MetricError):
    """Input data contradicts the structural assumptions of an operation."""


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise MetricError(f"not an exact rational: {x!r}")


@dataclass(frozen=True)
class DistanceSet:
    """A strictly increasing tuple of nonnegative rationals starting at 0."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.values or self.values[0] != 0:
            raise MetricError("distance set must start at 0")
        if any(b <= a for a, b in zip(self.values, self.values[1:])):
            raise MetricError("distance set must be strictly increasing")

    @staticmethod
    def make(values: Iterable) -> "DistanceSet":
        return DistanceSet(tuple(_frac(v) for v in values))

    def __contains__(self, x) -> bool:
        return _frac(x) in set(self.values)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def positive(self) -> tuple[Fraction, ...]:
        return self.values[1:]

    @property
    def s1(self) -> Fraction:
        if len(self.values) < 2:
            raise MetricError("no positive values in distance set")
        return self.values[1]


@dataclass(frozen=True)
class BlockPartition:
    """Jump numbers and the block intervals they delimit.

    The first block is always the trivial ``(0,)``; every other block is a
    maximal run of values ending at a jump.
    """

    jumps: tuple[Fraction, ...]
    blocks: tuple[tuple[Fraction, ...], ...]

    @property
    def nontrivial(self) -> tuple[tuple[Fraction, ...], ...]:
        return self.blocks[1:]

    def block_index(self, x: Fraction) -> int:
        """1-based block number of a positive value (0 = trivial block)."""
        for i, blk in enumerate(self.blocks):
            if x in blk:
                return i
        raise MetricError(f"{x} is not a member of the distance set")


@lru_cache(maxsize=None)
def jump_numbers(s: DistanceSet) -> tuple[Fraction, ...]:
    """Values that are last, or less than half their successor."""
    vals = s.values
    n = len(vals) - 1
    return tuple(v for i, v in enumerate(vals)
                 if i == n or 2 * v < vals[i + 1])


@lru_cache(maxsize=None)
def blocks(s: DistanceSet) -> BlockPartition:
    jumps = jump_numbers(s)
    out: list[tuple[Fraction, ...]] = [(Fraction(0),)]
    prev = Fraction(0)
    for j in jumps[1:]:
        out.append(tuple(v for v in s.values if prev < v <= j))
        prev = j
    return BlockPartition(jumps, tuple(out))


def approx(s: DistanceSet, x, y) -> bool:
    """Same-block relation on positive values."""
    x, y = _frac(x), _frac(y)
    if x <= 0 or y <= 0:
        raise MetricError("approx is defined on positive values only")
    bp = blocks(s)
    return bp.block_index(x) == bp.block_index(y)


def ll(s: DistanceSet, x, y) -> bool:
    """Strictly-earlier-block relation on positive values."""
    x, y = _frac(x), _frac(y)
    if x <= 0 or y <= 0:
        raise MetricError("ll is defined on positive values only")
    bp = blocks(s)
    return bp.block_index(x) < bp.block_index(y)


def is_metric_triple(a, b, c) -> bool:
    """The three triangle inequalities on positive values."""
    a, b, c = _frac(a), _frac(b), _frac(c)
    if a <= 0 or b <= 0 or c <= 0:
        raise MetricError("metric triples consist of positive values")
    return a + b >= c and b + c >= a and c + a >= b


@lru_cache(maxsize=None)
def is_compact(s: DistanceSet) -> tuple[bool, tuple[Fraction, Fraction] | None]:
    """Check ``|x-y| <= s1  iff  same block`` over all positive pairs.

    The forward direction holds for every distance set; a counterexample
    pair, when one exists, witnesses the reverse failing.
    """
    if len(s) < 2:
        raise MetricError("compactness needs at least one positive value")
    bp = blocks(s)
    s1 = s.s1
    for x, y in itertools.combinations_with_replacement(s.positive, 2):
        same = bp.block_index(x) == bp.block_index(y)
        close = abs(x - y) <= s1
        if close != same:
            return False, (x, y)
    return True, None


EQUILATERAL = "equilateral-block"
ISOSCELES = "isosceles-jump"
NON_METRIC = "non-metric"


def classify_triple(s: DistanceSet, a, b, c) -> str:
    """Block-pattern classification of a sorted positive triple.

    On a compact distance set this agrees with :func:`is_metric_triple` on
    every triple: all three in one block, or the least strictly below the
    equal blocks of the other two, are the metric patterns.
    """
    compact, _ = is_compact(s)
    if not compact:
        raise MetricError("classification requires a compact distance set")
    a, b, c = sorted((_frac(a), _frac(b), _frac(c)))
    bp = blocks(s)
    ia, ib, ic = bp.block_index(a), bp.block_index(b), bp.block_index(c)
    if ia == ib == ic:
        return EQUILATERAL
    if ia < ib == ic:
        return ISOSCELES
    return NON_METRIC


def check_4values(s: DistanceSet
                  ) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Brute-force the 4-values condition over all positive quadruples.

    For every (a, b, c, d) joined by some p (both (a,b,p) and (c,d,p)
    metric), some q must join the cross pairs (a,c,q) and (b,d,q).  The
    per-p work is aggregated into bitmasks; the logic is the plain
    definition.
    """
    pos = s.positive
    m = len(pos)
    joined = [[0] * m for _ in range(m)]  # bitmask over p of is_metric_triple
    for i, a in enumerate(pos):
        for j, b in enumerate(pos):
            mask = 0
            for pi, p in enumerate(pos):
                if is_metric_triple(a, b, p):
                    mask |= 1 << pi
            joined[i][j] = mask
    for i, j, k, l in itertools.product(range(m), repeat=4):
        premise = joined[i][j] & joined[k][l]
        if premise and not (joined[i][k] & joined[j][l]):
            p = pos[(premise & -premise).bit_length() - 1]
            return False, (pos[i], pos[j], pos[k], pos[l], p)
    return True, None


# ---------------------------------------------------------------------------
# finite metric spaces


@dataclass(frozen=True)
class FinMetricSpace:
    """A finite point set with an exact-rational metric whose spectrum lies
    in a declared distance set."""

    dset: DistanceSet
    d: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.d)
        allowed = set(self.dset.values)
        for i in range(n):
            if len(self.d[i]) != n:
                raise MetricError("distance matrix must be square")
            for j in range(n):
                v = self.d[i][j]
                if v != self.d[j][i]:
                    raise MetricError(f"matrix not symmetric at ({i},{j})")
                if (v == 0) != (i == j):
                    raise MetricError(f"zero distance exactly on the diagonal ({i},{j})")
                if v not in allowed:
                    raise MetricError(f"distance {v} outside declared set")
        for i, j, k in itertools.combinations(range(n), 3):
            if (self.d[i][j] + self.d[j][k] < self.d[i][k]
                    or self.d[j][i] + self.d[i][k] < self.d[j][k]
                    or self.d[i][k] + self.d[k][j] < self.d[i][j]):
                raise MetricError(f"triangle inequality fails on ({i},{j},{k})")

    @staticmethod
    def make(dset, matrix: Sequence[Sequence]) -> "FinMetricSpace":
        ds = dset if isinstance(dset, DistanceSet) else DistanceSet.make(dset)
        return FinMetricSpace(ds, tuple(tuple(_frac(v) for v in row)
                                        for row in matrix))

    @property
    def size(self) -> int:
        return len(self.d)

    def dist(self, x: int, y: int) -> Fraction:
        return self.d[x][y]

    def spectre(self) -> set[Fraction]:
        return {v for row in self.d for v in row}

    def restrict(self, points: Sequence[int]) -> "FinMetricSpace":
        pts = list(points)
        return FinMetricSpace(self.dset, tuple(
            tuple(self.d[x][y] for y in pts) for x in pts))


def enumerate_isometric_embeddings(m1: FinMetricSpace, m2: FinMetricSpace
                                   ) -> tuple[tuple[int, ...], ...]:
    """All distance-preserving injections, in lexicographic order."""
    n1, n2 = m1.size, m2.size
    out: list[tuple[int, ...]] = []
    assignment: list[int] = []

    def extend(v: int) -> None:
        if v == n1:
            out.append(tuple(assignment))
            return
        for w in range(n2):
            if w in assignment:
                continue
            if all(m1.d[v][u] == m2.d[w][assignment[u]] for u in range(v)):
                assignment.append(w)
                extend(v + 1)
                assignment.pop()

    extend(0)
    return tuple(out)


def are_isometric(m1: FinMetricSpace, m2: FinMetricSpace
                  ) -> tuple[bool, tuple[int, ...] | None]:
    if m1.size != m2.size:
        return False, None
    for f in enumerate_isometric_embeddings(m1, m2):
        return True, f
    return False, None


def sim_partition(m: FinMetricSpace) -> tuple[tuple[int, ...], ...]:
    """Classes of the small-distance relation (distance in the trivial or
    first block), ordered by least member.

    Transitivity is a consequence of the declared set's block structure for
    valid inputs; it is verified rather than assumed, and a violation is
    reported as data corruption.
    """
    bp = blocks(m.dset)
    first = set(bp.blocks[1]) if len(bp.blocks) > 1 else set()
    near = first | {Fraction(0)}

    def sim(x: int, y: int) -> bool:
        return m.d[x][y] in near

    classes: list[list[int]] = []
    for x in range(m.size):
        for cls in classes:
            if sim(cls[0], x):
                cls.append(x)
                break
        else:
            classes.append([x])
    for cls in classes:
        for x, y in itertools.combinations(cls, 2):
            if not sim(x, y):
                raise IntegrityError("similarity relation is not transitive; "
                                     "input is not a valid space over this set")
    for c1, c2 in itertools.combinations(classes, 2):
        if sim(c1[0], c2[0]):
            raise IntegrityError("similarity classes not mutually separated")
    return tuple(tuple(cls) for cls in classes)


def spans(l: FinMetricSpace, m: FinMetricSpace) -> tuple[int, ...] | None:
    """First transversal of m's similarity classes isometric to ``l``.

    ``l`` must live over the declared set with the first nontrivial block
    removed.  Returns one point per class (in class order) or None.
    """
    bp = blocks(m.dset)
    if len(bp.nontrivial) < 1:
        raise MetricError("span requires at least one nontrivial block")
    first = set(bp.blocks[1])
    if any(v in first for v in l.spectre()):
        raise MetricError("spanning space uses distances from the first block")
    classes = sim_partition(m)
    if len(classes) != l.size:
        return None
    for transversal in itertools.product(*classes):
        if are_isometric(m.restrict(transversal), l)[0]:
            return transversal
    return None


# ---------------------------------------------------------------------------
# strong amalgamation over a spanning space


def sap_amalgamate_metL(m: FinMetricSpace, mp: FinMetricSpace,
                        mpp: FinMetricSpace, f: Sequence[int],
                        g: Sequence[int], l: FinMetricSpace
                        ) -> tuple[FinMetricSpace, tuple[int, ...], tuple[int, ...]]:
    """Strong amalgamation of spanned spaces over their common part.

    ``f`` and ``g`` embed ``m`` isometrically into ``mp`` and ``mpp``; all
    three spaces must be spanned by ``l``.  New cross distances are the
    spanning distances between the corresponding class representatives when
    the classes differ, and the least positive value when they coincide.
    Returns the amalgam with the two inclusion maps; the construction
    verifies metric validity, isometry of the inclusions, exactness of the
    overlap, and that ``l`` still spans the result.
    """
    s = m.dset
    compact, _ = is_compact(s)
    if not compact:
        raise MetricError("amalgamation requires a compact distance set")
    if len(blocks(s).nontrivial) < 2:
        raise MetricError("amalgamation requires at least two nontrivial blocks")
    if mp.dset != s or mpp.dset != s:
        raise MetricError("all spaces must share one declared distance set")
    f = tuple(f)
    g = tuple(g)
    _check_isometric_map(m, mp, f, "f")
    _check_isometric_map(m, mpp, g, "g")

    transversal = spans(l, m)
    if transversal is None:
        raise MetricError("the spanning space does not span the shared part")
    classes_p = sim_partition(mp)
    classes_pp = sim_partition(mpp)
    k = len(transversal)
    if len(classes_p) != k or len(classes_pp) != k:
        raise MetricError("the spanning space does not span both sides")

    # align both class lists with the shared transversal
    def class_lookup(classes, point):
        for ci, cls in enumerate(classes):
            if point in cls:
                return ci
        raise IntegrityError("image point escaped every similarity class")

    align_p = [class_lookup(classes_p, f[a]) for a in transversal]
    align_pp = [class_lookup(classes_pp, g[a]) for a in transversal]
    if sorted(align_p) != list(range(k)) or sorted(align_pp) != list(range(k)):
        raise MetricError("transversal images do not hit every class once")
    class_of_p = {}
    for i, ci in enumerate(align_p):
        for x in classes_p[ci]:
            class_of_p[x] = i
    class_of_pp = {}
    for i, ci in enumerate(align_pp):
        for x in classes_pp[ci]:
            class_of_pp[x] = i

    # amalgam points: all of mp, then mpp's points outside g(m)
    g_image = {g[a]: a for a in range(m.size)}
    pp_fresh = [x for x in range(mpp.size) if x not in g_image]
    into_p = tuple(range(mp.size))
    into_pp_map = {}
    for x in range(mpp.size):
        if x in g_image:
            into_pp_map[x] = f[g_image[x]]
        else:
            into_pp_map[x] = mp.size + pp_fresh.index(x)
    into_pp = tuple(into_pp_map[x] for x in range(mpp.size))
    size = mp.size + len(pp_fresh)

    s1 = s.s1
    tdist = [[Fraction(0)] * size for _ in range(size)]
    label_to_pp = {lab: x for x, lab in into_pp_map.items()}

    def base_dist(x: int, y: int) -> Fraction:
        if x < mp.size and y < mp.size:
            return mp.d[x][y]
        px, py = label_to_pp.get(x), label_to_pp.get(y)
        if px is not None and py is not None:
            return mpp.d[px][py]
        # one point is new on the first side, the other new on the second
        if x < mp.size:
            ci, cj = class_of_p[x], class_of_pp[pp_fresh[y - mp.size]]
        else:
            ci, cj = class_of_pp[pp_fresh[x - mp.size]], class_of_p[y]
        if ci != cj:
            return m.d[transversal[ci]][transversal[cj]]
        return s1

    for x in range(size):
        for y in range(x + 1, size):
            v = base_dist(x, y)
            tdist[x][y] = v
            tdist[y][x] = v

    amalgam = FinMetricSpace(s, tuple(tuple(row) for row in tdist))

    _check_isometric_map(mp, amalgam, into_p, "inclusion of the first side")
    _check_isometric_map(mpp, amalgam, into_pp, "inclusion of the second side")
    shared = {into_p[f[a]] for a in range(m.size)}
    if set(into_p) & set(into_pp) != shared:
        raise IntegrityError("image overlap is not exactly the shared part")
    if spans(l, amalgam) is None:
        raise IntegrityError("the spanning space no longer spans the amalgam")
    return amalgam, into_p, into_pp


def _check_isometric_map(src: FinMetricSpace, dst: FinMetricSpace,
                         mapping: Sequence[int], label: str) -> None:
    if len(mapping) != src.size or len(set(mapping)) != src.size:
        raise MetricError(f"{label}: not an injection on the whole domain")
    for x in range(src.size):
        for y in range(src.size):
            if src.d[x][y] != dst.d[mapping[x]][mapping[y]]:
                raise MetricError(f"{label}: not isometric at ({x},{y})")


# ---------------------------------------------------------------------------
# star transform and quotient recovery


@dataclass(frozen=True)
class SigmaChoice:
    """A one-block target spectrum for a base distance set, with the order
    bijection onto its lower part and the two extra levels."""

    base: DistanceSet
    sigma: DistanceSet
    xi: tuple[tuple[Fraction, Fraction], ...]  # pairs (s_i, sigma_i)
    eps: Fraction
    zeta: Fraction

    def forward(self, v: Fraction) -> Fraction:
        for a, b in self.xi:
            if a == v:
                return b
        raise MetricError(f"{v} outside the base distance set")

    def backward(self, v: Fraction) -> Fraction:
        for a, b in self.xi:
            if b == v:
                return a
        raise MetricError(f"{v} outside the image of the order bijection")

    @property
    def spectral(self) -> set[Fraction]:
        return {b for _, b in self.xi}


def choose_sigma(s: DistanceSet) -> SigmaChoice:
    """Deterministic one-block spectrum inside (1, 2) for a base set.

    With n+1 base values, positive targets are 1 + i/(2n+4); the two extra
    levels continue the ladder.  Any positive triple from (1, 2) is metric,
    so the result is compact with a single nontrivial block.
    """
    n = len(s) - 1
    den = 2 * n + 4
    sigma_vals = [Fraction(0)] + [1 + Fraction(i, den) for i in range(1, n + 1)]
    eps = 1 + Fraction(n + 1, den)
    zeta = 1 + Fraction(n + 2, den)
    sigma = DistanceSet(tuple(sigma_vals + [eps, zeta]))
    bp = blocks(sigma)
    assert len(bp.nontrivial) == 1, "target spectrum must be one-block"
    compact, _ = is_compact(sigma)
    assert compact
    xi = tuple(zip(s.values, sigma_vals))
    return SigmaChoice(s, sigma, xi, eps, zeta)


@dataclass(frozen=True)
class StarSpace:
    """A base space together with one added point per similarity class.

    ``space`` is the transformed metric space over the one-block spectrum;
    base points keep their indices, class points follow in class order.
    """

    space: FinMetricSpace
    base_size: int
    classes: tuple[tuple[int, ...], ...]
    choice: SigmaChoice

    @property
    def class_points(self) -> tuple[int, ...]:
        return tuple(range(self.base_size, self.base_size + len(self.classes)))


def star_transform(m: FinMetricSpace, choice: SigmaChoice | None = None
                   ) -> StarSpace:
    """Adjoin one point per similarity class at a fresh level.

    Base distances map through the order bijection; each point sits at the
    first extra level from its own class point and at the second from every
    other class point; class points sit at the image of the least value of
    the block their classes' distance falls in.  Well-definedness of that
    last line is validated explicitly.
    """
    s = m.dset
    compact, _ = is_compact(s)
    if not compact:
        raise MetricError("star transform requires a compact distance set")
    if len(blocks(s).nontrivial) < 2:
        raise MetricError("star transform requires at least two nontrivial blocks")
    if choice is None:
        choice = choose_sigma(s)
    elif choice.base != s:
        raise MetricError("sigma choice built for a different distance set")
    classes = sim_partition(m)
    bp = blocks(s)

    def block_min(v: Fraction) -> Fraction:
        return bp.blocks[bp.block_index(v)][0]

    # the class-to-class distance must not depend on representatives
    for c1, c2 in itertools.combinations(classes, 2):
        mins = {block_min(m.d[x][y]) for x in c1 for y in c2}
        if len(mins) != 1:
            raise IntegrityError("class distance not well defined; "
                                 "set is not compact or space is corrupt")

    n = m.size
    k = len(classes)
    class_of = {}
    for ci, cls in enumerate(classes):
        for x in cls:
            class_of[x] = ci
    size = n + k
    dd = [[Fraction(0)] * size for _ in range(size)]
    for x in range(n):
        for y in range(x + 1, n):
            dd[x][y] = dd[y][x] = choice.forward(m.d[x][y])
    for x in range(n):
        for ci in range(k):
            v = choice.eps if class_of[x] == ci else choice.zeta
            dd[x][n + ci] = dd[n + ci][x] = v
    for ci in range(k):
        for cj in range(ci + 1, k):
            rep_i, rep_j = classes[ci][0], classes[cj][0]
            v = choice.forward(block_min(m.d[rep_i][rep_j]))
            dd[n + ci][n + cj] = dd[n + cj][n + ci] = v

    space = FinMetricSpace(choice.sigma, tuple(tuple(row) for row in dd))
    return StarSpace(space, n, classes, choice)


def star_embed(f: Sequence[int], star_src: StarSpace, star_dst: StarSpace
               ) -> tuple[int, ...]:
    """Lift an isometric embedding of base spaces to the star spaces.

    Base points map through ``f``; each class point maps to the class point
    of its image.  The lift is validated isometric, and it is functorial:
    lifting a composite equals composing the lifts.
    """
    if star_src.choice.sigma != star_dst.choice.sigma:
        raise MetricError("star spaces use different spectra")
    n = star_src.base_size
    f = tuple(f)
    if len(f) != n:
        raise MetricError("embedding not defined on the whole base")
    dst_class_of = {}
    for ci, cls in enumerate(star_dst.classes):
        for x in cls:
            dst_class_of[x] = ci
    lifted = list(f)
    for cls in star_src.classes:
        target_classes = {dst_class_of[f[x]] for x in cls}
        if len(target_classes) != 1:
            raise MetricError("map does not respect similarity classes")
        lifted.append(star_dst.base_size + target_classes.pop())
    result = tuple(lifted)
    _check_isometric_map(star_src.space, star_dst.space, result, "star lift")
    return result


def recover_quotient_space(w: FinMetricSpace, w0: Sequence[int],
                           choice: SigmaChoice
                           ) -> tuple[FinMetricSpace, tuple[int, ...]]:
    """Invert the star encoding: strip the designated class points.

    Every remaining point must be linked to exactly one class point at the
    first extra level; those links partition the remainder.  Distances pull
    back through the order bijection where spectral, fall back to the class
    representatives' pulled-back distance across classes, and flatten to
    the least positive base value within a class.  Returns the base-set
    space and the kept point labels of ``w``.

    Validated afterwards: the link partition coincides with the recovered
    space's own similarity classes, and the least block value of every
    cross-class distance agrees with the pulled-back distance of the two
    class points.  (The class points record block minima, so a literal
    span check against their restriction would reject legitimate inputs
    whose cross distances are not minimal in their blocks.)
    """
    w0 = tuple(w0)
    if len(set(w0)) != len(w0) or any(not 0 <= x < w.size for x in w0):
        raise MetricError("designated class points must be distinct and in range")
    rest = tuple(x for x in range(w.size) if x not in set(w0))
    eps = choice.eps
    owner: dict[int, int] = {}
    for x in rest:
        links = [i for i, u in enumerate(w0) if w.d[x][u] == eps]
        if len(links) != 1:
            raise IntegrityError(
                f"point {x} has {len(links)} class links; expected exactly 1")
        owner[x] = links[0]

    spectral = choice.spectral
    s1 = choice.base.s1

    def pull(x: int, y: int) -> Fraction:
        v = w.d[x][y]
        if v in spectral:
            return choice.backward(v)
        if owner[x] != owner[y]:
            cross = w.d[w0[owner[x]]][w0[owner[y]]]
            if cross not in spectral:
                raise IntegrityError("class points at a non-spectral distance")
            return choice.backward(cross)
        return s1

    n = len(rest)
    dd = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            dd[i][j] = dd[j][i] = pull(rest[i], rest[j])
    space = FinMetricSpace(choice.base, tuple(tuple(row) for row in dd))

    # the link partition must be the recovered space's own class structure
    position = {p: i for i, p in enumerate(rest)}
    link_classes = {frozenset(position[x] for x in rest if owner[x] == i)
                    for i in range(len(w0))}
    sim_classes = {frozenset(c) for c in sim_partition(space)}
    if link_classes != sim_classes:
        raise IntegrityError("class links disagree with the recovered "
                             "similarity classes")

    # cross-class distances must flatten to the class points' pullback
    bp = blocks(choice.base)
    for x in rest:
        for y in rest:
            if x != y and owner[x] != owner[y]:
                cross = w.d[w0[owner[x]]][w0[owner[y]]]
                if cross not in spectral:
                    raise IntegrityError("class points at a non-spectral distance")
                v = space.d[position[x]][position[y]]
                if bp.blocks[bp.block_index(v)][0] != choice.backward(cross):
                    raise IntegrityError("cross-class distance outside the "
                                         "block its class points record")
    return space, rest


# ---------------------------------------------------------------------------
# ultrametric rescaling and the one-block graph encoding


def is_ultrametric(m: FinMetricSpace) -> bool:
    n = m.size
    return all(m.d[x][z] <= max(m.d[x][y], m.d[y][z])
               for x in range(n) for y in range(n) for z in range(n))


def rescale(m: FinMetricSpace, phi: Sequence[tuple] | dict,
            target: DistanceSet) -> FinMetricSpace:
    """Push an ultrametric space through an order bijection of value sets.

    General metric spaces are rejected: monotone relabeling preserves the
    ultrametric inequality but not triangle inequalities.
    """
    if not is_ultrametric(m):
        raise MetricError("rescaling is only valid for ultrametric spaces")
    pairs = sorted(phi.items()) if isinstance(phi, dict) else sorted(
        (_frac(a), _frac(b)) for a, b in phi)
    src = [a for a, _ in pairs]
    dst = [b for _, b in pairs]
    if tuple(src) != m.dset.values or tuple(dst) != target.values:
        raise MetricError("map is not an order bijection between the sets")
    table = dict(pairs)
    out = FinMetricSpace(target, tuple(
        tuple(table[v] for v in row) for row in m.d))
    assert is_ultrametric(out)
    return out


def metric_to_kgraph(m: FinMetricSpace) -> FinStructure:
    """Encode a one-block space as a complete edge-colored graph.

    Pairs at the i-th value of the single nontrivial block go into the i-th
    edge relation; isometric embeddings and colored-graph embeddings are
    then literally the same maps.
    """
    bp = blocks(m.dset)
    if len(bp.nontrivial) != 1:
        raise MetricError("graph encoding needs exactly one nontrivial block")
    palette = bp.nontrivial[0]
    sig = Signature.make(*[(f"E{i + 1}", 2, TAG_SYMMETRIC)
                           for i in range(len(palette))])
    rels: list[set] = [set() for _ in palette]
    index = {v: i for i, v in enumerate(palette)}
    for x in range(m.size):
        for y in range(m.size):
            if x != y:
                rels[index[m.d[x][y]]].add((x, y))
    return FinStructure(sig, m.size, tuple(frozenset(r) for r in rels))


# ---------------------------------------------------------------------------
# JSON I/O


def _frac_str(v: Fraction) -> str | int:
    return int(v) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def metric_to_dict(m: FinMetricSpace) -> dict:
    return {
        "set": [_frac_str(v) for v in m.dset.values],
        "d": [[_frac_str(v) for v in row] for row in m.d],
    }


def metric_to_json(m: FinMetricSpace) -> str:
    return json.dumps(metric_to_dict(m), sort_keys=True)


def metric_from_dict(doc: dict) -> FinMetricSpace:
    return FinMetricSpace.make(doc["set"], doc["d"])


def metric_from_json(text: str) -> FinMetricSpace:
    return metric_from_dict(json.loads(text))
