"""Oligochromatic Ramsey arrows on finite hom-sets.

The arrow ``C -> (B)^A_{k,t}`` holds when every k-coloring of the embedding
set hom(A, C) admits some w in hom(B, C) whose composed copies of A use at
most t colors.  :func:`check_arrow` decides this by a backtracking search
for a *bad* coloring (one defeating every w) with constraint propagation;
:func:`exhaustive_min_degree` is the independent brute-force oracle used to
cross-check it on small instances.

Everything here works on hom-sets (embeddings), never on unordered
"copies"; with nontrivial automorphisms those counts differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import inf

import numpy as np

from .structures import (
    TAG_LINEAR,
    Embedding,
    FinStructure,
    Signature,
    SignatureMismatchError,
    StructureError,
    enumerate_embeddings,
    hom_nonempty,
    reduct,
)

DEFAULT_BUDGET = 10 ** 8


class InternalConsistencyError(RuntimeError):
    """A composed embedding fell outside the coloring's base hom-set."""


class EmptyHomSetError(ValueError):
    """An operation requires a nonempty hom-set."""


@dataclass(frozen=True)
class Coloring:
    """A k-coloring of an enumerated hom-set hom(A, C)."""

    base_hom: tuple[Embedding, ...]
    k: int
    assignment: tuple[int, ...]
    _index: dict = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self) -> None:
        if self.k < 1:
            raise ValueError("k must be >= 1")
        if len(self.assignment) != len(self.base_hom):
            raise ValueError("assignment not total on base_hom")
        if any(not (0 <= c < self.k) for c in self.assignment):
            raise ValueError("color out of range")
        object.__setattr__(self, "_index",
                           {e.map: i for i, e in enumerate(self.base_hom)})

    def color_of_map(self, m: tuple[int, ...]) -> int:
        try:
            return self.assignment[self._index[m]]
        except KeyError:
            raise InternalConsistencyError(f"map {m} not in base hom-set") from None

    def colors_used(self) -> set[int]:
        return set(self.assignment)


@dataclass(frozen=True)
class ArrowVerdict:
    """Outcome of an arrow check.

    ``holds`` is ``True``/``False`` when decided and ``None`` when the
    search exceeded its node budget; "undecided within budget" is a
    first-class outcome, never a guessed boolean.
    """

    holds: bool | None
    witness: Coloring | None = None
    nodes: int = 0

    @property
    def decided(self) -> bool:
        return self.holds is not None


def _hom_for_pattern(a: FinStructure, x: FinStructure) -> tuple[Embedding, ...]:
    """hom(A, X), allowing A over a named sub-signature of X.

    When A's signature is a subset of X's (matching names, arities and
    tags), embeddings are taken into the corresponding reduct of X.  This
    is what lets a plain 2-chain be colored inside a two-order permutation.
    """
    if a.signature == x.signature:
        return enumerate_embeddings(a, x)
    x_names = set(x.signature.names)
    if all(s.name in x_names and x.signature.spec(s.name) == s
           for s in a.signature.relations):
        return enumerate_embeddings(a, reduct(x, a.signature.names))
    raise SignatureMismatchError(
        f"pattern signature {a.signature.names} not a reduct of {x.signature.names}")


def oligo_count(chi: Coloring, w: Embedding, a: FinStructure) -> int:
    """Number of distinct colors on ``{chi(w . u) : u in hom(A, B)}``."""
    hom_ab = _hom_for_pattern(a, w.source)
    colors = {chi.color_of_map(tuple(w.map[v] for v in u.map)) for u in hom_ab}
    return len(colors)


def oligo_search(chi: Coloring, b: FinStructure, a: FinStructure,
                 c: FinStructure, floor: int | None = None
                 ) -> tuple[int, Embedding]:
    """Exact minimum of :func:`oligo_count` over hom(B, C), with argmin.

    Scans every w in canonical order; exits early once the count reaches 1
    or the supplied ``floor``.
    """
    hom_bc = enumerate_embeddings(b, c)
    if not hom_bc:
        raise EmptyHomSetError("hom(B, C) is empty: no witness can exist")
    best: tuple[int, Embedding] | None = None
    stop_at = 1 if floor is None else max(1, floor)
    for w in hom_bc:
        count = oligo_count(chi, w, a)
        if best is None or count < best[0]:
            best = (count, w)
            if count <= stop_at:
                break
    assert best is not None
    return best


def _arrow_instance(c: FinStructure, b: FinStructure, a: FinStructure):
    """Base hom-set plus, per w in hom(B, C), the indices it composes onto."""
    hom_ac = _hom_for_pattern(a, c)
    hom_bc = enumerate_embeddings(b, c)
    hom_ab = _hom_for_pattern(a, b)
    index = {e.map: i for i, e in enumerate(hom_ac)}
    groups: list[tuple[int, ...]] = []
    for w in hom_bc:
        idxs = []
        for u in hom_ab:
            m = tuple(w.map[v] for v in u.map)
            if m not in index:
                raise InternalConsistencyError(f"composite {m} missing from hom(A, C)")
            idxs.append(index[m])
        groups.append(tuple(sorted(set(idxs))))
    return hom_ac, hom_bc, groups


def check_arrow(c: FinStructure, b: FinStructure, a: FinStructure,
                k: int, t: int, budget: int = DEFAULT_BUDGET,
                symmetry_reduction: bool = False) -> ArrowVerdict:
    """Decide ``C -> (B)^A_{k,t}``.

    Searches for a bad coloring by depth-first assignment over hom(A, C),
    most-constraining element first, colors in canonical restricted-growth
    order (color permutations never change badness, so canonical colorings
    suffice).  A branch is pruned as soon as some w can no longer exceed t
    colors, because every completion of the branch is then good; reaching a
    full assignment therefore yields a bad coloring, and exhausting the
    tree proves the arrow.  The returned witness is the first bad coloring
    in this fixed search order, so verdicts are deterministic.

    With ``symmetry_reduction`` the search additionally discards branches
    whose partial coloring is provably not minimal in its orbit under the
    automorphisms of C acting on hom(A, C).  Badness is orbit-invariant,
    and the minimum of a bad orbit under the combined color-relabeling and
    automorphism action survives both prunings, so the verdict is
    unchanged; the witness may differ from the unreduced one.
    """
    if k < 1 or t < 1:
        raise ValueError("k and t must be >= 1")
    hom_ac, hom_bc, groups = _arrow_instance(c, b, a)
    n = len(hom_ac)
    if not hom_bc:
        # no witness w can exist, so every coloring is bad (even the empty
        # one when there is nothing to color); report the least
        return ArrowVerdict(holds=False, witness=Coloring(hom_ac, k, (0,) * n),
                            nodes=0)
    if n == 0:
        # nothing to color and a witness exists: the arrow holds vacuously
        return ArrowVerdict(holds=True, nodes=0)
    # a group that can never exceed t colors makes the arrow hold outright
    if any(min(len(g), k) <= t for g in groups):
        return ArrowVerdict(holds=True, nodes=0)

    membership: list[list[int]] = [[] for _ in range(n)]
    for gi, g in enumerate(groups):
        for e in g:
            membership[e].append(gi)
    order = sorted(range(n), key=lambda e: (-len(membership[e]), e))

    # automorphisms of C permute hom(A, C); expressed in search positions
    # they drive the orbit-minimality pruning
    position_perms: list[tuple[int, ...]] = []
    if symmetry_reduction:
        from .structures import automorphisms

        index = {e.map: i for i, e in enumerate(hom_ac)}
        searchpos = {e: i for i, e in enumerate(order)}
        for alpha in automorphisms(c):
            perm = tuple(
                searchpos[index[tuple(alpha.map[v] for v in hom_ac[order[i]].map)]]
                for i in range(n))
            if perm != tuple(range(n)):
                position_perms.append(perm)

    def orbit_prunable(depth: int, seq: list[int]) -> bool:
        """True when some automorphism mate of the assigned prefix is
        lexicographically smaller, deciding every completion."""
        for perm in position_perms:
            for i in range(depth + 1):
                j = perm[i]
                if j > depth:
                    break  # mate undefined here; cannot decide
                if seq[j] < seq[i]:
                    return True
                if seq[j] > seq[i]:
                    break
        return False

    unassigned = [len(g) for g in groups]
    distinct = [0] * len(groups)
    color_mask = [0] * len(groups)
    colors = [-1] * n
    seq = [-1] * n  # same assignment in search-position indexing
    nodes = 0
    found: tuple[int, ...] | None = None

    def search(pos: int, max_used: int) -> bool | None:
        """True: bad coloring found; False: subtree exhausted; None: budget."""
        nonlocal nodes, found
        if pos == n:
            found = tuple(colors)
            return True
        e = order[pos]
        limit = min(max_used + 1, k - 1)
        for col in range(limit + 1):
            nodes += 1
            if nodes > budget:
                return None
            bit = 1 << col
            touched: list[tuple[int, bool]] = []
            dead = False
            for gi in membership[e]:
                unassigned[gi] -= 1
                fresh = not (color_mask[gi] & bit)
                if fresh:
                    color_mask[gi] |= bit
                    distinct[gi] += 1
                touched.append((gi, fresh))
                d = distinct[gi]
                if d + min(unassigned[gi], k - d) <= t:
                    dead = True
            if not dead and position_perms:
                seq[pos] = col
                dead = orbit_prunable(pos, seq)
            result: bool | None = False
            if not dead:
                colors[e] = col
                seq[pos] = col
                result = search(pos + 1, max(max_used, col))
                colors[e] = -1
            seq[pos] = -1
            for gi, fresh in touched:
                unassigned[gi] += 1
                if fresh:
                    color_mask[gi] &= ~bit
                    distinct[gi] -= 1
            if result is not False:
                return result
        return False

    result = search(0, -1)
    if result is None:
        return ArrowVerdict(holds=None, nodes=nodes)
    if result:
        assert found is not None
        return ArrowVerdict(holds=False, witness=Coloring(hom_ac, k, found),
                            nodes=nodes)
    return ArrowVerdict(holds=True, nodes=nodes)


def is_bad_coloring(chi: Coloring, b: FinStructure, a: FinStructure,
                    c: FinStructure, t: int) -> bool:
    """Direct definition check: every w in hom(B, C) exceeds t colors."""
    hom_bc = enumerate_embeddings(b, c)
    return all(oligo_count(chi, w, a) > t for w in hom_bc)


def exhaustive_min_degree(c: FinStructure, b: FinStructure, a: FinStructure,
                          k: int, chunk: int = 1 << 18) -> int | float:
    """Brute-force oracle: max over all k-colorings of the min over w of
    the color count on w's composed copies.

    The arrow ``C -> (B)^A_{k,t}`` holds exactly when ``t >=`` this value.
    Colorings are enumerated as mixed-radix rows (numpy, chunked),
    independently of the pruned search.  Returns 0 when there is nothing to
    color and ``inf`` when no witness w exists.
    """
    hom_ac, hom_bc, groups = _arrow_instance(c, b, a)
    n = len(hom_ac)
    if not hom_bc:
        return inf
    if n == 0 or any(len(g) == 0 for g in groups):
        return 0
    bound = min(min(k, len(g)) for g in groups)
    total = k ** n
    powers = np.array([k ** i for i in range(n - 1, -1, -1)], dtype=np.int64)
    worst = 0
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        rows = np.arange(start, stop, dtype=np.int64)
        digits = ((rows[:, None] // powers[None, :]) % k).astype(np.int8)
        mins: np.ndarray | None = None
        for g in groups:
            cols = digits[:, list(g)]
            cnt = np.zeros(len(rows), dtype=np.int16)
            for col in range(k):
                cnt += (cols == col).any(axis=1)
            mins = cnt if mins is None else np.minimum(mins, cnt)
        assert mins is not None
        worst = max(worst, int(mins.max()))
        if worst >= bound:
            break
    return worst


def exhaustive_check_arrow(c: FinStructure, b: FinStructure, a: FinStructure,
                           k: int, t: int) -> bool:
    """Oracle form of :func:`check_arrow` by full coloring enumeration."""
    return t >= exhaustive_min_degree(c, b, a, k)


def min_degree(c: FinStructure, b: FinStructure, a: FinStructure, k: int,
               budget: int = DEFAULT_BUDGET) -> int | None:
    """Least t with ``C -> (B)^A_{k,t}``; ``None`` if undecided in budget.

    Always at most ``min(k, |hom(A,B)|)``, and 1 when hom(A, B) is empty.
    """
    hom_bc = enumerate_embeddings(b, c)
    if not hom_bc:
        raise EmptyHomSetError("hom(B, C) is empty")
    hom_ab = _hom_for_pattern(a, b)
    cap = max(1, min(k, len(hom_ab)))
    for t in range(1, cap + 1):
        verdict = check_arrow(c, b, a, k, t, budget=budget)
        if verdict.holds is None:
            return None
        if verdict.holds:
            return t
    raise AssertionError("arrow must hold at t = min(k, |hom(A,B)|)")


def two_chain_over(name: str) -> FinStructure:
    """The 2-chain whose single order relation is called ``name``."""
    sig = Signature.make((name, 2, TAG_LINEAR))
    return FinStructure.build(sig, 2, {name: [(0, 1)]})


def sierpinski_coloring(p: FinStructure) -> Coloring:
    """Two-color the 2-chains of a two-order structure by order agreement.

    An embedded pair (x, y) with x below y in the first linear order gets
    color 0 when the second order agrees and color 1 when it reverses.
    Always a 2-coloring, even if only one color occurs.
    """
    linear = [s for s in p.signature.relations if s.tag == TAG_LINEAR]
    if len(linear) != 2:
        raise StructureError("sierpinski_coloring: need exactly two linear orders")
    pattern = two_chain_over(linear[0].name)
    hom = _hom_for_pattern(pattern, p)
    omega = p.rel(linear[1].name)
    assignment = tuple(0 if (u.map[0], u.map[1]) in omega else 1 for u in hom)
    return Coloring(hom, 2, assignment)


def sierpinski_pattern(p: FinStructure) -> FinStructure:
    """The 2-chain over the first linear order of ``p``, for oligo ops."""
    linear = [s for s in p.signature.relations if s.tag == TAG_LINEAR]
    if len(linear) != 2:
        raise StructureError("need exactly two linear orders")
    return two_chain_over(linear[0].name)


def transfer_check(c: FinStructure, d: FinStructure, b: FinStructure,
                   a: FinStructure, k: int, t: int, direction: str,
                   budget: int = DEFAULT_BUDGET) -> bool | None:
    """Verify one transfer implication on a concrete instance.

    direction "a": hom(C, D) nonempty and C -> (B)^A_{k,t} imply
    D -> (B)^A_{k,t}.  direction "b": hom(D, B) nonempty and the same
    premise imply C -> (D)^A_{k,t}.  Returns True when the implication is
    confirmed (vacuously or not), False on a violation, None if undecided.
    """
    if direction == "a":
        if not hom_nonempty(c, d):
            raise EmptyHomSetError("transfer (a): hom(C, D) is empty")
    elif direction == "b":
        if not hom_nonempty(d, b):
            raise EmptyHomSetError("transfer (b): hom(D, B) is empty")
    else:
        raise ValueError("direction must be 'a' or 'b'")

    premise = check_arrow(c, b, a, k, t, budget=budget)
    if premise.holds is None:
        return None
    if not premise.holds:
        return True
    conclusion = (check_arrow(d, b, a, k, t, budget=budget) if direction == "a"
                  else check_arrow(c, d, a, k, t, budget=budget))
    if conclusion.holds is None:
        return None
    return bool(conclusion.holds)
