"""Finite tournaments as immutable, bit-packed total antisymmetric relations.

A tournament on vertices 0..n-1 stores one out-neighbour bitmask per vertex,
so arc queries, whole-row domination tests and subset scans are single word
operations for n <= 63 and stay cheap beyond that (Python ints).

Vertex sets are plain ints used as bitmasks.  ``vset``/``members`` convert
between masks and vertex collections; every set-valued argument in this
package accepts either form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional, Sequence, Union

Mask = int
VertexSetLike = Union[int, Iterable[int]]


class TournamentError(ValueError):
    """Base class for validation failures in this package."""


class SelfLoopError(TournamentError):
    pass


class VertexRangeError(TournamentError):
    pass


class DuplicatePairError(TournamentError):
    pass


class MissingPairError(TournamentError):
    pass


class NotAnArcError(TournamentError):
    pass


class EmptyVertexSetError(TournamentError):
    pass


class CapExceededError(TournamentError):
    """A configured search/enumeration cap was exceeded."""


def vset(vertices: Iterable[int]) -> Mask:
    """Bitmask of a collection of vertices."""
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: Mask) -> tuple[int, ...]:
    """Vertices of a bitmask, ascending."""
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def as_mask(s: VertexSetLike) -> Mask:
    return s if isinstance(s, int) else vset(s)


def popcount(mask: Mask) -> int:
    return mask.bit_count()


class Tournament:
    """Immutable tournament: every pair of distinct vertices has exactly one arc.

    ``rows[i]`` is the out-neighbour mask of vertex ``i``; totality and
    antisymmetry are invariants of the representation and are enforced by the
    constructors.
    """

    __slots__ = ("n", "rows", "_hash")

    def __init__(self, n: int, rows: Sequence[int], _trusted: bool = False):
        if not _trusted:
            rows = tuple(rows)
            if n < 1:
                raise TournamentError("tournament needs at least one vertex")
            if len(rows) != n:
                raise TournamentError("row count does not match vertex count")
            full = (1 << n) - 1
            for i in range(n):
                if rows[i] & (1 << i):
                    raise SelfLoopError(f"self-loop at vertex {i}")
                if rows[i] & ~full:
                    raise VertexRangeError(f"row {i} mentions out-of-range vertices")
            for i in range(n):
                for j in range(i + 1, n):
                    ij = (rows[i] >> j) & 1
                    ji = (rows[j] >> i) & 1
                    if ij and ji:
                        raise DuplicatePairError(f"both directions stored for {{{i},{j}}}")
                    if not ij and not ji:
                        raise MissingPairError(f"no arc stored for {{{i},{j}}}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "rows", tuple(rows))
        object.__setattr__(self, "_hash", hash((n, self.rows)))

    def __setattr__(self, *_):
        raise AttributeError("Tournament is immutable")

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Tournament)
            and self.n == other.n
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Tournament.from_code({self.n}, {self.code()})"

    # -- constructors ------------------------------------------------------

    @staticmethod
    def from_arcs(n: int, arcs: Iterable[tuple[int, int]]) -> "Tournament":
        """Build from an explicit arc list covering every unordered pair once."""
        if n < 1:
            raise TournamentError("tournament needs at least one vertex")
        rows = [0] * n
        seen = [0] * n
        for x, y in arcs:
            if not (0 <= x < n and 0 <= y < n):
                raise VertexRangeError(f"arc ({x},{y}) out of range for n={n}")
            if x == y:
                raise SelfLoopError(f"self-loop at vertex {x}")
            lo, hi = (x, y) if x < y else (y, x)
            if seen[lo] & (1 << hi):
                raise DuplicatePairError(f"pair {{{lo},{hi}}} covered twice")
            seen[lo] |= 1 << hi
            rows[x] |= 1 << y
        for i in range(n):
            for j in range(i + 1, n):
                if not (seen[i] >> j) & 1:
                    raise MissingPairError(f"pair {{{i},{j}}} has no arc")
        return Tournament(n, rows, _trusted=True)

    @staticmethod
    def from_code(n: int, code: int) -> "Tournament":
        """Build from the packed pair-bit code.

        Bit b of ``code`` corresponds to the b-th pair (i,j), i<j, in
        lexicographic order; a set bit means the arc i->j.
        """
        if n < 1:
            raise TournamentError("tournament needs at least one vertex")
        npairs = n * (n - 1) // 2
        if code < 0 or code >> npairs:
            raise TournamentError("code out of range")
        rows = [0] * n
        b = 0
        for i in range(n):
            for j in range(i + 1, n):
                if (code >> b) & 1:
                    rows[i] |= 1 << j
                else:
                    rows[j] |= 1 << i
                b += 1
        return Tournament(n, rows, _trusted=True)

    @staticmethod
    def from_out_masks(rows: Sequence[int]) -> "Tournament":
        return Tournament(len(rows), rows)

    # -- basic queries -----------------------------------------------------

    def arc(self, x: int, y: int) -> bool:
        """True iff x -> y."""
        return bool((self.rows[x] >> y) & 1)

    def out_mask(self, x: int) -> Mask:
        return self.rows[x]

    def in_mask(self, x: int) -> Mask:
        full = ((1 << self.n) - 1) & ~(1 << x)
        return full & ~self.rows[x]

    def out_degree(self, x: int) -> int:
        return self.rows[x].bit_count()

    def in_degree(self, x: int) -> int:
        return self.n - 1 - self.out_degree(x)

    def arcs(self) -> Iterator[tuple[int, int]]:
        for x in range(self.n):
            row = self.rows[x]
            while row:
                low = row & -row
                yield (x, low.bit_length() - 1)
                row ^= low
    def full_mask(self) -> Mask:
        return (1 << self.n) - 1

    def code(self) -> int:
        """Packed pair-bit code, inverse of :meth:`from_code`."""
        c = 0
        b = 0
        for i in range(self.n):
            for j in range(i + 1, self.n):
                if (self.rows[i] >> j) & 1:
                    c |= 1 << b
                b += 1
        return c


# -- elementary maps -------------------------------------------------------


def reverse(t: Tournament) -> Tournament:
    """Flip every arc."""
    return Tournament(t.n, tuple(t.in_mask(v) for v in range(t.n)), _trusted=True)


def restrict(t: Tournament, s: VertexSetLike) -> Tournament:
    """Induced tournament on ``s``.

    Vertex k of the result is the k-th smallest member of ``s``; use
    :func:`restrict_with_vertices` when the re-indexing itself is needed.
    """
    return restrict_with_vertices(t, s)[0]


def restrict_with_vertices(t: Tournament, s: VertexSetLike) -> tuple[Tournament, tuple[int, ...]]:
    mask = as_mask(s)
    if mask == 0:
        raise EmptyVertexSetError("cannot restrict to the empty set")
    verts = members(mask)
    index = {v: k for k, v in enumerate(verts)}
    rows = []
    for v in verts:
        row = 0
        sub = t.rows[v] & mask
        while sub:
            low = sub & -sub
            row |= 1 << index[low.bit_length() - 1]
            sub ^= low
        rows.append(row)
    return Tournament(len(verts), rows, _trusted=True), verts


# -- predicates ------------------------------------------------------------


def is_transitive(t: Tournament) -> bool:
    """No 3-cycle; equivalently the out-degrees are a permutation of 0..n-1."""
    return sorted(t.out_degree(v) for v in range(t.n)) == list(range(t.n))


def is_regular(t: Tournament) -> bool:
    """In-degree equals out-degree at every vertex."""
    return all(2 * t.out_degree(v) == t.n - 1 for v in range(t.n))


def terminal_point(t: Tournament) -> Optional[int]:
    """The vertex with empty out-set, if any (there is at most one)."""
    for v in range(t.n):
        if t.rows[v] == 0:
            return v
    return None


def initial_point(t: Tournament) -> Optional[int]:
    for v in range(t.n):
        if t.in_mask(v) == 0:
            return v
    return None


def arc_in_3cycle(t: Tournament, x: int, y: int) -> bool:
    """True iff the arc x->y closes into a 3-cycle {x, y, z}."""
    if not t.arc(x, y):
        raise NotAnArcError(f"({x},{y}) is not an arc")
    return bool(t.rows[y] & t.in_mask(x))


def is_arc_cyclic(t: Tournament) -> bool:
    for x in range(t.n):
        row = t.rows[x]
        in_x = t.in_mask(x)
        while row:
            low = row & -row
            y = low.bit_length() - 1
            if not t.rows[y] & in_x:
                return False
            row ^= low
    return True


def is_point_cyclic(t: Tournament) -> bool:
    for v in range(t.n):
        in_v = t.in_mask(v)
        row = t.rows[v]
        hit = False
        while row:
            low = row & -row
            if t.rows[low.bit_length() - 1] & in_v:
                hit = True
                break
            row ^= low
        if not hit:
            return False
    return True


def is_arc_cyclic_subset(t: Tournament, s: VertexSetLike) -> bool:
    """Every arc with both ends in ``s`` lies on a 3-cycle of ``t``.

    The third vertex may be anywhere in ``t``.
    """
    mask = as_mask(s)
    for x in members(mask):
        row = t.rows[x] & mask
        in_x = t.in_mask(x)
        while row:
            low = row & -row
            if not t.rows[low.bit_length() - 1] & in_x:
                return False
            row ^= low
    return True


def is_irreducible(t: Tournament) -> bool:
    """Every vertex pair is jointly dominated or jointly dominating.

    For each pair a != b some c has arcs c->a, c->b or a->c, b->c.
    """
    for a in range(t.n):
        in_a, out_a = t.in_mask(a), t.rows[a]
        for b in range(a + 1, t.n):
            if not ((in_a & t.in_mask(b)) | (out_a & t.rows[b])):
                return False
    return True


def is_spanning_set(t: Tournament, s: VertexSetLike) -> bool:
    """``s`` meets the out-set and the in-set of every vertex."""
    mask = as_mask(s)
    return all(t.rows[x] & mask and t.in_mask(x) & mask for x in range(t.n))


def enumerate_spanning_sets(
    t: Tournament, size: int, cap: int = 10**7
) -> list[Mask]:
    """All spanning subsets of the given size, as masks in colex order."""
    n = t.n
    if size < 0 or size > n:
        return []
    results: list[Mask] = []
    seen = 0

    # colex: choose vertices in increasing order, largest-index last
    def grow(mask: Mask, nxt: int, k: int):
        nonlocal seen
        if k == size:
            seen += 1
            if seen > cap:
                raise CapExceededError(f"more than {cap} candidate subsets")
            if is_spanning_set(t, mask):
                results.append(mask)
            return
        # not enough vertices left to finish
        for v in range(nxt, n - (size - k) + 1):
            m2 = mask | (1 << v)
            # domination prune: a vertex whose out-set (or in-set) cannot meet
            # the final set even if we take everything from v+1 up is hopeless
            tail = ((1 << n) - 1) ^ ((1 << (v + 1)) - 1)
            avail = m2 | tail
            ok = True
            for x in range(n):
                if not (t.rows[x] & avail) or not (t.in_mask(x) & avail):
                    ok = False
                    break
            if ok:
                grow(m2, v + 1, k + 1)

    grow(0, 0, 0)
    return sorted(results)  # ascending masks = colex order on subsets


# -- quotient maps ---------------------------------------------------------


@dataclass(frozen=True)
class QuotientMap:
    """Total assignment of source vertices onto target vertices.

    Valid when surjective and arc-preserving between distinct images.
    """

    source: Tournament
    target: Tournament
    assignment: tuple[int, ...]

    def __call__(self, v: int) -> int:
        return self.assignment[v]

    def fiber(self, y: int) -> Mask:
        m = 0
        for v, im in enumerate(self.assignment):
            if im == y:
                m |= 1 << v
        return m


def is_quotient_map(q: QuotientMap) -> bool:
    if len(q.assignment) != q.source.n:
        return False
    if any(not 0 <= y < q.target.n for y in q.assignment):
        return False
    if len(set(q.assignment)) != q.target.n:
        return False
    for x, y in q.source.arcs():
        ix, iy = q.assignment[x], q.assignment[y]
        if ix != iy and not q.target.arc(ix, iy):
            return False
    return True


def identity_map(t: Tournament) -> QuotientMap:
    return QuotientMap(t, t, tuple(range(t.n)))


# -- strong components -----------------------------------------------------


def strong_components(t: Tournament) -> tuple[tuple[int, ...], ...]:
    """Strongly connected components in the condensation order.

    Every inter-component arc runs from an earlier to a later component; in a
    tournament the condensation is a linear order, so the result is unique.
    """
    n = t.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[tuple[int, ...]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        # iterative Tarjan
        work = [(root, 0, t.rows[root])]
        while work:
            v, _, row = work[-1]
            if index[v] == -1:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            advanced = False
            while row:
                lowbit = row & -row
                w = lowbit.bit_length() - 1
                row ^= lowbit
                if index[w] == -1:
                    work[-1] = (v, 0, row)
                    work.append((w, 0, t.rows[w]))
                    advanced = True
                    break
                if on_stack[w]:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                pv = work[-1][0]
                low[pv] = min(low[pv], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == v:
                        break
                comps.append(tuple(sorted(comp)))
    # order components source-first: A before B iff A -> B
    def beats(a: tuple[int, ...], b: tuple[int, ...]) -> bool:
        return t.arc(a[0], b[0])

    ordered = sorted(comps, key=lambda c: sum(beats(c, d) for d in comps), reverse=True)
    return tuple(ordered)


# -- isomorphism search ----------------------------------------------------


def cycle3_counts(t: Tournament) -> tuple[int, ...]:
    """Number of 3-cycles through each vertex."""
    out = []
    for v in range(t.n):
        in_v = t.in_mask(v)
        row = t.rows[v]
        c = 0
        while row:
            low = row & -row
            c += (t.rows[low.bit_length() - 1] & in_v).bit_count()
            row ^= low
        out.append(c)
    return tuple(out)


def _invariant_classes(t: Tournament) -> tuple[tuple[int, int], ...]:
    cyc = cycle3_counts(t)
    return tuple((t.out_degree(v), cyc[v]) for v in range(t.n))


def find_isomorphism(
    t1: Tournament, t2: Tournament, cap: int = 12
) -> Optional[tuple[int, ...]]:
    """Arc-preserving bijection t1 -> t2, or None.

    Backtracking with out-degree / 3-cycle-count pruning; intended for
    leaf-sized inputs.  Larger instances should go through classifier
    certificates.
    """
    for iso in _isomorphisms(t1, t2, cap):
        return iso
    return None


def automorphisms(t: Tournament, cap: int = 12) -> list[tuple[int, ...]]:
    """All automorphisms of ``t`` (the identity is always present)."""
    return list(_isomorphisms(t, t, cap))


def _isomorphisms(
    t1: Tournament, t2: Tournament, cap: int = 12
) -> Iterator[tuple[int, ...]]:
    if max(t1.n, t2.n) > cap:
        raise CapExceededError(f"isomorphism search capped at n={cap}")
    if t1.n != t2.n:
        return
    inv1, inv2 = _invariant_classes(t1), _invariant_classes(t2)
    if sorted(inv1) != sorted(inv2):
        return
    n = t1.n
    # map rare invariant classes first
    order = sorted(range(n), key=lambda v: (inv1.count(inv1[v]), v))
    cands = [[w for w in range(n) if inv2[w] == inv1[v]] for v in order]

    mapping = [-1] * n
    used = [False] * n

    def extend(k: int) -> Iterator[tuple[int, ...]]:
        if k == n:
            yield tuple(mapping)
            return
        v = order[k]
        for w in cands[k]:
            if used[w]:
                continue
            ok = True
            for j in range(k):
                u = order[j]
                if t1.arc(v, u) != t2.arc(w, mapping[u]):
                    ok = False
                    break
            if ok:
                mapping[v] = w
                used[w] = True
                yield from extend(k + 1)
                used[w] = False
                mapping[v] = -1

    yield from extend(0)


# -- tiny fixtures used everywhere ------------------------------------------


def trivial() -> Tournament:
    return Tournament(1, (0,), _trusted=True)


def arc_tournament() -> Tournament:
    return Tournament.from_arcs(2, [(0, 1)])


def three_cycle() -> Tournament:
    return Tournament.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


def transitive_order(n: int) -> Tournament:
    """The linear order 0 -> 1 -> ... -> n-1 (0 beats everyone)."""
    rows = [0] * n
    for i in range(n):
        for j in range(i + 1, n):
            rows[i] |= 1 << j
    return Tournament(n, rows, _trusted=True)


def all_tournaments(n: int) -> Iterator[Tournament]:
    """All labeled tournaments on n vertices, by increasing code."""
    for code in range(1 << (n * (n - 1) // 2)):
        yield Tournament.from_code(n, code)
