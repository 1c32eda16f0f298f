"""Tournament-building toolbox: lexicographic products, doubles, attachments,
point additions, and the named finite families used as fixtures."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import (
    Mask,
    QuotientMap,
    Tournament,
    TournamentError,
    VertexSetLike,
    as_mask,
    is_spanning_set,
    members,
)


@dataclass(frozen=True)
class FiberAssignment:
    """A base tournament with one fiber tournament per base vertex."""

    base: Tournament
    fibers: Mapping[int, Tournament]

    def fiber(self, x: int) -> Tournament:
        f = self.fibers.get(x)
        if f is None:
            raise TournamentError(f"no fiber assigned to base vertex {x}")
        return f


def lex_product(fa: FiberAssignment) -> tuple[Tournament, QuotientMap]:
    """Substitute fibers into base vertices.

    Arc (x,y) -> (x',y') iff x -> x' in the base, or x = x' and y -> y' in the
    fiber over x.  Vertices are ordered by base vertex, then fiber vertex; the
    returned map is the first-coordinate projection.
    """
    base = fa.base
    fibers = [fa.fiber(x) for x in range(base.n)]
    offsets = []
    total = 0
    for f in fibers:
        offsets.append(total)
        total += f.n
    rows = [0] * total
    assignment = [0] * total
    for x in range(base.n):
        fx = fibers[x]
        ox = offsets[x]
        for y in range(fx.n):
            assignment[ox + y] = x
            row = 0
            # fiber arcs
            r = fx.rows[y]
            while r:
                low = r & -r
                row |= 1 << (ox + low.bit_length() - 1)
                r ^= low
            # base arcs: whole fiber blocks
            b = base.rows[x]
            while b:
                low = b & -b
                x2 = low.bit_length() - 1
                row |= ((1 << fibers[x2].n) - 1) << offsets[x2]
                b ^= low
            rows[ox + y] = row
    product = Tournament(total, rows, _trusted=True)
    return product, QuotientMap(product, base, tuple(assignment))


def constant_lex(base: Tournament, fiber: Tournament) -> tuple[Tournament, QuotientMap]:
    return lex_product(FiberAssignment(base, {x: fiber for x in range(base.n)}))


def double(t: Tournament) -> Tournament:
    """The 2n+1 point double: hub 0 plus two signed copies of ``t``.

    Vertex order [0, a0-, a0+, a1-, a1+, ...].  For each seed vertex a:
    a- -> a+, a+ -> 0, 0 -> a-; a seed arc a -> b lifts to a+ -> b+,
    a- -> b-, b+ -> a- and b- -> a+.
    """
    n = t.n
    minus = lambda a: 1 + 2 * a
    plus = lambda a: 2 + 2 * a
    arcs = []
    for a in range(n):
        arcs += [(minus(a), plus(a)), (plus(a), 0), (0, minus(a))]
        row = t.rows[a]
        while row:
            low = row & -row
            b = low.bit_length() - 1
            arcs += [
                (plus(a), plus(b)),
                (minus(a), minus(b)),
                (plus(b), minus(a)),
                (minus(b), plus(a)),
            ]
            row ^= low
    return Tournament.from_arcs(2 * n + 1, arcs)


def reduced_double(t: Tournament) -> Tournament:
    """The double with the hub removed (vertices a- = 2a, a+ = 2a+1)."""
    from .core import restrict

    d = double(t)
    return restrict(d, range(1, d.n))


def irreducible_extension(t: Tournament) -> Tournament:
    """Append m (initial), M (terminal), then p to force irreducibility.

    p beats m, M and every seed vertex except the designated x0 = vertex 0,
    which beats p.  Vertex order [seed..., m, M, p].
    """
    n = t.n
    m, big, p = n, n + 1, n + 2
    rows = list(t.rows) + [0, 0, 0]
    seed = (1 << n) - 1
    rows[m] = seed | (1 << big)          # m initial in J1
    for v in range(n):
        rows[v] |= 1 << big              # M terminal in J1
    rows[p] = (1 << m) | (1 << big) | (seed & ~1)
    rows[0] |= 1 << p                    # designated x0 -> p
    return Tournament(n + 3, rows)


def add_dominated_point(t: Tournament, e: VertexSetLike) -> Tournament:
    """One new vertex u with in-set ``e`` and out-set its complement."""
    emask = as_mask(e)
    n = t.n
    u = n
    rows = list(t.rows) + [t.full_mask() & ~emask]
    for v in members(emask):
        rows[v] |= 1 << u
    return Tournament(n + 1, rows)


def add_pair(t: Tournament, e: VertexSetLike) -> Tournament:
    """Two new vertices u, v with u -> v, E -> u -> F and F -> v -> E."""
    emask = as_mask(e)
    fmask = t.full_mask() & ~emask
    n = t.n
    u, v = n, n + 1
    rows = list(t.rows) + [fmask | (1 << v), emask]
    for x in members(emask):
        rows[x] |= 1 << u
    for x in members(fmask):
        rows[x] |= 1 << v
    return Tournament(n + 2, rows)


@dataclass(frozen=True)
class AttachmentSpec:
    """Gluing data: a partition of ``y`` against 2-fold partitions of ``x``.

    ``parts[i]`` is a mask over y's vertices; ``pairs[i] = (E_i, F_i)`` is a
    complementary pair of masks over x's vertices, the E_i pairwise distinct.
    """

    y: Tournament
    x: Tournament
    parts: tuple[Mask, ...]
    pairs: tuple[tuple[Mask, Mask], ...]

    def validate(self) -> None:
        if len(self.parts) != len(self.pairs):
            raise TournamentError("parts and pairs must have equal length")
        cover = 0
        for c in self.parts:
            if c == 0:
                raise TournamentError("empty part in attachment partition")
            if cover & c:
                raise TournamentError("attachment parts overlap")
            cover |= c
        if cover != self.y.full_mask():
            raise TournamentError("attachment parts do not cover y")
        full_x = self.x.full_mask()
        es = set()
        for e, f in self.pairs:
            if (e | f) != full_x or (e & f):
                raise TournamentError("(E,F) is not a 2-fold partition of x")
            es.add(e)
        if len(es) != len(self.pairs):
            raise TournamentError("E_i sets must be pairwise distinct")


def attachment_hypotheses_hold(spec: AttachmentSpec) -> bool:
    """Check the theorem-backed guarantees: >= 2 parts and each
    R cap (F_i x E_i) surjective.  Construction itself is total."""
    if len(spec.parts) < 2:
        return False
    for e, f in spec.pairs:
        if e == 0 or f == 0:
            return False
        for b in members(f):
            if not spec.x.rows[b] & e:
                return False
        for a in members(e):
            if not spec.x.in_mask(a) & f:
                return False
    return True


def attach(spec: AttachmentSpec) -> Tournament:
    """Disjoint union with cross arcs E_i -> C_i and C_i -> F_i.

    Result vertices: x's first (0..|x|-1), then y's.
    """
    spec.validate()
    x, y = spec.x, spec.y
    nx = x.n
    rows = list(x.rows) + [r << nx for r in y.rows]
    for c_mask, (e, f) in zip(spec.parts, spec.pairs):
        for c in members(c_mask):
            rows[nx + c] |= f
            for a in members(e):
                rows[a] |= 1 << (nx + c)
    return Tournament(nx + y.n, rows)


def generalized_reduced_double(t: Tournament, e: VertexSetLike) -> Tournament:
    """Two copies of ``t`` glued along a spanning partition {E, F}.

    Copy t- occupies vertices 0..n-1, copy t+ the rest; the cross arcs are
    E- -> E+ -> F- and F- -> F+ -> E-, the attachment with
    C1 = E+, C2 = F+, (E1,F1) = (E-,F-), (E2,F2) = (F-,E-).
    """
    emask = as_mask(e)
    fmask = t.full_mask() & ~emask
    if not (is_spanning_set(t, emask) and is_spanning_set(t, fmask)):
        raise TournamentError("{E, complement} must be a spanning set partition")
    spec = AttachmentSpec(
        y=t,
        x=t,
        parts=(emask, fmask),
        pairs=((emask, fmask), (fmask, emask)),
    )
    return attach(spec)


# -- named families ----------------------------------------------------------


def n1_interval(a: int, b: int) -> Tournament:
    """Finite window of the near-order N1 on labels a..b.

    Arcs: i+1 -> i, and i -> j exactly when i+1 < j.
    """
    if b < a:
        raise TournamentError("empty interval")
    size = b - a + 1
    rows = [0] * size
    for i in range(size):
        for j in range(i + 1, size):
            if j == i + 1:
                rows[j] |= 1 << i
            else:
                rows[i] |= 1 << j
    return Tournament(size, rows)


def _n_double(
    lo: int,
    hi: int,
    with_infinity: bool,
    plus_beats_plus,
    cross_minus_beats_plus,
) -> Tournament:
    """Common frame for 2N0 / 2N1 windows.

    Labels i in lo..hi give vertices i- (even slots) and i+ (odd slots),
    with + copies carrying the given order, - copies its reverse, cross arcs
    by the given rule, and an optional dominated/dominating infinity vertex.
    """
    if hi < lo:
        raise TournamentError("empty interval")
    count = hi - lo + 1
    n = 2 * count + (1 if with_infinity else 0)
    minus = lambda i: 2 * (i - lo)
    plus = lambda i: 2 * (i - lo) + 1
    rows = [0] * n
    labels = range(lo, hi + 1)
    for i in labels:
        for j in labels:
            if i == j:
                continue
            if plus_beats_plus(i, j):
                rows[plus(i)] |= 1 << plus(j)
                rows[minus(j)] |= 1 << minus(i)
        # cross arcs, including the i- vs i+ pair
        for j in labels:
            if cross_minus_beats_plus(i, j):
                rows[minus(i)] |= 1 << plus(j)
            else:
                rows[plus(j)] |= 1 << minus(i)
    if with_infinity:
        inf = n - 1
        for i in labels:
            rows[plus(i)] |= 1 << inf
            rows[inf] |= 1 << minus(i)
    return Tournament(n, rows)


def two_n0(n: int, with_infinity: bool = False) -> Tournament:
    """Finite window of 2N0 on labels 1..n.

    Within copies: the plain order (reversed on the minus side); cross arcs
    j- -> j+ and j- -> (j+2)+, all other pairs i+ -> j-.
    """
    if n < 1:
        raise TournamentError("need n >= 1")
    return _n_double(
        1,
        n,
        with_infinity,
        plus_beats_plus=lambda i, j: i < j,
        cross_minus_beats_plus=lambda i, j: j == i or j == i + 2,
    )


def two_n1(a: int, b: int, with_infinity: bool = False) -> Tournament:
    """Finite window of 2N1 on labels a..b.

    Within copies: N1 (reversed on the minus side); cross arcs j- -> j+ only,
    all other pairs i+ -> j-.
    """
    return _n_double(
        a,
        b,
        with_infinity,
        plus_beats_plus=lambda i, j: (j == i - 1) or (i + 1 < j),
        cross_minus_beats_plus=lambda i, j: j == i,
    )


def y2() -> Tournament:
    """The 5-point prime fixture with a1=0, a2=1, b1=2, b2=3, c=4.

    Its only arc on no 3-cycle is (a1, a2).
    """
    return Tournament.from_arcs(
        5,
        [(0, 2), (3, 1), (0, 3), (1, 2), (0, 1), (2, 3), (4, 0), (4, 1), (2, 4), (3, 4)],
    )


def cyclic_game(n: int, game: VertexSetLike) -> Tournament:
    """Cyclic-group game tournament on Z/n: arc x -> y iff y - x in the game set."""
    from .grouptour import FiniteAbelianGroup, GameSubset, tournament_from_game

    group = FiniteAbelianGroup((n,))
    elems = frozenset(members(as_mask(game))) | {0}
    return tournament_from_game(GameSubset(group, elems))
