"""Game subsets on finite abelian groups and exact dyadic truncations.

Group elements are mixed-radix integers.  Dyadic values are nonnegative
Python ints read as zero-extended 2-adics: bit i (1-indexed) of v is
``(v >> (i-1)) & 1``, and arbitrary-precision two's complement makes the same
extraction exact for negative differences.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable

from .core import CapExceededError, Mask, Tournament, TournamentError


# -- finite abelian groups ---------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/n1 x ... x Z/nm with elements packed as mixed-radix integers."""

    moduli: tuple[int, ...]

    def __post_init__(self):
        if not self.moduli or any(m < 1 for m in self.moduli):
            raise TournamentError("moduli must be positive")

    @property
    def order(self) -> int:
        o = 1
        for m in self.moduli:
            o *= m
        return o

    def tuple_of(self, x: int) -> tuple[int, ...]:
        out = []
        for m in self.moduli:
            out.append(x % m)
            x //= m
        return tuple(out)

    def of_tuple(self, tup: Iterable[int]) -> int:
        x = 0
        scale = 1
        for c, m in zip(tup, self.moduli):
            x += (c % m) * scale
            scale *= m
        return x

    def add(self, x: int, y: int) -> int:
        return self.of_tuple(a + b for a, b in zip(self.tuple_of(x), self.tuple_of(y)))

    def neg(self, x: int) -> int:
        return self.of_tuple(-a for a in self.tuple_of(x))

    def sub(self, x: int, y: int) -> int:
        return self.add(x, self.neg(y))

    def generators(self) -> tuple[int, ...]:
        gens = []
        scale = 1
        for m in self.moduli:
            gens.append(scale)
            scale *= m
        return tuple(gens)


def parse_group_spec(text: str) -> FiniteAbelianGroup:
    """Textual group spec: ``Z9``, ``Z3^2``, ``Z5xZ7``, ``Z3^2xZ5``."""
    moduli: list[int] = []
    for factor in text.strip().split("x"):
        factor = factor.strip()
        if not factor.startswith("Z"):
            raise TournamentError(f"bad group factor {factor!r}")
        body = factor[1:]
        if "^" in body:
            mod, power = body.split("^", 1)
            moduli += [int(mod)] * int(power)
        else:
            moduli.append(int(body))
    return FiniteAbelianGroup(tuple(moduli))


@dataclass(frozen=True)
class GameSubset:
    """Subset A with A cap (-A) = {0} and A cup (-A) = G; 0 always included."""

    group: FiniteAbelianGroup
    elems: frozenset[int]


def validate_game_subset(g: GameSubset) -> bool:
    grp, a = g.group, g.elems
    if grp.order % 2 == 0:
        return False
    if 0 not in a:
        return False
    if any(not 0 <= x < grp.order for x in a):
        return False
    neg = {grp.neg(x) for x in a}
    return a & neg == {0} and a | neg == set(range(grp.order))


def tournament_from_game(g: GameSubset) -> Tournament:
    """Arc x -> y iff y - x lies in the game set (regular by construction)."""
    grp = g.group
    if grp.order % 2 == 0:
        raise TournamentError("groups of even order admit no game subset")
    if not validate_game_subset(g):
        raise TournamentError("not a game subset")
    n = grp.order
    rows = [0] * n
    diffs = g.elems - {0}
    for x in range(n):
        row = 0
        for d in diffs:
            row |= 1 << grp.add(x, d)
        rows[x] = row
    return Tournament(n, rows)


def all_game_subsets(grp: FiniteAbelianGroup) -> list[GameSubset]:
    """Every game subset of an odd-order group (2^((|G|-1)/2) of them)."""
    n = grp.order
    if n % 2 == 0:
        return []
    pairs = []
    seen = set()
    for x in range(1, n):
        if x in seen:
            continue
        seen.add(x)
        seen.add(grp.neg(x))
        pairs.append((x, grp.neg(x)))
    out = []
    for choice in itertools.product(*[(p, q) for p, q in pairs] or [()]):
        out.append(GameSubset(grp, frozenset({0, *choice})))
    return out


def translation_automorphism(g: GameSubset, x: int) -> tuple[int, ...]:
    """Left translation y -> x + y; an automorphism of the game tournament."""
    grp = g.group
    return tuple(grp.add(x, y) for y in range(grp.order))


def reversal_map(g: GameSubset, x: int) -> tuple[int, ...]:
    """The involution y -> 2x - y: fixes x and swaps its out-set and in-set."""
    grp = g.group
    return tuple(grp.add(x, grp.sub(x, y)) for y in range(grp.order))


@dataclass(frozen=True)
class GroupHom:
    """Homomorphism given by images of the source generators."""

    source: FiniteAbelianGroup
    target: FiniteAbelianGroup
    gen_images: tuple[int, ...]

    def __post_init__(self):
        if len(self.gen_images) != len(self.source.moduli):
            raise TournamentError("one generator image per source factor")
        for m, img in zip(self.source.moduli, self.gen_images):
            acc = 0
            for _ in range(m):
                acc = self.target.add(acc, img)
            if acc != 0:
                raise TournamentError("generator image order does not divide factor order")

    def __call__(self, x: int) -> int:
        out = 0
        for c, img in zip(self.source.tuple_of(x), self.gen_images):
            for _ in range(c):
                out = self.target.add(out, img)
        return out

    def is_surjective(self) -> bool:
        return len({self(x) for x in range(self.source.order)}) == self.target.order

    def kernel(self) -> tuple[int, ...]:
        return tuple(x for x in range(self.source.order) if self(x) == 0)


def lift_game_subset(hom: GroupHom, a1: GameSubset, b: Iterable[int]) -> GameSubset:
    """A2 = hom^{-1}(A1 minus 0) union B, for B a game subset of the kernel.

    The lifted set is a game subset mapped onto A1; its tournament is
    isomorphic to the lexicographic product of A1-hat with B-hat.
    """
    if a1.group != hom.target:
        raise TournamentError("a1 must live on the homomorphism target")
    if not hom.is_surjective():
        raise TournamentError("homomorphism must be surjective")
    ker = hom.kernel()
    bset = frozenset(b)
    if not bset <= set(ker):
        raise TournamentError("B must lie in the kernel")
    if 0 not in bset:
        raise TournamentError("B must contain the identity")
    grp = hom.source
    kset = set(ker)
    negb = {grp.neg(x) for x in bset}
    if bset & negb != {0} or bset | negb != kset:
        raise TournamentError("B is not a game subset of the kernel")
    core = a1.elems - {0}
    lifted = {x for x in range(grp.order) if hom(x) in core} | set(bset)
    out = GameSubset(grp, frozenset(lifted))
    if not validate_game_subset(out):
        raise TournamentError("lift did not produce a game subset")
    return out


def triadic_tournament(k: int, cap: int = 3**9) -> Tournament:
    """Z/3^k with the standard game set: arc x -> y iff the first nonzero
    trit of y - x is 1.  Reduction mod 3^j is a quotient map for j < k."""
    if k < 1:
        raise TournamentError("depth must be >= 1")
    n = 3**k
    if n > cap:
        raise CapExceededError(f"3^{k} exceeds cap {cap}")
    elems = {0}
    for x in range(1, n):
        y = x
        while y % 3 == 0:
            y //= 3
        if y % 3 == 1:
            elems.add(x)
    return tournament_from_game(GameSubset(FiniteAbelianGroup((n,)), frozenset(elems)))


# -- dyadic machinery --------------------------------------------------------


@dataclass(frozen=True)
class EpsilonWord:
    """Finite bit word e1..ek, zero-extended; sigma shifts indices down."""

    bits: tuple[int, ...] = ()

    def __post_init__(self):
        if any(b not in (0, 1) for b in self.bits):
            raise TournamentError("epsilon bits must be 0 or 1")

    @staticmethod
    def parse(text: str) -> "EpsilonWord":
        if text and not set(text) <= {"0", "1"}:
            raise TournamentError(f"bad epsilon word {text!r}")
        return EpsilonWord(tuple(int(c) for c in text))

    def __str__(self) -> str:
        return "".join(str(b) for b in self.bits)

    def bit(self, i: int) -> int:
        """1-indexed bit, 0 beyond the stored length."""
        return self.bits[i - 1] if 1 <= i <= len(self.bits) else 0

    def shift(self, k: int = 1) -> "EpsilonWord":
        return EpsilonWord(self.bits[k:])

    def is_zero(self) -> bool:
        return not any(self.bits)

    def support(self) -> int:
        return sum(self.bits)


ZERO_EPS = EpsilonWord()


def _bit(v: int, i: int) -> int:
    # exact for negative v: Python ints behave as infinite two's complement,
    # which is the zero/one-extended 2-adic representation
    return (v >> (i - 1)) & 1


def dyadic_arc(x: int, y: int, eps: EpsilonWord = ZERO_EPS) -> bool:
    """Arc rule of the dyadic game tournament family.

    With d = y - x, i the position of its lowest set bit and b the next bit,
    the arc runs x -> y exactly when b equals the i-th epsilon bit.
    """
    d = y - x
    if d == 0:
        raise TournamentError("dyadic_arc needs distinct points")
    i = (d & -d).bit_length()
    return _bit(d, i + 1) == eps.bit(i)


def dyadic_restriction(k: int, eps: EpsilonWord = ZERO_EPS, cap: int = 1 << 14) -> Tournament:
    """Restriction of the epsilon-twisted dyadic tournament to 0..2^k - 1."""
    if k < 1:
        raise TournamentError("depth must be >= 1")
    n = 1 << k
    if n > cap:
        raise CapExceededError(f"2^{k} exceeds cap {cap}")
    rows = [0] * n
    for x in range(n):
        for y in range(x + 1, n):
            if dyadic_arc(x, y, eps):
                rows[x] |= 1 << y
            else:
                rows[y] |= 1 << x
    return Tournament(n, rows, _trusted=True)


def d_partition(k: int, j: int) -> tuple[Mask, Mask]:
    """Split {0..2^k-1} by bit j: (bit clear, bit set)."""
    if not 1 <= j <= k:
        raise TournamentError("need 1 <= j <= k")
    d = 0
    dbar = 0
    for v in range(1 << k):
        if _bit(v, j):
            dbar |= 1 << v
        else:
            d |= 1 << v
    return d, dbar


def twist(v: int, j: int) -> int:
    """Bit-j twist: w0x -> w1(x+1), w1x -> w0x.

    Sends the bit-j-is-0 half onto the bit-j-is-1 half and back, and
    preserves all dyadic arcs.
    """
    if j < 1:
        raise TournamentError("twist index must be >= 1")
    if _bit(v, j):
        return v - (1 << (j - 1))
    return v + (1 << (j - 1)) + (1 << j)


def h_epsilon(v: int, eps: EpsilonWord) -> int:
    """The recursive bijection carrying the standard dyadic tournament onto
    its epsilon twist: dyadic_arc(x, y) iff dyadic_arc(h(x), h(y), eps).

    Even values recurse on the tail with epsilon shifted once; values 1 or 3
    mod 4 follow the four (e1, e2) rewrite cases with epsilon shifted twice.
    Terminates because epsilon has finite support and each step strips bits.
    """
    if v < 0:
        raise TournamentError("h_epsilon is defined on zero-extended values")
    if eps.is_zero() or v == 0:
        return v
    if v % 2 == 0:
        return 2 * h_epsilon(v // 2, eps.shift(1))
    e1, e2 = eps.bit(1), eps.bit(2)
    z = v >> 2
    hz = h_epsilon(z, eps.shift(2))
    if v % 4 == 1:  # v = 10z
        if (e1, e2) == (0, 0):
            return 1 + 4 * hz
        if (e1, e2) == (0, 1):
            return 1 + 4 * (hz + 1)
        if (e1, e2) == (1, 0):
            return 3 + 4 * (hz + 1)
        return 3 + 4 * hz
    # v = 11z
    if e1 == 0:
        return 3 + 4 * hz
    return 1 + 4 * hz


# -- the two-copy dyadic attachment P[j,k] -----------------------------------

MINUS, PLUS = -1, +1
Point = tuple[int, int]  # (sign, value)


def pjk_arc(j: int, k: int, a: Point, b: Point) -> bool:
    """Arc rule of the attachment of two dyadic copies.

    Within a copy the standard dyadic rule applies.  Across copies the minus
    point is classified by bit k and the plus point by bit j: the arc runs
    minus -> plus exactly when those bits agree.
    """
    (sa, va), (sb, vb) = a, b
    if sa == sb:
        return dyadic_arc(va, vb)
    if sa == MINUS:
        return _bit(va, k) == _bit(vb, j)
    return not (_bit(vb, k) == _bit(va, j))


def pjk_twist(j: int, k: int, a: Point) -> Point:
    """Twist j on the plus copy and twist k on the minus copy."""
    s, v = a
    return (s, twist(v, j) if s == PLUS else twist(v, k))


def pjk_interchange(j: int, k: int, a: Point) -> Point:
    """Isomorphism from the (j,k) attachment to the (k,j) attachment:
    plus points drop to minus unchanged, minus points rise twisted by k."""
    s, v = a
    if s == PLUS:
        return (MINUS, v)
    return (PLUS, twist(v, k))


def pjk_truncation(j: int, k: int, depth: int, cap: int = 1 << 14) -> Tournament:
    """Materialize the attachment on two copies of {0..2^depth - 1}.

    Vertices 0..2^depth-1 are the minus copy, the rest the plus copy.
    """
    if depth < 1:
        raise TournamentError("depth must be >= 1")
    if not (1 <= j <= depth - 2 and 1 <= k <= depth - 2):
        raise TournamentError("need 1 <= j,k <= depth-2")
    half = 1 << depth
    if 2 * half > cap:
        raise CapExceededError(f"2*2^{depth} exceeds cap {cap}")

    def point(idx: int) -> Point:
        return (MINUS, idx) if idx < half else (PLUS, idx - half)

    rows = [0] * (2 * half)
    for xi in range(2 * half):
        for yi in range(xi + 1, 2 * half):
            if pjk_arc(j, k, point(xi), point(yi)):
                rows[xi] |= 1 << yi
            else:
                rows[yi] |= 1 << xi
    return Tournament(2 * half, rows, _trusted=True)
