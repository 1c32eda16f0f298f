"""Finite-depth inverse systems of tournaments with prefix-level arc rules."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .core import (
    CapExceededError,
    QuotientMap,
    Tournament,
    TournamentError,
    is_quotient_map,
    restrict_with_vertices,
)
from .construct import FiberAssignment, lex_product


class UndeterminedArcError(TournamentError):
    """Threads agree at every stored level; the arc needs more depth."""


@dataclass(frozen=True)
class InverseSystem:
    """Levels X1..Xd with quotient maps f_i: X_{i+1} -> X_i."""

    levels: tuple[Tournament, ...]
    maps: tuple[QuotientMap, ...]

    @property
    def depth(self) -> int:
        return len(self.levels)

    def project(self, top_vertex: int) -> "Thread":
        """Thread through a top-level vertex."""
        verts = [top_vertex]
        for f in reversed(self.maps):
            verts.append(f.assignment[verts[-1]])
        return Thread(tuple(reversed(verts)))


@dataclass(frozen=True)
class Thread:
    """One vertex per level, consistent under the maps."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    level: Optional[int] = None
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok


def validate_system(s: InverseSystem) -> ValidationResult:
    """All maps surjective quotient maps; every level vertex extends to a thread.

    On failure the result carries the first failing level (1-indexed).
    """
    if len(s.maps) != len(s.levels) - 1:
        return ValidationResult(False, None, "map count must be depth-1")
    for i, f in enumerate(s.maps):
        if f.source is not s.levels[i + 1] and f.source != s.levels[i + 1]:
            return ValidationResult(False, i + 1, "map source is not the level above")
        if f.target is not s.levels[i] and f.target != s.levels[i]:
            return ValidationResult(False, i + 1, "map target is not this level")
        if not is_quotient_map(f):
            return ValidationResult(False, i + 1, "not a surjective quotient map")
    # with surjective maps every vertex extends upward, hence to a full thread
    return ValidationResult(True)


def validate_thread(s: InverseSystem, t: Thread) -> bool:
    if len(t.vertices) != s.depth:
        return False
    for i, f in enumerate(s.maps):
        if f.assignment[t.vertices[i + 1]] != t.vertices[i]:
            return False
    return True


def limit_arc(s: InverseSystem, t1: Thread, t2: Thread) -> bool:
    """True iff t1 -> t2, decided at the first level where the threads differ."""
    for thread in (t1, t2):
        if not validate_thread(s, thread):
            raise TournamentError("inconsistent thread")
    for level in range(s.depth):
        a, b = t1.vertices[level], t2.vertices[level]
        if a != b:
            return s.levels[level].arc(a, b)
    raise UndeterminedArcError("threads agree at every stored level")


FiberChooser = Callable[[int, int], Tournament]


def lex_tower(
    base: Tournament,
    fiber_chooser: FiberChooser,
    depth: int,
    cap: int = 10**5,
) -> InverseSystem:
    """Iterated lexicographic products: X1 = base, X_{i+1} = X_i with fibers
    chosen by ``fiber_chooser(level, vertex)`` (level is 1-indexed)."""
    if depth < 1:
        raise TournamentError("depth must be >= 1")
    levels = [base]
    maps = []
    for level in range(1, depth):
        cur = levels[-1]
        fibers = {v: fiber_chooser(level, v) for v in range(cur.n)}
        total = sum(f.n for f in fibers.values())
        if total > cap:
            raise CapExceededError(f"tower level would have {total} > {cap} vertices")
        product, proj = lex_product(FiberAssignment(cur, fibers))
        levels.append(product)
        maps.append(proj)
    return InverseSystem(tuple(levels), tuple(maps))


def _tree_levels(tree, depth: int) -> list[Tournament]:
    """Materialize a classifier tree as tower levels X1..X_depth.

    Each vertex of the current level carries the residual subtree classifying
    its fiber (None once exhausted); the next level substitutes the residual
    bases as fibers, in the same vertex order lex_product uses.
    """
    from .core import trivial

    cur = tree.base
    levels = [cur]
    residual = [tree.children.get(b) for b in range(cur.n)]
    for _ in range(1, depth):
        fibers = {}
        nxt = []
        for v, node in enumerate(residual):
            if node is None:
                fibers[v] = trivial()
                nxt.append(None)
            else:
                fibers[v] = node.base
                for y in range(node.base.n):
                    nxt.append(node.children.get(y))
        product, _ = lex_product(FiberAssignment(cur, fibers))
        levels.append(product)
        cur = product
        residual = nxt
    return levels


def classifier_cross_check(s: InverseSystem) -> bool:
    """Does the classifier of the top level reproduce the tower level-by-level?

    Precondition (checked): every level-to-level fiber is trivial, a
    non-trivial finite order, or prime.
    """
    from .core import find_isomorphism, is_transitive
    from .modular import classifier, is_prime

    for i, f in enumerate(s.maps):
        upper = s.levels[i + 1]
        for y in range(s.levels[i].n):
            fiber = f.fiber(y)
            sub, _ = restrict_with_vertices(upper, fiber)
            if sub.n == 1:
                continue
            if not (is_transitive(sub) or is_prime(sub)):
                raise TournamentError(
                    f"fiber over level-{i + 1} vertex {y} is neither trivial, "
                    "an order, nor prime"
                )
    tree = classifier(s.levels[-1])
    mine = _tree_levels(tree, s.depth)
    for built, constructed in zip(mine, s.levels):
        if built.n != constructed.n:
            return False
        if find_isomorphism(built, constructed, cap=max(built.n, 12)) is None:
            return False
    return True


def cylinder_cycle_witness(
    s: InverseSystem, level: int, vertex: int
) -> Optional[tuple[Thread, Thread, Thread]]:
    """Three threads through the given level vertex forming a 3-cycle.

    Searches the whole cylinder down to the stored depth; returns None when
    the cylinder contains no 3-cycle within depth.  Levels are 1-indexed.
    """
    if not 1 <= level <= s.depth:
        raise TournamentError("level out of range")
    if s.depth < level + 1:
        raise TournamentError("system depth must exceed the requested level")
    top = s.levels[-1]
    # vertices of the top level that project to `vertex`
    cyl = []
    for v in range(top.n):
        w = v
        for f in reversed(s.maps[level - 1:]):
            w = f.assignment[w]
        if w == vertex:
            cyl.append(v)
    for a in cyl:
        for b in cyl:
            if a != b and top.arc(a, b):
                for c in cyl:
                    if c != a and c != b and top.arc(b, c) and top.arc(c, a):
                        return (s.project(a), s.project(b), s.project(c))
    return None
