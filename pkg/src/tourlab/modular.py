"""Q-invariant sets, prime detection, quotients, classifier decomposition.

A subset A is Q-invariant (a module) when every outside vertex dominates all
of A or is dominated by all of A; equivalently Q(A x A) is contained in A,
where Q(x,y) collects the vertices lying non-strictly between x and y in
either direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from .core import (
    CapExceededError,
    EmptyVertexSetError,
    Mask,
    QuotientMap,
    Tournament,
    TournamentError,
    VertexSetLike,
    as_mask,
    identity_map,
    is_transitive,
    members,
    restrict_with_vertices,
    strong_components,
    trivial,
)


class NotQInvariantError(TournamentError):
    pass


class NotApplicableError(TournamentError):
    """Requested quotient kind does not exist for this input."""


class MalformedTreeError(TournamentError):
    pass


def _nonstrict_out(t: Tournament, x: int) -> Mask:
    return t.rows[x] | (1 << x)


def _nonstrict_in(t: Tournament, x: int) -> Mask:
    return t.in_mask(x) | (1 << x)


def q_set(t: Tournament, x: int, y: int) -> Mask:
    """Vertices z with x ->= z ->= y or y ->= z ->= x (non-strict arcs).

    Always contains {x, y}; q_set(t, x, x) is the singleton {x}.
    """
    return (_nonstrict_out(t, x) & _nonstrict_in(t, y)) | (
        _nonstrict_out(t, y) & _nonstrict_in(t, x)
    )


def q_closure(t: Tournament, a: VertexSetLike) -> Mask:
    """Least Q-invariant superset of ``a``: iterate A -> Q(A x A) to a fixpoint.

    Q(A x A) is the set of z non-strictly dominated by some member and
    non-strictly dominating some member; both unions are accumulated
    incrementally, so each vertex is scanned once over the whole iteration.
    """
    mask = as_mask(a)
    if mask == 0:
        raise EmptyVertexSetError("q_closure of the empty set")
    rows = t.rows
    full = t.full_mask()
    dominated = 0
    dominating = 0
    fresh = mask
    while True:
        m = fresh
        while m:
            low = m & -m
            v = low.bit_length() - 1
            row = rows[v]
            dominated |= row | low
            dominating |= (full & ~row) | low
            m ^= low
        nxt = dominated & dominating
        fresh = nxt & ~mask
        if not fresh:
            return mask
        mask = nxt


def is_q_invariant(t: Tournament, a: VertexSetLike) -> bool:
    """Module test: each outside vertex beats all of ``a`` or loses to all of it."""
    mask = as_mask(a)
    outside = t.full_mask() & ~mask
    while outside:
        low = outside & -outside
        z = low.bit_length() - 1
        if (t.rows[z] & mask) != mask and (t.in_mask(z) & mask) != mask:
            return False
        outside ^= low
    return True


def maximal_invariant_sets(t: Tournament, cap: int = 24) -> list[Mask]:
    """All maximal proper Q-invariant subsets (each nonempty), sorted.

    Grows pair closures one vertex at a time, keeping proper results and
    memoizing states; maximal singletons are unioned in.  Worst case
    exponential, hence the vertex-count cap.
    """
    n = t.n
    if n < 2:
        raise TournamentError("maximal_invariant_sets needs n >= 2")
    if n > cap:
        raise CapExceededError(f"maximal_invariant_sets capped at n={cap}")
    full = t.full_mask()

    closure_memo: dict[Mask, Mask] = {}

    def closure(mask: Mask) -> Mask:
        got = closure_memo.get(mask)
        if got is None:
            got = q_closure(t, mask)
            closure_memo[mask] = got
        return got

    proper_pair_closure_through = [False] * n
    seeds = set()
    for x in range(n):
        for y in range(x + 1, n):
            c = closure((1 << x) | (1 << y))
            if c != full:
                seeds.add(c)
                proper_pair_closure_through[x] = True
                proper_pair_closure_through[y] = True

    maximal: set[Mask] = set()
    visited: set[Mask] = set()
    stack = list(seeds)
    while stack:
        c = stack.pop()
        if c in visited:
            continue
        visited.add(c)
        grew = False
        rest = full & ~c
        while rest:
            low = rest & -rest
            rest ^= low
            c2 = closure(c | low)
            if c2 != full:
                grew = True
                if c2 not in visited:
                    stack.append(c2)
        if not grew:
            maximal.add(c)

    for x in range(n):
        if not proper_pair_closure_through[x]:
            maximal.add(1 << x)

    # verify maximality (growth already guarantees it; cheap belt and braces)
    out = []
    for c in maximal:
        rest = full & ~c
        ok = True
        while rest:
            low = rest & -rest
            rest ^= low
            if closure(c | low) != full:
                ok = False
                break
        if ok:
            out.append(c)
    return sorted(out)


def is_prime(t: Tournament) -> bool:
    """n >= 2 and no Q-invariant subset of intermediate size exists.

    Equivalent: every pair closure is the whole vertex set.
    """
    if t.n < 2:
        return False
    full = t.full_mask()
    for x in range(t.n):
        for y in range(x + 1, t.n):
            if q_closure(t, (1 << x) | (1 << y)) != full:
                return False
    return True


def smash(t: Tournament, a: VertexSetLike) -> tuple[Tournament, QuotientMap]:
    """Identify the Q-invariant set ``a`` to a single vertex.

    The merged class sits at the rank of its smallest member; all other
    vertices keep their relative order.
    """
    mask = as_mask(a)
    if mask == 0:
        raise EmptyVertexSetError("cannot smash the empty set")
    if not is_q_invariant(t, mask):
        raise NotQInvariantError("smash target is not Q-invariant")
    rep = (mask & -mask).bit_length() - 1
    kept = sorted(members(t.full_mask() & ~mask) + (rep,))
    index = {v: k for k, v in enumerate(kept)}
    assignment = tuple(
        index[rep] if (mask >> v) & 1 else index[v] for v in range(t.n)
    )
    m = len(kept)
    rows = [0] * m
    for ki, vi in enumerate(kept):
        si = mask if vi == rep else (1 << vi)
        wit_i = (si & -si).bit_length() - 1
        for kj in range(ki + 1, m):
            vj = kept[kj]
            sj = mask if vj == rep else (1 << vj)
            wit_j = (sj & -sj).bit_length() - 1
            if t.arc(wit_i, wit_j):
                rows[ki] |= 1 << kj
            else:
                rows[kj] |= 1 << ki
    target = Tournament(m, rows, _trusted=True)
    return target, QuotientMap(t, target, assignment)


def has_arc_quotient(t: Tournament) -> bool:
    """True iff some proper nonempty set receives all cross arcs one way.

    For finite tournaments this is exactly failure of strong connectivity.
    """
    return len(strong_components(t)) >= 2


def max_order_quotient(t: Tournament) -> tuple[Tournament, QuotientMap]:
    """Condensation onto the linear order of strong components."""
    comps = strong_components(t)
    if len(comps) < 2:
        raise NotApplicableError("no arc quotient: tournament is strongly connected or trivial")
    k = len(comps)
    rows = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            rows[i] |= 1 << j
    target = Tournament(k, rows, _trusted=True)
    assignment = [0] * t.n
    for i, comp in enumerate(comps):
        for v in comp:
            assignment[v] = i
    return target, QuotientMap(t, target, tuple(assignment))


def prime_quotient(t: Tournament, cap: int = 24) -> tuple[Tournament, QuotientMap]:
    """Quotient by the maximal nontrivial Q-invariant subsets.

    Defined for nontrivial strongly connected tournaments; those subsets are
    then pairwise disjoint and the target is prime.  A prime input yields the
    identity map.
    """
    if t.n < 2:
        raise NotApplicableError("prime quotient needs a nontrivial tournament")
    if has_arc_quotient(t):
        raise NotApplicableError(
            "input has an arc quotient; use max_order_quotient"
        )
    blocks = [m for m in maximal_invariant_sets(t, cap=cap) if m.bit_count() >= 2]
    union = 0
    for b in blocks:
        if union & b:
            raise TournamentError("maximal Q-invariant sets overlap unexpectedly")
        union |= b
    if not blocks:
        return t, identity_map(t)
    fibers = blocks + [1 << v for v in members(t.full_mask() & ~union)]
    fibers.sort(key=lambda m: (m & -m).bit_length())
    k = len(fibers)
    reps = [(m & -m).bit_length() - 1 for m in fibers]
    rows = [0] * k
    for i in range(k):
        for j in range(i + 1, k):
            if t.arc(reps[i], reps[j]):
                rows[i] |= 1 << j
            else:
                rows[j] |= 1 << i
    target = Tournament(k, rows, _trusted=True)
    assignment = [0] * t.n
    for i, m in enumerate(fibers):
        for v in members(m):
            assignment[v] = i
    return target, QuotientMap(t, target, tuple(assignment))


def base_quotient(t: Tournament, cap: int = 24) -> tuple[Tournament, QuotientMap, str]:
    """The canonical first quotient: trivial, maximum order, or prime."""
    if t.n == 1:
        return t, identity_map(t), "trivial"
    if has_arc_quotient(t):
        target, qmap = max_order_quotient(t)
        return target, qmap, "order"
    target, qmap = prime_quotient(t, cap=cap)
    return target, qmap, "prime"


@dataclass(frozen=True)
class ClassifierTree:
    """Recursive base-quotient decomposition.

    ``children`` maps base vertices with nontrivial fibers to the subtree
    classifying that fiber (fibers re-indexed in ascending vertex order).
    """

    kind: str
    base: Tournament
    children: Mapping[int, "ClassifierTree"] = field(default_factory=dict)
    fiber_map: Optional[QuotientMap] = None

    def size(self) -> int:
        total = 0
        for b in range(self.base.n):
            child = self.children.get(b)
            total += child.size() if child is not None else 1
        return total


def classifier(t: Tournament) -> ClassifierTree:
    """Recursively apply base quotients until all fibers are singletons.

    The growth-search cap is lifted to the input size: the recursion is
    driven by inputs the caller already chose to materialize.
    """
    base, qmap, kind = base_quotient(t, cap=max(24, t.n))
    children: dict[int, ClassifierTree] = {}
    if kind != "trivial":
        for b in range(base.n):
            fiber = qmap.fiber(b)
            if fiber.bit_count() >= 2:
                sub, _ = restrict_with_vertices(t, fiber)
                children[b] = classifier(sub)
    return ClassifierTree(kind, base, children, qmap)


def reassemble(tree: ClassifierTree) -> Tournament:
    """Recursive lexicographic product along the tree.

    Isomorphic to the tournament the tree was computed from.
    """
    from .construct import FiberAssignment, lex_product

    if not isinstance(tree, ClassifierTree):
        raise MalformedTreeError("not a ClassifierTree")
    if tree.kind not in _KIND_BYTES:
        raise MalformedTreeError(f"unknown node kind {tree.kind!r}")
    if tree.kind == "trivial":
        if tree.base.n != 1 or tree.children:
            raise MalformedTreeError("trivial node must be a bare singleton")
        return tree.base
    if tree.kind == "order" and not (tree.base.n >= 2 and is_transitive(tree.base)):
        raise MalformedTreeError("order node needs a nontrivial transitive base")
    if any(not 0 <= b < tree.base.n for b in tree.children):
        raise MalformedTreeError("child attached to a vertex outside the base")
    fibers = {}
    for b in range(tree.base.n):
        child = tree.children.get(b)
        fibers[b] = reassemble(child) if child is not None else trivial()
    product, _ = lex_product(FiberAssignment(tree.base, fibers))
    return product


# -- canonical certificates --------------------------------------------------

CERT_VERSION = b"\x01"
_KIND_BYTES = {"trivial": b"\x00", "order": b"\x01", "prime": b"\x02"}


def _canon_code(t: Tournament, perm: list[int]) -> int:
    """Packed orientation bits under relabeling ``perm`` (orig->canon).

    Pairs (i,j), i<j, are appended in colex order (j ascending) with the
    first pair most significant, so integer order equals lexicographic order
    on the packed bit string.
    """
    n = t.n
    inv = [0] * n
    for orig, canon in enumerate(perm):
        inv[canon] = orig
    code = 0
    for j in range(n):
        for i in range(j):
            code = (code << 1) | t.arc(inv[i], inv[j])
    return code


def _canonical_perms(t: Tournament, cap: int) -> tuple[int, list[list[int]]]:
    """Minimal packed code and every orig->canon permutation attaining it."""
    n = t.n
    npairs = n * (n - 1) // 2
    if is_transitive(t):
        # unique canonical order: ascending out-degree; orders are rigid
        by_deg = sorted(range(n), key=t.out_degree)
        perm = [0] * n
        for canon, orig in enumerate(by_deg):
            perm[orig] = canon
        return _canon_code(t, perm), [perm]
    if n > cap:
        raise CapExceededError(f"canonical labeling capped at n={cap}")

    best_code: Optional[int] = None
    best_perms: list[list[int]] = []
    placed = [-1] * n  # canon position -> orig vertex

    def rec(k: int, prefix: int, bits: int, used: Mask):
        nonlocal best_code, best_perms
        if k == n:
            if best_code is None or prefix < best_code:
                best_code = prefix
                best_perms = []
            if prefix == best_code:
                perm = [0] * n
                for canon, orig in enumerate(placed):
                    perm[orig] = canon
                best_perms.append(perm)
            return
        for v in range(n):
            if (used >> v) & 1:
                continue
            code2 = prefix
            for i in range(k):
                code2 = (code2 << 1) | t.arc(placed[i], v)
            b2 = bits + k
            if best_code is not None and code2 > (best_code >> (npairs - b2)):
                continue
            placed[k] = v
            rec(k + 1, code2, b2, used | (1 << v))
            placed[k] = -1

    rec(0, 0, 0, 0)
    assert best_code is not None
    return best_code, best_perms


def _pack_bits(code: int, nbits: int) -> bytes:
    return code.to_bytes((nbits + 7) // 8 or 1, "big")


def _u32(x: int) -> bytes:
    return x.to_bytes(4, "big")


def _node_cert(tree: ClassifierTree, cap: int) -> bytes:
    base = tree.base
    n = base.n
    code, perms = _canonical_perms(base, cap)
    child_cert = {
        b: _node_cert(sub, cap) for b, sub in tree.children.items()
    }
    best_children: Optional[bytes] = None
    for perm in perms:
        inv = [0] * n
        for orig, canon in enumerate(perm):
            inv[canon] = orig
        buf = bytearray()
        for canon in range(n):
            cert = child_cert.get(inv[canon], b"")
            buf += _u32(len(cert)) + cert
        cand = bytes(buf)
        if best_children is None or cand < best_children:
            best_children = cand
    assert best_children is not None
    npairs = n * (n - 1) // 2
    return (
        _KIND_BYTES[tree.kind]
        + _u32(n)
        + _pack_bits(code, npairs)
        + _u32(len(tree.children))
        + best_children
    )


def certificate(t: Tournament, cap: int = 12) -> bytes:
    """Canonical byte string: equal for two tournaments iff isomorphic.

    Canonically labels every base in the classifier tree (smallest packed
    orientation bit string wins), then minimizes the attached child
    certificates over base automorphisms.  Leaf bases larger than ``cap``
    raise CapExceededError.

    Layout (all counts big-endian):
      0x01 version byte, then one node record.  A node record is
      kind byte (00 trivial / 01 order / 02 prime), u32 base size n,
      ceil(C(n,2)/8) bytes of canonical orientation bits (pairs (i,j), i<j,
      colex by j, first pair in the most significant bit), u32 child count,
      then n child slots in canonical vertex order, each a u32 length
      followed by the child's node record (empty for trivial fibers).
    """
    return CERT_VERSION + _node_cert(classifier(t), cap)
