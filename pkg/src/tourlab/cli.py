"""Command-line front end: construction, analysis, classification, census,
isomorphism and export.

Exit codes: 0 success/true, 1 false (boolean queries), 2 usage error,
3 cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Iterable, Optional

from . import construct, core, grouptour, modular, profinite
from .core import CapExceededError, Tournament, TournamentError

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_CAP = 3


class TrnParseError(TournamentError):
    def __init__(self, message: str, line: Optional[int] = None):
        self.line = line
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{message}")


# -- TRN format --------------------------------------------------------------
#
# TRN 1
# n=<N>
# then N-1 data rows; row i (0-indexed) has N-1-i characters, character for
# column j (j = i+1..N-1) is '1' iff arc i->j else '0'.  '#' comment lines are
# allowed anywhere after the header.


def emit_trn(t: Tournament) -> str:
    lines = ["TRN 1", f"n={t.n}"]
    for i in range(t.n - 1):
        lines.append(
            "".join("1" if t.arc(i, j) else "0" for j in range(i + 1, t.n))
        )
    return "\n".join(lines) + "\n"


def parse_trn(text: str) -> Tournament:
    lines = text.splitlines()
    if not lines or lines[0].strip() != "TRN 1":
        raise TrnParseError("expected header 'TRN 1'", 1)
    body = []
    for lineno, raw in enumerate(lines[1:], start=2):
        stripped = raw.strip()
        if not stripped or stripped.startswith("#"):
            continue
        body.append((lineno, stripped))
    if not body:
        raise TrnParseError("missing n=<N> line")
    lineno, first = body[0]
    if not first.startswith("n="):
        raise TrnParseError("expected n=<N>", lineno)
    try:
        n = int(first[2:])
    except ValueError:
        raise TrnParseError(f"bad vertex count {first[2:]!r}", lineno) from None
    if n < 1:
        raise TrnParseError("vertex count must be >= 1", lineno)
    rows_needed = n - 1
    data = body[1:]
    if len(data) != rows_needed:
        raise TrnParseError(
            f"expected {rows_needed} data rows, found {len(data)}",
            data[-1][0] if data else lineno,
        )
    rows = [0] * n
    for i, (ln, row) in enumerate(data):
        if len(row) != n - 1 - i:
            raise TrnParseError(
                f"row {i} must have {n - 1 - i} characters, found {len(row)}", ln
            )
        for offset, ch in enumerate(row):
            j = i + 1 + offset
            if ch == "1":
                rows[i] |= 1 << j
            elif ch == "0":
                rows[j] |= 1 << i
            else:
                raise TrnParseError(f"bad character {ch!r} in data row", ln)
    return Tournament(n, rows)


# -- ClassifierJson ------------------------------------------------------------


def classifier_to_json(tree: modular.ClassifierTree) -> dict:
    return {
        "kind": tree.kind,
        "base": emit_trn(tree.base),
        "children": [
            {"vertex": v, "tree": classifier_to_json(sub)}
            for v, sub in sorted(tree.children.items())
        ],
    }


# -- DOT -----------------------------------------------------------------------


def emit_dot(t: Tournament, labels: Optional[list[str]] = None) -> str:
    if labels is None:
        labels = [f"v{i}" for i in range(t.n)]
    lines = ["digraph tournament {"]
    for i in range(t.n):
        lines.append(f"  {labels[i]};")
    for x, y in t.arcs():
        lines.append(f"  {labels[x]} -> {labels[y]};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- catalog names used by gen/tower specs --------------------------------------


def catalog_tournament(name: str) -> Tournament:
    """Small fixture language: C3, arc, Y2, order<k>, Z<n>[a,b,...]."""
    name = name.strip()
    if name == "C3":
        return core.three_cycle()
    if name == "arc":
        return core.arc_tournament()
    if name == "Y2":
        return construct.y2()
    if name == "trivial":
        return core.trivial()
    if name.startswith("order"):
        return core.transitive_order(int(name[5:]))
    if name.startswith("Z"):
        if "[" in name:
            spec, rest = name.split("[", 1)
            elems = [int(tok) for tok in rest.rstrip("]").split(",") if tok]
            group = grouptour.parse_group_spec(spec)
            return grouptour.tournament_from_game(
                grouptour.GameSubset(group, frozenset(elems) | {0})
            )
        group = grouptour.parse_group_spec(name)
        if len(group.moduli) != 1:
            raise TournamentError("product groups need an explicit game list [..]")
        n = group.moduli[0]
        return construct.cyclic_game(n, range(1, (n + 1) // 2))
    raise TournamentError(f"unknown catalog name {name!r}")


def parse_tower_spec(spec: str, depth: int) -> profinite.InverseSystem:
    """Mini-language: ``base=C3; fibers=C3`` or ``theta=0110; Y0=C3; Y1=Z5[1,2]``."""
    fields = {}
    for part in spec.split(";"):
        part = part.strip()
        if not part:
            continue
        if "=" not in part:
            raise TournamentError(f"bad tower field {part!r}")
        key, val = part.split("=", 1)
        fields[key.strip()] = val.strip()
    if "theta" in fields:
        theta = fields["theta"]
        if not set(theta) <= {"0", "1"}:
            raise TournamentError("theta must be a 01-word")
        y0 = catalog_tournament(fields.get("Y0", "C3"))
        y1 = catalog_tournament(fields.get("Y1", "Z5[1,2]"))
        seq = [y0 if c == "0" else y1 for c in theta]
        if len(seq) < depth:
            raise TournamentError("theta shorter than requested depth")
        base = seq[0]
        chooser = lambda level, v: seq[level]
        return profinite.lex_tower(base, chooser, depth)
    base = catalog_tournament(fields.get("base", "C3"))
    fiber = catalog_tournament(fields.get("fibers", "C3"))
    return profinite.lex_tower(base, lambda level, v: fiber, depth)


# -- predicates ----------------------------------------------------------------

PREDICATES = {
    "prime": modular.is_prime,
    "arccyclic": core.is_arc_cyclic,
    "pointcyclic": core.is_point_cyclic,
    "irreducible": core.is_irreducible,
    "regular": core.is_regular,
    "transitive": core.is_transitive,
    "strongly-connected": lambda t: len(core.strong_components(t)) == 1,
}


def _analyze_report(t: Tournament, props: Iterable[str]) -> dict:
    report: dict = {"n": t.n}
    for p in props:
        if p in PREDICATES:
            report[p] = PREDICATES[p](t)
        elif p == "components":
            report[p] = [list(c) for c in core.strong_components(t)]
        elif p == "terminal":
            report[p] = core.terminal_point(t)
        elif p == "initial":
            report[p] = core.initial_point(t)
        elif p == "maxinvariant":
            report[p] = [list(core.members(m)) for m in modular.maximal_invariant_sets(t)]
        else:
            raise TournamentError(f"unknown property {p!r}")
    return report


DEFAULT_PROPS = [
    "prime",
    "arccyclic",
    "pointcyclic",
    "irreducible",
    "regular",
    "transitive",
    "strongly-connected",
    "components",
    "terminal",
    "initial",
    "maxinvariant",
]


# -- census ---------------------------------------------------------------------


def census_range(n: int, lo: int, hi: int, predicates: list[str]) -> dict[str, int]:
    counts = {"total": 0, **{p: 0 for p in predicates}}
    for code in range(lo, hi):
        counts["total"] += 1
        if predicates:
            t = Tournament.from_code(n, code)
            for p in predicates:
                if PREDICATES[p](t):
                    counts[p] += 1
    return counts


def run_census(
    n: int, predicates: list[str], jobs: int = 1, cap_order: int = 8
) -> dict[str, int]:
    if n > cap_order:
        raise CapExceededError(f"census capped at order {cap_order}")
    total = 1 << (n * (n - 1) // 2)
    if jobs <= 1:
        return census_range(n, 0, total, predicates)
    import multiprocessing as mp

    step = (total + jobs - 1) // jobs
    ranges = [(n, lo, min(lo + step, total), predicates) for lo in range(0, total, step)]
    with mp.Pool(jobs) as pool:
        parts = pool.starmap(census_range, ranges)
    merged = {"total": 0, **{p: 0 for p in predicates}}
    for part in parts:
        for key, val in part.items():
            merged[key] += val
    return merged


def run_census_unlabeled(n: int, predicates: list[str], cap_order: int = 6) -> dict[str, int]:
    if n > cap_order:
        raise CapExceededError(f"unlabeled census capped at order {cap_order}")
    reps = unlabeled_representatives(n)
    counts = {"total": len(reps), **{p: 0 for p in predicates}}
    for t in reps:
        for p in predicates:
            if PREDICATES[p](t):
                counts[p] += 1
    return counts


def unlabeled_representatives(n: int) -> list[Tournament]:
    """One representative per isomorphism class, by extending smaller ones."""
    reps = [core.trivial()]
    for size in range(2, n + 1):
        seen: dict[bytes, Tournament] = {}
        for t in reps:
            for new_out in range(1 << (size - 1)):
                rows = list(t.rows)
                rows.append(0)
                for v in range(size - 1):
                    if (new_out >> v) & 1:
                        rows[size - 1] |= 1 << v
                    else:
                        rows[v] |= 1 << (size - 1)
                cand = Tournament(size, rows, _trusted=True)
                cert = modular.certificate(cand)
                if cert not in seen:
                    seen[cert] = cand
        reps = list(seen.values())
    return reps


# -- command implementations ------------------------------------------------------


def _read_tournament(path: str) -> Tournament:
    if path == "-":
        return parse_trn(sys.stdin.read())
    with open(path, "r", encoding="utf-8") as fh:
        return parse_trn(fh.read())


def _parse_vertex_set(token: str) -> int:
    mask = 0
    for piece in token.split(","):
        piece = piece.strip()
        if piece:
            mask |= 1 << int(piece)
    return mask


def cmd_gen(args) -> int:
    sub = args.generator
    if sub == "y2":
        t = construct.y2()
    elif sub == "double":
        t = construct.double(_read_tournament(args.infile))
    elif sub == "rdouble":
        t = construct.reduced_double(_read_tournament(args.infile))
    elif sub == "lex":
        base = _read_tournament(args.base)
        fiber = _read_tournament(args.fiber)
        t, _ = construct.constant_lex(base, fiber)
    elif sub == "n1":
        t = construct.n1_interval(args.lo, args.hi)
    elif sub == "2n0":
        t = construct.two_n0(args.count, with_infinity=args.infinity)
    elif sub == "2n1":
        t = construct.two_n1(args.lo, args.hi, with_infinity=args.infinity)
    elif sub == "cyclic":
        elems = [int(x) for x in args.game.split(",") if x]
        t = construct.cyclic_game(args.modulus, elems)
    elif sub == "triadic":
        t = grouptour.triadic_tournament(args.depth)
    elif sub == "dyadic":
        t = grouptour.dyadic_restriction(
            args.depth, grouptour.EpsilonWord.parse(args.epsilon)
        )
    elif sub == "pjk":
        t = grouptour.pjk_truncation(args.j, args.k, args.depth)
    elif sub == "attach":
        yt = _read_tournament(args.y)
        xt = _read_tournament(args.x)
        parts = tuple(_parse_vertex_set(tok) for tok in args.parts.split("|"))
        full = xt.full_mask()
        pairs = tuple(
            (e, full & ~e)
            for e in (_parse_vertex_set(tok) for tok in args.es.split("|"))
        )
        t = construct.attach(
            construct.AttachmentSpec(y=yt, x=xt, parts=parts, pairs=pairs)
        )
    elif sub == "tower":
        system = parse_tower_spec(args.spec, args.depth)
        t = system.levels[-1]
    else:  # pragma: no cover - argparse restricts choices
        raise TournamentError(f"unknown generator {sub!r}")
    sys.stdout.write(emit_trn(t))
    return EXIT_OK


def cmd_analyze(args) -> int:
    t = _read_tournament(args.file)
    props = args.props.split(",") if args.props else DEFAULT_PROPS
    report = _analyze_report(t, props)
    if args.json:
        json.dump(report, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        for key, val in report.items():
            print(f"{key}={val}")
    return EXIT_OK


def cmd_classify(args) -> int:
    t = _read_tournament(args.file)
    tree = modular.classifier(t)
    json.dump(classifier_to_json(tree), sys.stdout, indent=2)
    sys.stdout.write("\n")
    return EXIT_OK


def cmd_iso(args) -> int:
    t1 = _read_tournament(args.file1)
    t2 = _read_tournament(args.file2)
    iso = core.find_isomorphism(t1, t2, cap=args.cap)
    if iso is None:
        print("not isomorphic")
        return EXIT_FALSE
    print("isomorphic:", " ".join(f"{v}->{w}" for v, w in enumerate(iso)))
    return EXIT_OK


def cmd_census(args) -> int:
    predicates = [p for p in (args.predicate or "").split(",") if p]
    for p in predicates:
        if p not in PREDICATES:
            raise TournamentError(f"unknown predicate {p!r}")
    if args.unlabeled:
        counts = run_census_unlabeled(args.order, predicates, cap_order=args.cap)
    else:
        counts = run_census(args.order, predicates, jobs=args.jobs, cap_order=args.cap)
    print(f"order={args.order} total={counts['total']}")
    for p in predicates:
        print(f"{p}={counts[p]} of {counts['total']}")
    return EXIT_OK


def cmd_export(args) -> int:
    t = _read_tournament(args.file)
    if args.format == "dot":
        labels = None
        if args.labels:
            with open(args.labels, "r", encoding="utf-8") as fh:
                labels = [line.strip() for line in fh if line.strip()]
            if len(labels) != t.n:
                raise TournamentError("label sidecar size mismatch")
        sys.stdout.write(emit_dot(t, labels))
    else:
        json.dump(
            {"n": t.n, "arcs": [[x, y] for x, y in t.arcs()]},
            sys.stdout,
            indent=2,
        )
        sys.stdout.write("\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tourlab", description="finite tournament laboratory"
    )
    sub = ap.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a tournament as TRN")
    gen.add_argument(
        "generator",
        choices=[
            "double", "rdouble", "lex", "attach", "y2", "n1", "2n0", "2n1",
            "cyclic", "triadic", "dyadic", "pjk", "tower",
        ],
    )
    gen.add_argument("--in", dest="infile", default="-", help="input TRN file")
    gen.add_argument("--base", default="-", help="base TRN file (lex)")
    gen.add_argument("--fiber", default="-", help="fiber TRN file (lex)")
    gen.add_argument("--y", default="-", help="partitioned factor TRN (attach)")
    gen.add_argument("--x", default="-", help="other factor TRN (attach)")
    gen.add_argument("--parts", default="", help="attach: parts of y, e.g. '0|1,2'")
    gen.add_argument("--es", default="", help="attach: E_i sets of x, e.g. '1,3|0,2,4'")
    gen.add_argument("--lo", type=int, default=1)
    gen.add_argument("--hi", type=int, default=3)
    gen.add_argument("--count", type=int, default=3)
    gen.add_argument("--infinity", action="store_true")
    gen.add_argument("--modulus", type=int, default=5)
    gen.add_argument("--game", default="1,2")
    gen.add_argument("--depth", type=int, default=2)
    gen.add_argument("--epsilon", default="")
    gen.add_argument("--j", type=int, default=1)
    gen.add_argument("--k", type=int, default=1)
    gen.add_argument("--spec", default="base=C3; fibers=C3")
    gen.set_defaults(func=cmd_gen)

    an = sub.add_parser("analyze", help="report predicates of a TRN file")
    an.add_argument("file")
    an.add_argument("--props", default="")
    an.add_argument("--json", action="store_true")
    an.set_defaults(func=cmd_analyze)

    cl = sub.add_parser("classify", help="emit the classifier tree as JSON")
    cl.add_argument("file")
    cl.set_defaults(func=cmd_classify)

    iso = sub.add_parser("iso", help="isomorphism test (exit 0 iff isomorphic)")
    iso.add_argument("file1")
    iso.add_argument("file2")
    iso.add_argument("--cap", type=int, default=12)
    iso.set_defaults(func=cmd_iso)

    cen = sub.add_parser("census", help="stream all labeled tournaments of an order")
    cen.add_argument("--order", type=int, required=True)
    cen.add_argument("--predicate", default="")
    cen.add_argument("--jobs", type=int, default=1)
    cen.add_argument("--cap", type=int, default=8)
    group = cen.add_mutually_exclusive_group()
    group.add_argument("--labeled", dest="unlabeled", action="store_false")
    group.add_argument("--unlabeled", dest="unlabeled", action="store_true")
    cen.set_defaults(func=cmd_census, unlabeled=False)

    ex = sub.add_parser("export", help="export as DOT or JSON")
    ex.add_argument("file")
    ex.add_argument("--format", choices=["dot", "json"], default="dot")
    ex.add_argument("--labels", default="")
    ex.set_defaults(func=cmd_export)

    return ap


def main(argv: Optional[list[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except CapExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (TournamentError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
