"""Command-line interface.

Exit codes: 0 success / property holds, 1 property violated, 2 invalid
input, 3 search budget exhausted without a verdict.
"""
from __future__ import annotations

import argparse
import json
import sys

from thrackle.core_map import (
    face_labels,
    parse,
    serialize,
    signed_crossing_sums,
    verify_thrackle,
)
from thrackle.crossvec import ConsistencyError, table_vo
from thrackle.musquash import cycle_order, standard_musquash, verify_musquash

OK, VIOLATED, INVALID, UNVERDICTED = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str):
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise InputError(str(exc)) from None
    return parse(text)


def _write(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _odd(value: str) -> int:
    try:
        n = int(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {value!r}") from None
    if n < 3 or n % 2 == 0:
        raise argparse.ArgumentTypeError(f"n must be an odd integer >= 3, got {n}")
    return n


def _cycle(d, given):
    if given:
        return list(given)
    order = cycle_order(d)
    if order is None:
        raise InputError("the drawing is not a single cycle; pass --cycle")
    return [e for e, _ in order]


# ---------------------------------------------------------------------------
# subcommands


def cmd_gen(a) -> int:
    _write(serialize(standard_musquash(a.n)) + "\n", a.out)
    return OK


def cmd_verify(a) -> int:
    d = _read(a.file)
    rep = verify_thrackle(d)
    print(f"edges: {len(d.edges)}  vertices: {d.n_vertices}  crossings: {d.n_crossings}")
    if rep.ok:
        print("thrackle: yes")
    else:
        print(f"thrackle: no ({len(rep.violations)} pairs)")
        for (e, f), count, kinds in rep.violations[:20]:
            print(f"  edges {e},{f} meet {count} times {list(kinds)}")
    mus = verify_musquash(d)
    if mus:
        print(f"standard musquash: {len(d.edges)}")
    if not rep.ok or (a.musquash and not mus):
        return VIOLATED
    return OK


def cmd_labels(a) -> int:
    d = _read(a.file)
    lab = face_labels(d, _cycle(d, a.cycle))
    census = lab.census()
    print(f"faces: {len(lab.labels)}")
    print("census: " + ", ".join(f"{k}:{v}" for k, v in census.items()))
    if a.verbose:
        for f, v in lab.labels.items():
            print(f"  face {f}: {v}")
    return OK


def _middle_path(d, k):
    if not 0 <= k < len(d.edges):
        raise InputError(f"no edge {k}")
    x, y = d.edges[k]

    def other(v, e):
        inc = [f for f, uv in enumerate(d.edges) if v in uv and f != e]
        if len(inc) != 1:
            raise InputError(f"vertex {v} has degree {len(inc) + 1}; pass --path")
        u, w = d.edges[inc[0]]
        return w if u == v else u

    return (other(x, k), x, y, other(y, k))


def cmd_remove_edge(a) -> int:
    from thrackle.surgery import remove_edge

    d = _read(a.file)
    path = tuple(a.path) if a.path else _middle_path(d, a.edge)
    _write(serialize(remove_edge(d, path, check=not a.force)) + "\n", a.out)
    return OK


def cmd_insert_edge(a) -> int:
    from thrackle.surgery import insert_edge

    d = _read(a.file)
    _write(serialize(insert_edge(d, a.edge, a.at, a.side)) + "\n", a.out)
    return OK


def cmd_table(a) -> int:
    if a.which == "1":
        for s in ([a.s] if a.s else range(1, (a.n - 1) // 2 + 1)):
            print(f"n={a.n} s={s}")
            for row in table_vo(a.n, s):
                j = "-" if row.j is None else row.j
                print(f"  {j!s:>3}  {row.vector}  O1={row.o1} O0={row.o0}")
        return OK
    from thrackle.search.tables import TABLE2_SURVIVORS, reproduce_table2, reproduce_v5u

    if a.n == 5:
        f = reproduce_v5u()
        print(f"V(w) = {f.w}")
        for i, k, v in f.survivors:
            print(f"  listed #{i + 1} shifted left by {k}: {v}")
        print("distinct V(u): " + ", ".join(map(str, f.vectors)))
        return OK if len(f.vectors) == 2 else VIOLATED
    if a.n != 7:
        raise InputError("the case table exists for n = 7 and n = 5 only")
    t = reproduce_table2(check=False)
    print(t.as_text())
    return OK if t.names == TABLE2_SURVIVORS else VIOLATED


def cmd_search(a) -> int:
    from thrackle.search.campaigns import run_campaign, run_manifest

    if a.manifest:
        rep = run_manifest(a.manifest)
    else:
        if not a.campaign:
            raise InputError("pass --campaign or --manifest")
        rep = run_campaign(a.campaign, budget=a.budget, workers=a.workers,
                           certificates=a.certificates, n=a.n, m=a.m, k=a.k)
        if a.report:
            _write(json.dumps(rep.to_json(), indent=2, ensure_ascii=False) + "\n", a.report)
    print(json.dumps(rep.to_json(), indent=2, ensure_ascii=False))
    return rep.exit_code


def cmd_render(a) -> int:
    from thrackle.render import SvgOptions, render

    d = _read(a.file)
    opts = SvgOptions(size=a.size, stroke_width=a.stroke_width, labels=a.labels,
                      cycle=tuple(a.cycle) if a.cycle else None)
    _write(render(d, opts), a.out)
    return OK


def cmd_sums(a) -> int:
    d = _read(a.file)
    sums = signed_crossing_sums(d, a.cycle or None)
    for e, v in sums.items():
        print(f"edge {e}: {v}")
    values = set(sums.values())
    if len(values) == 1:
        print(f"common value: {values.pop()}")
    return OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="thrackle", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="write the standard n-musquash")
    g.add_argument("--n", type=_odd, required=True)
    g.add_argument("--out")
    g.set_defaults(func=cmd_gen)

    v = sub.add_parser("verify", help="check that every pair of edges meets once")
    v.add_argument("file", nargs="?", default="-")
    v.add_argument("--musquash", action="store_true", help="also require a standard musquash")
    v.set_defaults(func=cmd_verify)

    lb = sub.add_parser("labels", help="face labels with respect to a cycle")
    lb.add_argument("file", nargs="?", default="-")
    lb.add_argument("--cycle", type=int, nargs="+", help="edge ids in walk order")
    lb.add_argument("-v", "--verbose", action="store_true")
    lb.set_defaults(func=cmd_labels)

    r = sub.add_parser("remove-edge", help="replace the 3-path around an edge by one edge")
    r.add_argument("file", nargs="?", default="-")
    grp = r.add_mutually_exclusive_group(required=True)
    grp.add_argument("--edge", type=int, help="middle edge of the 3-path")
    grp.add_argument("--path", type=int, nargs=4, metavar="V", help="vertices v1 v2 v3 v4")
    r.add_argument("--force", action="store_true", help="skip the empty-triangle guard")
    r.add_argument("--out")
    r.set_defaults(func=cmd_remove_edge)

    ins = sub.add_parser("insert-edge", help="replace an edge by a 3-path")
    ins.add_argument("file", nargs="?", default="-")
    ins.add_argument("--edge", type=int, required=True)
    ins.add_argument("--at", type=int, default=0, help="crossings before the new crossing")
    ins.add_argument("--side", type=int, choices=(1, -1), default=1)
    ins.add_argument("--out")
    ins.set_defaults(func=cmd_insert_edge)

    t = sub.add_parser("table", help="crossing-vector tables")
    t.add_argument("--which", choices=("1", "2"), required=True)
    t.add_argument("--n", type=_odd, default=7)
    t.add_argument("--s", type=int)
    t.set_defaults(func=cmd_table)

    s = sub.add_parser("search", help="run a search campaign")
    s.add_argument("--campaign", choices=("no55", "two-path", "figure-eight", "lemma-1edge",
                                          "table2"))
    s.add_argument("--manifest", help="JSON campaign manifest")
    s.add_argument("--n", type=_odd)
    s.add_argument("--m", type=int, choices=(3, 5))
    s.add_argument("--k", type=int, help="path length for two-path")
    s.add_argument("--budget", type=int, help="node cap")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report")
    s.add_argument("--certificates", help="directory for completion documents")
    s.set_defaults(func=cmd_search)

    rd = sub.add_parser("render", help="write an SVG picture")
    rd.add_argument("file", nargs="?", default="-")
    rd.add_argument("--out", required=True)
    rd.add_argument("--labels", action="store_true")
    rd.add_argument("--cycle", type=int, nargs="+")
    rd.add_argument("--size", type=int, default=400)
    rd.add_argument("--stroke-width", type=float, default=1.5)
    rd.set_defaults(func=cmd_render)

    sm = sub.add_parser("sums", help="signed crossing sums per edge")
    sm.add_argument("file", nargs="?", default="-")
    sm.add_argument("--cycle", type=int, nargs="+")
    sm.set_defaults(func=cmd_sums)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    from thrackle.surgery import RemovalBlocked

    try:
        return args.func(args)
    except RemovalBlocked as exc:
        print(f"blocked: {exc}", file=sys.stderr)
        return VIOLATED
    except ConsistencyError as exc:
        print(f"inconsistency: {exc}", file=sys.stderr)
        return VIOLATED
    except (InputError, ValueError) as exc:
        # drawing, labeling, parameter and surgery errors all derive from ValueError
        print(f"error: {exc}", file=sys.stderr)
        return INVALID


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
