"""Command-line front end (``gbs``).

Exit codes: 0 success or isomorphic, 1 not isomorphic, 2 unsupported input,
3 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .angles import (
    cone_relation,
    enumerate_limit_directions,
    enumerate_rank1_classes,
    subgroup_class,
)
from .config import (
    TwinRoots,
    degeneracy,
    extract_configuration,
    find_root,
    tree_shape,
    twin_of,
)
from .decide import decide_isomorphic
from .errors import GbsError, ParseError, UnsupportedGraph
from .exponents import ExpVector, format_monomial, parse_monomial, union_primes
from .graph import GbsGraph, load, move_to_json, vector_to_json
from .oracle import ALL_MOVES, bfs_reachable, frontier_lines, oracle_isomorphic
from .sequence import LimitAngle, RootSequence, limit_directions, root_sequence
from .svg import render

EXIT_OK, EXIT_NO, EXIT_UNSUPPORTED, EXIT_INPUT = 0, 1, 2, 3


class _Usage(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # bad flags are input errors, not "unsupported"
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _vec(text: str) -> ExpVector:
    try:
        return parse_monomial(text, allow_negative=True)
    except ParseError as exc:
        raise _Usage(f"bad vector {text!r}: {exc}") from None


def _pretty(v: ExpVector) -> str:
    return format_monomial(v, sep="·")


def _emit(args, data, text: str) -> None:
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print(text)


def _config_json(c) -> dict:
    return {k: vector_to_json(getattr(c, k)) for k in ("a1", "a2", "x1", "x2")}


def _root_sequence_of(g: GbsGraph) -> RootSequence:
    c = extract_configuration(g).config
    found = find_root(c)
    if isinstance(found, TwinRoots) or twin_of(found.root) is not None:
        raise UnsupportedGraph("twin roots have no sequence of roots")
    return root_sequence(found.root)


# ---- commands ------------------------------------------------------------------

def cmd_decide(args) -> int:
    v = decide_isomorphic(load(args.first), load(args.second), up_to_sign=args.up_to_sign)
    lines = [f"{v.status.replace('_', ' ')}: {v.reason}"]
    if args.trace and v.isomorphic:
        lines += [f"  {i + 1}. {json.dumps(move_to_json(m), sort_keys=True)}" for i, m in enumerate(v.trace)]
    _emit(args, v.to_json(with_trace=args.trace or args.json), "\n".join(lines))
    return v.exit_code


def cmd_root(args) -> int:
    emb = extract_configuration(load(args.graph))
    found = find_root(emb.config)
    if isinstance(found, TwinRoots):
        data = {"twin": True, "roots": [
            {"root": _config_json(found.r), "path": found.path_r},
            {"root": _config_json(found.q), "path": found.path_q},
        ]}
        text = f"twin roots\n  {found.r} via {found.path_r or 'ε'}\n  {found.q} via {found.path_q or 'ε'}"
    else:
        shape = tree_shape(found.root)
        data = {"twin": twin_of(found.root) is not None, "root": _config_json(found.root),
                "path": found.path, "shape": str(shape)}
        text = f"root {found.root}\nson path {found.path or 'ε'}\ntree shape {shape}"
    _emit(args, data, text)
    return EXIT_OK


def _tail_json(t) -> dict:
    return {"kind": t.kind, "step": vector_to_json(t.step) if t.step is not None else None, "base": t.base}


def cmd_sequence(args) -> int:
    seq = _root_sequence_of(load(args.graph))
    cols = seq.window(-args.left - args.anchor, args.right - args.anchor)
    primes = union_primes(seq.a1, seq.a2, *[v for _, v, _ in cols if v is not None])
    data = {
        "anchor": args.anchor,
        "columns": [{"index": i + args.anchor, "vector": vector_to_json(v) if v is not None else None, "k": k}
                    for i, v, k in cols],
        "left_tail": _tail_json(seq.left),
        "right_tail": _tail_json(seq.right),
    }
    cell = lambda x: "·" if x is None else str(x)  # noqa: E731
    rows = [["i"] + [str(i + args.anchor) for i, _, _ in cols]]
    for p in primes:
        rows.append([str(p)] + [cell(None if v is None else v.get(p)) for _, v, _ in cols])
    if any(v is not None and v.parity for _, v, _ in cols):
        rows.append(["sign"] + [cell(None if v is None else ("-" if v.parity else "+")) for _, v, _ in cols])
    rows.append(["k"] + [cell(k) for _, _, k in cols])
    width = max(len(c) for r in rows for c in r)
    text = "\n".join(" ".join(c.rjust(width) for c in r) for r in rows)
    _emit(args, data, text)
    return EXIT_OK


def _diagnose(seq: RootSequence) -> str:
    shapes = sorted({str(tree_shape(r)) for _, r in seq.core_roots()})
    return "no root of the sequence has a full-tree son (tree shapes: " + ", ".join(shapes) + ")"


def cmd_limits(args) -> int:
    seq = _root_sequence_of(load(args.graph))
    lim = limit_directions(seq)
    if lim is None:
        why = _diagnose(seq)
        _emit(args, {"defined": False, "reason": why}, f"limit directions not defined: {why}")
    else:
        _emit(args, {"defined": True, "minus": vector_to_json(lim.minus), "plus": vector_to_json(lim.plus)},
              f"l⁻={_pretty(lim.minus)}, l⁺={_pretty(lim.plus)}")
    return EXIT_OK


def _family_text(fam, primes) -> str:
    base, step = fam.base_vector, fam.step_vector
    parts = []
    for p in primes:
        b, s = base.get(p), step.get(p)
        parts.append(f"{s}ℓ+{b}" if s else str(b))
    rng = "ℓ ≥ 0" if fam.count is None else f"0 ≤ ℓ < {fam.count}"
    return f"({', '.join(parts)}), {rng}"


def cmd_enumerate(args) -> int:
    a1, a2, h1, h2 = (_vec(x) for x in (args.a1, args.a2, args.h1, args.h2))
    fams = enumerate_limit_directions(a1, a2, h1, h2)
    primes = union_primes(a1, a2, h1, h2)
    data, lines = [], [f"primes {', '.join(map(str, primes))}"]
    for fam in fams:
        members = fam.instantiate(args.max)
        data.append({
            "basis_base": list(fam.base), "basis_step": list(fam.step), "count": fam.count,
            "base": vector_to_json(fam.base_vector), "step": vector_to_json(fam.step_vector),
            "members": [vector_to_json(m) for m in members],
        })
        lines.append(f"{_family_text(fam, primes)}: {len(members)} member(s) up to exponent {args.max}")
    _emit(args, {"primes": list(primes), "families": data}, "\n".join(lines))
    return EXIT_OK


def cmd_classes(args) -> int:
    a1, a2, h1, h2 = (_vec(x) for x in (args.a1, args.a2, args.h1, args.h2))
    hclass = subgroup_class(h1, h2)
    if hclass.kind != "rank1":
        raise UnsupportedGraph(f"the vectors span a {hclass.kind} subgroup, expected rank one")
    classes = enumerate_rank1_classes(a1, a2, hclass, args.bound)
    data, lines = [], [f"{len(classes)} class(es), z = {_pretty(hclass.z)}"]
    for i, cls in enumerate(classes, 1):
        if cls.sequence is None:
            data.append({"twin": True, "roots": [_config_json(t) for t in cls.twins]})
            lines.append(f"{i}. twin roots " + ", ".join(str(t) for t in cls.twins))
            continue
        seq = cls.sequence
        lim = limit_directions(seq)
        entry = {"twin": False, "root": _config_json(seq.root(0)),
                 "core": [vector_to_json(v) for v in seq.core],
                 "left_tail": _tail_json(seq.left), "right_tail": _tail_json(seq.right),
                 "limits": None if lim is None else [vector_to_json(lim.minus), vector_to_json(lim.plus)]}
        data.append(entry)
        core = ", ".join(_pretty(v) for v in seq.core)
        tails = f"left {seq.left.kind}, right {seq.right.kind}"
        lim_text = "" if lim is None else f"; l⁻={_pretty(lim.minus)}, l⁺={_pretty(lim.plus)}"
        lines.append(f"{i}. core {core} ({tails}){lim_text}")
    _emit(args, {"z": vector_to_json(hclass.z), "torsion": hclass.torsion, "classes": data}, "\n".join(lines))
    return EXIT_OK


def cmd_oracle(args) -> int:
    moves = [m.strip() for m in args.moves.split(",") if m.strip()]
    unknown = set(moves) - ALL_MOVES
    if unknown:
        raise _Usage(f"unknown move kind(s): {', '.join(sorted(unknown))}")
    g = load(args.graph)
    if args.target:
        res = oracle_isomorphic(g, load(args.target), args.bound, moves, args.max_states)
        data = {"found": res.found, "truncated": res.truncated,
                "trace": [move_to_json(m) for m in res.trace]}
        if res.found:
            text = f"yes: {len(res.trace)} move(s)"
        elif res.truncated:
            text = "no within bound (not a proof of non-isomorphism)"
        else:
            text = "no: the reachable set is exhausted"
        _emit(args, data, text)
        return EXIT_OK if res.found else EXIT_NO
    f = bfs_reachable(g, moves, args.bound, args.max_states)
    for line in frontier_lines(f):
        print(json.dumps(line, sort_keys=True))
    print(f"{len(f)} state(s), truncated={str(f.truncated).lower()}", file=sys.stderr)
    return EXIT_OK


def _angle_of(a1, a2, h1, h2, directions):
    # consecutive directions in angular order bound the cones of the atlas
    import math
    primes = union_primes(a1, a2, h1, h2)
    key = lambda v: math.atan2(v.get(primes[1]), v.get(primes[0]))  # noqa: E731
    ordered = sorted(set(directions), key=key)
    return [LimitAngle(b, a) for a, b in zip(ordered, ordered[1:])]


def cmd_plot(args) -> int:
    g = load(args.graph)
    c = extract_configuration(g).config
    if degeneracy(c) is not None:
        raise UnsupportedGraph("degenerate configuration has no limit angle")
    primes = union_primes(c.a1, c.a2, c.x1, c.x2)
    if len(primes) != 2:
        raise UnsupportedGraph(f"plotting needs exactly two primes, found {len(primes)}")
    hclass = subgroup_class(c.x1, c.x2)
    if hclass.kind != "rank2":
        raise UnsupportedGraph("plotting needs vectors spanning a rank-two subgroup")
    directions = []
    for fam in enumerate_limit_directions(c.a1, c.a2, c.x1, c.x2):
        directions += fam.instantiate(args.max)
    own = None
    try:
        own = limit_directions(_root_sequence_of(g))
    except GbsError:
        pass
    cones = _angle_of(c.a1, c.a2, c.x1, c.x2, directions) if args.atlas else []
    if own is not None:
        directions += [own.minus, own.plus]
        if not any(cone_relation(own, k) == "coincide" for k in cones):
            cones.append(own)
    svg = render(primes, directions, cones, highlight=own, vectors=[c.x1, c.x2],
                 title=f"limit angles, primes {primes[0]} and {primes[1]}")
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(svg)
    print(f"wrote {args.output}")
    return EXIT_OK


# ---- parser -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="gbs", description="Isomorphism of one-vertex two-loop GBS graphs.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, func, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="machine-readable output")
        return p

    p = add("decide", cmd_decide, "decide whether two graphs are isomorphic")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--up-to-sign", action="store_true", help="also try all sign changes")
    p.add_argument("--trace", action="store_true", help="print the move trace")

    p = add("root", cmd_root, "root configuration and son path")
    p.add_argument("graph")

    p = add("sequence", cmd_sequence, "table of the sequence of roots")
    p.add_argument("graph")
    p.add_argument("--left", type=int, default=2, help="lowest index shown, counted left of 0")
    p.add_argument("--right", type=int, default=5, help="highest index shown")
    p.add_argument("--anchor", type=int, default=1, help="index printed for the first vector of the root")

    p = add("limits", cmd_limits, "limit directions of the sequence of roots")
    p.add_argument("graph")

    for name, func, help_ in (("enumerate", cmd_enumerate, "realizable limit directions"),
                              ("classes", cmd_classes, "rank-one isomorphism classes")):
        p = add(name, func, help_)
        for flag in ("--a1", "--a2", "--h1", "--h2"):
            p.add_argument(flag, required=True)
        if name == "enumerate":
            p.add_argument("--max", type=int, default=100, help="largest exponent listed per family")
        else:
            p.add_argument("--bound", type=int, default=None, help="largest multiple of z tried")

    p = add("oracle", cmd_oracle, "brute-force exploration of the moves")
    p.add_argument("graph")
    p.add_argument("target", nargs="?")
    p.add_argument("--bound", type=int, default=30)
    p.add_argument("--moves", default="slide,swap,connection")
    p.add_argument("--max-states", type=int, default=1_000_000)

    p = add("plot", cmd_plot, "SVG picture of the limit angles")
    p.add_argument("graph")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--atlas", action="store_true", help="draw every cone, not only the graph's own")
    p.add_argument("--max", type=int, default=100)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, _Usage, OSError) as exc:
        print(f"gbs: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except GbsError as exc:
        print(f"gbs: unsupported: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


def run(argv: Sequence[str] | None = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
