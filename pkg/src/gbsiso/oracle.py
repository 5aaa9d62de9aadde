"""Brute-force exploration of the move system, used as ground truth in tests.

States are graphs up to renaming, keyed by ``canonical_key``.  Each visited
state stores one shortest trace from the seed (as parent pointers), and the
representative graph that trace actually produces.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator

from .errors import FrontierOverflow, MoveError, SearchLimit
from .exponents import ExpVector
from .graph import (
    AffinePoint,
    Connection,
    GbsGraph,
    MoveRecord,
    Oriented,
    Relabeling,
    Slide,
    Swap,
    apply_move,
    canonical_key,
    correspondence,
    invert_move,
    move_sort_key,
)

ALL_MOVES = frozenset({"slide", "swap", "connection"})
DEFAULT_MAX_STATES = 1_000_000


def _least_power(step: ExpVector, first: ExpVector) -> int | None:
    # least k >= 1 with k*step - first >= 0 on every prime
    k = 1
    for p, f in first.exps:
        if f <= 0:
            continue
        s = step.get(p)
        if s <= 0:
            return None
        k = max(k, -(-f // s))
    return k


def _connections(g: GbsGraph, bound: int | None) -> tuple[list[Connection], bool]:
    out, cut = [], False
    for lp in g.orientations():
        v = g.origin(lp)
        if g.terminus(lp) != v:
            continue
        n = g.colabel(lp)
        step = g.label(lp) - n
        if not step.is_nonneg():
            continue
        for d in g.orientations():
            if d.edge == lp.edge or g.terminus(d) != v:
                continue
            first = g.label(d) - n
            if not first.is_nonneg():
                continue
            k0 = _least_power(step, first)
            if k0 is None:
                continue
            if not step.exps:
                # only the parity can change with k
                out += [Connection(d, lp, k0), Connection(d, lp, k0 + 1)]
                continue
            if bound is None:
                raise SearchLimit("unbounded family of connections")
            k = k0
            while True:
                m = Connection(d, lp, k)
                if apply_move(g, m).size() > bound:
                    cut = True
                    break
                out.append(m)
                k += 1
    return out, cut


def applicable_moves(g: GbsGraph, kinds: Iterable[str] = ALL_MOVES, bound: int | None = None) -> tuple[list[MoveRecord], bool]:
    """Moves applicable to ``g`` in a fixed order, and whether connection
    powers were cut off by the bound."""
    kinds = set(kinds)
    moves: list[MoveRecord] = []
    cut = False
    ors = g.orientations()
    if "slide" in kinds:
        for d in ors:
            for a in ors:
                if d.edge != a.edge and g.terminus(d) == g.origin(a) and (g.label(d) - g.colabel(a)).is_nonneg():
                    moves.append(Slide(d, a))
    if "swap" in kinds:
        for e1 in ors:
            for e2 in ors:
                if e1.edge == e2.edge:
                    continue
                m = Swap(e1, e2)
                try:
                    apply_move(g, m)
                except MoveError:
                    continue
                moves.append(m)
    if "connection" in kinds:
        found, cut = _connections(g, bound)
        moves += found
    moves.sort(key=move_sort_key)
    return moves, cut


@dataclass
class Frontier:
    """Everything reachable from ``seed`` within ``bound``."""
    seed: GbsGraph
    bound: int | None
    kinds: frozenset = ALL_MOVES
    max_states: int = DEFAULT_MAX_STATES
    truncated: bool = False
    parents: dict = field(default_factory=dict)   # key -> (parent key, move) or None
    graphs: dict = field(default_factory=dict)    # key -> representative graph
    layer: list = field(default_factory=list)

    def __post_init__(self):
        k = canonical_key(self.seed)
        self.parents[k] = None
        self.graphs[k] = self.seed
        self.layer = [k]

    def __contains__(self, key) -> bool:
        return key in self.parents

    def __len__(self) -> int:
        return len(self.parents)

    @property
    def exhausted(self) -> bool:
        return not self.layer

    def keys(self):
        return self.parents.keys()

    def trace(self, key) -> list[MoveRecord]:
        out = []
        while self.parents[key] is not None:
            key, m = self.parents[key]
            out.append(m)
        return out[::-1]

    def expand(self) -> list:
        """Expand one BFS layer; returns the keys discovered."""
        new = []
        for k in self.layer:
            g = self.graphs[k]
            moves, cut = applicable_moves(g, self.kinds, self.bound)
            self.truncated |= cut
            for m in moves:
                h = apply_move(g, m)
                if self.bound is not None and h.size() > self.bound:
                    self.truncated = True
                    continue
                hk = canonical_key(h)
                if hk in self.parents:
                    continue
                if len(self.parents) >= self.max_states:
                    raise FrontierOverflow(f"more than {self.max_states} states")
                self.parents[hk] = (k, m)
                self.graphs[hk] = h
                new.append(hk)
        self.layer = new
        return new


def bfs_reachable(g: GbsGraph, moves: Iterable[str] = ALL_MOVES, bound: int | None = None,
                  max_states: int = DEFAULT_MAX_STATES) -> Frontier:
    """Full breadth-first closure of ``g`` under the chosen moves."""
    f = Frontier(g, bound, frozenset(moves), max_states)
    while not f.exhausted:
        f.expand()
    return f


@dataclass(frozen=True)
class OracleResult:
    found: bool
    trace: tuple[MoveRecord, ...] = ()
    relabeling: Relabeling | None = None   # from the replayed graph to the target
    truncated: bool = False                # False means a negative answer is exhaustive

    @property
    def label(self) -> str:
        return "yes" if self.found else "no within bound"


def _join(fa: Frontier, fb: Frontier, key, target: GbsGraph) -> OracleResult:
    forward = fa.trace(key)
    back = fb.trace(key)
    rho = correspondence(fb.graphs[key], fa.graphs[key])
    if rho is None:
        return None
    tail = [rho.move(invert_move(m)) for m in reversed(back)]
    trace = tuple(forward + tail)
    g = fa.graphs[key]
    for m in tail:
        g = apply_move(g, m)
    return OracleResult(True, trace, correspondence(g, target), False)


def oracle_isomorphic(g1: GbsGraph, g2: GbsGraph, bound: int | None,
                      moves: Iterable[str] = ALL_MOVES, max_states: int = DEFAULT_MAX_STATES) -> OracleResult:
    """Bidirectional search for a move sequence from ``g1`` to ``g2``.

    A negative result is only conclusive when ``truncated`` is False.
    """
    kinds = frozenset(moves)
    fa = Frontier(g1, bound, kinds, max_states)
    fb = Frontier(g2, bound, kinds, max_states)
    k2 = canonical_key(g2)
    if k2 in fa:
        got = _join(fa, fb, k2, g2)
        if got is not None:
            return got
    while True:
        # a side whose closure is complete and untouched by the bound settles it
        for f in (fa, fb):
            if f.exhausted and not f.truncated:
                return OracleResult(False, truncated=False)
        if fa.exhausted and fb.exhausted:
            return OracleResult(False, truncated=True)
        grow_a = not fa.exhausted and (fb.exhausted or len(fa.layer) <= len(fb.layer))
        side, other = (fa, fb) if grow_a else (fb, fa)
        for k in side.expand():
            if k in other:
                got = _join(fa, fb, k, g2)
                if got is not None:
                    return got


def conjugacy_search(g: GbsGraph, p: AffinePoint, q: AffinePoint, depth: int) -> list[tuple[Oriented, ExpVector]] | None:
    """Shortest affine path from p to q of length at most ``depth``, as
    (oriented edge, translation) steps; None when none is found."""
    seen = {p: None}
    queue = deque([(p, 0)])
    while queue:
        cur, d = queue.popleft()
        if cur == q:
            path = []
            while seen[cur] is not None:
                prev, o, w = seen[cur]
                path.append((o, w))
                cur = prev
            return path[::-1]
        if d == depth:
            continue
        for o in g.orientations():
            if g.origin(o) != cur.vertex:
                continue
            w = cur.coord - g.colabel(o)
            if not w.is_nonneg():
                continue
            nxt = AffinePoint(g.terminus(o), g.label(o) + w)
            if nxt not in seen:
                seen[nxt] = (cur, o, w)
                queue.append((nxt, d + 1))
    return None


def frontier_lines(f: Frontier) -> Iterator[dict]:
    """One JSON-ready record per visited state."""
    from .graph import move_to_json, to_json
    for k in f.keys():
        yield {"graph": to_json(f.graphs[k]), "trace": [move_to_json(m) for m in f.trace(k)]}
