"""Isomorphism decision for one-vertex graphs with two loops.

Both graphs are read as configurations.  Non-degenerate configurations are
moved to their roots by slides; roots of one isomorphism class form a single
sequence linked by connections (or, for twin roots, a set of at most four).
Every positive answer carries a move trace that replays from the first graph
to a graph that becomes the second after renaming edges.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .config import (
    Configuration,
    Embedding,
    TwinPair,
    TwinRoots,
    UniqueRoot,
    degeneracy,
    embeddings,
    father,
    father_move,
    find_root,
    iterate_sons,
    son_move,
    twin_of,
)
from .errors import GbsError, SearchLimit, UnsupportedGraph
from .graph import (
    Connection,
    EdgeSignChange,
    GbsGraph,
    MoveRecord,
    Oriented,
    Relabeling,
    Slide,
    VertexSignChange,
    apply_move,
    canonical_key,
    correspondence,
    move_to_json,
)
from .sequence import next_root, prev_root, root_sequence

ISOMORPHIC, NOT_ISOMORPHIC, UNSUPPORTED = "isomorphic", "not_isomorphic", "unsupported"
_EXIT = {ISOMORPHIC: 0, NOT_ISOMORPHIC: 1, UNSUPPORTED: 2}


@dataclass(frozen=True)
class Verdict:
    status: str
    reason: str = ""
    trace: tuple[MoveRecord, ...] = ()
    # renaming taking the replayed graph onto the second input
    relabeling: Relabeling | None = None

    @property
    def isomorphic(self) -> bool:
        return self.status == ISOMORPHIC

    @property
    def exit_code(self) -> int:
        return _EXIT[self.status]

    def to_json(self, with_trace: bool = True) -> dict:
        out = {"verdict": self.status, "reason": self.reason}
        if self.status == ISOMORPHIC:
            if with_trace:
                out["trace"] = [move_to_json(m) for m in self.trace]
            if self.relabeling is not None:
                out["relabeling"] = self.relabeling.to_json()
        return out


def _read(g: GbsGraph, first: Oriented, second: Oriented) -> Embedding:
    a1, a2 = g.colabel(first), g.colabel(second)
    c = Configuration(a1, a2, g.label(first) - a1, g.label(second) - a2)
    return Embedding(c, first, second)


class _Walk:
    """A graph together with its current reading as a configuration, and the
    moves applied so far."""

    def __init__(self, g: GbsGraph, emb: Embedding):
        self.g = g
        self.emb = emb
        self.moves: list[MoveRecord] = []

    @property
    def config(self) -> Configuration:
        return self.emb.config

    def apply(self, m: MoveRecord, first: Oriented, second: Oriented) -> None:
        self.g = apply_move(self.g, m)
        self.moves.append(m)
        self.emb = _read(self.g, first, second)

    def son(self, i: int) -> None:
        self.apply(son_move(self.emb, i), self.emb.first, self.emb.second)

    def sons(self, path: str) -> None:
        for ch in path:
            self.son(int(ch))

    def father(self, i: int) -> None:
        self.apply(father_move(self.emb, i), self.emb.first, self.emb.second)

    def climb(self, path: str) -> None:
        """Undo the son path ``path`` that leads from a root to here."""
        for ch in reversed(path):
            self.father(int(ch))

    def connect_next(self) -> None:
        nxt = next_root(self.config)
        e = self.emb
        self.apply(Connection(e.first, e.second, nxt.power), e.second, e.first)
        self._expect(nxt.root)

    def connect_prev(self) -> None:
        prv = prev_root(self.config)
        e = self.emb
        self.apply(Connection(e.second, e.first, prv.power), e.second, e.first)
        self._expect(prv.root)

    def _expect(self, c: Configuration) -> None:
        if self.config != c:
            raise GbsError(f"move trace drifted: expected {c}, got {self.config}")


def _finish(walk: _Walk, target: GbsGraph, reason: str) -> "Verdict":
    rho = correspondence(walk.g, target)
    if rho is None:
        raise GbsError("assembled trace does not reach the target graph")
    return Verdict(ISOMORPHIC, reason, tuple(walk.moves), rho)


def _root_of(c: Configuration) -> tuple[Configuration, str]:
    found = find_root(c)
    if isinstance(found, UniqueRoot):
        return found.root, found.path
    return found.r, found.path_r


def _twins(c: Configuration) -> TwinPair | None:
    found = find_root(c)
    if isinstance(found, TwinRoots):
        return twin_of(found.r)
    return twin_of(found.root)


# ---- moves between the roots of a twin pair --------------------------------

def _twin_hop(walk: _Walk, pair_lam: int) -> None:
    """From an R-pattern root to its Q partner (or back when already at Q)."""
    c = walk.config
    hop = "1" * (pair_lam - 1) + "2"
    if iterate_sons(c, "1") is not None and _is_r_pattern(c):
        walk.son(1)
        walk.climb(hop)
    else:
        walk.sons(hop)
        walk.father(1)


def _is_r_pattern(c: Configuration) -> bool:
    return (c.head1 - c.a2).is_parity_only() and not c.x2.is_nonneg()


def _parity_hop(walk: _Walk) -> None:
    """Slide that moves a twin root onto the pair shifted by the sign element,
    followed by the climb back to a root."""
    e = walk.emb
    if _is_r_pattern(walk.config):
        walk.apply(Slide(e.second.reversed(), e.first.reversed()), e.second, e.first.reversed())
    else:
        walk.apply(Slide(e.first.reversed(), e.second.reversed()), e.second.reversed(), e.first)
    _, path = _root_of(walk.config)
    walk.climb(path)


def _decide_twins(walk: _Walk, pair: TwinPair, target_root: Configuration, target_path: str,
                  target: GbsGraph) -> Verdict:
    members = pair.members()
    if target_root not in members:
        return Verdict(NOT_ISOMORPHIC, "root is not one of the twin roots")
    # at most four roots: try hop sequences until the target root is reached
    for plan in ("", "t", "p", "tp", "pt", "tpt"):
        trial = _Walk(walk.g, walk.emb)
        trial.moves = list(walk.moves)
        try:
            for step in plan:
                if step == "t":
                    _twin_hop(trial, pair.lam)
                else:
                    _parity_hop(trial)
        except GbsError:
            continue
        if trial.config == target_root:
            trial.sons(target_path)
            return _finish(trial, target, "twin roots")
    raise GbsError("no slide path between twin roots")


# ---- main entry --------------------------------------------------------------

def _matching_embedding(c1: Configuration, g2: GbsGraph) -> Embedding | None:
    exact = loose = None
    for emb in embeddings(g2):
        for cand in (emb, emb.swapped()):
            c = cand.config
            if c.a1.same_exps(c1.a1) and c.a2.same_exps(c1.a2):
                if c.a1 == c1.a1 and c.a2 == c1.a2:
                    exact = exact or cand
                loose = loose or cand
    return exact or loose


def _decide_degenerate(g1: GbsGraph, g2: GbsGraph) -> Verdict:
    from .oracle import oracle_isomorphic
    try:
        got = oracle_isomorphic(g1, g2, None)
    except SearchLimit:
        return Verdict(UNSUPPORTED, "degenerate with unbounded oracle frontier")
    if got.found:
        return Verdict(ISOMORPHIC, "degenerate configuration, finite enumeration", got.trace, got.relabeling)
    return Verdict(NOT_ISOMORPHIC, "degenerate configuration, not in the finite orbit")


def _decide(g1: GbsGraph, g2: GbsGraph) -> Verdict:
    if canonical_key(g1) == canonical_key(g2):
        rho = correspondence(g1, g2)
        if rho is not None:
            return Verdict(ISOMORPHIC, "identical up to naming", (), rho)
    try:
        embs1 = embeddings(g1)
    except UnsupportedGraph as exc:
        return Verdict(UNSUPPORTED, str(exc))
    if not embs1:
        return Verdict(UNSUPPORTED, "the loops of the first graph do not form a configuration")
    if len(g2.vertices) != 1 or len(g2.edges) != 2:
        return Verdict(UNSUPPORTED, "the second graph is not one vertex with two loops")
    emb1 = embs1[0]
    c1 = emb1.config
    emb2 = _matching_embedding(c1, g2)
    if emb2 is None:
        return Verdict(UNSUPPORTED, "different minimal points")
    c2 = emb2.config

    d1, d2 = degeneracy(c1), degeneracy(c2)
    if d1 is not None or d2 is not None:
        if (d1 is None) != (d2 is None):
            return Verdict(NOT_ISOMORPHIC, "only one configuration is degenerate")
        return _decide_degenerate(g1, g2)

    root1, path1 = _root_of(c1)
    root2, path2 = _root_of(c2)
    walk = _Walk(g1, emb1)
    walk.climb(path1)

    pair1, pair2 = _twins(c1), _twins(c2)
    if (pair1 is None) != (pair2 is None):
        return Verdict(NOT_ISOMORPHIC, "only one side has twin roots")
    if pair1 is not None:
        return _decide_twins(walk, pair1, root2, path2, g2)

    if root1.a1 != root2.a1 or root1.a2 != root2.a2:
        return Verdict(NOT_ISOMORPHIC, "minimal points differ in sign")
    seq = root_sequence(root1)
    idx = seq.index_of(root2.x1, root2.x2)
    if idx is None:
        return Verdict(NOT_ISOMORPHIC, "root outside core and AP tails")
    for _ in range(idx):
        walk.connect_next()
    for _ in range(-idx):
        walk.connect_prev()
    walk.sons(path2)
    return _finish(walk, g2, f"root found at index {idx} of the sequence")


def _sign_normalizations(g: GbsGraph) -> list[tuple[MoveRecord, ...]]:
    singles: list[MoveRecord] = [VertexSignChange(v) for v in g.vertices]
    singles += [EdgeSignChange(e.id) for e in g.edges]
    out = []
    for r in range(len(singles) + 1):
        out += list(itertools.combinations(singles, r))
    return out


def decide_isomorphic(g1: GbsGraph, g2: GbsGraph, up_to_sign: bool = False) -> Verdict:
    if not up_to_sign:
        return _decide(g1, g2)
    first = None
    unsupported = None
    for signs in _sign_normalizations(g2):
        h = g2
        for m in signs:
            h = apply_move(h, m)
        v = _decide(g1, h)
        first = first or v
        if v.status == UNSUPPORTED and unsupported is None:
            unsupported = v
        if not v.isomorphic:
            continue
        # h -> g2 is the same set of sign changes; express them on the replayed graph
        inv = Relabeling(
            {b: a for a, b in v.relabeling.vertices.items()},
            {b: (a, rev) for a, (b, rev) in v.relabeling.edges.items()},
        )
        g = g1
        for m in v.trace:
            g = apply_move(g, m)
        extra = tuple(inv.move(m) for m in signs)
        for m in extra:
            g = apply_move(g, m)
        reason = v.reason + (f" after {len(signs)} sign change(s)" if signs else "")
        return Verdict(ISOMORPHIC, reason, v.trace + extra, correspondence(g, g2))
    return unsupported or first
