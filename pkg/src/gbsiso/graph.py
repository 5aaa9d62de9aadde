"""Labelled graphs, their affine picture and the elementary moves between them.

An edge is stored with a tail and a head.  ``tail_label`` is the label of the
reverse edge (sitting at the tail) and ``head_label`` the label of the edge
itself (sitting at the head).  An oriented edge is an ``Oriented(edge, forward)``
pair; ``origin``/``terminus``/``label``/``colabel`` follow that orientation.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field, replace
from typing import Iterable, Union

from .errors import MoveError, ParseError
from .exponents import ExpVector, format_label, parse_label


@dataclass(frozen=True)
class Edge:
    id: str
    tail: str
    head: str
    tail_label: ExpVector
    head_label: ExpVector

    @property
    def is_loop(self) -> bool:
        return self.tail == self.head


@dataclass(frozen=True, order=True)
class Oriented:
    edge: str
    forward: bool = True

    def reversed(self) -> "Oriented":
        return Oriented(self.edge, not self.forward)

    def to_json(self) -> list:
        return [self.edge, self.forward]


@dataclass(frozen=True)
class AffinePoint:
    vertex: str
    coord: ExpVector


@dataclass(frozen=True)
class AffineEdge:
    id: str
    start: AffinePoint
    end: AffinePoint

    @property
    def vector(self) -> ExpVector:
        return self.end.coord - self.start.coord


@dataclass(frozen=True)
class GbsGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    _index: dict = field(default=None, compare=False, repr=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ParseError("duplicate vertex")
        index = {}
        for e in self.edges:
            if e.id in index:
                raise ParseError(f"duplicate edge id {e.id!r}")
            if e.tail not in self.vertices or e.head not in self.vertices:
                raise ParseError(f"edge {e.id!r} uses an unknown vertex")
            if not (e.tail_label.is_nonneg() and e.head_label.is_nonneg()):
                raise ParseError(f"edge {e.id!r} has a non-integral label")
            index[e.id] = e
        object.__setattr__(self, "_index", index)

    def edge(self, eid: str) -> Edge:
        try:
            return self._index[eid]
        except KeyError:
            raise MoveError(f"no edge {eid!r}") from None

    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def origin(self, o: Oriented) -> str:
        e = self.edge(o.edge)
        return e.tail if o.forward else e.head

    def terminus(self, o: Oriented) -> str:
        e = self.edge(o.edge)
        return e.head if o.forward else e.tail

    def label(self, o: Oriented) -> ExpVector:
        e = self.edge(o.edge)
        return e.head_label if o.forward else e.tail_label

    def colabel(self, o: Oriented) -> ExpVector:
        e = self.edge(o.edge)
        return e.tail_label if o.forward else e.head_label

    def orientations(self) -> list[Oriented]:
        return [Oriented(e.id, f) for e in self.edges for f in (True, False)]

    def prime_set(self) -> tuple[int, ...]:
        """Primes dividing some label."""
        ps: set[int] = set()
        for e in self.edges:
            ps |= e.tail_label.support() | e.head_label.support()
        return tuple(sorted(ps))

    def replace_edges(self, *new: Edge) -> "GbsGraph":
        by_id = {e.id: e for e in new}
        return GbsGraph(self.vertices, tuple(by_id.get(e.id, e) for e in self.edges))

    def affine_edges(self) -> list[AffineEdge]:
        return [
            AffineEdge(e.id, AffinePoint(e.tail, e.tail_label), AffinePoint(e.head, e.head_label))
            for e in self.edges
        ]

    affine_rep = affine_edges

    def size(self) -> int:
        """Largest per-edge sum of absolute exponents over both labels."""
        return max((e.tail_label.abs_size() + e.head_label.abs_size() for e in self.edges), default=0)

    def __str__(self) -> str:
        return to_text(self)


def _set_end(e: Edge, forward: bool, vertex: str, label: ExpVector) -> Edge:
    # overwrite the end that the orientation points at
    if forward:
        return replace(e, head=vertex, head_label=label)
    return replace(e, tail=vertex, tail_label=label)


def _set_oriented(e: Edge, forward: bool, start: str, start_label: ExpVector, end: str, end_label: ExpVector) -> Edge:
    if forward:
        return replace(e, tail=start, tail_label=start_label, head=end, head_label=end_label)
    return replace(e, head=start, head_label=start_label, tail=end, tail_label=end_label)


# ---- moves ---------------------------------------------------------------

@dataclass(frozen=True)
class VertexSignChange:
    vertex: str
    kind = "vertex_sign"


@dataclass(frozen=True)
class EdgeSignChange:
    edge: str
    kind = "edge_sign"


@dataclass(frozen=True)
class Slide:
    """Move the terminus of ``moving`` along ``along``."""
    moving: Oriented
    along: Oriented
    kind = "slide"


@dataclass(frozen=True)
class Induction:
    """Multiply the other edge ends at a loop with unit colabel by ``factor``.

    ``factor`` may carry negative exponents, which undoes an earlier induction.
    """
    loop: Oriented
    factor: ExpVector
    kind = "induction"


@dataclass(frozen=True)
class Swap:
    first: Oriented
    second: Oriented
    kind = "swap"


@dataclass(frozen=True)
class Connection:
    """Reattach ``edge`` using the loop ``loop`` at its terminus; ``power`` is the exponent k."""
    edge: Oriented
    loop: Oriented
    power: int
    kind = "connection"


MoveRecord = Union[VertexSignChange, EdgeSignChange, Slide, Induction, Swap, Connection]


def apply_move(g: GbsGraph, m: MoveRecord) -> GbsGraph:
    if isinstance(m, VertexSignChange):
        if m.vertex not in g.vertices:
            raise MoveError(f"no vertex {m.vertex!r}")
        out = []
        for e in g.edges:
            if e.head == m.vertex:
                e = replace(e, head_label=e.head_label + ExpVector.torsion())
            if e.tail == m.vertex:
                e = replace(e, tail_label=e.tail_label + ExpVector.torsion())
            out.append(e)
        return GbsGraph(g.vertices, tuple(out))

    if isinstance(m, EdgeSignChange):
        e = g.edge(m.edge)
        t = ExpVector.torsion()
        return g.replace_edges(replace(e, tail_label=e.tail_label + t, head_label=e.head_label + t))

    if isinstance(m, Slide):
        d, a = m.moving, m.along
        if d.edge == a.edge:
            raise MoveError("an edge cannot slide along itself")
        if g.terminus(d) != g.origin(a):
            raise MoveError("slid end does not sit at the origin of the edge slid along")
        shift = g.label(d) - g.colabel(a)
        if not shift.is_nonneg():
            raise MoveError("label of the slid end is not divisible by the colabel")
        new = _set_end(g.edge(d.edge), d.forward, g.terminus(a), shift + g.label(a))
        return g.replace_edges(new)

    if isinstance(m, Induction):
        lp = m.loop
        if g.origin(lp) != g.terminus(lp):
            raise MoveError("induction needs a loop")
        if not g.colabel(lp).is_zero():
            raise MoveError("induction needs colabel 1")
        if not m.factor.support() <= g.label(lp).support():
            raise MoveError("factor has a prime outside the loop label")
        v = g.origin(lp)
        out = []
        for e in g.edges:
            if e.id != lp.edge:
                if e.head == v:
                    e = replace(e, head_label=e.head_label + m.factor)
                if e.tail == v:
                    e = replace(e, tail_label=e.tail_label + m.factor)
                if not (e.head_label.is_nonneg() and e.tail_label.is_nonneg()):
                    raise MoveError("induction leaves a non-integral label")
            out.append(e)
        return GbsGraph(g.vertices, tuple(out))

    if isinstance(m, Swap):
        e1, e2 = m.first, m.second
        if e1.edge == e2.edge:
            raise MoveError("swap needs two distinct loops")
        v = g.origin(e1)
        if not (g.terminus(e1) == v and g.origin(e2) == v and g.terminus(e2) == v):
            raise MoveError("swap needs two loops at one vertex")
        n, m_ = g.colabel(e1), g.colabel(e2)
        l1, l2 = g.label(e1) - n, g.label(e2) - m_
        gap = m_ - n
        if not (l1.is_nonneg() and l2.is_nonneg() and gap.is_nonneg()):
            raise MoveError("swap divisibility fails")
        if not (gap.support() <= l1.support() and gap.support() <= l2.support()):
            raise MoveError("swap support condition fails")
        new1 = _set_oriented(g.edge(e1.edge), e1.forward, v, m_, v, l1 + m_)
        new2 = _set_oriented(g.edge(e2.edge), e2.forward, v, n, v, l2 + n)
        return g.replace_edges(new1, new2)

    if isinstance(m, Connection):
        d, lp, k = m.edge, m.loop, m.power
        if d.edge == lp.edge:
            raise MoveError("connection needs two distinct edges")
        if k < 1:
            raise MoveError("connection power must be positive")
        v = g.origin(lp)
        if g.terminus(lp) != v or g.terminus(d) != v:
            raise MoveError("connection needs a loop at the terminus of the edge")
        n = g.colabel(lp)
        step = g.label(lp) - n
        first = g.label(d) - n
        second = k * step - first
        if not (step.is_nonneg() and first.is_nonneg() and second.is_nonneg()):
            raise MoveError("connection divisibility fails")
        u, m_ = g.origin(d), g.colabel(d)
        new_d = _set_oriented(g.edge(d.edge), d.forward, v, n, u, second + m_)
        new_l = _set_oriented(g.edge(lp.edge), lp.forward, u, m_, u, step + m_)
        return g.replace_edges(new_d, new_l)

    raise TypeError(f"unknown move {m!r}")


def invert_move(m: MoveRecord) -> MoveRecord:
    """Move of the same family undoing ``m`` (edge ids are stable)."""
    if isinstance(m, (VertexSignChange, EdgeSignChange, Connection)):
        return m
    if isinstance(m, Slide):
        return Slide(m.moving, m.along.reversed())
    if isinstance(m, Induction):
        return Induction(m.loop, -m.factor)
    if isinstance(m, Swap):
        return Swap(m.second, m.first)
    raise TypeError(f"unknown move {m!r}")


def replay(g: GbsGraph, trace: Iterable[MoveRecord]) -> GbsGraph:
    for m in trace:
        g = apply_move(g, m)
    return g


def move_to_json(m: MoveRecord) -> dict:
    out: dict = {"kind": m.kind}
    if isinstance(m, VertexSignChange):
        out["vertex"] = m.vertex
    elif isinstance(m, EdgeSignChange):
        out["edge"] = m.edge
    elif isinstance(m, Slide):
        out.update(moving=m.moving.to_json(), along=m.along.to_json())
    elif isinstance(m, Induction):
        out.update(loop=m.loop.to_json(), factor=vector_to_json(m.factor))
    elif isinstance(m, Swap):
        out.update(first=m.first.to_json(), second=m.second.to_json())
    elif isinstance(m, Connection):
        out.update(edge=m.edge.to_json(), loop=m.loop.to_json(), power=m.power)
    return out


def move_from_json(d: dict) -> MoveRecord:
    o = lambda pair: Oriented(pair[0], bool(pair[1]))  # noqa: E731
    kind = d["kind"]
    if kind == "vertex_sign":
        return VertexSignChange(d["vertex"])
    if kind == "edge_sign":
        return EdgeSignChange(d["edge"])
    if kind == "slide":
        return Slide(o(d["moving"]), o(d["along"]))
    if kind == "induction":
        return Induction(o(d["loop"]), vector_from_json(d["factor"]))
    if kind == "swap":
        return Swap(o(d["first"]), o(d["second"]))
    if kind == "connection":
        return Connection(o(d["edge"]), o(d["loop"]), int(d["power"]))
    raise ParseError(f"unknown move kind {kind!r}")


def move_sort_key(m: MoveRecord) -> tuple:
    return (m.kind, json.dumps(move_to_json(m), sort_keys=True))


def vector_to_json(v: ExpVector) -> dict:
    return {"parity": v.parity, "exps": {str(p): e for p, e in v.exps}}


def vector_from_json(d: dict) -> ExpVector:
    return ExpVector({int(p): int(e) for p, e in d["exps"].items()}, int(d["parity"]))


# ---- text and JSON formats -------------------------------------------------

def parse_text(text: str) -> GbsGraph:
    """Read the line-based format; errors name the line and column."""
    vertices: list[str] = []
    edges: list[Edge] = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0]
        tok = body.split()
        if not tok:
            continue
        where = f"line {lineno}"
        if not header:
            if tok != ["gbs", "1"]:
                raise ParseError(f"{where}, column 1: expected header 'gbs 1'")
            header = True
            continue
        if tok[0] == "vertex" and len(tok) == 2:
            vertices.append(tok[1])
        elif tok[0] == "edge" and len(tok) == 6:
            _, eid, tail, head, tl, hl = tok
            labels = []
            for t in (tl, hl):
                try:
                    labels.append(parse_label(t))
                except ParseError as exc:
                    col = body.index(t, body.index(eid) + len(eid)) + 1
                    raise ParseError(f"{where}, column {col}: {exc}") from None
            edges.append(Edge(eid, tail, head, labels[0], labels[1]))
        else:
            col = len(body) - len(body.lstrip()) + 1
            raise ParseError(f"{where}, column {col}: cannot read {body.strip()!r}")
    if not header:
        raise ParseError("line 1, column 1: missing 'gbs 1' header")
    try:
        return GbsGraph(tuple(vertices), tuple(edges))
    except ParseError as exc:
        raise ParseError(f"after line {lineno}: {exc}") from None


def to_text(g: GbsGraph) -> str:
    out = ["gbs 1"]
    out += [f"vertex {v}" for v in g.vertices]
    out += [
        f"edge {e.id} {e.tail} {e.head} {format_label(e.tail_label)} {format_label(e.head_label)}"
        for e in g.edges
    ]
    return "\n".join(out) + "\n"


def to_json(g: GbsGraph) -> dict:
    return {
        "format": "gbs",
        "version": 1,
        "vertices": list(g.vertices),
        "edges": [
            {
                "id": e.id,
                "tail": e.tail,
                "head": e.head,
                "tail_label": format_label(e.tail_label),
                "head_label": format_label(e.head_label),
            }
            for e in g.edges
        ],
    }


def from_json(d: dict) -> GbsGraph:
    try:
        if d.get("format") != "gbs" or d.get("version") != 1:
            raise ParseError("not a gbs version 1 document")
        edges = tuple(
            Edge(e["id"], e["tail"], e["head"], parse_label(e["tail_label"]), parse_label(e["head_label"]))
            for e in d["edges"]
        )
        return GbsGraph(tuple(d["vertices"]), edges)
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed graph document: {exc}") from None


def load(path: str) -> GbsGraph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if text.lstrip().startswith("{"):
        try:
            return from_json(json.loads(text))
        except json.JSONDecodeError as exc:
            raise ParseError(str(exc)) from None
    return parse_text(text)


def single_vertex(edges: Iterable[tuple[str, ExpVector, ExpVector]], vertex: str = "v") -> GbsGraph:
    """Convenience constructor for a one-vertex graph of loops."""
    return GbsGraph((vertex,), tuple(Edge(i, vertex, vertex, t, h) for i, t, h in edges))


# ---- identity up to naming ------------------------------------------------

def _edge_forms(e: Edge, rank: dict[str, int]) -> tuple[tuple, tuple]:
    fwd = (rank[e.tail], e.tail_label.sort_key(), rank[e.head], e.head_label.sort_key())
    bwd = (rank[e.head], e.head_label.sort_key(), rank[e.tail], e.tail_label.sort_key())
    return fwd, bwd


def canonical_key(g: GbsGraph) -> tuple:
    """Key equal for graphs that differ only by names of edges, edge
    orientation and (for up to seven vertices) names of vertices."""
    orders = itertools.permutations(g.vertices) if len(g.vertices) <= 7 else [tuple(sorted(g.vertices))]
    best = None
    for order in orders:
        rank = {v: i for i, v in enumerate(order)}
        key = tuple(sorted(min(_edge_forms(e, rank)) for e in g.edges))
        if best is None or key < best:
            best = key
    return (len(g.vertices), best)


@dataclass(frozen=True)
class Relabeling:
    """Renaming that turns one graph into another: vertex names and
    ``edge_id -> (new_id, reversed)``."""
    vertices: dict
    edges: dict

    def oriented(self, o: Oriented) -> Oriented:
        new_id, rev = self.edges[o.edge]
        return Oriented(new_id, o.forward != rev)

    def move(self, m: MoveRecord) -> MoveRecord:
        """Express a move on the source graph as the same move on the target."""
        if isinstance(m, VertexSignChange):
            return VertexSignChange(self.vertices[m.vertex])
        if isinstance(m, EdgeSignChange):
            return EdgeSignChange(self.edges[m.edge][0])
        if isinstance(m, Slide):
            return Slide(self.oriented(m.moving), self.oriented(m.along))
        if isinstance(m, Induction):
            return Induction(self.oriented(m.loop), m.factor)
        if isinstance(m, Swap):
            return Swap(self.oriented(m.first), self.oriented(m.second))
        if isinstance(m, Connection):
            return Connection(self.oriented(m.edge), self.oriented(m.loop), m.power)
        raise TypeError(f"unknown move {m!r}")

    def to_json(self) -> dict:
        return {
            "vertices": dict(self.vertices),
            "edges": {k: [v[0], v[1]] for k, v in self.edges.items()},
        }


def _match_edges(g: GbsGraph, h: GbsGraph, vmap: dict[str, str]) -> dict[str, tuple[str, bool]] | None:
    rank = {v: i for i, v in enumerate(sorted(h.vertices))}
    pool: dict[tuple, list[tuple[str, bool]]] = {}
    for e in h.edges:
        fwd, bwd = _edge_forms(e, rank)
        pool.setdefault(min(fwd, bwd), []).append((e.id, fwd > bwd))
    out = {}
    for e in g.edges:
        moved = Edge(e.id, vmap[e.tail], vmap[e.head], e.tail_label, e.head_label)
        fwd, bwd = _edge_forms(moved, rank)
        bucket = pool.get(min(fwd, bwd))
        if not bucket:
            return None
        hid, h_rev = bucket.pop(0)
        out[e.id] = (hid, (fwd > bwd) != h_rev)
    return out


def correspondence(g: GbsGraph, h: GbsGraph) -> Relabeling | None:
    """A renaming of vertices and edges of ``g`` (and reversal of some edges)
    producing exactly ``h``, or None."""
    if len(g.vertices) != len(h.vertices) or len(g.edges) != len(h.edges):
        return None
    if set(g.vertices) == set(h.vertices):
        ident = {v: v for v in g.vertices}
        em = _match_edges(g, h, ident)
        if em is not None:
            return Relabeling(ident, em)
    if len(g.vertices) > 7:
        return None
    for perm in itertools.permutations(h.vertices):
        vmap = dict(zip(g.vertices, perm))
        em = _match_edges(g, h, vmap)
        if em is not None:
            return Relabeling(vmap, em)
    return None


def relabel(g: GbsGraph, r: Relabeling) -> GbsGraph:
    out = []
    for e in g.edges:
        new_id, rev = r.edges.get(e.id, (e.id, False))
        tail, head = r.vertices[e.tail], r.vertices[e.head]
        if rev:
            e = Edge(new_id, head, tail, e.head_label, e.tail_label)
        else:
            e = Edge(new_id, tail, head, e.tail_label, e.head_label)
        out.append(e)
    return GbsGraph(tuple(r.vertices[v] for v in g.vertices), tuple(out))


def same_graph(g: GbsGraph, h: GbsGraph) -> bool:
    """Exact equality ignoring only the order in which edges are listed."""
    return set(g.vertices) == set(h.vertices) and {e.id: e for e in g.edges} == {e.id: e for e in h.edges}
