"""Two-edge configurations on one vertex: sons, fathers, roots and tree shapes.

A configuration is written (a1, a2; x1, x2): the first edge runs from a1 to
a1 + x1, the second from a2 to a2 + x2, and a1, a2 are the two minimal points.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Iterator

from .errors import DegenerateInput, InvalidConfiguration, SearchLimit, UnsupportedGraph
from .exponents import ExpVector
from .graph import GbsGraph, Oriented, Slide

ROOT_SEARCH_CAP = 1_000_000


@dataclass(frozen=True)
class Configuration:
    a1: ExpVector
    a2: ExpVector
    x1: ExpVector
    x2: ExpVector

    def __post_init__(self):
        a1, a2 = self.a1, self.a2
        if not (a1.is_nonneg() and a2.is_nonneg()):
            raise InvalidConfiguration("minimal points must be integral")
        if a1.geq(a2) or a2.geq(a1):
            raise InvalidConfiguration("minimal points are comparable")
        for head in (self.head1, self.head2):
            if not (head.geq(a1) or head.geq(a2)):
                raise InvalidConfiguration("an endpoint lies above neither minimal point")

    @property
    def head1(self) -> ExpVector:
        return self.a1 + self.x1

    @property
    def head2(self) -> ExpVector:
        return self.a2 + self.x2

    @property
    def vectors(self) -> tuple[ExpVector, ExpVector]:
        return (self.x1, self.x2)

    def with_vectors(self, x1: ExpVector, x2: ExpVector) -> "Configuration":
        return Configuration(self.a1, self.a2, x1, x2)

    def swapped(self) -> "Configuration":
        return Configuration(self.a2, self.a1, self.x2, self.x1)

    def shifted(self, e: ExpVector) -> "Configuration":
        """Same vectors with both minimal points moved by the parity element ``e``."""
        return Configuration(self.a1 + e, self.a2 + e, self.x1, self.x2)

    def __str__(self) -> str:
        return f"({self.a1}, {self.a2}; {self.x1}, {self.x2})"


class Degeneracy(Enum):
    TORSION_VECTOR = "torsion vector"
    CROSSED_EDGES = "crossed edges"
    NO_DOMINANCE = "no dominance"


def degeneracy(c: Configuration) -> Degeneracy | None:
    if c.x1.is_parity_only() or c.x2.is_parity_only():
        return Degeneracy.TORSION_VECTOR
    if c.head1.same_exps(c.a2) and c.head2.same_exps(c.a1):
        return Degeneracy.CROSSED_EDGES
    if not c.head1.geq(c.a2) and not c.head2.geq(c.a1):
        return Degeneracy.NO_DOMINANCE
    return None


def _require_nondegenerate(c: Configuration) -> None:
    d = degeneracy(c)
    if d is not None:
        raise DegenerateInput(d.value)


def son(c: Configuration, i: int) -> Configuration | None:
    """First son slides the first endpoint along the second edge, second son the reverse."""
    _require_nondegenerate(c)
    return _son(c, i)


def _son(c: Configuration, i: int) -> Configuration | None:
    if i == 1:
        return c.with_vectors(c.x1 + c.x2, c.x2) if c.head1.geq(c.a2) else None
    if i == 2:
        return c.with_vectors(c.x1, c.x2 + c.x1) if c.head2.geq(c.a1) else None
    raise ValueError("son index must be 1 or 2")


def iterate_sons(c: Configuration, path: str) -> Configuration | None:
    for ch in path:
        nxt = _son(c, int(ch))
        if nxt is None:
            return None
        c = nxt
    return c


@dataclass(frozen=True)
class FatherResult:
    kind: str  # "first", "second", "twin" or "root"
    fathers: tuple[Configuration, ...] = ()


def father(c: Configuration) -> FatherResult:
    _require_nondegenerate(c)
    up1 = c.head1.geq(c.head2)
    up2 = c.head2.geq(c.head1)
    first = c.with_vectors(c.x1 - c.x2, c.x2) if up1 else None
    second = c.with_vectors(c.x1, c.x2 - c.x1) if up2 else None
    if first and second:
        return FatherResult("twin", (first, second))
    if first:
        return FatherResult("first", (first,))
    if second:
        return FatherResult("second", (second,))
    return FatherResult("root", ())


def is_root(c: Configuration) -> bool:
    return not c.head1.geq(c.head2) and not c.head2.geq(c.head1)


@dataclass(frozen=True)
class UniqueRoot:
    root: Configuration
    path: str  # root followed by these sons gives the input


@dataclass(frozen=True)
class TwinRoots:
    r: Configuration
    path_r: str
    q: Configuration
    path_q: str


def _climb(c: Configuration, suffix: str) -> tuple[Configuration, str]:
    path = suffix
    for _ in range(ROOT_SEARCH_CAP):
        f = father(c)
        if f.kind == "root":
            return c, path
        if f.kind == "twin":
            raise InvalidConfiguration("second twin branching while climbing")
        path = ("1" if f.kind == "first" else "2") + path
        c = f.fathers[0]
    raise SearchLimit("root search did not terminate")


def find_root(c: Configuration) -> UniqueRoot | TwinRoots:
    _require_nondegenerate(c)
    path = ""
    for _ in range(ROOT_SEARCH_CAP):
        f = father(c)
        if f.kind == "root":
            return UniqueRoot(c, path)
        if f.kind == "twin":
            r, pr = _climb(f.fathers[0], "1" + path)
            q, pq = _climb(f.fathers[1], "2" + path)
            return TwinRoots(r, pr, q, pq)
        path = ("1" if f.kind == "first" else "2") + path
        c = f.fathers[0]
    raise SearchLimit("root search did not terminate")


# ---- tree shapes -----------------------------------------------------------

class ShapeKind(Enum):
    CHAIN2 = "chain2"          # only 2^i
    CHAIN1 = "chain1"          # only 1^i
    FULL = "full-binary"
    TRUNCATED1 = "truncated1"  # x1 >= 0, x2 not
    TRUNCATED2 = "truncated2"  # x2 >= 0, x1 not
    TRUNCATED12 = "truncated12"


@dataclass(frozen=True)
class TreeShape:
    kind: ShapeKind
    h: int | None = None
    k: int | None = None

    def __str__(self) -> str:
        args = ", ".join(f"{n}={v}" for n, v in (("h", self.h), ("k", self.k)) if v is not None)
        return f"{self.kind.value}({args})" if args else self.kind.value


def max_steps(base: ExpVector, step: ExpVector, floor: ExpVector) -> int:
    """Largest t >= 0 with base + t*step >= floor, given it holds at t = 0 and
    step has a negative exponent."""
    best = None
    gap = base - floor
    for p, e in step.exps:
        if e < 0:
            t = gap.get(p) // (-e)
            best = t if best is None else min(best, t)
    if best is None or best < 0:
        raise ValueError("bound needs a negative step component and a valid start")
    return best


def tree_shape(c: Configuration) -> TreeShape:
    _require_nondegenerate(c)
    if not c.head1.geq(c.a2):
        return TreeShape(ShapeKind.CHAIN2)
    if not c.head2.geq(c.a1):
        return TreeShape(ShapeKind.CHAIN1)
    p1, p2 = c.x1.is_nonneg(), c.x2.is_nonneg()
    if p1 and p2:
        return TreeShape(ShapeKind.FULL)
    h = max_steps(c.head1, c.x2, c.a2) if not p2 else None
    k = max_steps(c.head2, c.x1, c.a1) if not p1 else None
    if p1:
        return TreeShape(ShapeKind.TRUNCATED1, h=h)
    if p2:
        return TreeShape(ShapeKind.TRUNCATED2, k=k)
    return TreeShape(ShapeKind.TRUNCATED12, h=h, k=k)


def _lead(s: str, ch: str) -> int:
    n = 0
    while n < len(s) and s[n] == ch:
        n += 1
    return n


def _truncated_ok(s: str, ch: str, other: str, bound: int) -> bool:
    # words of the form ch^j other w (j <= bound) or ch^(bound+1) other^i
    j = _lead(s, ch)
    if j <= bound:
        return True
    return j == bound + 1 and _lead(s[j:], other) == len(s) - j


def exists_son(c: Configuration, s: str) -> bool:
    """Whether the iterated son along ``s`` exists, from the shape of the tree."""
    if set(s) - {"1", "2"}:
        raise ValueError("son paths use the digits 1 and 2")
    shape = tree_shape(c)
    kind = shape.kind
    if kind is ShapeKind.CHAIN2:
        return "1" not in s
    if kind is ShapeKind.CHAIN1:
        return "2" not in s
    if kind is ShapeKind.FULL:
        return True
    if kind is ShapeKind.TRUNCATED1:
        return _truncated_ok(s, "1", "2", shape.h)
    if kind is ShapeKind.TRUNCATED2:
        return _truncated_ok(s, "2", "1", shape.k)
    # both vectors fail positivity: each first son is truncated one level less
    if not s:
        return True
    if s[0] == "1":
        return _truncated_ok(s, "1", "2", shape.h)
    return _truncated_ok(s, "2", "1", shape.k)


def is_full_tree(c: Configuration) -> bool:
    return all(h.geq(a) for h in (c.head1, c.head2) for a in (c.a1, c.a2))


def minimal_full_tree_sons(c: Configuration, depth_cap: int = 4096) -> list[str]:
    """Paths s with c.s full-tree and no proper prefix full-tree, right-most first
    (more leading 2s come first)."""
    _require_nondegenerate(c)
    out: list[str] = []
    stack: list[tuple[Configuration, str]] = [(c, "")]
    while stack:
        node, path = stack.pop()
        if is_full_tree(node):
            out.append(path)
            continue
        if len(path) >= depth_cap:
            raise SearchLimit("full-tree search exceeded the depth cap")
        if tree_shape(node).kind in (ShapeKind.CHAIN1, ShapeKind.CHAIN2):
            continue
        # push 1 first so the 2-branch is explored first
        for i in (1, 2):
            nxt = _son(node, i)
            if nxt is not None:
                stack.append((nxt, path + str(i)))
    return out


# ---- twins -----------------------------------------------------------------

@dataclass(frozen=True)
class TwinPair:
    r: Configuration     # first edge ends at a2 + e
    q: Configuration     # second edge ends at a1 + e
    lam: int
    e: ExpVector         # parity element, zero or the torsion element

    def members(self) -> list[Configuration]:
        out = [self.r, self.q]
        if not self.e.is_zero():
            out += [self.r.shifted(self.e), self.q.shifted(self.e)]
        return out


def _twin_from_r(r: Configuration) -> TwinPair | None:
    e = r.head1 - r.a2
    if not e.is_parity_only():
        return None
    if r.x2.is_nonneg() or not r.head2.geq(r.a1):
        return None
    lam = max_steps(r.head2, r.x1, r.a1) + 2
    qx1 = r.x2 + lam * r.x1
    qx2 = r.a1 + e - r.a2
    if qx1.is_nonneg():
        return None
    try:
        q = Configuration(r.a1, r.a2, qx1, qx2)
    except InvalidConfiguration:
        return None
    if degeneracy(q) is not None or not is_root(q):
        return None
    return TwinPair(r, q, lam, e)


def twin_of(c: Configuration) -> TwinPair | None:
    """The twin pair containing the root ``c``, or None when ``c`` has no twin."""
    if degeneracy(c) is not None or not is_root(c):
        return None
    found = _twin_from_r(c)
    if found is not None:
        return found
    # mirror: read c as the second member of a pair
    mirror = _twin_from_r(c.swapped())
    if mirror is None:
        return None
    return TwinPair(mirror.q.swapped(), c, mirror.lam, mirror.e)


# ---- graphs as configurations ---------------------------------------------

@dataclass(frozen=True)
class Embedding:
    """A configuration read off a graph: ``first`` starts at a1, ``second`` at a2."""
    config: Configuration
    first: Oriented
    second: Oriented

    def swapped(self) -> "Embedding":
        return Embedding(self.config.swapped(), self.second, self.first)


def _check_shape(g: GbsGraph) -> None:
    if len(g.vertices) != 1 or len(g.edges) != 2:
        raise UnsupportedGraph("only one vertex with two loops is handled")


def embeddings(g: GbsGraph) -> list[Embedding]:
    """All orientation choices that read ``g`` as a configuration, in scan order."""
    _check_shape(g)
    e1, e2 = g.edges
    out = []
    for f1 in (True, False):
        for f2 in (True, False):
            o1, o2 = Oriented(e1.id, f1), Oriented(e2.id, f2)
            a1, a2 = g.colabel(o1), g.colabel(o2)
            try:
                c = Configuration(a1, a2, g.label(o1) - a1, g.label(o2) - a2)
            except InvalidConfiguration:
                continue
            out.append(Embedding(c, o1, o2))
    return out


def extract_configuration(g: GbsGraph) -> Embedding:
    found = embeddings(g)
    if not found:
        raise UnsupportedGraph("the two loops do not form a configuration")
    return found[0]


def configuration_graph(c: Configuration, vertex: str = "v", ids: tuple[str, str] = ("e1", "e2")) -> GbsGraph:
    from .graph import single_vertex
    return single_vertex([(ids[0], c.a1, c.head1), (ids[1], c.a2, c.head2)], vertex)


def son_move(emb: Embedding, i: int) -> Slide:
    return Slide(emb.first, emb.second) if i == 1 else Slide(emb.second, emb.first)


def father_move(emb: Embedding, i: int) -> Slide:
    """Undo the i-th son."""
    return Slide(emb.first, emb.second.reversed()) if i == 1 else Slide(emb.second, emb.first.reversed())


def words(max_len: int) -> Iterator[str]:
    yield ""
    frontier = [""]
    for _ in range(max_len):
        frontier = [w + d for w in frontier for d in "12"]
        yield from frontier
