"""Sequences of roots linked by connection moves, and their limit directions.

The roots reachable from a root with vectors (v0, v1) have vectors
(v_i, v_{i+1}) for consecutive terms of an integer sequence with
v_{i-1} + v_{i+1} = k_i v_i.  Away from a finite core the sequence is either
finite or an arithmetic progression, so it is stored as a core plus two tails.
"""
from __future__ import annotations

from dataclasses import dataclass

from .config import (
    Configuration,
    degeneracy,
    is_root,
    iterate_sons,
    minimal_full_tree_sons,
    twin_of,
)
from .errors import DegenerateInput, GbsError, NotARoot, SearchLimit, TwinRoot
from .exponents import ExpVector, controls

ITERATION_CAP = 4096


@dataclass(frozen=True)
class Connected:
    root: Configuration
    power: int


def _check_root(r: Configuration) -> None:
    if degeneracy(r) is not None:
        raise DegenerateInput(degeneracy(r).value)
    if not is_root(r):
        raise NotARoot(str(r))
    if twin_of(r) is not None:
        raise TwinRoot(str(r))


def _least_power(w: ExpVector, target: ExpVector) -> int:
    # least k >= 0 with k*w >= target, where supp(target+) is inside supp(w)
    k = 0
    for p, t in target.exps:
        if t > 0:
            wp = w.get(p)
            k = max(k, -(-t // wp))
    return k


def _connect(a_from: ExpVector, loop: ExpVector, a_to: ExpVector, v: ExpVector) -> tuple[ExpVector, int] | None:
    """Shared step: the loop at ``a_from`` with vector ``loop`` controls the
    endpoint ``a_to + v``.  Returns the new vector at ``a_to`` and k."""
    if not loop.is_nonneg() or not controls(a_from, loop, a_to + v):
        return None
    k = _least_power(loop, a_to + v - a_from)
    if k < 2:
        raise GbsError("connection power below 2 at a root")
    return k * loop - v, k


def next_root(r: Configuration) -> Connected | None:
    """Connection in which the second edge controls the endpoint of the first."""
    _check_root(r)
    got = _connect(r.a2, r.x2, r.a1, r.x1)
    if got is None:
        return None
    new, k = got
    return Connected(Configuration(r.a1, r.a2, r.x2, new), k)


def prev_root(r: Configuration) -> Connected | None:
    """Connection in which the first edge controls the endpoint of the second."""
    _check_root(r)
    got = _connect(r.a1, r.x1, r.a2, r.x2)
    if got is None:
        return None
    new, h = got
    return Connected(Configuration(r.a1, r.a2, new, r.x1), h)


@dataclass(frozen=True)
class Tail:
    kind: str                        # "terminated" or "arithmetic"
    step: ExpVector | None = None    # added per term moving away from the core
    base: int | None = None          # index where the progression starts

    @property
    def infinite(self) -> bool:
        return self.kind == "arithmetic"


def solve_multiple(diff: ExpVector, step: ExpVector) -> int | None:
    """Integer m >= 0 with diff == m * step, if any."""
    if step.exps:
        p, sp = step.exps[0]
        num = diff.get(p)
        if num % sp:
            return None
        m = num // sp
        return m if m >= 0 and m * step == diff else None
    for m in (0, 1):
        if m * step == diff:
            return m
    return None


@dataclass(frozen=True)
class RootSequence:
    a1: ExpVector
    a2: ExpVector
    core: tuple[ExpVector, ...]
    anchor: int                       # position of v0 inside core
    powers: tuple[int | None, ...]   # k_i for each core term
    left: Tail
    right: Tail

    @property
    def first_index(self) -> int:
        return -self.anchor

    @property
    def last_index(self) -> int:
        return len(self.core) - 1 - self.anchor

    def term(self, i: int) -> ExpVector:
        if self.first_index <= i <= self.last_index:
            return self.core[i + self.anchor]
        if i > self.last_index and self.right.infinite:
            return self.term(self.right.base) + (i - self.right.base) * self.right.step
        if i < self.first_index and self.left.infinite:
            return self.term(self.left.base) + (self.left.base - i) * self.left.step
        raise IndexError(f"sequence has no term {i}")

    def power(self, i: int) -> int | None:
        if self.first_index <= i <= self.last_index:
            return self.powers[i + self.anchor]
        self.term(i)
        return 2

    def root(self, i: int) -> Configuration:
        return Configuration(self.a1, self.a2, self.term(i), self.term(i + 1))

    def core_roots(self) -> list[tuple[int, Configuration]]:
        return [(i, self.root(i)) for i in range(self.first_index, self.last_index)]

    def window(self, lo: int, hi: int) -> list[tuple[int, ExpVector | None, int | None]]:
        """Terms lo..hi with their k; entries beyond a finite end are None."""
        out = []
        for i in range(lo, hi + 1):
            try:
                out.append((i, self.term(i), self.power(i)))
            except IndexError:
                out.append((i, None, None))
        return out

    def index_of(self, x1: ExpVector, x2: ExpVector) -> int | None:
        """Index i with (v_i, v_{i+1}) == (x1, x2), searching core and tails."""
        for i in range(self.first_index, self.last_index):
            if self.term(i) == x1 and self.term(i + 1) == x2:
                return i
        if self.right.infinite and x2 - x1 == self.right.step:
            m = solve_multiple(x1 - self.term(self.right.base), self.right.step)
            if m is not None:
                return self.right.base + m
        if self.left.infinite and x1 - x2 == self.left.step:
            m = solve_multiple(x2 - self.term(self.left.base), self.left.step)
            if m is not None:
                return self.left.base - m - 1
        return None

    def contains(self, c: Configuration) -> bool:
        return c.a1 == self.a1 and c.a2 == self.a2 and self.index_of(c.x1, c.x2) is not None


def _extend(r: Configuration, forward: bool, cap: int):
    # walk one side; returns (terms away from the root, powers, tail)
    a, b = (r.x1, r.x2) if forward else (r.x2, r.x1)
    terms = [a, b]          # ordered moving away from the root
    powers: list[int | None] = [None, None]
    witness = None
    cur = r
    for _ in range(cap):
        if witness is None and terms[-1].geq(terms[-2]):
            witness = len(terms) - 2
        if witness is not None and len(terms) >= witness + 4:
            if powers[witness + 2] != 2:
                raise GbsError("progression witness not confirmed by a k = 2 step")
            step = terms[witness + 2] - terms[witness + 1]
            return terms, powers, ("arithmetic", step, witness + 1)
        got = next_root(cur) if forward else prev_root(cur)
        if got is None:
            # an increasing pair alone does not force an infinite side, but one
            # connection past it does
            if witness is not None and len(terms) > witness + 2:
                raise GbsError("sequence stopped inside an increasing stretch")
            return terms, powers, ("terminated", None, None)
        cur = got.root
        powers[-1] = got.power
        terms.append(cur.x2 if forward else cur.x1)
        powers.append(None)
    raise SearchLimit("root sequence exceeded the iteration cap")


def root_sequence(r: Configuration, cap: int = ITERATION_CAP) -> RootSequence:
    _check_root(r)
    rt, rp, (rkind, rstep, rbase) = _extend(r, True, cap)
    lt, lp, (lkind, lstep, lbase) = _extend(r, False, cap)
    # lt = [v1, v0, v_-1, ...]; rt = [v0, v1, v2, ...]
    left_terms = lt[2:][::-1]
    left_pows = lp[2:][::-1]
    core = tuple(left_terms + rt)
    anchor = len(left_terms)
    pows = list(left_pows) + list(rp)
    # the root's own terms get their k from whichever side computed it
    pows[anchor] = lp[1] if lp[1] is not None else rp[0]
    pows[anchor + 1] = rp[1] if rp[1] is not None else lp[0]
    right = Tail(rkind, rstep, rbase)
    if lkind == "arithmetic":
        # lt position j is index 1 - j
        left = Tail(lkind, lstep, 1 - lbase)
        pows[0] = 2
    else:
        left = Tail("terminated")
    if rkind == "arithmetic":
        pows[-1] = 2
    return RootSequence(r.a1, r.a2, core, anchor, tuple(pows), left, right)


@dataclass(frozen=True)
class LimitAngle:
    minus: ExpVector
    plus: ExpVector


def _roots_for_search(seq: RootSequence, from_right: bool, extra: int = 4) -> list[Configuration]:
    idx = list(range(seq.first_index, seq.last_index))
    if from_right:
        idx = idx[::-1]
        if seq.left.infinite:
            idx += list(range(seq.first_index - 1, seq.first_index - 1 - extra, -1))
    elif seq.right.infinite:
        idx += list(range(seq.last_index, seq.last_index + extra))
    return [seq.root(i) for i in idx]


def limit_directions(seq: RootSequence) -> LimitAngle | None:
    """The two limit directions, or None when no root has a full-tree son."""
    plus = seq.right.step if seq.right.infinite else None
    minus = seq.left.step if seq.left.infinite else None
    if plus is None:
        for root in _roots_for_search(seq, True):
            sons = minimal_full_tree_sons(root)
            if sons:
                plus = iterate_sons(root, sons[0]).x2
                break
    if minus is None:
        for root in _roots_for_search(seq, False):
            sons = minimal_full_tree_sons(root)
            if sons:
                minus = iterate_sons(root, sons[-1]).x1
                break
    if plus is None or minus is None:
        return None
    return LimitAngle(minus, plus)
