"""Small constructors and generators shared by the test modules."""
from __future__ import annotations

import random

from hypothesis import strategies as st

from gbsiso.config import Configuration, degeneracy, find_root, twin_of, TwinRoots
from gbsiso.errors import InvalidConfiguration
from gbsiso.exponents import ExpVector
from gbsiso.graph import single_vertex


def vec(a: int, b: int, parity: int = 0) -> ExpVector:
    """Exponent vector 2^a 3^b (with a sign bit)."""
    return ExpVector({2: a, 3: b}, parity)


def conf(a1, a2, x1, x2) -> Configuration:
    return Configuration(vec(*a1), vec(*a2), vec(*x1), vec(*x2))


BASE = single_vertex([("e1", vec(0, 3), vec(11, 13)), ("e2", vec(3, 0), vec(18, 13))])
PARTNER = single_vertex([("e1", vec(0, 3), vec(9, 8)), ("e2", vec(3, 0), vec(17, 7))])
DECOY = single_vertex([("e1", vec(0, 3), vec(6, 4)), ("e2", vec(3, 0), vec(28, 3))])
BASE_ROOT = conf((0, 3), (3, 0), (3, 4), (4, 3))
TWIN_R = conf((1, 0), (0, 1), (-1, 1), (2, -1))
TWIN_Q = conf((1, 0), (0, 1), (-1, 2), (1, -1))
Z_RANK1 = vec(2, 1)
A_RANK1 = (vec(0, 5), vec(3, 0))


def try_conf(a1, a2, h1, h2):
    try:
        return Configuration(a1, a2, h1 - a1, h2 - a2)
    except InvalidConfiguration:
        return None


def is_twin_class(c: Configuration) -> bool:
    found = find_root(c)
    root = found.r if isinstance(found, TwinRoots) else found.root
    return isinstance(found, TwinRoots) or twin_of(root) is not None


@st.composite
def configurations(draw, max_exp: int = 5, signs: bool = True, allow_twins: bool = True):
    """Non-degenerate configurations over the primes 2 and 3."""
    par = (lambda: draw(st.integers(0, 1))) if signs else (lambda: 0)
    a1 = vec(0, draw(st.integers(1, 3)), par())
    a2 = vec(draw(st.integers(1, 3)), 0, par())
    for _ in range(50):
        h1 = vec(draw(st.integers(0, max_exp)), draw(st.integers(0, max_exp)), par())
        h2 = vec(draw(st.integers(0, max_exp)), draw(st.integers(0, max_exp)), par())
        c = try_conf(a1, a2, h1, h2)
        if c is None or degeneracy(c) is not None:
            continue
        if not allow_twins and is_twin_class(c):
            continue
        return c
    from hypothesis import assume
    assume(False)


def random_configuration(rng: random.Random, max_exp: int = 5, signs: bool = False, allow_twins: bool = False):
    while True:
        par = (lambda: rng.randint(0, 1)) if signs else (lambda: 0)
        a1 = vec(0, rng.randint(1, 3), par())
        a2 = vec(rng.randint(1, 3), 0, par())
        h1 = vec(rng.randint(0, max_exp), rng.randint(0, max_exp), par())
        h2 = vec(rng.randint(0, max_exp), rng.randint(0, max_exp), par())
        c = try_conf(a1, a2, h1, h2)
        if c is None or degeneracy(c) is not None:
            continue
        if not allow_twins and is_twin_class(c):
            continue
        return c


def random_walk(g, rng: random.Random, steps: int, bound: int = 30):
    """Apply up to ``steps`` random slides, swaps and connections."""
    from gbsiso.graph import apply_move
    from gbsiso.oracle import applicable_moves
    for _ in range(steps):
        moves, _ = applicable_moves(g, bound=bound)
        if not moves:
            break
        g = apply_move(g, rng.choice(moves))
    return g


def replays(g1, verdict, g2) -> bool:
    """The verdict's trace carries g1 to g2 up to its renaming."""
    from gbsiso.graph import relabel, replay, same_graph
    return same_graph(relabel(replay(g1, verdict.trace), verdict.relabeling), g2)
