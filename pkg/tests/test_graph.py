import json
import random

import pytest
from hypothesis import given, strategies as st

from gbsiso.errors import MoveError, ParseError
from gbsiso.exponents import ExpVector
from gbsiso.graph import (
    Connection,
    Edge,
    EdgeSignChange,
    GbsGraph,
    Induction,
    Oriented,
    Slide,
    Swap,
    VertexSignChange,
    apply_move,
    canonical_key,
    correspondence,
    from_json,
    invert_move,
    load,
    move_from_json,
    move_to_json,
    parse_text,
    relabel,
    same_graph,
    single_vertex,
    to_json,
    to_text,
)
from gbsiso.oracle import applicable_moves

from helpers import PARTNER, BASE, vec

FWD = lambda e: Oriented(e, True)  # noqa: E731


def test_prime_set():
    assert BASE.prime_set() == (2, 3)
    assert single_vertex([("e", ExpVector(), vec(1, 0))]).prime_set() == (2,)
    g = parse_text("gbs 1\nvertex v\nedge e v v -6 35\n")
    assert g.prime_set() == (2, 3, 5, 7)


def test_affine_rep():
    edges = BASE.affine_rep()
    assert [(e.start.coord, e.end.coord) for e in edges] == [(vec(0, 3), vec(11, 13)), (vec(3, 0), vec(18, 13))]
    assert edges[0].vector == vec(11, 10)
    one = single_vertex([("e", ExpVector(), ExpVector())]).affine_rep()[0]
    assert one.start.coord == one.end.coord == ExpVector()
    assert [(e.start.coord, e.end.coord) for e in PARTNER.affine_rep()] == [(vec(0, 3), vec(9, 8)), (vec(3, 0), vec(17, 7))]


def test_text_format():
    text = "gbs 1\n# comment\nvertex v\nedge e1 v v 3^3 2^11*3^13  # trailing\nedge e2 v v 8 2^18*3^13\n"
    g = parse_text(text)
    assert same_graph(g, BASE)
    assert same_graph(parse_text(to_text(g)), g)


@pytest.mark.parametrize("text, where", [
    ("vertex v\n", "line 1, column 1"),
    ("gbs 1\nvertex v\nedge e1 v v 3^x 2\n", "line 3, column 13"),
    ("gbs 1\nvertex v\n  bogus line\n", "line 3, column 3"),
    ("gbs 1\nvertex v\nedge e1 v v 0 2\n", "line 3, column 13"),
])
def test_parse_errors_name_line_and_column(text, where):
    with pytest.raises(ParseError, match=where):
        parse_text(text)


def test_unknown_vertex_is_a_parse_error():
    with pytest.raises(ParseError):
        parse_text("gbs 1\nvertex v\nedge e1 v w 1 2\n")


def test_json_round_trip(tmp_path):
    doc = to_json(BASE)
    assert doc["format"] == "gbs"
    assert same_graph(from_json(json.loads(json.dumps(doc))), BASE)
    path = tmp_path / "g.json"
    path.write_text(json.dumps(doc))
    assert same_graph(load(str(path)), BASE)
    with pytest.raises(ParseError):
        from_json({"format": "gbs", "version": 1, "vertices": ["v"]})


def test_slide_matches_the_affine_picture():
    # edges p -- q and r -- (p + a); sliding moves the second end to q + a
    p, q, r, a = vec(1, 0), vec(2, 3), vec(0, 2), vec(1, 1)
    g = single_vertex([("e1", p, q), ("e2", r, p + a)])
    h = apply_move(g, Slide(FWD("e2"), FWD("e1")))
    assert h.edge("e2") == Edge("e2", "v", "v", r, q + a)
    assert h.edge("e1") == g.edge("e1")


def test_connection_matches_the_affine_picture():
    # q -- (p + w1) and the loop p -- (p + w) with w1 + w2 = k w
    p, q, w, w1, k = vec(1, 0), vec(0, 2), vec(1, 1), vec(2, 1), 2
    w2 = k * w - w1
    g = single_vertex([("d", q, p + w1), ("l", p, p + w)])
    h = apply_move(g, Connection(FWD("d"), FWD("l"), k))
    assert h.edge("d") == Edge("d", "v", "v", p, q + w2)
    assert h.edge("l") == Edge("l", "v", "v", q, q + w)


def test_sign_changes_are_involutions():
    for m in (EdgeSignChange("e1"), VertexSignChange("v")):
        once = apply_move(BASE, m)
        assert not same_graph(once, BASE)
        assert same_graph(apply_move(once, m), BASE)


def test_vertex_sign_change_flips_both_ends_of_a_loop():
    h = apply_move(BASE, VertexSignChange("v"))
    assert h.edge("e1").tail_label.parity == 1 and h.edge("e1").head_label.parity == 1


def test_induction_and_its_inverse():
    # loop with colabel 1 and label 2^2*3, another loop 2^3 -- 3^2
    g = single_vertex([("l", ExpVector(), vec(2, 1)), ("e", vec(3, 0), vec(0, 2))])
    m = Induction(FWD("l"), vec(1, 1))
    h = apply_move(g, m)
    assert h.edge("e") == Edge("e", "v", "v", vec(4, 1), vec(1, 3))
    assert same_graph(apply_move(h, invert_move(m)), g)
    with pytest.raises(MoveError):
        apply_move(g, Induction(FWD("l"), ExpVector({5: 1})))
    with pytest.raises(MoveError):
        apply_move(g, Induction(FWD("e"), vec(1, 0)))


@pytest.mark.parametrize("move", [
    Slide(FWD("e1"), FWD("e1")),
    Slide(FWD("e1"), Oriented("e2", False)),
    Swap(FWD("e1"), FWD("e1")),
    Connection(FWD("e1"), FWD("e1"), 2),
    Connection(FWD("e1"), FWD("e2"), 0),
])
def test_preconditions(move):
    with pytest.raises(MoveError):
        apply_move(BASE, move)


def test_slide_needs_divisibility():
    g = single_vertex([("e1", vec(0, 3), vec(1, 4)), ("e2", vec(3, 0), vec(4, 1))])
    with pytest.raises(MoveError, match="divisible"):
        apply_move(g, Slide(FWD("e1"), FWD("e2")))


def test_connection_inverse_swaps_the_two_halves():
    p, q, w, w1 = vec(1, 0), vec(0, 2), vec(1, 1), vec(2, 1)
    g = single_vertex([("d", q, p + w1), ("l", p, p + w)])
    m = Connection(FWD("d"), FWD("l"), 3)
    h = apply_move(g, m)
    # the new end sits at q + w2 with w2 = 3w - w1; undoing restores w1
    assert h.edge("d").head_label == q + (3 * w - w1)
    assert same_graph(apply_move(h, invert_move(m)), g)


def _random_graph(rng: random.Random) -> GbsGraph:
    if rng.random() < 0.7:
        verts = ("v",)
    else:
        verts = ("u", "v")
    edges = []
    for i in range(rng.randint(1, 3)):
        t, h = rng.choice(verts), rng.choice(verts)
        edges.append(Edge(f"e{i}", t, h, vec(rng.randint(0, 3), rng.randint(0, 3), rng.randint(0, 1)),
                          vec(rng.randint(0, 4), rng.randint(0, 4), rng.randint(0, 1))))
    if len(verts) == 2 and not any({e.tail, e.head} == {"u", "v"} for e in edges):
        edges.append(Edge("c", "u", "v", vec(1, 0), vec(0, 1)))
    return GbsGraph(verts, tuple(edges))


def _all_moves(g: GbsGraph, rng: random.Random):
    moves, _ = applicable_moves(g, bound=24)
    moves += [VertexSignChange(v) for v in g.vertices] + [EdgeSignChange(e.id) for e in g.edges]
    for o in g.orientations():
        if g.origin(o) == g.terminus(o) and g.colabel(o).is_zero() and g.label(o).exps:
            p = rng.choice(sorted(g.label(o).support()))
            moves.append(Induction(o, ExpVector({p: rng.randint(1, 2)})))
    return moves


@given(st.integers(0, 10**9))
def test_every_move_is_undone_by_its_inverse(s):
    rng = random.Random(s)
    g = _random_graph(rng)
    moves = _all_moves(g, rng)
    if not moves:
        return
    m = rng.choice(moves)
    try:
        h = apply_move(g, m)
    except MoveError:
        assert isinstance(m, Induction)
        return
    assert len(h.vertices) == len(g.vertices) and len(h.edges) == len(g.edges)
    if not isinstance(m, Induction):
        assert h.prime_set() == g.prime_set()
    else:
        assert set(h.prime_set()) <= set(g.prime_set())
    assert same_graph(apply_move(h, invert_move(m)), g)
    assert move_from_json(json.loads(json.dumps(move_to_json(m)))) == m


@given(st.integers(0, 10**9))
def test_canonical_key_ignores_names_and_orientation(s):
    rng = random.Random(s)
    g = _random_graph(rng)
    ids = {e.id: f"x{i}" for i, e in enumerate(reversed(g.edges))}
    edges = []
    for e in reversed(g.edges):
        if rng.random() < 0.5:
            e = Edge(e.id, e.head, e.tail, e.head_label, e.tail_label)
        edges.append(Edge(ids[e.id], e.tail, e.head, e.tail_label, e.head_label))
    names = {v: f"w{i}" for i, v in enumerate(g.vertices[::-1])}
    edges = [Edge(e.id, names[e.tail], names[e.head], e.tail_label, e.head_label) for e in edges]
    h = GbsGraph(tuple(names[v] for v in g.vertices), tuple(edges))
    assert canonical_key(h) == canonical_key(g)
    rho = correspondence(g, h)
    assert rho is not None and same_graph(relabel(g, rho), h)
    for m in _all_moves(g, rng)[:5]:
        try:
            moved = apply_move(g, m)
        except MoveError:
            continue
        # the renamed move acts the same way on the renamed graph
        assert same_graph(relabel(moved, rho), apply_move(h, rho.move(m)))


def test_distinct_graphs_have_distinct_keys():
    assert canonical_key(BASE) != canonical_key(PARTNER)
    assert canonical_key(BASE) != canonical_key(apply_move(BASE, EdgeSignChange("e1")))
