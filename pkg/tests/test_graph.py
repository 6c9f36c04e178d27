"""Graph construction, the edge-list format, and the split helpers."""

import random

import numpy as np
import pytest

from pathfree import (
    ContractViolation,
    Graph,
    InternalInvariantError,
    UsageError,
    crossing_edge_count,
    parse_edge_list,
    random_balanced_bipartition,
    serialize_edge_list,
    substream,
)
from pathfree.graph import induced_bipartite, read_header_fields, subtract

from conftest import complete_graph, random_graph


def test_build_canonicalizes_orientation():
    g = Graph.build(4, [(3, 1), (0, 2)])
    assert g.edges == {(1, 3), (0, 2)}
    assert g.sorted_edges() == [(0, 2), (1, 3)]
    assert g.has_edge(3, 1) and g.has_edge(1, 3)


def test_build_rejects_bad_edges():
    with pytest.raises(ContractViolation):
        Graph.build(3, [(1, 1)])
    with pytest.raises(ContractViolation):
        Graph.build(3, [(0, 3)])
    with pytest.raises(ContractViolation):
        Graph.build(3, [(0, 1), (1, 0)])


def test_degrees_and_neighbours():
    g = Graph.build(5, [(0, 1), (0, 2), (0, 3)])
    assert g.degree(0) == 3 and g.degree(4) == 0
    assert g.neighbours(0) == (1, 2, 3)
    assert g.max_degree == 3
    assert g.non_isolated() == {0, 1, 2, 3}
    assert g.edge_count == 3


def test_parse_plain_rows_infers_vertex_count():
    g = parse_edge_list("0 1\n2 5\n")
    assert g.vertex_count == 6
    assert g.edges == {(0, 1), (2, 5)}


def test_parse_header_comments_and_blanks():
    text = "# generated for a smoke test\n# n=9\n\n0 1   # trailing note\n\n7 3\n"
    g = parse_edge_list(text)
    assert g.vertex_count == 9
    assert g.edges == {(0, 1), (3, 7)}


def test_parse_empty_graph_header_only():
    g = parse_edge_list("# n=4\n")
    assert g.vertex_count == 4 and g.edge_count == 0
    assert parse_edge_list("").vertex_count == 0


@pytest.mark.parametrize(
    "text,fragment",
    [
        ("0 0\n", "loop"),
        ("0 1\n1 0\n", "duplicate"),
        ("0 -2\n", "negative"),
        ("# n=3\n0 5\n", "outside"),
        ("0 1 2\n", "two integers"),
        ("a b\n", "two integers"),
        ("# n=x\n0 1\n", "bad header"),
    ],
)
def test_parse_rejects_malformed_input(text, fragment):
    with pytest.raises(UsageError) as err:
        parse_edge_list(text)
    assert fragment in str(err.value)


def test_parse_errors_carry_line_numbers():
    with pytest.raises(UsageError) as err:
        parse_edge_list("0 1\n2 2\n")
    assert "line 2" in str(err.value)


def test_serialize_parse_round_trip(rnd):
    for _ in range(50):
        g = random_graph(rnd, n_max=12)
        assert parse_edge_list(serialize_edge_list(g)) == g


def test_serialize_comments_do_not_disturb_parsing():
    g = Graph.build(3, [(0, 1)])
    text = serialize_edge_list(g, comments=("source: unit test", "m=999 ignored"))
    assert text.splitlines()[1] == "# source: unit test"
    assert parse_edge_list(text) == g


def test_read_header_first_value_wins():
    fields = read_header_fields("# n=4 r=2\n# n=7\n0 1\n", ("n", "r"))
    assert fields == {"n": 4, "r": 2}


def test_subtract_and_induced_bipartite():
    g = complete_graph(4)
    smaller = subtract(g, [(0, 1), (2, 3)])
    assert smaller.edge_count == 4
    with pytest.raises(ContractViolation):
        subtract(smaller, [(0, 1)])
    cross = induced_bipartite(g, {0, 1}, {2, 3})
    assert cross.edges == {(0, 2), (0, 3), (1, 2), (1, 3)}
    with pytest.raises(ContractViolation):
        induced_bipartite(g, {0, 1}, {1, 2})


def test_crossing_edge_count_matches_direct_count(rnd):
    for trial in range(30):
        g = random_graph(rnd, n_max=10)
        a = frozenset(v for v in range(g.vertex_count) if rnd.random() < 0.5)
        direct = sum(1 for u, v in g.edges if (u in a) != (v in a))
        assert crossing_edge_count(g, a) == direct


def test_random_balanced_bipartition_properties():
    rnd = random.Random(31)
    for trial in range(40):
        g = random_graph(rnd, n_max=12, density=0.5)
        pool = g.non_isolated() or frozenset(range(g.vertex_count))
        bp = random_balanced_bipartition(g, pool, substream(trial, "split"))
        assert len(bp.a) == (len(pool) + 1) // 2
        assert bp.a | bp.rest == pool and not (bp.a & bp.rest)
        assert bp.crossing_edges == crossing_edge_count(g, bp.a)
        assert 2 * bp.crossing_edges >= g.edge_count


def test_random_balanced_bipartition_failure_is_internal():
    # pool = an isolated vertex: no draw can ever cut half of the edges
    g = Graph.build(4, [(1, 2), (1, 3), (2, 3)])
    with pytest.raises(InternalInvariantError):
        random_balanced_bipartition(g, {0}, substream(0, "hopeless"), max_tries=4)
    with pytest.raises(ContractViolation):
        random_balanced_bipartition(g, set(), substream(0, "empty"))
