"""Block extraction: greedy assignment, certificates, degree bands."""

import random
from fractions import Fraction

import pytest

from pathfree import (
    ContractViolation,
    Graph,
    UsageError,
    block_partition,
    degree_class_decompose,
    extract_from_densest_band,
    extract_path_free_subgraph,
    greedy_bin_assignment,
    substream,
)

from conftest import edge_adjacency, has_path_on, random_graph, star_graph


def matching_graph(pairs: int) -> Graph:
    return Graph.build(2 * pairs, [(i, pairs + i) for i in range(pairs)])


def test_greedy_assignment_follows_neighbour_counts():
    g = star_graph(5)
    parts = greedy_bin_assignment(g, (frozenset({0}),), range(1, 6))
    assert parts == (frozenset({1, 2, 3, 4, 5}),)


def test_greedy_assignment_ties_go_low():
    square = Graph.build(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    parts = greedy_bin_assignment(square, (frozenset({0}), frozenset({2})), [1, 3])
    # 1 and 3 each see one neighbour per part; the tie lands in part 0
    assert parts == (frozenset({1, 3}), frozenset())


def test_greedy_assignment_isolated_lands_in_part_zero():
    g = Graph.build(5, [(0, 1)])
    parts = greedy_bin_assignment(g, (frozenset({0}), frozenset({2})), [4])
    assert parts == (frozenset({4}), frozenset())


def test_greedy_assignment_contract_errors():
    g = star_graph(3)
    with pytest.raises(ContractViolation):
        greedy_bin_assignment(g, (frozenset({0}), frozenset({0})), [1])
    with pytest.raises(ContractViolation):
        greedy_bin_assignment(g, (frozenset({0}),), [0, 1])


def test_block_partition_keeps_only_matched_blocks(rnd):
    for trial in range(60):
        g = random_graph(rnd, n_max=12, density=0.5)
        vertices = sorted(range(g.vertex_count))
        cut = rnd.randint(1, max(1, g.vertex_count - 1))
        a = frozenset(vertices[:cut])
        b = frozenset(vertices[cut:])
        q = rnd.randint(1, 4)
        split = block_partition(g, a, b, q, substream(trial, "block"))
        owner_a = {v: i for i, part in enumerate(split.a_parts) for v in part}
        owner_b = {v: i for i, part in enumerate(split.b_parts) for v in part}
        assert set(owner_a) == set(a) and set(owner_b) == set(b)
        for u, v in g.edges:
            in_block = (
                owner_a.get(u) == owner_b.get(v) and u in owner_a and v in owner_b
            ) or (owner_a.get(v) == owner_b.get(u) and v in owner_a and u in owner_b)
            assert ((u, v) in split.kept_edges) == in_block


def test_block_partition_validation():
    g = star_graph(3)
    with pytest.raises(UsageError):
        block_partition(g, frozenset({0}), frozenset({1}), 0, substream(0, "x"))
    with pytest.raises(ContractViolation):
        block_partition(g, frozenset({0, 1}), frozenset({1}), 2, substream(0, "x"))


def test_matching_extraction_is_lossless():
    # one side of a perfect matching as the core: the random half A keeps
    # exactly its own matched edges, every trial, under any part count
    g = matching_graph(6)
    result = extract_path_free_subgraph(
        g, core=range(6), independent=range(6, 12), k=4, trials=50, seed=3
    )
    assert result.q == 4  # floor(6 * ceil(6/2) / 4)
    assert not result.q_clamped
    assert result.certified
    assert result.crossing_edges == 3
    assert result.subgraph.edge_count == 3
    assert result.mean_edges == 3.0
    matched = {frozenset(e) for e in result.subgraph.edges}
    assert matched <= {frozenset((i, 6 + i)) for i in range(6)}


def test_extraction_deterministic_and_thread_invariant():
    g = Graph.build(
        14, [(i, j) for i in range(7) for j in range(7, 14) if (i + j) % 3]
    )
    one = extract_path_free_subgraph(g, range(7), range(7, 14), k=5, trials=30, seed=8)
    two = extract_path_free_subgraph(g, range(7), range(7, 14), k=5, trials=30, seed=8)
    threaded = extract_path_free_subgraph(
        g, range(7), range(7, 14), k=5, trials=30, seed=8, threads=3
    )
    for other in (two, threaded):
        assert other.subgraph == one.subgraph
        assert other.chosen_trial == one.chosen_trial
        assert other.certificate == one.certificate
        assert other.mean_edges == one.mean_edges
    different = extract_path_free_subgraph(
        g, range(7), range(7, 14), k=5, trials=30, seed=9
    )
    assert different.chosen_trial is not None


def test_certified_extractions_have_no_long_path(rnd):
    hits = 0
    for trial in range(60):
        g = random_graph(rnd, n_max=13, density=0.45)
        if g.edge_count == 0:
            continue
        k = rnd.choice([4, 5, 6])
        result = extract_path_free_subgraph(
            g, core=range(g.vertex_count), independent=(), k=k, trials=25, seed=trial
        )
        expected_q = max(1, (6 * ((g.vertex_count + 1) // 2)) // k)
        assert result.q == expected_q
        assert result.q_clamped == ((6 * ((g.vertex_count + 1) // 2)) // k < 1)
        if result.certified:
            hits += 1
            assert result.certificate in ("part-size", "block-path", "component-order")
            assert not has_path_on(edge_adjacency(result.subgraph.edges), k)
            assert result.subgraph.edges <= g.edges
    assert hits > 20  # the certifying tiers must fire often at this scale


def test_extraction_validation():
    g = star_graph(4)
    with pytest.raises(ContractViolation):
        extract_path_free_subgraph(g, core=(), independent=(), k=4)
    with pytest.raises(ContractViolation):
        extract_path_free_subgraph(g, core=[0, 1], independent=[1], k=4)
    with pytest.raises(UsageError):
        extract_path_free_subgraph(g, core=[0], independent=[], k=3)
    with pytest.raises(UsageError):
        extract_path_free_subgraph(g, core=[0], independent=[], k=4, trials=0)
    with pytest.raises(ContractViolation):
        # edge (1, 2) avoids the core
        extract_path_free_subgraph(
            Graph.build(3, [(0, 1), (1, 2)]), core=[0], independent=[], k=4
        )
    with pytest.raises(ContractViolation):
        # an edge inside the "independent" set also avoids the core
        extract_path_free_subgraph(
            Graph.build(3, [(0, 1), (1, 2)]), core=[2], independent=[0, 1], k=4
        )


def test_decompose_high_floor_leaves_everything_residual():
    g = star_graph(5)
    decomp = degree_class_decompose(g, degree_floor=8)
    assert decomp.classes == ()
    assert decomp.residual == g
    assert decomp.residual_vertices == frozenset(range(6))


def test_decompose_peels_the_hub_first():
    g = star_graph(20)
    decomp = degree_class_decompose(g, degree_floor=1)
    assert decomp.classes[0].vertices == frozenset({0})
    assert decomp.classes[0].graph.edge_count == 20
    assert decomp.residual.edge_count == 0
    total = sum(c.graph.edge_count for c in decomp.classes)
    assert total + decomp.residual.edge_count == g.edge_count


def test_decompose_regular_graph_is_one_band():
    square = Graph.build(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
    decomp = degree_class_decompose(square, degree_floor=1)
    assert len(decomp.classes) == 1
    assert decomp.classes[0].vertices == frozenset(range(4))
    assert decomp.classes[0].graph == square


def test_decompose_partitions_edges(rnd):
    for trial in range(50):
        g = random_graph(rnd, n_max=14, density=0.5)
        decomp = degree_class_decompose(g, degree_floor=rnd.randint(1, 4))
        pieces = [c.graph.edges for c in decomp.classes] + [decomp.residual.edges]
        assert sum(len(p) for p in pieces) == g.edge_count
        combined: set = set()
        for p in pieces:
            assert not (combined & p)
            combined |= p
        assert combined == g.edges


def test_decompose_validation():
    g = star_graph(3)
    with pytest.raises(UsageError):
        degree_class_decompose(g, band_ratio=Fraction(3, 2))
    with pytest.raises(UsageError):
        degree_class_decompose(g, degree_floor=0)


def test_banded_extraction_star_selects_band_and_keeps_all():
    g = star_graph(20)
    banded = extract_from_densest_band(g, beta=0.5, r=2, k=4, trials=10, seed=1)
    assert banded.selection == "band"
    assert banded.band_level == 1
    assert banded.extraction.certified
    assert banded.extraction.q == 1
    assert banded.achieved_ratio == 1  # a star has no 4-vertex path to break
    assert banded.selected_edges == 20


def test_banded_extraction_low_degree_routes_to_residual():
    # degree floor r = 8 swallows a 5-star whole: no bands form
    g = star_graph(5)
    banded = extract_from_densest_band(g, beta=0.5, r=8, k=4, trials=20, seed=2)
    assert banded.selection == "residual"
    assert banded.bands == 0
    assert banded.extraction.certified
    assert 0 < banded.achieved_ratio <= 1


def test_banded_extraction_empty_graph():
    banded = extract_from_densest_band(Graph.build(5, []), beta=0.5, r=4, k=5)
    assert banded.selection == "empty"
    assert banded.extraction.certified
    assert banded.achieved_ratio == 0


def test_banded_extraction_reference_ratio_and_validation():
    g = star_graph(6)
    banded = extract_from_densest_band(g, beta=0.5, r=10, k=4, trials=5, seed=0)
    assert banded.reference_ratio == pytest.approx(60 / (0.5**0.9 * 10))
    with pytest.raises(UsageError):
        extract_from_densest_band(g, beta=0.0, r=10, k=4)
    with pytest.raises(UsageError):
        extract_from_densest_band(g, beta=0.5, r=0, k=4)
