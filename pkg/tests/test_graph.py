import itertools

import numpy as np
import pytest

from qecgraph.catalog import connected_graphs, all_graphs
from qecgraph.graph import (
    BadEdgeList,
    DisconnectedGraph,
    Graph,
    MultipartiteSpec,
    cartesian,
    complete,
    complete_bipartite,
    complete_multipartite,
    cycle,
    distance_matrix,
    empty_graph,
    from_edge_list,
    is_connected,
    join,
    parse_edge_list,
    path,
    read_edge_list,
    regularity,
)


def test_complete():
    assert complete(1).num_edges == 0
    assert complete(3).num_edges == 3
    k5 = complete(5)
    assert k5.num_edges == 10
    assert set(k5.degrees()) == {4}
    with pytest.raises(ValueError):
        complete(0)


def test_complete_multipartite():
    assert complete_multipartite([1, 1, 1]) == complete(3)
    k23 = complete_multipartite([2, 3])
    assert k23.num_edges == 6
    assert not k23.adj[:2, :2].any() and not k23.adj[2:, 2:].any()
    g = complete_multipartite([2, 2, 2])
    # each vertex misses only its partner: 6 * 4 / 2
    assert g.num_edges == 12
    assert regularity(g) == 4


def test_multipartite_spec():
    spec = MultipartiteSpec([1, 3, 2, 3])
    assert spec.distinct_sizes == (3, 2, 1)
    assert spec.multiplicities == (2, 1, 1)
    assert sum(spec.multiplicities) == spec.k
    assert sorted(spec.parts) == sorted(
        s for s, a in zip(spec.distinct_sizes, spec.multiplicities) for _ in range(a)
    )
    with pytest.raises(ValueError):
        MultipartiteSpec([3])
    with pytest.raises(ValueError):
        MultipartiteSpec([2, 0])


def test_small_families():
    assert path(2) == complete(2)
    assert cycle(3) == complete(3)
    assert from_edge_list(3, [(0, 1), (1, 2)]) == path(3)
    assert complete_bipartite(2, 3) == complete_multipartite([2, 3])
    with pytest.raises(ValueError):
        cycle(2)


def test_from_edge_list_errors():
    assert from_edge_list(3, [(0, 1), (1, 0), (2, 1)]) == path(3)
    with pytest.raises(BadEdgeList):
        from_edge_list(3, [(0, 3)])
    with pytest.raises(BadEdgeList):
        from_edge_list(3, [(1, 1)])


def test_graph_invariants_enforced():
    with pytest.raises(ValueError):
        Graph([[0, 1], [0, 0]])
    with pytest.raises(ValueError):
        Graph([[1, 0], [0, 0]])
    g = path(3)
    with pytest.raises(ValueError):
        g.adj[0, 1] = False


def test_edge_list_format(tmp_path):
    text = "# a path\n3 2\n0 1   # first\n1 2\n"
    assert parse_edge_list(text) == path(3)
    f = tmp_path / "g.txt"
    f.write_text(text)
    assert read_edge_list(f) == path(3)
    with pytest.raises(BadEdgeList):
        parse_edge_list("3 2\n0 1\n")
    with pytest.raises(BadEdgeList):
        parse_edge_list("3 1\n0 x\n")
    with pytest.raises(BadEdgeList):
        parse_edge_list("")


def test_join_examples():
    wheel = join(complete(1), cycle(4))
    assert wheel.n == 5 and wheel.num_edges == 8
    g = join(path(4), cycle(3))
    assert g.n == 7 and g.num_edges == 3 + 3 + 12
    assert join(empty_graph(2), empty_graph(3)) == complete_bipartite(2, 3)
    assert join(complete(2), complete(3)) == complete(5)


def test_join_blocks():
    g1, g2 = path(4), cycle(3)
    g = join(g1, g2)
    assert np.array_equal(g.adj[:4, :4], g1.adj)
    assert np.array_equal(g.adj[4:, 4:], g2.adj)
    assert g.adj[:4, 4:].all()


def test_cartesian_examples():
    sq = cartesian(complete(2), complete(2))
    # C4 with vertices in order 0, 1, 3, 2
    assert Graph(sq.adj[np.ix_([0, 1, 3, 2], [0, 1, 3, 2])]) == cycle(4)
    g = cartesian(path(3), cycle(3))
    assert g.n == 9 and g.num_edges == 15
    for h in (path(4), cycle(5), complete_bipartite(2, 3)):
        assert cartesian(complete(1), h) == h


def test_cartesian_block_order():
    g1, g2 = path(3), cycle(4)
    g = cartesian(g1, g2)
    n = g2.n
    # block M_k holds (u_k, v_1..v_n)
    for k in range(g1.n):
        assert np.array_equal(g.adj[k * n:(k + 1) * n, k * n:(k + 1) * n], g2.adj)


def test_distance_matrix():
    assert distance_matrix(path(3)).tolist() == [[0, 1, 2], [1, 0, 1], [2, 1, 0]]
    with pytest.raises(DisconnectedGraph):
        distance_matrix(empty_graph(2))
    assert distance_matrix(complete(1)).tolist() == [[0]]


def test_connectivity_and_regularity():
    assert regularity(cycle(5)) == 2
    assert regularity(path(3)) is None
    assert regularity(empty_graph(3)) == 0
    assert not is_connected(empty_graph(2))
    assert is_connected(complete(1))


def _check_distance_invariants(g, d):
    n = g.n
    assert (d.diagonal() == 0).all()
    assert np.array_equal(d, d.T)
    off = ~np.eye(n, dtype=bool)
    assert (d[off] >= 1).all()
    assert np.array_equal(d == 1, g.adj)
    for v in range(n):
        assert (d <= d[:, [v]] + d[[v], :]).all()


@pytest.mark.parametrize("g", connected_graphs(5), ids=str)
def test_distance_invariants(g):
    _check_distance_invariants(g, distance_matrix(g))


def test_cartesian_distance_additivity_exhaustive():
    graphs = connected_graphs(4)
    for g1, g2 in itertools.product(graphs, repeat=2):
        d1, d2 = distance_matrix(g1), distance_matrix(g2)
        expected = (d1[:, None, :, None] + d2[None, :, None, :]).reshape(g1.n * g2.n, -1)
        assert np.array_equal(distance_matrix(cartesian(g1, g2)), expected)


def test_join_always_connected_diameter_two():
    for n1, n2 in [(1, 1), (2, 3), (3, 4)]:
        for g1 in all_graphs(n1):
            for g2 in all_graphs(n2):
                d = distance_matrix(join(g1, g2))
                assert d.max() <= 2


def test_cartesian_connected_iff_factors():
    graphs = all_graphs(3)
    for g1, g2 in itertools.product(graphs, repeat=2):
        assert is_connected(cartesian(g1, g2)) == (is_connected(g1) and is_connected(g2))
