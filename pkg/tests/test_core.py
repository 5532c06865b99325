import itertools
import math

import numpy as np
import pytest

from qecgraph.catalog import connected_graphs, random_connected_graphs
from qecgraph.core import (
    NotQEClass,
    QecResult,
    TrivialGraph,
    conditional_extrema,
    is_qe_class,
    qec_join_adjacency,
    qec_oracle,
    quadratic_embedding,
    stationary_residual,
)
from qecgraph.graph import (
    DisconnectedGraph,
    cartesian,
    complete,
    complete_bipartite,
    cycle,
    distance_matrix,
    empty_graph,
    join,
    path,
)
from qecgraph.spectral import helmert_basis

# max over unit f in e-perp of <f, D f> for C5; D is circulant with first row
# (0,1,2,2,1), so the restricted spectrum is 2cos(2pi k/5) + 4cos(4pi k/5), k=1..4
C5_QEC = max(2 * math.cos(2 * math.pi * k / 5) + 4 * math.cos(4 * math.pi * k / 5) for k in range(1, 5))


def test_c5_constant_matches_closed_value():
    assert C5_QEC == pytest.approx(-(3 - math.sqrt(5)) / 2, abs=1e-14)


@pytest.mark.parametrize("n", range(2, 7))
def test_oracle_complete(n):
    assert qec_oracle(complete(n)).value == pytest.approx(-1, abs=1e-12)


def test_oracle_examples():
    assert qec_oracle(complete_bipartite(2, 2)).value == pytest.approx(0, abs=1e-12)
    assert qec_oracle(cycle(5)).value == pytest.approx(C5_QEC, abs=1e-12)
    # dense cross-check of the compressed matrix
    d = distance_matrix(cycle(5)).astype(float)
    q = helmert_basis(5)
    assert qec_oracle(cycle(5)).value == pytest.approx(np.linalg.eigvalsh(q.T @ d @ q)[-1], abs=1e-12)


def test_oracle_errors():
    with pytest.raises(DisconnectedGraph):
        qec_oracle(empty_graph(3))
    with pytest.raises(TrivialGraph):
        qec_oracle(complete(1))


def test_result_float_and_metadata():
    res = qec_oracle(path(4))
    assert isinstance(res, QecResult)
    assert float(res) == res.value
    assert res.method == "oracle"


def test_conditional_extrema_examples():
    assert conditional_extrema(np.eye(3)) == pytest.approx((1, 1), abs=1e-12)
    assert conditional_extrema(np.ones((3, 3))) == pytest.approx((0, 0), abs=1e-12)
    with pytest.raises(ValueError):
        conditional_extrema(np.eye(1))


def test_conditional_extrema_p3_circle_sweep():
    a = path(3).adjacency_matrix()
    q = helmert_basis(3)
    t = np.linspace(0, 2 * np.pi, 10**6, endpoint=False)
    f = q @ np.vstack([np.cos(t), np.sin(t)])
    vals = np.einsum("it,ij,jt->t", f, a, f)
    lo, hi = conditional_extrema(a)
    assert lo == pytest.approx(vals.min(), abs=1e-10)
    assert hi == pytest.approx(vals.max(), abs=1e-10)
    # constrained to e-perp the minimum is -4/3, above the unconstrained -sqrt(2)
    assert (lo, hi) == pytest.approx((-4 / 3, 0), abs=1e-12)


def test_join_adjacency_examples():
    assert qec_join_adjacency(complete(2), complete(1)).value == pytest.approx(-1, abs=1e-12)
    assert qec_join_adjacency(empty_graph(2), empty_graph(2)).value == pytest.approx(0, abs=1e-12)
    wheel = qec_join_adjacency(complete(1), cycle(4))
    assert wheel.method == "join_adjacency"
    assert wheel.value == pytest.approx(qec_oracle(join(complete(1), cycle(4))).value, abs=1e-9)


def test_join_adjacency_matches_oracle_random():
    gs = random_connected_graphs(12, max_n=7, seed=5, min_n=1) + [empty_graph(3), empty_graph(1)]
    for g1, g2 in itertools.combinations(gs, 2):
        a = qec_join_adjacency(g1, g2).value
        b = qec_oracle(join(g1, g2)).value
        assert abs(a - b) <= 1e-8


def test_is_qe_class_examples():
    assert is_qe_class(path(5))
    assert qec_oracle(path(5)).value < 0
    assert not is_qe_class(complete_bipartite(3, 3))
    assert is_qe_class(complete(4))
    with pytest.raises(DisconnectedGraph):
        is_qe_class(empty_graph(2))


def _reconstruction_error(g, pts):
    d = distance_matrix(g)
    sq = ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(axis=-1)
    return np.abs(sq - d).max()


def test_embedding_examples():
    pts = quadratic_embedding(complete(2))
    assert pts.shape == (2, 1)
    assert _reconstruction_error(complete(2), pts) <= 1e-12
    pts = quadratic_embedding(complete(3))
    assert pts.shape == (3, 2)
    assert _reconstruction_error(complete(3), pts) <= 1e-12
    pts = quadratic_embedding(path(3))
    assert ((pts[0] - pts[2]) ** 2).sum() == pytest.approx(2)
    assert _reconstruction_error(path(3), pts) <= 1e-10


def test_embedding_rejects_non_qe():
    with pytest.raises(NotQEClass):
        quadratic_embedding(complete_bipartite(3, 3))


@pytest.mark.parametrize("g", [g for g in connected_graphs(5) if g.n >= 2], ids=str)
def test_oracle_lower_bound_and_equality(g):
    res = qec_oracle(g)
    assert res.value >= -1 - 1e-12
    assert (abs(res.value + 1) <= 1e-9) == g.is_complete()
    f = res.achieving_vector
    d = distance_matrix(g).astype(float)
    assert abs(f @ f - 1) <= 1e-10
    assert abs(f.sum()) <= 1e-10
    assert f @ d @ f == pytest.approx(res.value, abs=1e-8)
    assert stationary_residual(d, f, res.value) <= 1e-7


def test_stationary_residual_detects_non_stationary():
    d = distance_matrix(path(4)).astype(float)
    f = helmert_basis(4)[:, 0]
    assert stationary_residual(d, f, f @ d @ f) > 1e-3


def test_cartesian_monotone_and_qe_products():
    gs = [g for g in connected_graphs(4) if g.n >= 2]
    for g1, g2 in itertools.combinations_with_replacement(gs, 2):
        q1, q2 = qec_oracle(g1).value, qec_oracle(g2).value
        q = qec_oracle(cartesian(g1, g2)).value
        assert max(q1, q2) <= q + 1e-9
        both = q1 <= 1e-9 and q2 <= 1e-9
        if both:
            assert abs(q) <= 1e-8
        assert is_qe_class(cartesian(g1, g2)) == both
