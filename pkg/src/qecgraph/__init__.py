"""Quadratic embedding constants (QEC) of finite simple graphs.

The numeric oracle maximises <f, D f> over unit f orthogonal to the all-ones
vector; the formula layer evaluates closed forms for joins with regular or
complete multipartite graphs and Cartesian products with K_m or K_{m,n}.
"""

from .core import QecResult, is_qe_class, qec_join_adjacency, qec_oracle, quadratic_embedding
from .formulas import (
    qec_cart_bipartite,
    qec_cart_complete,
    qec_complete,
    qec_complete_bipartite,
    qec_join_multipartite,
    qec_join_regular,
)
from .graph import (
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
    join,
    path,
)

__all__ = [
    "QecResult",
    "is_qe_class",
    "qec_join_adjacency",
    "qec_oracle",
    "quadratic_embedding",
    "qec_cart_bipartite",
    "qec_cart_complete",
    "qec_complete",
    "qec_complete_bipartite",
    "qec_join_multipartite",
    "qec_join_regular",
    "Graph",
    "MultipartiteSpec",
    "cartesian",
    "complete",
    "complete_bipartite",
    "complete_multipartite",
    "cycle",
    "distance_matrix",
    "empty_graph",
    "from_edge_list",
    "join",
    "path",
]

__version__ = "0.1.0"
