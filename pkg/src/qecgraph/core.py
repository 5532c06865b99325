"""Direct numerical QEC: constrained extrema of quadratic forms on the e-perp hyperplane."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .graph import Graph, distance_matrix, join
from .spectral import as_symmetric, compress_to_e_perp, eigen_sym, helmert_basis, jacobi_eigh

__all__ = [
    "QE_TOL",
    "QecResult",
    "TrivialGraph",
    "NotQEClass",
    "qec_oracle",
    "conditional_extrema",
    "qec_join_adjacency",
    "is_qe_class",
    "quadratic_embedding",
    "stationary_residual",
]

QE_TOL = 1e-9


class TrivialGraph(ValueError):
    """QEC is undefined for a single vertex (no unit vector is orthogonal to e)."""


class NotQEClass(ValueError):
    pass


@dataclass(frozen=True)
class QecResult:
    """A QEC value and how it was obtained.

    ``method`` is one of ``"oracle"``, ``"join_adjacency"``, ``"theorem_branch"``
    or ``"closed_form"``.  ``provenance`` names the achieving branch(es).
    """

    value: float
    method: str
    provenance: Optional[str] = None
    achieving_vector: Optional[np.ndarray] = None
    rational: Optional[str] = None

    def __float__(self):
        return float(self.value)


def _constrained_eigh(m):
    m = as_symmetric(m)
    if m.shape[0] < 2:
        raise TrivialGraph("the constraint set {f : <f,f>=1, <e,f>=0} is empty for n = 1")
    q = helmert_basis(m.shape[0])
    values, vectors = jacobi_eigh(compress_to_e_perp(m))
    return values, q @ vectors


def conditional_extrema(m) -> tuple[float, float]:
    """(min, max) of <f, M f> over unit vectors f orthogonal to e."""
    values, _ = _constrained_eigh(m)
    return float(values[0]), float(values[-1])


def qec_oracle(g: Graph) -> QecResult:
    if g.n < 2:
        raise TrivialGraph(f"{g!r} has a single vertex; QEC is undefined")
    d = distance_matrix(g)
    values, vectors = _constrained_eigh(d)
    f = vectors[:, -1]
    return QecResult(float(values[-1]), "oracle", "numeric oracle", f)


def qec_join_adjacency(g1: Graph, g2: Graph) -> QecResult:
    """QEC(G1 + G2) = -2 - min <f, A f> over unit f orthogonal to e.

    Only the adjacency matrix of the join enters, so the operands may be
    disconnected.
    """
    a = join(g1, g2).adjacency_matrix()
    values, vectors = _constrained_eigh(a)
    return QecResult(-2.0 - float(values[0]), "join_adjacency", "min conditional adjacency form", vectors[:, 0])


def is_qe_class(g: Graph, tol: float = QE_TOL) -> bool:
    return qec_oracle(g).value <= tol


def stationary_residual(m, f, lam: float) -> float:
    """Norm of (M - lam I) f - (mu/2) e with the best-fitting multiplier mu."""
    m = as_symmetric(m)
    f = np.asarray(f, dtype=float)
    r = m @ f - lam * f
    half_mu = r.sum() / len(f)
    return float(np.linalg.norm(r - half_mu))


def quadratic_embedding(g: Graph, tol: float = QE_TOL) -> np.ndarray:
    """Points psi(v) (rows) with ||psi(u) - psi(v)||^2 = d(u, v).

    Classical scaling of the distance matrix itself (not its square): the
    double-centred matrix -C D C / 2 is positive semidefinite exactly when the
    graph is of QE class.  Eigenvalues in [-tol, tol] are treated as zero and
    the dimension is the number of eigenvalues above ``tol``.
    """
    d = distance_matrix(g).astype(float)
    n = g.n
    c = np.eye(n) - np.full((n, n), 1.0 / n)
    gram = -0.5 * c @ d @ c
    dec = eigen_sym(gram)
    if dec.values[0] < -tol:
        raise NotQEClass(f"{g!r} is not of QE class (centred Gram eigenvalue {dec.values[0]:.3e})")
    keep = dec.values > tol
    return dec.vectors[:, keep] * np.sqrt(dec.values[keep])
