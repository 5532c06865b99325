"""Dense symmetric eigensolver and the spectral helpers built on it.

Everything here works on small dense matrices (a few hundred rows at most).
The eigensolver is a cyclic Jacobi method in round-robin ordering so that
each round applies n/2 disjoint rotations with whole-array numpy operations.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional, Sequence

import numpy as np

__all__ = [
    "ConvergenceError",
    "PoleProximity",
    "EigenDecomposition",
    "RationalSecular",
    "as_symmetric",
    "jacobi_eigh",
    "eigen_sym",
    "helmert_basis",
    "compress_to_e_perp",
    "sigma0",
    "in_spectrum",
    "resolvent_form",
    "resolvent_secular",
    "secular_roots",
    "TOL_ROOT",
    "POLE_PAD",
]

MAX_SWEEPS = 100
TOL_ROOT = 1e-12
POLE_PAD = 1e-10
SIGMA0_TOL = 1e-8


class ConvergenceError(RuntimeError):
    pass


class PoleProximity(ValueError):
    """Evaluation point sits on (or within grouping tolerance of) a pole."""


def as_symmetric(m) -> np.ndarray:
    """Float copy of ``m`` with exactly symmetric entries."""
    a = np.array(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return (a + a.T) / 2.0


@lru_cache(maxsize=None)
def _round_robin(n: int) -> tuple[tuple[np.ndarray, np.ndarray], ...]:
    # circle method; an odd order gets a phantom player n that is dropped
    players = list(range(n + (n % 2)))
    size = len(players)
    rounds = []
    for _ in range(size - 1):
        pairs = [(players[i], players[size - 1 - i]) for i in range(size // 2)]
        pairs = [(min(p), max(p)) for p in pairs if max(p) < n]
        p = np.array([a for a, _ in pairs], dtype=np.intp)
        q = np.array([b for _, b in pairs], dtype=np.intp)
        rounds.append((p, q))
        players = [players[0], players[-1]] + players[1:-1]
    return tuple(rounds)


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(a.diagonal())
    return float(np.sqrt((off * off).sum()))


def jacobi_eigh(m, tol: Optional[float] = None, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns).

    Sweeps stop once the off-diagonal Frobenius norm drops below ``tol``
    (default ``1e-11 * max|m_ij|``); one extra sweep is then run to push the
    residual down to rounding level.
    """
    a = as_symmetric(m)
    n = a.shape[0]
    v = np.eye(n)
    if n == 1:
        return a.diagonal().copy(), v
    scale = float(np.abs(a).max())
    if tol is None:
        tol = 1e-11 * scale
    tiny = np.finfo(float).tiny
    rounds = _round_robin(n)
    extra = False
    for _ in range(max_sweeps):
        if _off_norm(a) <= tol:
            if extra:
                break
            extra = True
        for p, q in rounds:
            apq = a[p, q]
            active = np.abs(apq) > tiny
            if not active.any():
                continue
            p, q, apq = p[active], q[active], apq[active]
            tau = (a[q, q] - a[p, p]) / (2.0 * apq)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.hypot(1.0, tau))
            c = 1.0 / np.hypot(1.0, t)
            s = t * c

            rp, rq = a[p, :], a[q, :]
            a[p, :], a[q, :] = c[:, None] * rp - s[:, None] * rq, s[:, None] * rp + c[:, None] * rq
            cp, cq = a[:, p], a[:, q]
            a[:, p], a[:, q] = cp * c - cq * s, cp * s + cq * c
            a[p, q] = a[q, p] = 0.0
            vp, vq = v[:, p], v[:, q]
            v[:, p], v[:, q] = vp * c - vq * s, vp * s + vq * c
    else:
        raise ConvergenceError(
            f"Jacobi did not converge in {max_sweeps} sweeps "
            f"(n={n}, off-diagonal norm {_off_norm(a):.3e}, tol {tol:.3e})"
        )
    w = a.diagonal().copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]


@dataclass(frozen=True)
class EigenDecomposition:
    """Full spectral data of a symmetric matrix.

    ``groups[i]`` holds the indices (into ``values``) of the i-th distinct
    eigenvalue ``distinct[i]``; ``e_weights[i]`` is the squared norm of the
    projection of the all-ones vector onto that eigenspace.
    """

    values: np.ndarray
    vectors: np.ndarray
    groups: tuple[np.ndarray, ...]
    distinct: np.ndarray
    e_weights: np.ndarray
    tol_group: float

    @property
    def n(self) -> int:
        return len(self.values)

    @property
    def multiplicities(self) -> np.ndarray:
        return np.array([len(g) for g in self.groups])

    def poles(self, weight_tol: Optional[float] = None):
        """Distinct eigenvalues whose eigenspace is not orthogonal to e."""
        if weight_tol is None:
            weight_tol = (SIGMA0_TOL * math.sqrt(self.n)) ** 2
        keep = self.e_weights > weight_tol
        return self.distinct[keep], self.e_weights[keep]

    def sigma0(self, tol: float = SIGMA0_TOL) -> list[float]:
        e_dot = self.vectors.sum(axis=0)
        out = []
        for lam, idx in zip(self.distinct, self.groups):
            if len(idx) >= 2 or abs(e_dot[idx[0]]) <= tol * math.sqrt(self.n):
                out.append(float(lam))
        return out


def eigen_sym(m, tol_eig: Optional[float] = None) -> EigenDecomposition:
    a = as_symmetric(m)
    values, vectors = jacobi_eigh(a, tol_eig)
    radius = float(np.abs(values).max()) if len(values) else 0.0
    tol_group = 1e-7 * (1.0 + radius)

    groups = []
    start = 0
    for i in range(1, len(values) + 1):
        if i == len(values) or values[i] - values[i - 1] > tol_group:
            groups.append(np.arange(start, i))
            start = i
    e_dot = vectors.sum(axis=0)
    distinct = np.array([values[g].mean() for g in groups])
    weights = np.array([float((e_dot[g] ** 2).sum()) for g in groups])
    return EigenDecomposition(values, vectors, tuple(groups), distinct, weights, tol_group)


def _decompose(m) -> EigenDecomposition:
    return m if isinstance(m, EigenDecomposition) else eigen_sym(m)


@lru_cache(maxsize=64)
def _helmert(n: int) -> np.ndarray:
    q = np.zeros((n, n - 1))
    for k in range(1, n):
        norm = math.sqrt(k * (k + 1))
        q[:k, k - 1] = 1.0 / norm
        q[k, k - 1] = -k / norm
    q.setflags(write=False)
    return q


def helmert_basis(n: int) -> np.ndarray:
    """n x (n-1) matrix whose orthonormal columns span the complement of e.

    Column k has k leading entries 1/sqrt(k(k+1)) followed by -k/sqrt(k(k+1)).
    """
    if n < 2:
        raise ValueError("the complement of e is trivial for n < 2")
    return _helmert(n)


def compress_to_e_perp(m) -> np.ndarray:
    """Q^T M Q for the Helmert basis Q; an (n-1) x (n-1) symmetric matrix."""
    a = as_symmetric(m)
    if a.shape[0] < 2:
        raise ValueError("cannot compress a 1x1 matrix: the constraint set is empty")
    q = helmert_basis(a.shape[0])
    return as_symmetric(q.T @ a @ q)


def sigma0(m, tol: float = SIGMA0_TOL) -> list[float]:
    """Eigenvalues owning an eigenvector orthogonal to the all-ones vector."""
    return _decompose(m).sigma0(tol)


def in_spectrum(value: float, values, tol: float) -> bool:
    return any(abs(value - v) <= tol for v in values)


def resolvent_form(dec: EigenDecomposition, lam: float) -> float:
    """<e, (M - lam I)^{-1} e> through the spectral expansion sum w_i/(mu_i - lam)."""
    poles, weights = dec.poles()
    near = np.abs(poles - lam) <= dec.tol_group
    if near.any():
        raise PoleProximity(f"lambda={lam!r} is within {dec.tol_group:.1e} of pole {poles[near][0]!r}")
    return float((weights / (poles - lam)).sum())


@dataclass(frozen=True)
class RationalSecular:
    """f(lam) = alpha + beta*lam + sum_i weights[i] / (poles[i] - lam)."""

    alpha: float
    beta: float
    poles: tuple[float, ...]
    weights: tuple[float, ...]

    @classmethod
    def build(cls, alpha=0.0, beta=0.0, poles: Sequence[float] = (), weights: Sequence[float] = (),
              merge_tol: float = 0.0):
        """Sort poles, merge those within ``merge_tol`` and drop zero weights."""
        if len(poles) != len(weights):
            raise ValueError("poles and weights differ in length")
        merged: list[list[float]] = []
        for mu, w in sorted(zip(map(float, poles), map(float, weights))):
            if merged and mu - merged[-1][0] <= merge_tol:
                last = merged[-1]
                total = last[1] + w
                if total != 0.0:
                    last[0] = (last[0] * abs(last[1]) + mu * abs(w)) / (abs(last[1]) + abs(w))
                last[1] = total
            else:
                merged.append([mu, w])
        merged = [pw for pw in merged if pw[1] != 0.0]
        return cls(float(alpha), float(beta), tuple(p for p, _ in merged), tuple(w for _, w in merged))

    def __call__(self, lam: float) -> float:
        total = self.alpha + self.beta * lam
        for mu, w in zip(self.poles, self.weights):
            total += w / (mu - lam)
        return total

    def derivative(self, lam: float) -> float:
        return self.beta + sum(w / (mu - lam) ** 2 for mu, w in zip(self.poles, self.weights))

    @property
    def monotone(self) -> bool:
        """True when f is strictly monotone between consecutive poles."""
        signs = {np.sign(w) for w in self.weights}
        if self.beta != 0.0:
            signs.add(np.sign(self.beta))
        return len(signs) <= 1

    def _asymptotic_sign(self, direction: int) -> float:
        if self.beta != 0.0:
            return np.sign(self.beta) * direction
        if self.alpha != 0.0:
            return np.sign(self.alpha)
        # sum w/(mu - lam) behaves like -W/lam
        return -np.sign(sum(self.weights)) * direction


def resolvent_secular(dec: EigenDecomposition, alpha=0.0, beta=0.0, extra_poles=(), extra_weights=()):
    """Secular function alpha + beta*lam + <e,(M - lam)^{-1} e> + extra terms."""
    poles, weights = dec.poles()
    return RationalSecular.build(
        alpha,
        beta,
        list(poles) + list(extra_poles),
        list(weights) + list(extra_weights),
        merge_tol=dec.tol_group,
    )


def _bisect(f, a: float, b: float, fa: float, tol: float) -> float:
    while b - a > tol:
        mid = 0.5 * (a + b)
        if mid <= a or mid >= b:
            break
        fm = f(mid)
        if fm == 0.0:
            return mid
        if (fm < 0) == (fa < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def _far_point(f: RationalSecular, anchor: float, direction: int) -> float:
    total = sum(abs(w) for w in f.weights)
    if f.beta != 0.0:
        offset = 1.0 + total / abs(f.beta) + abs(f.alpha + f.beta * anchor) / abs(f.beta)
    elif f.alpha != 0.0:
        offset = 1.0 + total / abs(f.alpha)
    else:
        offset = 1.0 + total
    want = f._asymptotic_sign(direction)
    for _ in range(200):
        x = anchor + direction * offset
        if np.sign(f(x)) == want:
            return x
        offset *= 2.0
    return x


def secular_roots(f: RationalSecular, lo: float = -math.inf, hi: float = math.inf,
                  tol_root: float = TOL_ROOT, pole_pad: float = POLE_PAD,
                  samples: int = 256) -> list[float]:
    """All roots of ``f`` in the open interval (lo, hi), ascending.

    Each gap between consecutive poles is bracketed at its padded ends (an
    infinite end is replaced by a point where f has its asymptotic sign) and
    refined by bisection.  When f is not monotone on a gap, the gap is first
    scanned on ``samples`` points for sign changes.
    """
    if not lo < hi:
        return []
    poles = [mu for mu in f.poles if lo < mu < hi]
    cuts = [lo] + poles + [hi]
    roots: list[float] = []
    for left, right in zip(cuts[:-1], cuts[1:]):
        a = left + pole_pad * (1 + abs(left)) if left in f.poles else left
        b = right - pole_pad * (1 + abs(right)) if right in f.poles else right
        if math.isinf(a) and math.isinf(b):
            a = _far_point(f, 0.0, -1)
            b = _far_point(f, 0.0, +1)
        elif math.isinf(a):
            a = _far_point(f, min(b, f.poles[0] if f.poles else b), -1)
            if a >= b:
                a = b - 1.0
        elif math.isinf(b):
            b = _far_point(f, max(a, f.poles[-1] if f.poles else a), +1)
            if b <= a:
                b = a + 1.0
        if not a < b:
            continue
        if f.monotone:
            points = [a, b]
        else:
            points = list(np.linspace(a, b, samples))
        values = [f(x) for x in points]
        for x0, x1, f0, f1 in zip(points[:-1], points[1:], values[:-1], values[1:]):
            if f0 == 0.0 and x0 not in (left, lo):
                roots.append(x0)
            elif f1 != 0.0 and (f0 < 0) != (f1 < 0):
                roots.append(_bisect(f, x0, x1, f0, tol_root))
        if values[-1] == 0.0 and points[-1] != hi and not f.monotone:
            roots.append(points[-1])
    roots.sort()
    deduped: list[float] = []
    for r in roots:
        if not deduped or r - deduped[-1] > tol_root:
            deduped.append(r)
    return deduped
