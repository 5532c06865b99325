"""Closed-form and spectral QEC formulas for joins and Cartesian products.

The join formulas enumerate every stationary value below -1 of the
constrained adjacency form of ``G1 + G2`` and return ``-2 - min``.  The
candidates fall into families:

* isolated values fixed by the regular/multipartite operand,
* eigenvalues of the operands that own an eigenvector orthogonal to e,
* roots of a resolvent (secular) equation.

Each secular equation is rewritten as a sum of simple fractions with
non-negative weights and no affine part, so it is strictly increasing between
consecutive poles and has exactly one root in every gap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import QE_TOL, QecResult, TrivialGraph, qec_oracle
from .graph import Graph, MultipartiteSpec, regularity
from .spectral import RationalSecular, eigen_sym, in_spectrum, resolvent_secular, secular_roots

__all__ = [
    "NotRegular",
    "CandidateSetEmpty",
    "SecularFunctionP",
    "Candidate",
    "qec_complete",
    "qec_complete_bipartite",
    "complete_bipartite_fraction",
    "complete_bipartite_is_qe",
    "p_roots",
    "join_regular_candidates",
    "join_multipartite_candidates",
    "qec_join_regular",
    "qec_join_multipartite",
    "qec_cart_complete",
    "qec_cart_bipartite",
]

# Tie window when several branches attain the minimum.
TIE_TOL = 1e-9
# Candidates must lie strictly below -1.
BELOW = -1.0 - 1e-12


class NotRegular(ValueError):
    pass


class CandidateSetEmpty(RuntimeError):
    """No stationary value below -1 for a non-complete join (should not happen)."""


@dataclass(frozen=True)
class Candidate:
    value: float
    branch: str


def _fmt(frac: Fraction) -> str:
    return str(frac.numerator) if frac.denominator == 1 else f"{frac.numerator}/{frac.denominator}"


def qec_complete(n: int) -> float:
    if n < 2:
        raise TrivialGraph("QEC of K_n needs n >= 2")
    return -1.0


def complete_bipartite_fraction(m: int, n: int) -> Fraction:
    if m < 1 or n < 1:
        raise ValueError("part sizes must be positive")
    return Fraction(m * (n - 2) + n * (m - 2), m + n)


def qec_complete_bipartite(m: int, n: int) -> float:
    """(m(n-2) + n(m-2)) / (m+n)."""
    return float(complete_bipartite_fraction(m, n))


def complete_bipartite_is_qe(m: int, n: int) -> bool:
    return m == 1 or n == 1 or (m == 2 and n == 2)


@dataclass(frozen=True)
class SecularFunctionP:
    """P(lam) = 1 + sum_p a_p m_p / (lam + m_p) over the distinct part sizes."""

    distinct_sizes: tuple[int, ...]
    multiplicities: tuple[int, ...]

    @classmethod
    def from_spec(cls, spec) -> "SecularFunctionP":
        if not isinstance(spec, MultipartiteSpec):
            spec = MultipartiteSpec(spec)
        return cls(spec.distinct_sizes, spec.multiplicities)

    @property
    def q(self) -> int:
        return len(self.distinct_sizes)

    def __call__(self, lam: float) -> float:
        return 1.0 + sum(a * m / (lam + m) for m, a in zip(self.distinct_sizes, self.multiplicities))

    def derivative(self, lam: float) -> float:
        return -sum(a * m / (lam + m) ** 2 for m, a in zip(self.distinct_sizes, self.multiplicities))

    def as_secular(self) -> RationalSecular:
        # a m / (lam + m) == (-a m) / (-m - lam)
        return RationalSecular.build(
            1.0,
            0.0,
            [-m for m in self.distinct_sizes],
            [-a * m for m, a in zip(self.distinct_sizes, self.multiplicities)],
        )


def p_roots(p: SecularFunctionP) -> list[float]:
    """The q zeros of P, ascending; all negative and interlaced with the poles."""
    if not isinstance(p, SecularFunctionP):
        p = SecularFunctionP.from_spec(p)
    roots = secular_roots(p.as_secular(), -math.inf, 0.0)
    if len(roots) != p.q:
        raise RuntimeError(f"expected {p.q} zeros of P, found {len(roots)}: {roots}")
    return roots


def _finish(candidates: list[Candidate], label: str) -> QecResult:
    if not candidates:
        raise CandidateSetEmpty(f"no stationary value below -1 for {label}")
    low = min(c.value for c in candidates)
    winners = sorted({c.branch for c in candidates if c.value - low <= TIE_TOL})
    return QecResult(-2.0 - low, "theorem_branch", "; ".join(winners))


def _secular_branch(secular: RationalSecular, excluded, tol: float, name: str) -> list[Candidate]:
    out = []
    for rho in secular_roots(secular, -math.inf, -1.0):
        if rho < BELOW and not in_spectrum(rho, excluded, tol):
            out.append(Candidate(rho, f"{name} (secular root {rho:.9g})"))
    return out


def join_regular_candidates(g1: Graph, g2: Graph) -> list[Candidate]:
    """Stationary values below -1 of the constrained adjacency form of G1 + G2, G1 regular."""
    r = regularity(g1)
    if r is None:
        raise NotRegular(f"{g1!r} is not regular")
    m = g1.n
    a1 = g1.adjacency_matrix()
    a2 = g2.adjacency_matrix()
    dec1 = eigen_sym(a1)
    dec2 = eigen_sym(a2)
    dec2j = eigen_sym(a2 - 1.0)
    tol = max(dec1.tol_group, dec2.tol_group, dec2j.tol_group)
    special = [r - m, r - 2 * m]
    out: list[Candidate] = []

    lam = r - m
    if lam < BELOW and (in_spectrum(lam, dec1.distinct, tol) or in_spectrum(lam, dec2j.distinct, tol)):
        out.append(Candidate(float(lam), f"Lambda1 (r-m = {lam})"))

    lam = r - 2 * m
    if lam < BELOW and in_spectrum(lam, dec2.distinct, tol):
        out.append(Candidate(float(lam), f"Lambda2 (r-2m = {lam})"))

    for lam in sorted(set(dec1.sigma0()) | set(dec2.sigma0())):
        if lam < BELOW and not in_spectrum(lam, special, tol):
            out.append(Candidate(lam, f"Lambda3 (sigma0 eigenvalue {lam:.9g})"))

    # m = (lam + 2m - r) <e,(A2 - lam)^{-1} e>  <=>  <e,(A2 - lam)^{-1} e> + m/((r - 2m) - lam) = 0
    secular = resolvent_secular(dec2, extra_poles=[r - 2 * m], extra_weights=[m])
    excluded = special + list(dec1.distinct) + list(dec2.distinct)
    out.extend(_secular_branch(secular, excluded, tol, "Lambda4"))
    return out


def qec_join_regular(g1: Graph, g2: Graph) -> QecResult:
    """QEC of G1 + G2 where G1 is r-regular on m vertices and G2 is arbitrary."""
    if regularity(g1) is None:
        raise NotRegular(f"{g1!r} is not regular")
    if g1.is_complete() and g2.is_complete():
        return QecResult(-1.0, "theorem_branch", "complete", rational="-1")
    return _finish(join_regular_candidates(g1, g2), f"{g1!r} + {g2!r}")


def join_multipartite_candidates(spec, g: Graph) -> list[Candidate]:
    """Stationary values below -1 of the constrained adjacency form of K_{m_1..m_k} + G."""
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(spec)
    p = SecularFunctionP.from_spec(spec)
    zeros = p_roots(p)
    poles = [-s for s in p.distinct_sizes]

    a = g.adjacency_matrix()
    dec = eigen_sym(a)
    decj = eigen_sym(a - 1.0)
    tol = max(dec.tol_group, decj.tol_group)
    special = poles + zeros
    out: list[Candidate] = []

    for size, mult in zip(p.distinct_sizes, p.multiplicities):
        lam = -size
        if mult == 1 and lam < BELOW and in_spectrum(lam, decj.distinct, tol):
            out.append(Candidate(float(lam), f"Lambda1 (-m = {lam})"))
        if mult >= 2 and size != 1:
            out.append(Candidate(float(lam), f"repeated part (-m = {lam}, a = {mult})"))

    for lam in zeros:
        if lam < BELOW and in_spectrum(lam, dec.distinct, tol):
            out.append(Candidate(lam, f"Lambda2 (zero of P {lam:.9g})"))

    for lam in dec.sigma0():
        if lam < BELOW and not in_spectrum(lam, special, tol):
            out.append(Candidate(lam, f"Lambda3 (sigma0 eigenvalue {lam:.9g})"))

    # P<e,R e> = P - 1  <=>  <e,R e> - 1 + 1/P = 0, and
    # 1/P = 1 + sum_p |1/P'(z_p)| / (z_p - lam) over the zeros z_p of P.
    residues = [-1.0 / p.derivative(z) for z in zeros]
    secular = resolvent_secular(dec, extra_poles=zeros, extra_weights=residues)
    excluded = special + list(dec.distinct)
    out.extend(_secular_branch(secular, excluded, tol, "Lambda4"))
    return out


def qec_join_multipartite(spec, g: Graph) -> QecResult:
    """QEC of K_{m_1,...,m_k} + G for an arbitrary (possibly disconnected) G."""
    if not isinstance(spec, MultipartiteSpec):
        spec = MultipartiteSpec(spec)
    if all(s == 1 for s in spec.parts) and g.is_complete():
        return QecResult(-1.0, "theorem_branch", "complete", rational="-1")
    return _finish(join_multipartite_candidates(spec, g), f"Km{spec.parts} + {g!r}")


def qec_cart_complete(m: int, g: Graph, tol: float = QE_TOL) -> QecResult:
    """QEC of K_m x G: 0 if G is of QE class (m >= 2), else m * qec(G)."""
    if m < 1:
        raise ValueError("m must be positive")
    if g.n == 1:
        # K_m x K_1 = K_m
        return QecResult(qec_complete(m), "closed_form", "complete graph", rational="-1")
    base = qec_oracle(g).value
    if m == 1:
        return QecResult(base, "theorem_branch", "K1 x G = G")
    if base <= tol:
        return QecResult(0.0, "theorem_branch", "both factors of QE class", rational="0")
    return QecResult(m * base, "theorem_branch", f"m * qec(G) with qec(G) = {base:.15g}")


def qec_cart_bipartite(m: int, n: int, g: Graph, tol: float = QE_TOL) -> QecResult:
    """QEC of K_{m,n} x G for connected G on l vertices."""
    kmn = complete_bipartite_fraction(m, n)
    l = g.n
    if l == 1:
        return QecResult(float(kmn), "closed_form", "complete bipartite", rational=_fmt(kmn))
    base = qec_oracle(g).value
    if complete_bipartite_is_qe(m, n):
        if base <= tol:
            return QecResult(0.0, "theorem_branch", "both factors of QE class", rational="0")
        return QecResult((m + n) * base, "theorem_branch", "case (i): (m+n) * qec(G)")
    scaled = (m + n) * base
    block = l * kmn
    cands = [(scaled, "case (ii): (m+n) * qec(G)"), (float(block), "case (ii): l * qec(K_{m,n})")]
    top = max(v for v, _ in cands)
    winners = [name for v, name in cands if top - v <= TIE_TOL]
    rational = _fmt(block) if float(block) == top else None
    return QecResult(top, "theorem_branch", "; ".join(winners), rational=rational)
