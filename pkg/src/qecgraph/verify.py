"""Formula-versus-oracle verification harness."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import formulas as fm
from .catalog import (
    connected_graphs,
    describe,
    multipartite_specs,
    random_connected_graphs,
    regular_operands,
)
from .core import qec_oracle
from .expr import eval_expr, parse_expr
from .graph import cartesian, complete, complete_bipartite, complete_multipartite, join

__all__ = ["Case", "VerifyReport", "builtin_cases", "file_cases", "run_case", "run_verify"]

DEFAULT_TOL = 1e-7
MAX_PRODUCT_ORDER = 60
CART_BIPARTITE_SIZES = [(1, 1), (2, 1), (3, 1), (2, 2), (3, 2), (3, 3)]


@dataclass(frozen=True)
class Case:
    """One verification case: ``kind`` selects the formula, ``args`` feed it."""

    index: int
    kind: str
    label: str
    args: tuple


@dataclass
class VerifyReport:
    cases: list[dict] = field(default_factory=list)
    tol: float = DEFAULT_TOL
    seed: int = 0

    @property
    def failed(self) -> int:
        return sum(not c["pass"] for c in self.cases)

    @property
    def passed(self) -> int:
        return len(self.cases) - self.failed

    @property
    def max_deviation(self) -> float:
        return max((c["difference"] for c in self.cases), default=0.0)

    @property
    def ok(self) -> bool:
        return self.failed == 0

    def summary(self) -> dict:
        return {
            "summary": True,
            "cases": len(self.cases),
            "passed": self.passed,
            "failed": self.failed,
            "max_deviation": self.max_deviation,
            "tol": self.tol,
            "seed": self.seed,
        }


def builtin_cases(seed: int = 0) -> list[Case]:
    """The pinned catalog.

    Joins: every regular operand against all connected graphs on <= 5
    vertices plus 20 seeded random graphs on <= 7.  Multipartite joins: every
    spec with k <= 3 and parts <= 3 against connected graphs on <= 4 vertices
    plus 5 random ones.  Products: K_2, K_3 and several K_{m,n} against
    connected graphs on 2..5 vertices, capped at 60 product vertices.  Closed
    forms: K_n for n <= 8, K_{m,n} for 1 <= n <= m <= 6.
    """
    small = list(connected_graphs(5))
    rand = random_connected_graphs(20, 7, seed)
    raw: list[tuple[str, str, tuple]] = []

    for g1 in regular_operands():
        for g2 in small + rand:
            raw.append(("join_regular", f"join({describe(g1)},{describe(g2)})", (g1, g2)))

    for parts in multipartite_specs(3, 3):
        label = "Km(" + ",".join(map(str, parts)) + ")"
        for g in list(connected_graphs(4)) + rand[:5]:
            raw.append(("join_multipartite", f"join({label},{describe(g)})", (parts, g)))

    factors = list(connected_graphs(5, 2))
    for m in (2, 3):
        for g in factors:
            if m * g.n <= MAX_PRODUCT_ORDER:
                raw.append(("cart_complete", f"cart(K{m},{describe(g)})", (m, g)))
    for m, n in CART_BIPARTITE_SIZES:
        for g in factors:
            if (m + n) * g.n <= MAX_PRODUCT_ORDER:
                raw.append(("cart_bipartite", f"cart(Kb({m},{n}),{describe(g)})", (m, n, g)))

    for n in range(2, 9):
        raw.append(("complete", f"K{n}", (n,)))
    for m in range(1, 7):
        for n in range(1, m + 1):
            if m + n >= 2:
                raw.append(("complete_bipartite", f"Kb({m},{n})", (m, n)))

    return [Case(i, kind, label, args) for i, (kind, label, args) in enumerate(raw)]


def file_cases(lines: Sequence[str]) -> list[Case]:
    """One expression per non-blank line; ``#`` starts a comment."""
    out = []
    for line in lines:
        text = line.split("#", 1)[0].strip()
        if text:
            out.append(Case(len(out), "expr", str(parse_expr(text)), (text,)))
    return out


def _evaluate(case: Case) -> tuple[float, float, Optional[str]]:
    kind, args = case.kind, case.args
    if kind == "join_regular":
        g1, g2 = args
        res = fm.qec_join_regular(g1, g2)
        return res.value, qec_oracle(join(g1, g2)).value, res.provenance
    if kind == "join_multipartite":
        parts, g = args
        res = fm.qec_join_multipartite(parts, g)
        return res.value, qec_oracle(join(complete_multipartite(parts), g)).value, res.provenance
    if kind == "cart_complete":
        m, g = args
        res = fm.qec_cart_complete(m, g)
        return res.value, qec_oracle(cartesian(complete(m), g)).value, res.provenance
    if kind == "cart_bipartite":
        m, n, g = args
        res = fm.qec_cart_bipartite(m, n, g)
        return res.value, qec_oracle(cartesian(complete_bipartite(m, n), g)).value, res.provenance
    if kind == "complete":
        (n,) = args
        return fm.qec_complete(n), qec_oracle(complete(n)).value, "closed form"
    if kind == "complete_bipartite":
        m, n = args
        return fm.qec_complete_bipartite(m, n), qec_oracle(complete_bipartite(m, n)).value, "closed form"
    if kind == "expr":
        from .commands import formula_qec

        (text,) = args
        res, method = formula_qec(text)
        return res.value, qec_oracle(eval_expr(parse_expr(text))).value, f"{method}: {res.provenance}"
    raise ValueError(f"unknown case kind {kind!r}")


def run_case(case: Case, tol: float = DEFAULT_TOL, perturb: float = 0.0) -> dict:
    try:
        formula, oracle, provenance = _evaluate(case)
    except Exception as exc:  # failures are data
        return {
            "index": case.index, "kind": case.kind, "expr": case.label,
            "oracle": None, "formula": None, "provenance": None,
            "difference": float("inf"), "pass": False, "error": f"{type(exc).__name__}: {exc}",
        }
    formula += perturb
    diff = abs(formula - oracle)
    return {
        "index": case.index,
        "kind": case.kind,
        "expr": case.label,
        "oracle": oracle,
        "formula": formula,
        "provenance": provenance,
        "difference": diff,
        "pass": diff <= tol,
    }


def _run_star(job):
    return run_case(*job)


def run_verify(cases: Sequence[Case], tol: float = DEFAULT_TOL, seed: int = 0, jobs: int = 1,
               perturb: Optional[tuple[int, float]] = None) -> VerifyReport:
    """Run every case; ``perturb=(index, delta)`` shifts one formula value (harness self-test)."""
    work = [(c, tol, perturb[1] if perturb and perturb[0] == c.index else 0.0) for c in cases]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_star, work, chunksize=16))
    else:
        results = [_run_star(w) for w in work]
    results.sort(key=lambda r: r["index"])
    return VerifyReport(results, tol, seed)
