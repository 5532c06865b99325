"""Command implementations behind the CLI; each returns plain JSON-ready data."""

from __future__ import annotations

from typing import Optional, Union

import numpy as np

from . import formulas as fm
from .core import QE_TOL, QecResult, qec_oracle, quadratic_embedding
from .expr import Atom, Expr, eval_expr, parse_expr
from .graph import Graph, distance_matrix, regularity
from .spectral import eigen_sym

__all__ = [
    "FormulaUnavailable",
    "formula_qec",
    "cmd_qec",
    "cmd_dist",
    "cmd_spectrum",
    "cmd_embed",
    "round15",
]

MODES = ("auto", "oracle", "formula")


class FormulaUnavailable(ValueError):
    pass


def round15(x: float) -> float:
    """Round to 15 significant digits (stable JSON output)."""
    return float(f"{x:.15g}")


def _as_expr(expr: Union[str, Expr]) -> Expr:
    return parse_expr(expr) if isinstance(expr, str) else expr


def _multipartite_parts(e: Expr) -> Optional[tuple[int, ...]]:
    if isinstance(e, Atom) and e.kind in ("Kb", "Km"):
        return e.params
    return None


def _bipartite_sizes(e: Expr) -> Optional[tuple[int, int]]:
    parts = _multipartite_parts(e)
    if parts is not None and len(parts) == 2:
        return parts
    if isinstance(e, Atom) and e.kind == "K" and e.params[0] == 2:
        return (1, 1)
    return None


def _join_formula(left: Expr, right: Expr, g_left: Graph, g_right: Graph) -> Optional[tuple[QecResult, str]]:
    if regularity(g_left) is not None:
        return fm.qec_join_regular(g_left, g_right), "join_regular"
    parts = _multipartite_parts(left)
    if parts is not None:
        return fm.qec_join_multipartite(parts, g_right), "join_multipartite"
    return None


def _cart_formula(left: Expr, g_right: Graph) -> Optional[tuple[QecResult, str]]:
    if isinstance(left, Atom) and left.kind == "K":
        return fm.qec_cart_complete(left.params[0], g_right), "cart_complete"
    sizes = _bipartite_sizes(left)
    if sizes is not None:
        return fm.qec_cart_bipartite(sizes[0], sizes[1], g_right), "cart_bipartite"
    return None


def formula_qec(expr: Union[str, Expr]) -> tuple[QecResult, str]:
    """Dispatch an expression to the matching closed form or theorem.

    Joins try a regular left operand, then a complete multipartite left atom,
    then the same with the operands swapped.  Products look for a K_m or
    K_{m,n} atom as a factor.  Returns (result, method name).
    """
    e = _as_expr(expr)
    if isinstance(e, Atom):
        if e.kind == "K":
            value = fm.qec_complete(e.params[0])
            return QecResult(value, "closed_form", "complete graph", rational="-1"), "closed_form_complete"
        sizes = _bipartite_sizes(e)
        if sizes is not None:
            frac = fm.complete_bipartite_fraction(*sizes)
            rational = fm._fmt(frac)
            return (QecResult(float(frac), "closed_form", "complete bipartite", rational=rational),
                    "closed_form_bipartite")
        raise FormulaUnavailable(f"no closed form for atom {e}")
    g_left, g_right = eval_expr(e.left), eval_expr(e.right)
    if e.op == "join":
        found = _join_formula(e.left, e.right, g_left, g_right) or _join_formula(e.right, e.left, g_right, g_left)
    else:
        found = _cart_formula(e.left, g_right) or _cart_formula(e.right, g_left)
    if found is None:
        raise FormulaUnavailable(f"no formula covers {e}")
    return found


def _record(result: QecResult, method: str, tol: float) -> dict:
    out = {
        "qec": round15(result.value),
        "method": method,
        "provenance": result.provenance,
        "qe_class": bool(result.value <= tol),
    }
    if result.rational is not None:
        out["rational"] = result.rational
    return out


def cmd_qec(expr: Union[str, Expr], mode: str = "auto", tol: float = QE_TOL) -> dict:
    """QEC of an expression as a JSON record.

    ``auto`` reports the oracle value and, when a formula applies, the formula
    value and their difference as well.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    e = _as_expr(expr)
    g = eval_expr(e)
    rec = {"expr": str(e), "n": g.n}
    if mode == "formula":
        result, method = formula_qec(e)
        rec.update(_record(result, method, tol))
        return rec
    oracle = qec_oracle(g)
    rec.update(_record(oracle, "oracle", tol))
    if mode == "auto":
        try:
            result, method = formula_qec(e)
        except FormulaUnavailable:
            rec["formula"] = None
        else:
            rec["formula"] = _record(result, method, tol)
            rec["difference"] = round15(abs(result.value - oracle.value))
    return rec


def cmd_dist(expr) -> dict:
    e = _as_expr(expr)
    g = eval_expr(e)
    return {"expr": str(e), "n": g.n, "distance": distance_matrix(g).tolist()}


def cmd_spectrum(expr, matrix: str = "adjacency") -> dict:
    """Distinct eigenvalues with multiplicities, e-weights and sigma0 membership."""
    e = _as_expr(expr)
    g = eval_expr(e)
    if matrix == "adjacency":
        m = g.adjacency_matrix()
    elif matrix == "distance":
        m = distance_matrix(g).astype(float)
    else:
        raise ValueError("matrix must be 'adjacency' or 'distance'")
    dec = eigen_sym(m)
    zero_set = dec.sigma0()
    rows = []
    for lam, idx, w in zip(dec.distinct, dec.groups, dec.e_weights):
        rows.append({
            "eigenvalue": 0.0 if abs(lam) < 1e-12 else round15(lam),
            "multiplicity": len(idx),
            "e_weight": round15(w),
            "in_sigma0": float(lam) in zero_set,
        })
    return {"expr": str(e), "n": g.n, "matrix": matrix, "spectrum": rows}


def cmd_embed(expr, tol: float = QE_TOL) -> dict:
    e = _as_expr(expr)
    g = eval_expr(e)
    points = quadratic_embedding(g, tol)
    d = distance_matrix(g)
    diff = points[:, None, :] - points[None, :, :]
    err = float(np.abs((diff ** 2).sum(axis=-1) - d).max())
    return {
        "expr": str(e),
        "n": g.n,
        "dimension": points.shape[1],
        "points": [[round15(x) for x in row] for row in points],
        "max_reconstruction_error": err,
    }
