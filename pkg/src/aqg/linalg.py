"""Sparse exact linear algebra over dict rows.

Rows are ``{column_key: scalar}`` dicts; right-hand sides are dicts keyed by
arbitrary labels so several systems sharing one matrix are reduced at once.
Works for exact (Gauss) and float (complex) entries alike; float entries are
compared to zero with ``tol``.
"""
from __future__ import annotations

from typing import Hashable, Iterable

from .scalar import ONE, ZERO, Gauss, is_zero


class InconsistentSystem(ValueError):
    pass


class SingularSystem(ValueError):
    pass


def _axpy(target: dict, coef, source: dict, tol) -> None:
    """target += coef * source, dropping zeros."""
    for k, v in source.items():
        nv = target.get(k, ZERO) + coef * v
        if is_zero(nv, tol):
            target.pop(k, None)
        else:
            target[k] = nv


def _clean(row: dict, tol) -> dict:
    return {k: v for k, v in row.items() if not is_zero(v, tol)}


class LinearSystem:
    """Incremental, fully reduced Gauss-Jordan elimination.

    ``pivots[col] = (row, rhs)`` with ``row[col] == 1`` and no other pivot
    column present in ``row``.
    """

    def __init__(self, tol: float | None = None, order: dict | None = None):
        self.pivots: dict[Hashable, tuple[dict, dict]] = {}
        self.tol = tol
        # optional column priority (lower = preferred pivot)
        self.order = order

    def __len__(self):
        return len(self.pivots)

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, row: dict, rhs: dict | None = None) -> tuple[dict, dict]:
        row = _clean(row, self.tol)
        rhs = _clean(rhs or {}, self.tol)
        for col in [c for c in row if c in self.pivots]:
            coef = row.get(col)
            if coef is None:
                continue
            prow, prhs = self.pivots[col]
            _axpy(row, -coef, prow, self.tol)
            _axpy(rhs, -coef, prhs, self.tol)
        return row, rhs

    def add(self, row: dict, rhs: dict | None = None, strict: bool = True) -> bool:
        """Add an equation; True if it raised the rank.

        Raises InconsistentSystem if the row reduces to 0 = nonzero (unless
        ``strict`` is False, for rank bookkeeping where rhs only tracks labels).
        """
        row, rhs = self.reduce(row, rhs)
        if not row:
            if rhs and strict:
                raise InconsistentSystem(f"inconsistent equation, residual {rhs}")
            return False
        if self.order is not None:
            col = min(row, key=lambda c: (self.order.get(c, len(self.order)), _sort_key(c)))
        else:
            col = min(row, key=_sort_key)
        inv = ONE / row[col]
        row = {k: v * inv for k, v in row.items()}
        rhs = {k: v * inv for k, v in rhs.items()}
        row[col] = ONE
        for pcol, (prow, prhs) in self.pivots.items():
            coef = prow.get(col)
            if coef is not None:
                _axpy(prow, -coef, row, self.tol)
                _axpy(prhs, -coef, rhs, self.tol)
        self.pivots[col] = (row, rhs)
        return True

    def solution(self, unknowns: Iterable[Hashable]) -> dict:
        """Unique solution ``{unknown: rhs-dict}``; raises if underdetermined."""
        out = {}
        for u in unknowns:
            if u not in self.pivots:
                raise SingularSystem(f"unknown {u!r} is not determined")
            row, rhs = self.pivots[u]
            if len(row) != 1:
                raise SingularSystem(f"unknown {u!r} depends on free columns {sorted(map(str, row))[:4]}")
            out[u] = rhs
        return out


def _sort_key(c):
    return (str(type(c)), str(c))


def rank(rows: Iterable[dict], tol=None) -> int:
    ls = LinearSystem(tol)
    for r in rows:
        ls.add(r)
    return ls.rank


def nullspace(rows: Iterable[dict], columns: list, tol=None) -> list[dict]:
    """Basis of {x : row . x = 0 for all rows} as dicts over ``columns``."""
    ls = LinearSystem(tol, order={c: i for i, c in enumerate(columns)})
    for r in rows:
        ls.add(r)
    free = [c for c in columns if c not in ls.pivots]
    basis = []
    for f in free:
        vec = {f: ONE}
        for pcol, (prow, _) in ls.pivots.items():
            coef = prow.get(f)
            if coef is not None:
                vec[pcol] = -coef
        basis.append(vec)
    return basis


class SquareSolver:
    """Factor a square nonsingular sparse matrix once, then solve M x = b.

    ``matrix_rows[r]`` is the row with key r; the inverse is accumulated as
    right-hand sides labelled by row keys.
    """

    def __init__(self, matrix_rows: dict, columns: list, tol=None):
        self.columns = list(columns)
        ls = LinearSystem(tol, order={c: i for i, c in enumerate(self.columns)})
        for rkey, row in matrix_rows.items():
            try:
                independent = ls.add(row, {rkey: ONE})
            except InconsistentSystem:
                independent = False
            if not independent:
                raise SingularSystem(f"matrix is singular (row {rkey!r} dependent)")
        if ls.rank != len(self.columns):
            raise SingularSystem("matrix is not square of full rank")
        self.inverse_rows = ls.solution(self.columns)  # column -> {row key: coef}
        self.tol = tol

    def solve(self, rhs: dict) -> dict:
        out = {}
        for col, irow in self.inverse_rows.items():
            acc = ZERO
            for rkey, coef in irow.items():
                b = rhs.get(rkey)
                if b is not None:
                    acc = acc + coef * b
            if not is_zero(acc, self.tol):
                out[col] = acc
        return out


def hermitian_pivots(gram: dict, keys: list) -> list:
    """Pivots of symmetric Gaussian elimination (LDL^H) in the given order.

    ``gram[(i, j)]`` entries of a Hermitian matrix; returns the list of
    diagonal pivots d_k.  The matrix is positive definite iff every pivot is
    real and > 0.
    """
    rows = {i: {} for i in keys}
    for (i, j), v in gram.items():
        if not is_zero(v):
            rows[i][j] = v
    pivots = []
    remaining = list(keys)
    while remaining:
        k = remaining.pop(0)
        rk = rows.pop(k)
        d = rk.get(k, ZERO)
        pivots.append(d)
        if is_zero(d):
            break
        inv = ONE / d
        for i in remaining:
            c = rows[i].get(k)
            if c is None:
                continue
            _axpy(rows[i], -(c * inv), rk, None)
            rows[i].pop(k, None)
    return pivots


def is_positive_definite(gram: dict, keys: list) -> tuple[bool, list]:
    piv = hermitian_pivots(gram, keys)
    ok = len(piv) == len(keys) and all(
        (isinstance(p, Gauss) and p.is_real() and p.re > 0) for p in piv
    )
    return ok, piv
