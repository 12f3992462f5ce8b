"""Sparse exact linear algebra kernel."""
import pytest
from gmpy2 import mpq

from aqg.linalg import (InconsistentSystem, LinearSystem, SingularSystem, SquareSolver, is_positive_definite,
                        nullspace, rank)
from aqg.scalar import Gauss


def G(x):
    return Gauss(x)


def test_square_solver_exact():
    rows = {"r1": {"x": G(2), "y": G(1)}, "r2": {"x": G(1), "y": G(3)}}
    s = SquareSolver(rows, ["x", "y"])
    sol = s.solve({"r1": G(3), "r2": G(4)})
    assert sol.get("x") == G(1) and sol.get("y") == G(1)


def test_square_solver_singular():
    with pytest.raises(SingularSystem):
        SquareSolver({"r1": {"x": G(1), "y": G(1)}, "r2": {"x": G(2), "y": G(2)}}, ["x", "y"])


def test_linear_system_inconsistent():
    ls = LinearSystem()
    ls.add({"x": G(1)}, {"_": G(1)})
    with pytest.raises(InconsistentSystem):
        ls.add({"x": G(1)}, {"_": G(2)})


def test_rank_and_nullspace():
    rows = [{"x": G(1), "y": G(1)}, {"x": G(2), "y": G(2)}]
    assert rank(rows) == 1
    ns = nullspace(rows, ["x", "y"])
    assert len(ns) == 1
    v = ns[0]
    assert v.get("x", G(0)) + v.get("y", G(0)) == G(0)


def test_positive_definite():
    gram = {("a", "a"): G(2), ("a", "b"): G(1), ("b", "a"): G(1), ("b", "b"): G(mpq(1, 2))}
    ok, _ = is_positive_definite(gram, ["a", "b"])
    assert not ok  # det = 0
    gram[("b", "b")] = G(1)
    ok, pivots = is_positive_definite(gram, ["a", "b"])
    assert ok and all(p.re > 0 for p in pivots)
