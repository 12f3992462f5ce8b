"""Shared fixtures: built-in presentations are cached per session."""
from __future__ import annotations

import functools

import pytest
from gmpy2 import mpq

from aqg.examples import builtin_examples, make_suq2, parse_example

Q = mpq(1, 4)


@functools.lru_cache(maxsize=None)
def example(spec: str):
    return make_suq2(Q) if spec == "suq2" else parse_example(spec)


FINITE_EXAMPLES = [e for e in builtin_examples() if e != "suq2"]


@pytest.fixture(scope="session")
def suq2():
    return example("suq2")


@pytest.fixture(scope="session")
def gens(suq2):
    m = suq2.monomial
    return {"a": m("a"), "a*": m("a*"), "c": m("c"), "c*": m("c*"), "1": suq2.unit()}
