"""gns and munitary: T, T̂, ∇, ∇̂, J, Ĵ, V and the unitary antipode R on concrete vectors."""
import random

import pytest
from gmpy2 import mpq

from aqg.gns import Gns
from aqg.modular import random_element
from aqg.munitary import MultiplicativeUnitary, unitary_antipode
from aqg.scalar import Gauss

from conftest import FINITE_EXAMPLES, example

Q4, G16 = Gauss(mpq(1, 4)), Gauss(16)


@pytest.fixture(scope="module")
def gns(suq2):
    return Gns(suq2, 2)


@pytest.fixture(scope="module")
def polar(gns):
    return gns.polar_parts()


# (x, J x, Ĵ x, T* x, ∇̂ x, R(x)) — hand-derived from σ′(a)=16a, σ′(c)=c, S²(c)=c/16
TABLE = [
    ("a", (mpq(1, 4), "a*"), (1, "a"), (mpq(1, 16), "a*"), (1, "a"), (1, "a*")),
    ("a*", (4, "a"), (1, "a*"), (16, "a"), (1, "a*"), (1, "a")),
    ("c", (1, "c*"), (-1, "c*"), (1, "c*"), (16, "c"), (-1, "c")),
    ("c*", (1, "c"), (-1, "c"), (1, "c"), (mpq(1, 16), "c*"), (-1, "c*")),
]


@pytest.mark.parametrize("row", TABLE, ids=[r[0] for r in TABLE])
def test_gns_table(suq2, gns, polar, row):
    m = suq2.monomial
    x = m(row[0])
    val = lambda pair: m(pair[1]).scale(Gauss(pair[0]))
    J, J_hat = polar
    assert J(x) == val(row[1])
    assert J_hat(x) == val(row[2])
    assert gns.T_star(x) == val(row[3])
    assert gns.nabla_hat(x) == val(row[4])
    assert unitary_antipode(gns, x) == val(row[5])


def test_polar_decomposition(suq2, gns, polar, gens):
    J, J_hat = polar
    for x in gens.values():
        assert J(gns.nabla_half(x)) == x.star()
        assert J(J(x)) == x and J_hat(J_hat(x)) == x


@pytest.mark.parametrize("spec", ["suq2"] + FINITE_EXAMPLES)
def test_T_adjoint_relation(spec):
    """⟨T v, w⟩ = conj⟨v, T* w⟩ on random vectors."""
    p = example(spec)
    g = Gns(p, 2 if spec == "suq2" else 0)
    rng = random.Random(3)
    for _ in range(10):
        v, w = random_element(p, 1, rng), random_element(p, 1, rng)
        lhs = g.space.inner(g.T(v), w)
        rhs = g.space.inner(g.T_star(w), v)
        assert lhs == rhs


def test_gamma_of_delta_hat(suq2, gns, gens):
    """γ(δ̂) acts as S²σ⁻¹ on Λ(A); on c it gives c/16."""
    c = gens["c"]
    out = gns.character_act(gns.dual.delta_hat_char, c)
    assert out == c.scale(Gauss(mpq(1, 16)))
    assert out == suq2.s2(gns.mm.sigma_inv(c))


def test_V_on_c_tensor_one(suq2, gns):
    V = MultiplicativeUnitary(gns)
    idx = {n: next(iter(suq2.monomial(n).coeffs)) for n in ("a", "a*", "c")}
    one = next(iter(suq2.unit().coeffs))
    got = {k: v for k, v in V.V_basis(idx["c"], one).items() if v}
    assert got == {(idx["c"], idx["a"]): Gauss(1), (idx["a*"], idx["c"]): Gauss(1)}


def test_R_anti_multiplicative_and_involutive(suq2, gns):
    rng = random.Random(11)
    for _ in range(5):
        x, y = random_element(suq2, 1, rng), random_element(suq2, 1, rng)
        R = lambda z: unitary_antipode(gns, z)
        assert R(x * y) == R(y) * R(x)
        assert R(R(x)) == x
