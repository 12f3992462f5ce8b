"""duality: Fourier transform, dual product/star/antipode, Plancherel, δ̂, DFT."""
import numpy as np
import pytest
from gmpy2 import mpq

from aqg.duality import dft_pairing_matrix, duality
from aqg.scalar import Gauss, is_exact

from conftest import FINITE_EXAMPLES, example
from oracles import dft_matrix


@pytest.fixture(scope="module")
def d(suq2):
    return duality(suq2)


def test_fourier_star(d, gens):
    fc = d.fourier(gens["c"])
    assert d.dual_star(fc) == d.fourier(gens["c*"].scale(Gauss(-4)))
    assert d.dual_star(fc) == d.dual_star_by_pairing(fc)


def test_delta_hat_actions(d, gens):
    c = gens["c"]
    fc = d.fourier(c)
    F = lambda k: d.fourier(c.scale(Gauss(k)))
    assert d.delta_hat_actions(fc, "left") == F(mpq(1, 16))
    assert d.delta_hat_actions(fc, "right") == F(16)
    assert d.delta_hat_actions(fc, "inv-left") == F(16)
    assert d.delta_hat_actions(fc, "inv-right") == F(mpq(1, 16))
    assert d.sigma_hat(fc) == F(16)
    assert d.sigma_hat_prime(fc) == F(mpq(1, 16))


def test_plancherel_suq2(suq2, d, gens):
    a, c, cs = gens["a"], gens["c"], gens["c*"]
    for x in (gens["1"], a, c, cs, cs * c, a * c):
        b = d.fourier(x)
        assert d.phihat_of_product(d.dual_star(b), b) == suq2.right_integral(x.star() * x)
    b = d.fourier(c)
    assert d.phihat_of_product(d.dual_star(b), b) == Gauss(mpq(16, 17))


@pytest.mark.parametrize("spec", ["group:C[Z8]", "group:F[S3]"])
def test_plancherel_finite(spec):
    p = example(spec)
    dd = duality(p)
    for i in p.basis(0):
        x = p.basis_element(i)
        b = dd.fourier(x)
        assert dd.phihat_of_product(dd.dual_star(b), b) == p.right_integral(x.star() * x)


@pytest.mark.parametrize("spec", FINITE_EXAMPLES)
def test_dual_product_associative_and_unital(spec):
    p = example(spec)
    dd = duality(p)
    hats = [dd.fourier(p.basis_element(i)) for i in p.basis(0)][:4]
    one = dd.dual_unit()
    for x in hats:
        assert dd.dual_mul(one, x) == x == dd.dual_mul(x, one)
        for y in hats:
            for z in hats[:2]:
                assert dd.dual_mul(dd.dual_mul(x, y), z) == dd.dual_mul(x, dd.dual_mul(y, z))


@pytest.mark.parametrize("n", [2, 4])
def test_dft_exact(n):
    M = dft_pairing_matrix(example(f"group:C[Z{n}]"))
    F = dft_matrix(n)
    for h in range(n):
        for k in range(n):
            assert is_exact(M[h][k])
            assert complex(M[h][k]) == pytest.approx(F[h, k], abs=0)  # ±1, ±i are exact in binary


def test_dft_z8_float():
    M = np.array([[complex(v) for v in row] for row in dft_pairing_matrix(example("group:C[Z8]"))])
    assert np.abs(M - dft_matrix(8)).max() <= 1e-12
