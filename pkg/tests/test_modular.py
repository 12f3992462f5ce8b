"""modular-data: σ, σ′, κ, ρ, δ, orbits, positivity, spectra, one-parameter groups."""
import random

import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from aqg.modular import (NotDiagonalizable, eigen_decompose, joint_eigenbasis, modular_maps,
                         orbit_subspace, positivity_probe, random_element)
from aqg.scalar import ONE, Gauss, is_exact

from conftest import FINITE_EXAMPLES, example

G16, G1_16 = Gauss(16), Gauss(mpq(1, 16))


@pytest.fixture(scope="module")
def mm(suq2):
    return modular_maps(suq2)


def test_sigma_prime_values(mm, gens):
    """Hand oracle: ψ(aa*)=16/17, ψ(a*a)=1/17 force σ′(a)=16a; c and c* commute, so σ′(c)=c."""
    a, a_s, c = gens["a"], gens["a*"], gens["c"]
    assert mm.sigma_prime(a) == a.scale(G16)
    assert mm.sigma_prime(a_s) == a_s.scale(G1_16)
    assert mm.sigma_prime(c) == c
    assert mm.sigma(a) == a.scale(G16) and mm.sigma(c) == c


def test_kms_relation_by_hand(suq2, mm, gens):
    a, a_s = gens["a"], gens["a*"]
    psi = suq2.right_integral
    assert psi(a * a_s) == Gauss(mpq(16, 17)) and psi(a_s * a) == Gauss(mpq(1, 17))
    assert psi(a * a_s) == psi(a_s * mm.sigma_prime(a))


def test_delta_trivial_and_kappa_rho(suq2, mm, gens):
    c = gens["c"]
    assert mm.delta == suq2.unit()
    assert mm.kappa(c) == c.scale(G16)
    assert mm.rho(c) == c.scale(G1_16)
    assert suq2.s2(gens["c*"]) == gens["c*"].scale(G16)
    assert suq2.s2(gens["a"]) == gens["a"]


@pytest.mark.parametrize("spec", FINITE_EXAMPLES)
def test_kac_case_finite(spec):
    p = example(spec)
    m = modular_maps(p)
    assert m.delta == p.unit()
    for b in p.basis(0):
        x = p.basis_element(b)
        assert p.s2(x) == x


def test_orbits(mm, gens):
    x = gens["a"] + gens["c"]
    orb = orbit_subspace(mm, x, ["S2", "sigma", "sigma_prime"])
    assert len(orb) == 2
    assert len(orbit_subspace(mm, gens["c"], ["S2"])) == 1
    assert len(orbit_subspace(mm, gens["c"], ["delta_left", "delta_right"])) == 1


def test_positivity_probe_value(mm, gens):
    assert positivity_probe(mm, gens["c"]) == (Gauss(mpq(1, 17)), Gauss(mpq(16, 17)), Gauss(mpq(16, 17)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_positivity_random(mm, seed):
    x = random_element(mm.pres, 2, random.Random(seed))
    for v in positivity_probe(mm, x):
        assert is_exact(v) and not v.im and v.re >= 0


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_kms_random(mm, seed):
    """ψ(xy) = ψ(yσ′(x)) and φ(xy) = φ(yσ(x))."""
    rng = random.Random(seed)
    p = mm.pres
    x, y = random_element(p, 2, rng), random_element(p, 2, rng)
    assert p.right_integral(x * y) == p.right_integral(y * mm.sigma_prime(x))
    assert p.left_integral(x * y) == p.left_integral(y * mm.sigma(x))


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 2 ** 32))
def test_sigma_prime_is_automorphism(mm, seed):
    rng = random.Random(seed)
    p = mm.pres
    x, y = random_element(p, 1, rng), random_element(p, 2, rng)
    assert mm.sigma_prime(x * y) == mm.sigma_prime(x) * mm.sigma_prime(y)
    assert mm.sigma_prime(mm.sigma_prime_inv(y)) == y


def test_joint_eigenbasis_positive_rational(suq2, mm):
    sub = [suq2.basis_element(b) for b in suq2.basis(3)]
    tags = ["S2", "sigma", "sigma_prime"]
    dec = joint_eigenbasis(mm, sub, tags)
    assert dec.tier == "exact" and dec.dimension == len(sub)
    for lams, vecs in dec.spaces:
        for lam, tag in zip(lams, tags):
            assert lam.value.re > 0 and not lam.value.im
            for v in vecs:
                assert mm.op(tag)(v) == v.scale(lam.value)


def test_not_diagonalizable_negative_control(suq2, gens):
    """A Jordan block (identity plus nilpotent) must be rejected."""
    a, c = gens["a"], gens["c"]

    ia = next(iter(a.coeffs))

    def jordan(x):  # a ↦ a + c, c ↦ c
        return x + c.scale(x.coef(ia))

    with pytest.raises(NotDiagonalizable):
        eigen_decompose(jordan, [a, c], tag="jordan")


def test_one_parameter_group(mm, gens):
    a = gens["a"]
    # σ′_t(a) = 16^{it} a; analytic generator σ′_{−i} = σ′
    assert mm.one_parameter_apply("sigma_prime", -1j, a) == mm.sigma_prime(a)
    assert mm.one_parameter_apply("tau", -1j, gens["c"]) == mm.pres.s2_inv(gens["c"])
    rng = random.Random(7)
    for _ in range(5):
        s, t = rng.uniform(-10, 10), rng.uniform(-10, 10)
        x = a + gens["c*"] + gens["a*"] * gens["c"]
        lhs = mm.one_parameter_apply("sigma_prime", s, mm.one_parameter_apply("sigma_prime", t, x))
        rhs = mm.one_parameter_apply("sigma_prime", s + t, x)
        assert max(abs(complex(lhs.coef(k)) - complex(rhs.coef(k))) for k in set(lhs.coeffs) | set(rhs.coeffs)) <= 1e-10
