"""hopf-core and examples: structure maps, certification, Haar solve, negative controls."""
import itertools

import numpy as np
import pytest
from gmpy2 import mpq

from aqg.axioms import check_axioms
from aqg.examples import group, make_function_algebra, make_group_algebra, make_suq2, parse_example
from aqg.hopf import PresentationMismatch
from aqg.scalar import ONE, ZERO, Gauss

from conftest import FINITE_EXAMPLES, Q, example
from oracles import SUq2Operators


def el(p, name):
    return p.basis_element(name)


# -- C[G] and F(G) spec examples -----------------------------------------------------

def test_group_algebra_examples():
    p = example("group:C[Z2]")
    assert el(p, "u_g") * el(p, "u_g") == el(p, "u_e")
    assert p.comul(el(p, "u_g")) == p.tensor(el(p, "u_g"), el(p, "u_g"))
    assert p.star(el(p, "u_g")) == el(p, "u_g")
    assert p.left_integral(el(p, "u_g")) == ZERO and p.left_integral(el(p, "u_e")) == ONE
    s3 = example("group:C[S3]")
    assert s3.star(el(s3, "u_(123)")) == el(s3, "u_(132)")


def test_function_algebra_examples():
    p = example("group:F[Z2]")
    assert el(p, "e_g") * el(p, "e_g") == el(p, "e_g")
    assert not (el(p, "e_e") * el(p, "e_g"))
    assert p.comul(el(p, "e_g")) == (p.tensor(el(p, "e_e"), el(p, "e_g")) + p.tensor(el(p, "e_g"), el(p, "e_e")))
    assert p.comul(el(p, "e_e")) == (p.tensor(el(p, "e_e"), el(p, "e_e")) + p.tensor(el(p, "e_g"), el(p, "e_g")))
    s3 = example("group:F[S3]")
    assert s3.antipode(el(s3, "e_(123)")) == el(s3, "e_(132)")
    for b in s3.basis(0):
        assert s3.right_integral(el(s3, b)) == ONE
        assert s3.left_integral(el(s3, b)) == ONE


def test_gram_of_C_S3_is_identity():
    p = example("group:C[S3]")
    bas = p.basis(0)
    for i, j in itertools.product(bas, repeat=2):
        assert p.inner(el(p, i), el(p, j)) == (ONE if i == j else ZERO)


def test_right_integral_of_F_G_is_the_unique_invariant_functional():
    """Oracle: solve (ψ⊗ι)Δ(f) = ψ(f)1 with numpy; the kernel is one-dimensional and ∝ (1,…,1)."""
    p = example("group:F[S3]")
    bas = p.basis(0)
    n = len(bas)
    pos = {b: k for k, b in enumerate(bas)}
    rows = []
    for f in bas:
        # coefficient of e_z in (ψ⊗ι)Δ(e_f) − ψ(e_f)·1, as a linear form in the unknown ψ
        for z in bas:
            row = np.zeros(n)
            for (x, y), v in p.comult_basis(f).items():
                if y == z:
                    row[pos[x]] += float(v.re)
            row[pos[f]] -= 1.0  # 1 = Σ_z e_z
            rows.append(row)
    _, sv, vt = np.linalg.svd(np.array(rows))
    kernel = vt[np.abs(np.concatenate([sv, np.zeros(n - len(sv))])) < 1e-10]
    assert kernel.shape[0] == 1
    v = kernel[0] / kernel[0][0]
    assert np.allclose(v, 1.0)


def test_mixed_presentations_rejected():
    a, b = example("group:C[Z2]"), example("group:C[Z4]")
    with pytest.raises(PresentationMismatch):
        el(a, "u_e") * el(b, "u_e")


# -- Pol(SU_q(2)) ---------------------------------------------------------------------

def test_suq2_spec_examples(suq2, gens):
    a, c, cs = gens["a"], gens["c"], gens["c*"]
    q = Gauss(Q)
    # ac = q·ca: the PBW basis puts a first, so c·a = q⁻¹·(a c)
    assert a * c == (c * a).scale(q)
    assert a * c == suq2.monomial("a c")
    assert suq2.comul(c) == suq2.tensor(c, a) + suq2.tensor(gens["a*"], c)
    assert suq2.right_integral(suq2.unit()) == ONE
    assert suq2.right_integral(c) == ZERO
    assert suq2.right_integral(cs * c) == Gauss(mpq(16, 17))
    assert suq2.left_integral(cs * c) == Gauss(mpq(16, 17))
    assert suq2.s2(c) == c.scale(q * q)
    assert suq2.antipode(c) == c.scale(-q)
    assert suq2.antipode(cs) == cs.scale(-1 / q)


def test_haar_solve_matches_operator_oracle(suq2):
    """Solved ψ versus the Hilbert-space Haar state on every PBW monomial of degree ≤ 4."""
    ops = SUq2Operators(float(Q))
    for idx in suq2.basis(4):
        assert abs(complex(suq2.right_integral(suq2.basis_element(idx))) - ops.haar(idx)) < 1e-12, idx


@pytest.mark.parametrize("q", [mpq(1, 4), mpq(1, 2), mpq(3, 7)])
def test_haar_closed_form(q):
    """ψ((c*c)^l) = (1−q²)/(1−q^{2(l+1)}); for l=1 this is 1/(1+q²)."""
    p = make_suq2(q)
    for l in range(4):
        x = p.basis_element((0, l, l))
        assert p.right_integral(x) == Gauss((1 - q * q) / (1 - q ** (2 * (l + 1))))


def test_multiplication_matches_operator_oracle(suq2):
    """π(x)π(y) = π(xy) in the ℓ²(ℕ) realization (top-left block, away from truncation)."""
    ops = SUq2Operators(float(Q), size=60)
    bas = suq2.basis(2)
    k = 40
    for i, j in itertools.product(bas, repeat=2):
        prod = suq2.basis_element(i) * suq2.basis_element(j)
        lhs = (ops.monomial(i) @ ops.monomial(j))[:k, :k]
        rhs = ops.element(prod.coeffs)[:k, :k]
        assert np.abs(lhs - rhs).max() < 1e-12, (i, j)


def test_star_matches_operator_oracle(suq2):
    ops = SUq2Operators(float(Q), size=60)
    for i in suq2.basis(3):
        lhs = ops.monomial(i).conj().T[:40, :40]
        rhs = ops.element(suq2.star(suq2.basis_element(i)).coeffs)[:40, :40]
        assert np.abs(lhs - rhs).max() < 1e-12, i


def test_pbw_rewriting_confluent(suq2):
    assert suq2.certify_rewriting(4) == []


def test_rejects_q_outside_unit_interval():
    for q in (0, 1, mpq(3, 2), -mpq(1, 2)):
        with pytest.raises(ValueError):
            make_suq2(q)


def test_unknown_example():
    with pytest.raises(ValueError):
        parse_example("group:C[Q8]")
    with pytest.raises(ValueError):
        parse_example("sl2")


# -- certification -----------------------------------------------------------------------

@pytest.mark.parametrize("spec", FINITE_EXAMPLES)
def test_finite_examples_certified_exactly(spec):
    rep = check_axioms(example(spec), 0)
    assert rep.ok, rep.failures()
    assert all(c.residual == "0" for c in rep.checks)


def test_suq2_certified_to_degree_3(suq2):
    rep = check_axioms(suq2, 3)
    assert rep.ok, rep.failures()
    assert all(c.residual == "0" for c in rep.checks)


def test_corrupted_presentation_reports_associativity_witness():
    """Negative control: flip one structure constant of C[S3]."""
    p = make_group_algebra(group("S3"))
    bad = p.corrupted("mult", (("u_(12)", "u_(13)"), "u_(123)"), Gauss(-1))
    rep = check_axioms(bad, 0)
    rec = rep.get("axioms.associativity")
    assert rec.status == "fail"
    assert rec.witness and "u_" in rec.witness
    assert rec.residual != "0"


def test_corrupted_integral_fails_invariance():
    p = make_function_algebra(group("Z4"))
    p._int = dict(p._int)
    p._int["e_g"] = Gauss(2)
    rep = check_axioms(p, 0)
    assert rep.get("axioms.right_invariance").status == "fail"


# -- hypothesis properties on random exact elements ----------------------------------------

import random  # noqa: E402

from hypothesis import given, settings  # noqa: E402
from hypothesis import strategies as st  # noqa: E402

from aqg.modular import random_element  # noqa: E402

SPECS = ["suq2", "group:C[S3]", "group:F[D4]", "group:C[Z8]"]


def _triple(spec, seed):
    p = example(spec)
    rng = random.Random(seed)
    N = 1 if spec == "suq2" else 0
    return p, [random_element(p, N, rng) for _ in range(3)]


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 2 ** 32))
def test_associative(spec, seed):
    _, (x, y, z) = _triple(spec, seed)
    assert (x * y) * z == x * (y * z)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 2 ** 32))
def test_comultiplication_multiplicative(spec, seed):
    p, (x, y, _) = _triple(spec, seed)
    assert p.comul(x * y) == p.comul(x) * p.comul(y)
    assert p.counit(x * y) == p.counit(x) * p.counit(y)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 2 ** 32))
def test_star_involutive_antimultiplicative(spec, seed):
    p, (x, y, _) = _triple(spec, seed)
    assert (x * y).star() == y.star() * x.star()
    assert x.star().star() == x


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(SPECS), st.integers(0, 2 ** 32))
def test_integral_positive_and_invariant(spec, seed):
    p, (x, _, _) = _triple(spec, seed)
    v = p.right_integral(x.star() * x)
    assert not v.im and v.re >= 0
    assert (v.re == 0) == (not x)  # faithful
    # right invariance: (ψ⊗ι)Δ(x) = ψ(x)1
    acc = None
    for (i, j), c in p.comul(x).coeffs.items():
        term = p.basis_element(j).scale(c * p.integral_basis(i))
        acc = term if acc is None else acc + term
    assert acc == p.unit().scale(p.right_integral(x))
