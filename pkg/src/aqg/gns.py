"""GNS data on degree truncations: Λ, Λ̂, π, γ, T, T̂, ∇, ∇̂, J, Ĵ.

GNS vectors are stored as algebra Elements (Λ(a) is represented by a itself);
inner products are ⟨Λ(a), Λ(c)⟩ = ψ(c*a).  Operators are recorded by their
algebra-level action on basis elements and extended linearly or
conjugate-linearly.  Every identity is verified "weakly": as an exact
equality of algebra elements, or through Gram inner products against all
basis vectors of the truncation.
"""
from __future__ import annotations

import random
from typing import Callable

from .duality import DualElement, Duality, duality
from .hopf import DegreeOverflow, Element, Presentation, _accumulate
from .linalg import is_positive_definite
from .modular import ModularMaps, modular_maps
from .report import VerificationReport, timed_check
from .scalar import I, ONE, ZERO, conj, format_scalar, is_exact, is_zero, scalar_pow_it

GROUP = "modular structure"
ANALYTIC = "analytic structure"


class SpanOperator:
    """A linear or conjugate-linear map given by its action on basis elements."""

    def __init__(self, name: str, linear: bool, action: Callable[[Element], Element]):
        self.name = name
        self.linear = linear
        self.action = action
        self._cache: dict = {}

    def on_basis(self, pres: Presentation, i) -> Element:
        r = self._cache.get(i)
        if r is None:
            r = self._cache[i] = self.action(pres.basis_element(i))
        return r

    def __call__(self, v: Element) -> Element:
        p = v.pres
        out: dict = {}
        for i, c in v.coeffs.items():
            c = c if self.linear else conj(c)
            for k, w in self.on_basis(p, i).coeffs.items():
                _accumulate(out, k, c * w)
        return Element._raw(p, out)

    def then(self, other: "SpanOperator", name: str | None = None) -> "SpanOperator":
        """other ∘ self."""
        return SpanOperator(name or f"{other.name}∘{self.name}", self.linear == other.linear,
                            lambda x: other(self(x)))

    def __repr__(self):
        return f"SpanOperator({self.name}, {'linear' if self.linear else 'conjugate-linear'})"


class GnsSpace:
    """Truncated H: Λ(A_N) with the exact Gram matrix G[x, y] = ψ(y*x)."""

    def __init__(self, pres: Presentation, N: int):
        self.pres = pres
        self.N = N
        self.basis = pres.basis(N)
        self._gram: dict | None = None

    @property
    def gram(self) -> dict:
        if self._gram is None:
            p = self.pres
            self._gram = {(x, y): p.gram_basis(x, y) for x in self.basis for y in self.basis}
        return self._gram

    def vectors(self) -> list[Element]:
        return [self.pres.basis_element(i) for i in self.basis]

    def lam(self, a: Element) -> Element:
        if a.coeffs and a.degree > self.N:
            raise DegreeOverflow(f"Λ({a}) lies outside the degree-{self.N} truncation", required_degree=a.degree)
        return a

    def lam_hat(self, b: DualElement) -> Element:
        """Λ̂(b) = Λ(a) for b = ψ(S(·)a)."""
        return self.lam(b.preimage)

    def inner(self, v: Element, w: Element):
        return self.pres.inner(v, w)


class Gns:
    """The operators of the GNS construction for one presentation and truncation."""

    def __init__(self, pres: Presentation, N: int):
        self.pres = p = pres
        self.space = GnsSpace(pres, N)
        self.mm: ModularMaps = modular_maps(pres)
        self.dual: Duality = duality(pres)
        mm = self.mm
        self.T = SpanOperator("T", False, lambda x: x.star())
        self.T_star = SpanOperator("T*", False, lambda x: mm.sigma_prime(x.star()))
        self.T_hat = SpanOperator("T̂", False, lambda x: p.antipode(x.star()) * mm.delta_inv)
        self.T_hat_star = SpanOperator("T̂*", False, lambda x: p.antipode(x).star())
        self.nabla = SpanOperator("∇", True, mm.sigma_prime)
        self.nabla_inv = SpanOperator("∇⁻¹", True, mm.sigma_prime_inv)
        self.nabla_hat = SpanOperator("∇̂", True, mm.op("nabla_hat"))
        self.nabla_hat_inv = SpanOperator("∇̂⁻¹", True, mm.op_inv("nabla_hat"))
        self._polar: tuple | None = None

    # -- representations ---------------------------------------------------------
    def pi_act(self, a: Element, v: Element) -> Element:
        """π(a)Λ(x) = Λ(ax)."""
        return a * v

    def gamma_act(self, b: DualElement, v: Element) -> Element:
        """γ(b)Λ(x) = Σ ⟨x₍₂₎, b⟩ Λ(x₍₁₎)."""
        return self.character_act(lambda j: self.dual.pair_basis(j, b), v)

    def character_act(self, chi: Callable, v: Element) -> Element:
        """Σ χ(x₍₂₎) Λ(x₍₁₎) for a functional χ on basis indices (γ of a multiplier)."""
        p = self.pres
        out: dict = {}
        vals: dict = {}
        for x, c in v.coeffs.items():
            for (i, j), w in p.comult_basis(x).items():
                u = vals.get(j)
                if u is None:
                    u = vals[j] = chi(j)
                if not is_zero(u):
                    _accumulate(out, i, c * w * u)
        return Element._raw(p, out)

    # -- one-parameter groups on H ------------------------------------------------
    def nabla_it(self, t, v: Element) -> Element:
        """∇^{it}Λ(x) = Λ(σ′_t(x)) (eigen-scaling; complex t gives analytic powers)."""
        return self.mm.one_parameter_apply("sigma_prime", t, v)

    def nabla_hat_it(self, t, v: Element) -> Element:
        """∇̂^{it}Λ(x): eigen-scaling by μ^{it} where S⁻²(x)δ = μx."""
        return self.mm.one_parameter_apply("nabla_hat", t, v)

    # -- polar decompositions ----------------------------------------------------
    def polar_parts(self) -> tuple[SpanOperator, SpanOperator]:
        """J = T∇^{-1/2} and Ĵ = T̂∇̂^{-1/2} (so that T = J∇^{1/2}, T̂ = Ĵ∇̂^{1/2})."""
        if self._polar is None:
            half = 0.5j  # λ^{i·(i/2)} = λ^{-1/2}
            J = SpanOperator("J", False, lambda x: self.T(self.nabla_it(half, x)))
            J_hat = SpanOperator("Ĵ", False, lambda x: self.T_hat(self.nabla_hat_it(half, x)))
            self._polar = (J, J_hat)
        return self._polar

    def nabla_half(self, v: Element) -> Element:
        return self.nabla_it(-0.5j, v)

    def nabla_hat_half(self, v: Element) -> Element:
        return self.nabla_hat_it(-0.5j, v)


def _pairs(n: int, rng: random.Random, limit: int) -> list[tuple[int, int]]:
    pairs = [(i, j) for i in range(n) for j in range(n)]
    return pairs if len(pairs) <= limit else rng.sample(pairs, limit)


def check_gns(pres: Presentation, N: int, report: VerificationReport | None = None,
              rng: random.Random | None = None, t_samples=(0.5, 1.0), tol: float | None = None,
              pair_limit: int = 2500) -> VerificationReport:
    """The GNS-level identities on Λ(A_N) and Λ̂(B_N), exact where the tier allows."""
    rep = report or VerificationReport("gns", {"example": pres.name, "degree": N})
    rng = rng or random.Random(0)
    p = pres
    g = Gns(p, N)
    d, mm, sp = g.dual, g.mm, g.space
    E = sp.vectors()
    B = [d.fourier(x) for x in E]
    n = len(E)
    pairs = _pairs(n, rng, pair_limit)
    inner = sp.inner

    def chk(cid, anchor, group=GROUP, **kw):
        return timed_check(rep, f"gns.{cid}", anchor, group, **kw)

    with chk("gram", "⟨Λ(a),Λ(c)⟩=ψ(c*a): Gram Hermitian positive definite") as t:
        G = sp.gram
        for x in sp.basis:
            for y in sp.basis:
                t.compare(G[(x, y)], conj(G[(y, x)]), f"({p.index_name(x)}, {p.index_name(y)})")
        ok, piv = is_positive_definite(G, sp.basis)
        t.require(ok, "LDL pivots", ", ".join(format_scalar(v) for v in piv[:8]))

    with chk("pi_star_representation", "π(a)Λ(x)=Λ(ax); ⟨π(a)ξ,η⟩=⟨ξ,π(a*)η⟩") as t:
        for i, j in pairs:
            for a in E[: min(n, 6)]:
                t.compare(inner(g.pi_act(a, E[i]), E[j]), inner(E[i], g.pi_act(a.star(), E[j])),
                          f"a={a} ({E[i]}, {E[j]})")

    with chk("gamma_module", "γ(b)Λ(x)=Σ⟨x₍₂₎,b⟩Λ(x₍₁₎) and γ(b)Λ̂(y)=Λ̂(by)") as t:
        for i, j in pairs[: 4 * n]:
            t.compare(g.gamma_act(B[i], sp.lam_hat(B[j])), sp.lam_hat(d.dual_mul(B[i], B[j])),
                      f"({E[i]}, {E[j]})")

    with chk("gamma_star_representation", "⟨γ(b)ξ,η⟩=⟨ξ,γ(b*)η⟩") as t:
        for i, j in pairs[: 4 * n]:
            for b in B[: min(n, 4)]:
                t.compare(inner(g.gamma_act(b, E[i]), E[j]), inner(E[i], g.gamma_act(d.dual_star(b), E[j])),
                          f"b={b} ({E[i]}, {E[j]})")

    # adjoint pairs: ⟨Tξ,η⟩ = ⟨T*η,ξ⟩
    for cid, X, Xs, anchor in (
        ("T_adjoint", g.T, g.T_star, "⟨Tξ,η⟩=⟨T*η,ξ⟩ with TΛ(a)=Λ(a*), T*Λ(a)=Λ(σ′(a*))"),
        ("T_hat_adjoint", g.T_hat, g.T_hat_star,
         "⟨T̂ξ,η⟩=⟨T̂*η,ξ⟩ with T̂Λ(a)=Λ(S(a*)δ⁻¹), T̂*Λ(a)=Λ(S(a)*)"),
    ):
        with chk(cid, anchor) as t:
            for i, j in pairs:
                t.compare(inner(X(E[i]), E[j]), inner(Xs(E[j]), E[i]), f"({E[i]}, {E[j]})")
            for x in E:
                t.compare(X(x.scale(I)), X(x).scale(-I), f"conjugate-linearity at {x}")
                t.compare(X(X(x)), x, f"involutive at {x}")

    with chk("T_hat_on_dual", "T̂Λ̂(b)=Λ̂(b*) and T̂*Λ̂(b)=Λ̂(σ̂(b*))") as t:
        for x, b in zip(E, B):
            t.compare(g.T_hat(sp.lam_hat(b)), sp.lam_hat(d.dual_star(b)), f"T̂ at {x}")
            t.compare(g.T_hat_star(sp.lam_hat(b)), sp.lam_hat(d.sigma_hat(d.dual_star(b))), f"T̂* at {x}")

    with chk("T_on_dual", "TΛ̂(b)=Λ̂(S(b)*δ̂) and T*Λ̂(b)=Λ̂(S(b*))") as t:
        for x, b in zip(E, B):
            t.compare(g.T(sp.lam_hat(b)), sp.lam_hat(d.delta_hat_actions(d.dual_star(d.dual_antipode(b)), "right")),
                      f"T at {x}")
            t.compare(g.T_star(sp.lam_hat(b)), sp.lam_hat(d.dual_antipode(d.dual_star(b))), f"T* at {x}")

    # the four modular-operator formulas, each by composition and by the weak (Gram) route
    formulas = (
        ("nabla", "∇Λ(a)=Λ(σ′(a))", g.T, g.T_star,
         [(x, mm.sigma_prime(x), str(x)) for x in E]),
        ("nabla_on_dual", "∇Λ̂(b)=Λ̂(S²(b)δ̂⁻¹)", g.T, g.T_star,
         [(sp.lam_hat(b), sp.lam_hat(d.delta_hat_actions(d.dual_s2(b), "inv-right")), str(b)) for b in B]),
        ("nabla_hat", "∇̂Λ(a)=Λ(S⁻²(a)δ)", g.T_hat, g.T_hat_star,
         [(x, p.s2_inv(x) * mm.delta, str(x)) for x in E]),
        ("nabla_hat_on_dual", "∇̂Λ̂(b)=Λ̂(σ̂(b))", g.T_hat, g.T_hat_star,
         [(sp.lam_hat(b), sp.lam_hat(d.sigma_hat(b)), str(b)) for b in B]),
    )
    for cid, anchor, X, Xs, cases in formulas:
        with chk(f"{cid}.composition", f"{anchor} via ∇=T*T (resp. ∇̂=T̂*T̂)") as t:
            for v, img, w in cases:
                t.compare(Xs(X(v)), img, w)
        with chk(f"{cid}.weak", f"{anchor} via ⟨formula(ξ),η⟩=⟨Tη,Tξ⟩ on all basis η") as t:
            for v, img, w in cases:
                for y in E:
                    t.compare(inner(img, y), inner(X(y), X(v)), f"{w} against {y}")

    with chk("nabla_positive", "⟨∇ξ,ξ⟩>0 and ⟨∇̂ξ,ξ⟩>0 for ξ≠0") as t:
        for op in (g.nabla, g.nabla_hat):
            M = {(x, y): inner(op(p.basis_element(x)), p.basis_element(y)) for x in sp.basis for y in sp.basis}
            ok, piv = is_positive_definite(M, sp.basis)
            t.require(ok, op.name, ", ".join(format_scalar(v) for v in piv[:8]))

    J, J_hat = g.polar_parts()
    for cid, Jop, X, half, anchor in (
        ("polar_J", J, g.T, g.nabla_half, "T=J∇^½: J anti-unitary, J²=1"),
        ("polar_J_hat", J_hat, g.T_hat, g.nabla_hat_half, "T̂=Ĵ∇̂^½: Ĵ anti-unitary, Ĵ²=1"),
    ):
        imgs = [Jop(x) for x in E]
        exact = all(is_exact(v) for y in imgs for v in y.coeffs.values())
        with chk(cid, anchor, exact=exact, tol=tol) as t:
            for x, jx in zip(E, imgs):
                t.compare(Jop(jx), x, f"J² at {x}")
                t.compare(Jop(half(x)), X(x), f"J∇^½ at {x}")
            for i, j in pairs:
                t.compare(inner(imgs[i], imgs[j]), inner(E[j], E[i]), f"({E[i]}, {E[j]})")
            if not exact:
                t.detail = "polar parts left the exact tier (irrational square roots)"

    # conjugation implementations
    conj_checks = (
        ("conjugation.nabla_pi", "∇a∇⁻¹=σ′(a)", g.nabla, g.nabla_inv,
         [(lambda v, a=a: g.pi_act(a, v), lambda v, a=a: g.pi_act(mm.sigma_prime(a), v), str(a)) for a in E]),
        ("conjugation.nabla_gamma", "∇b∇⁻¹=S²(b)", g.nabla, g.nabla_inv,
         [(lambda v, b=b: g.gamma_act(b, v), lambda v, b=b: g.gamma_act(d.dual_s2(b), v), str(b)) for b in B]),
        ("conjugation.nabla_hat_gamma", "∇̂b∇̂⁻¹=σ̂(b)", g.nabla_hat, g.nabla_hat_inv,
         [(lambda v, b=b: g.gamma_act(b, v), lambda v, b=b: g.gamma_act(d.sigma_hat(b), v), str(b)) for b in B]),
        ("conjugation.nabla_hat_pi", "∇̂a∇̂⁻¹=S⁻²(a)", g.nabla_hat, g.nabla_hat_inv,
         [(lambda v, a=a: g.pi_act(a, v), lambda v, a=a: g.pi_act(p.s2_inv(a), v), str(a)) for a in E]),
    )
    for cid, anchor, K, K_inv, ops in conj_checks:
        with chk(cid, anchor) as t:
            for i, j in pairs:
                if j >= len(ops):
                    continue
                lhs_op, rhs_op, w = ops[j]
                x = E[i]
                t.compare(K(lhs_op(K_inv(x))), rhs_op(x), f"{w} on {x}")

    with chk("delta_hat_action", "δ̂Λ(a)=Λ(S²σ⁻¹(a)) with ⟨a,δ̂⟩=ε(σ⁻¹(a))") as t:
        for x in E:
            t.compare(g.character_act(d.delta_hat_char, x), p.s2(mm.sigma_inv(x)), str(x))

    with chk("delta_action", "δΛ̂(b)=Λ̂(S²σ̂′(b))") as t:
        for x, b in zip(E, B):
            t.compare(g.pi_act(mm.delta, sp.lam_hat(b)), sp.lam_hat(d.dual_s2(d.sigma_hat_prime(b))), str(x))

    # ∇^{it}-stability of π(A) as eigen-scaling statements
    for cid, anchor, tag, it in (
        ("nabla_it_stability", "∇^{it}a∇^{-it}=λ^{it}a for σ′(a)=λa", "sigma_prime", g.nabla_it),
        ("nabla_hat_it_stability", "∇̂^{it}a∇̂^{-it}=μ^{it}a for S⁻²(a)=μa", "tau", g.nabla_hat_it),
    ):
        with chk(cid, anchor, group=ANALYTIC, exact=False, tol=tol) as t:
            dec = mm.eigenbasis(tag, N)
            eig = list(dec.pairs())
            for tt in t_samples:
                for i, j in pairs[: 2 * n]:
                    lam, a = eig[j % len(eig)]
                    x = E[i]
                    lhs = it(tt, g.pi_act(a, it(-tt, x)))
                    t.compare(lhs, g.pi_act(a, x).scale(scalar_pow_it(lam, tt)), f"t={tt} a={a} x={x}")
                    t.compare(abs(complex(scalar_pow_it(lam, tt))), 1.0, f"|λ^(it)|=1 at {lam}")

    return rep
