"""Suite dispatch, paper coverage registry and the coverage self-audit."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .axioms import check_axioms
from .duality import check_duality
from .gns import check_gns
from .hopf import Presentation
from .modular import check_modular
from .munitary import check_appendix
from .report import VerificationReport
from .scalar import default_tolerance

SUITES = ("axioms", "modular", "duality", "gns", "appendix")
SUITE_CHOICES = SUITES + ("all",)
DEFAULT_SEED = 20240601
DEFAULT_T = (0.5, 1.0, math.pi)
APPENDIX_GRID_CAP = 2


@dataclass(frozen=True)
class PaperItem:
    key: str  # descriptive key, never a section/proposition number
    section: str  # "modular structure" | "analytic structure" | "multiplicative unitary"
    statement: str
    check_prefixes: tuple[str, ...]


# In-scope statements of the paper and the check ids that exercise them.
PAPER_MAP: tuple[PaperItem, ...] = (
    # -- modular structure -------------------------------------------------------
    PaperItem("dual-left-integral", "modular structure",
              "φ̂(b)=ε(a) for b=ψ(S(·)a) is a left integral on B",
              ("duality.dual_integral", "duality.fourier_faithful")),
    PaperItem("plancherel-gns-of-dual", "modular structure",
              "Λ̂(b)=Λ(a); ⟨Λ̂(b),Λ̂(d)⟩=φ̂(d*b); γ(b)Λ̂(y)=Λ̂(by)",
              ("duality.plancherel", "duality.gns_inner_product", "gns.gamma_module")),
    PaperItem("T-and-T-hat-adjoints", "modular structure",
              "T*Λ(a)=Λ(σ′(a*)) and T̂*Λ̂(b)=Λ̂(σ̂(b*))",
              ("gns.T_adjoint", "gns.T_hat_on_dual")),
    PaperItem("T-hat-on-Lambda-A", "modular structure",
              "T̂Λ(a)=Λ(S(a*)δ⁻¹) and T̂*Λ(a)=Λ(S(a)*)",
              ("gns.T_hat_adjoint",)),
    PaperItem("T-on-Lambda-hat-B", "modular structure",
              "TΛ̂(b)=Λ̂(S(b)*δ̂) and T*Λ̂(b)=Λ̂(S(b*))",
              ("gns.T_on_dual",)),
    PaperItem("polar-decomposition", "modular structure",
              "T=J∇^½ and T̂=Ĵ∇̂^½",
              ("gns.polar_J", "gns.polar_J_hat", "gns.nabla_positive")),
    PaperItem("nabla-formulas", "modular structure",
              "∇Λ(a)=Λ(σ′(a)), ∇̂Λ(a)=Λ(S⁻²(a)δ), ∇Λ̂(b)=Λ̂(S²(b)δ̂⁻¹), ∇̂Λ̂(b)=Λ̂(σ̂(b))",
              ("gns.nabla.", "gns.nabla_hat.", "gns.nabla_on_dual.", "gns.nabla_hat_on_dual.")),
    PaperItem("conjugation-implementations", "modular structure",
              "∇a∇⁻¹=σ′(a), ∇b∇⁻¹=S²(b), ∇̂b∇̂⁻¹=σ̂(b), ∇̂a∇̂⁻¹=S⁻²(a)",
              ("gns.conjugation.",)),
    PaperItem("delta-hat-and-delta-actions", "modular structure",
              "δ̂Λ(a)=Λ(S²σ⁻¹(a)) and δΛ̂(b)=Λ̂(S²σ̂′(b))",
              ("gns.delta_hat_action", "gns.delta_action", "duality.delta_hat")),
    PaperItem("convention-warning-dual-coproduct", "modular structure",
              "the dual coproduct convention (opposite vs standard orientation)",
              ("appendix.V_star_orientation", "appendix.leg_identity_V_star")),
    # -- analytic structure ------------------------------------------------------
    PaperItem("delta-orbit-finite", "analytic structure",
              "δⁿa and aδⁿ lie in a finite-dimensional subspace",
              ("modular.orbit.delta",)),
    PaperItem("kappa-rho-orbit-finite", "analytic structure",
              "κⁿ(a), ρⁿ(a) lie in a finite-dimensional subspace (κ=S⁻²σ, ρ=S²σ′)",
              ("modular.orbit.kappa_rho", "modular.kappa_rho_coproduct", "modular.kappa_coproduct")),
    PaperItem("S-sigma-sigma-prime-orbit-finite", "analytic structure",
              "Sⁿ(a), σⁿ(a), σ′ⁿ(a) lie in a finite-dimensional subspace",
              ("modular.orbit.s2_sigma", "modular.sigma_sigma_prime", "modular.commute")),
    PaperItem("positivity", "analytic structure",
              "ψ(a*S²(a))≥0, ψ(a*σ(a))≥0, ψ(a*σ′(a))≥0",
              ("modular.positivity",)),
    PaperItem("common-eigenvectors-A", "analytic structure",
              "A spanned by common eigenvectors of S², σ, σ′",
              ("modular.joint_eigenbasis",)),
    PaperItem("common-eigenvectors-A-with-delta", "analytic structure",
              "A spanned by common eigenvectors of S², σ, σ′, δ·, ·δ; eigenvalues > 0",
              ("modular.joint_eigenbasis",)),
    PaperItem("common-eigenvectors-B", "analytic structure",
              "B spanned by common eigenvectors of S², σ̂, σ̂′, δ̂·, ·δ̂; eigenvalues > 0",
              ("duality.eigen_dual",)),
    PaperItem("delta-it", "analytic structure",
              "δ^{it}a=λ^{it}a defines a one-parameter group",
              ("modular.group_law",)),
    PaperItem("delta-it-grouplike", "analytic structure",
              "Δ(δ^{it})=δ^{it}⊗δ^{it}",
              ("modular.delta_it.grouplike",)),
    PaperItem("nabla-it-stability", "analytic structure",
              "∇^{it}A∇^{-it}⊆A and ∇̂^{it}B∇̂^{-it}⊆B",
              ("gns.nabla_it_stability",)),
    PaperItem("sigma-prime-t-definition", "analytic structure",
              "σ′_t(a)=∇^{it}a∇^{-it}, σ̂_t(b)=∇̂^{it}b∇̂^{-it}",
              ("modular.one_parameter_automorphisms", "modular.group_law")),
    PaperItem("analyticity", "analytic structure",
              "σ′_{−i}(a)=σ′(a), τ_{−i}(a)=S⁻²(a)",
              ("modular.analytic_generator",)),
    PaperItem("nabla-hat-it-stability", "analytic structure",
              "∇̂^{it}A∇̂^{-it}⊆A and ∇^{it}B∇^{-it}⊆B",
              ("gns.nabla_hat_it_stability", "appendix.tau_hat")),
    PaperItem("tau-t-definition", "analytic structure",
              "τ_t(a)=∇̂^{it}a∇̂^{-it}, τ̂_t(b)=∇^{it}b∇^{-it}",
              ("appendix.tau_consistency",)),
    PaperItem("coproduct-one-parameter-groups", "analytic structure",
              "Δ(σ′_t(x))=(σ′_t⊗τ_t)Δ(x), Δ(τ_t(x))=(τ_t⊗τ_t)Δ(x)",
              ("appendix.coproduct_sigma_prime_t", "appendix.coproduct_tau_t")),
    # -- appendix: multiplicative unitary ------------------------------------------
    PaperItem("multiplicative-unitary", "multiplicative unitary",
              "V(Λ(x)⊗ξ)=ΣΛ(x₍₁₎)⊗x₍₂₎ξ is unitary; formula for V*",
              ("appendix.V_unitary", "appendix.V_isometric", "appendix.V_adjoint",
               "appendix.V_star_dual_sweedler")),
    PaperItem("T-star-restated", "multiplicative unitary",
              "T*Λ(a)=Λ(σ′(a*))", ("gns.T_adjoint",)),
    PaperItem("T-hat-restated", "multiplicative unitary",
              "T̂Λ(a)=Λ(S(a*)δ⁻¹), T̂*Λ(a)=Λ(S(a)*)", ("gns.T_hat_adjoint",)),
    PaperItem("V-T-relation", "multiplicative unitary",
              "V*(T⊗T̂)=(T⊗T̂)V", ("appendix.V_T_relation",)),
    PaperItem("polar-part-commutations", "multiplicative unitary",
              "(J⊗Ĵ)V=V*(J⊗Ĵ), (∇^{it}⊗∇̂^{it})V=V(∇^{it}⊗∇̂^{it})",
              ("appendix.polar_J_V", "appendix.polar_nabla_V", "appendix.polar_nabla_it_V")),
    PaperItem("unitary-antipode-and-scaling-group", "multiplicative unitary",
              "R(x)=Ĵx*Ĵ, R̂(y)=Jy*J, τ_t, τ̂_t",
              ("appendix.unitary_antipode", "appendix.unitary_antipode_solve",
               "appendix.unitary_antipode_hat", "appendix.tau_consistency")),
    PaperItem("coproduct-sigma-prime-t-appendix", "multiplicative unitary",
              "Δ(σ′_t(x))=(σ′_t⊗τ_{−t})Δ(x) in the appendix convention",
              ("appendix.coproduct_sigma_prime_t",)),
    PaperItem("leg-identities", "multiplicative unitary",
              "(ι⊗Δ)V=V₁₂V₁₃ and (Δ̂⊗1)V*=V*₁₃V*₂₃",
              ("appendix.leg_identity_V", "appendix.leg_identity_V_star")),
    PaperItem("coproduct-tau-t", "multiplicative unitary",
              "Δ(τ_t(x))=(τ_t⊗τ_t)Δ(x)", ("appendix.coproduct_tau_t",)),
    PaperItem("unitary-antipode-flips-coproduct", "multiplicative unitary",
              "Δ(R(x))=ζ(R⊗R)Δ(x)", ("appendix.unitary_antipode_flip",)),
)


def _matches(check_id: str, prefix: str) -> bool:
    if prefix.endswith("."):
        return check_id.startswith(prefix)
    return check_id == prefix or check_id.startswith(prefix + ".") or check_id.startswith(prefix + "[")


def coverage(report: VerificationReport) -> dict[str, list[str]]:
    """For each PAPER_MAP key, the check ids in ``report`` that exercise it."""
    ids = sorted({c.check_id for c in report.checks})
    return {item.key: [i for i in ids if any(_matches(i, p) for p in item.check_prefixes)]
            for item in PAPER_MAP}


def unmapped(report: VerificationReport) -> list[str]:
    return [k for k, v in coverage(report).items() if not v]


def run_suites(pres: Presentation, suite: str = "all", degree: int = 2, *,
               t_samples=DEFAULT_T, tol: float | None = None, seed: int = DEFAULT_SEED,
               grid_degree: int | None = None, pentagon: bool = False,
               environment: dict | None = None) -> VerificationReport:
    """Run one suite (or all, in dependency order) and return the merged report.

    Every suite gets its own PRNG seeded from ``seed`` so a suite's results do not
    depend on which other suites ran before it.
    """
    if suite not in SUITE_CHOICES:
        raise ValueError(f"unknown suite {suite!r}; choose from {list(SUITE_CHOICES)}")
    tol = default_tolerance() if tol is None else tol
    finite = pres.top_degree is not None
    N = pres.top_degree if finite else degree
    if grid_degree is None:
        grid_degree = N if finite else min(degree, APPENDIX_GRID_CAP)
    t_samples = tuple(float(t) for t in t_samples)
    env = {"example": pres.name, "degree": N, "grid_degree": grid_degree,
           "tolerance": tol, "seed": seed, "t": list(t_samples)}
    env.update(environment or {})
    rep = VerificationReport(suite, env)
    wanted = SUITES if suite == "all" else (suite,)

    def rng(name: str) -> random.Random:
        return random.Random(f"{seed}:{name}")

    for name in SUITES:
        if name not in wanted:
            continue
        if name == "axioms":
            check_axioms(pres, N, rep)
        elif name == "modular":
            check_modular(pres, N, rep, rng(name), t_samples=t_samples, tol=tol)
        elif name == "duality":
            check_duality(pres, N, rep, rng(name))
        elif name == "gns":
            check_gns(pres, N, rep, rng(name), t_samples=t_samples, tol=tol)
        else:
            check_appendix(pres, grid_degree, rep, rng(name), t_samples=t_samples, tol=tol,
                           pentagon=pentagon)
    return rep
