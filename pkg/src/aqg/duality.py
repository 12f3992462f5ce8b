"""The dual B realized through Fourier preimages.

A dual element b is stored as the a ∈ A with b = ψ(S(·)a).  Every dual
operation evaluates the resulting functional on a degree truncation A_D and
solves for its preimage against the pairing matrix P[x, z] = ψ(S(x)z).  The
truncations A_D of the built-in examples are subcoalgebras, so a functional
built from dual elements with preimages in A_D again has its preimage in A_D;
this is confirmed on A_{D+1} for every solve.

Conventions (recorded in reports):
  * product      (b1 b2)(x) = Σ b1(x₍₁₎) b2(x₍₂₎)
  * coproduct    ⟨x ⊗ x′, Δ(b)⟩ = ⟨x x′, b⟩        ("standard")
                 ⟨x ⊗ x′, Δ(b)⟩ = ⟨x′ x, b⟩        ("opposite")
  * star         ⟨x, b*⟩ = ⟨S(x)*, b⟩⁻
  * antipode     ⟨x, S(b)⟩ = ⟨S(x), b⟩
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Callable

from .hopf import DegreeOverflow, Element, Presentation, _accumulate
from .linalg import SingularSystem, SquareSolver
from .modular import (EigenDecomposition, ModularMaps, NotFaithful, eigen_decompose, modular_maps,
                      verify_decomposition)
from .report import VerificationReport, timed_check
from .scalar import I, ZERO, conj, is_zero

GROUP = "modular structure"


class DualElement:
    """b = ψ(S(·)a), stored by its preimage a."""

    __slots__ = ("preimage",)

    def __init__(self, preimage: Element):
        self.preimage = preimage

    @property
    def pres(self) -> Presentation:
        return self.preimage.pres

    @property
    def degree(self) -> int:
        return self.preimage.degree

    def __add__(self, other: "DualElement") -> "DualElement":
        return DualElement(self.preimage + other.preimage)

    def __sub__(self, other: "DualElement") -> "DualElement":
        return DualElement(self.preimage - other.preimage)

    def __neg__(self):
        return DualElement(-self.preimage)

    def scale(self, c) -> "DualElement":
        return DualElement(self.preimage.scale(c))

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if isinstance(other, DualElement):
            return self.preimage == other.preimage
        return NotImplemented

    __hash__ = None

    def __bool__(self):
        return bool(self.preimage)

    @property
    def coeffs(self) -> dict:
        """Preimage coefficients (lets reports diff dual elements)."""
        return self.preimage.coeffs

    def __str__(self):
        return f"F[{self.preimage}]"

    __repr__ = __str__


def _verify_degree(pres: Presentation, D: int) -> int:
    return D + 1 if pres.top_degree is None else min(D + 1, pres.top_degree)


class Duality:
    """Dual operations for one presentation (caches are write-once)."""

    def __init__(self, pres: Presentation, mm: ModularMaps | None = None, verify: bool = True):
        self.pres = pres
        self.mm = mm or modular_maps(pres)
        self.verify = verify
        self._solvers: dict[int, SquareSolver] = {}
        self._phi_weight: dict[int, Element] = {}
        self._hat_solvers: dict = {}
        self._weight_coprod: dict = {}
        self._sigma_hat_cache: dict = {}
        self._sigma_hat_prime_cache: dict = {}
        self._inv_char_name: str | None = None

    # -- Fourier transform and pairing --------------------------------------------
    def fourier(self, a: Element) -> DualElement:
        return DualElement(a)

    def pair_basis(self, i, b: DualElement):
        """⟨e_i, b⟩ = ψ(S(e_i) a)."""
        p = self.pres
        acc = ZERO
        for k, v in b.preimage.coeffs.items():
            w = p.pairing_basis(i, k)
            if not is_zero(w):
                acc = acc + v * w
        return acc

    def pair(self, x: Element, b: DualElement):
        acc = ZERO
        for i, c in x.coeffs.items():
            w = self.pair_basis(i, b)
            if not is_zero(w):
                acc = acc + c * w
        return acc

    def _deg(self, b: DualElement) -> int:
        """Truncation degree for solves involving b (whole algebra in finite type)."""
        top = self.pres.top_degree
        return top if top is not None else b.degree

    # -- preimage solves ---------------------------------------------------------
    def solver(self, D: int) -> SquareSolver:
        s = self._solvers.get(D)
        if s is None:
            p = self.pres
            bas = p.basis(D)
            rows = {x: {z: v for z in bas if not is_zero(v := p.pairing_basis(x, z))} for x in bas}
            try:
                s = SquareSolver(rows, bas)
            except SingularSystem as exc:
                raise NotFaithful(f"pairing matrix singular at degree {D}: {exc}") from exc
            self._solvers[D] = s
        return s

    def from_functional(self, f: Callable, D: int) -> DualElement:
        """Unique b with preimage in A_D and ⟨e_x, b⟩ = f(x) on A_D.

        The functional is re-evaluated on A_{D+1}; a mismatch means the
        functional escapes the truncation and the solve is escalated once.
        """
        p = self.pres
        for _ in range(2):
            vals = {}
            for x in p.basis(D):
                v = f(x)
                if not is_zero(v):
                    vals[x] = v
            b = DualElement(Element._raw(p, self.solver(D).solve(vals)))
            if not self.verify:
                return b
            Dv = _verify_degree(p, D)
            if all(f(x) == self.pair_basis(x, b) for x in p.basis(Dv)):
                return b
            D = p.growth(D, D)
        raise DegreeOverflow("dual element escaped the truncation (no preimage within degree bound)",
                             required_degree=D)

    # -- algebra of B ---------------------------------------------------------------
    def dual_mul(self, b1: DualElement, b2: DualElement) -> DualElement:
        """(b1 b2)(x) = Σ b1(x₍₁₎) b2(x₍₂₎)."""
        p = self.pres
        if not b1 or not b2:
            return DualElement(p.zero())
        D = max(self._deg(b1), self._deg(b2))
        c1: dict = {}
        c2: dict = {}

        def f(x):
            acc = ZERO
            for (i, j), v in p.comult_basis(x).items():
                u = c1.get(i)
                if u is None:
                    u = c1[i] = self.pair_basis(i, b1)
                if is_zero(u):
                    continue
                w = c2.get(j)
                if w is None:
                    w = c2[j] = self.pair_basis(j, b2)
                if not is_zero(w):
                    acc = acc + v * u * w
            return acc

        return self.from_functional(f, D)

    def convolve_character(self, b: DualElement, chi: Callable, side: str) -> DualElement:
        """b·χ (side='right') or χ·b (side='left') for a character χ on A."""
        p = self.pres
        cache: dict = {}

        def bval(i):
            r = cache.get(i)
            if r is None:
                r = cache[i] = self.pair_basis(i, b)
            return r

        def f(x):
            acc = ZERO
            for (i, j), v in p.comult_basis(x).items():
                u, w = (bval(i), chi(j)) if side == "right" else (chi(i), bval(j))
                if not is_zero(u) and not is_zero(w):
                    acc = acc + v * u * w
            return acc

        if not b:
            return b
        return self.from_functional(f, self._deg(b))

    def dual_star(self, b: DualElement) -> DualElement:
        """preimage(b*) = S(a*)δ⁻¹."""
        p = self.pres
        return DualElement(p.antipode(b.preimage.star()) * self.mm.delta_inv)

    def dual_star_by_pairing(self, b: DualElement) -> DualElement:
        """b* from ⟨x, b*⟩ = ⟨S(x)*, b⟩⁻ (independent route)."""
        p = self.pres

        def f(x):
            return conj(self.pair(p.antipode(p.basis_element(x)).star(), b))

        return self.from_functional(f, self._deg(b)) if b else b

    def dual_antipode(self, b: DualElement) -> DualElement:
        """⟨x, S(b)⟩ = ⟨S(x), b⟩."""
        p = self.pres
        if not b:
            return b
        return self.from_functional(lambda x: self.pair(p.antipode(p.basis_element(x)), b), self._deg(b))

    def dual_antipode_inv(self, b: DualElement) -> DualElement:
        p = self.pres
        if not b:
            return b
        return self.from_functional(lambda x: self.pair(p.antipode_inv(p.basis_element(x)), b), self._deg(b))

    def dual_s2(self, b: DualElement) -> DualElement:
        return self.dual_antipode(self.dual_antipode(b))

    def dual_s2_inv(self, b: DualElement) -> DualElement:
        return self.dual_antipode_inv(self.dual_antipode_inv(b))

    def dual_left_integral(self, b: DualElement):
        """φ̂(b) = ε(a)."""
        return self.pres.counit(b.preimage)

    def dual_right_integral(self, b: DualElement):
        """ψ̂ = φ̂∘S."""
        return self.dual_left_integral(self.dual_antipode(b))

    def dual_unit(self) -> DualElement:
        """Unit of B (finite type only): ψ(S(x)a₀) = ε(x)."""
        p = self.pres
        if p.top_degree is None:
            raise DegreeOverflow("B is non-unital for this presentation (discrete type)")
        return self.from_functional(lambda x: p.counit_basis(x), p.top_degree)

    # -- φ̂ on products via a weight element ----------------------------------------
    def phi_weight(self, D: int) -> Element:
        """w_D ∈ A_D with ⟨w_D, b⟩ = φ̂(b) for every b with preimage in A_D."""
        w = self._phi_weight.get(D)
        if w is None:
            p = self.pres
            bas = p.basis(D)
            # Σ_x w_x ψ(S(x) z) = ε(z) for z ∈ A_D: transpose pairing system
            rows = {z: {x: v for x in bas if not is_zero(v := p.pairing_basis(x, z))} for z in bas}
            s = SquareSolver(rows, bas)
            w = Element._raw(p, s.solve({z: p.counit_basis(z) for z in bas if not is_zero(p.counit_basis(z))}))
            self._phi_weight[D] = w
        return w

    def _weight_terms(self, D: int, right: bool) -> list:
        key = (D, right)
        t = self._weight_coprod.get(key)
        if t is None:
            p = self.pres
            w = self.phi_weight(D)
            if right:
                w = p.antipode(w)  # ψ̂(b) = φ̂(S(b)) = ⟨S(w), b⟩
            t = list(p.comul(w).coeffs.items())
            self._weight_coprod[key] = t
        return t

    def _hat_form(self, D: int, right: bool) -> Callable:
        """(y, z) ↦ φ̂(ê_y ê_z) (or ψ̂) for preimages in A_D, via the weight w_D."""
        p = self.pres
        terms = self._weight_terms(D, right)

        def form(y, z):
            acc = ZERO
            for (k1, k2), v in terms:
                u = p.pairing_basis(k1, y)
                if is_zero(u):
                    continue
                w = p.pairing_basis(k2, z)
                if not is_zero(w):
                    acc = acc + v * u * w
            return acc

        return form

    def phihat_of_product(self, b: DualElement, d: DualElement, D: int | None = None):
        """φ̂(bd) through the weight element (no preimage solve)."""
        p = self.pres
        D = D if D is not None else (p.top_degree if p.top_degree is not None else max(b.degree, d.degree))
        acc = ZERO
        for (k1, k2), v in self._weight_terms(D, False):
            u = self.pair_basis(k1, b)
            if is_zero(u):
                continue
            w = self.pair_basis(k2, d)
            if not is_zero(w):
                acc = acc + v * u * w
        return acc

    # -- dual modular automorphisms ----------------------------------------------
    def _hat_solve(self, i, right: bool) -> dict:
        """Preimage coordinates of σ̂(ê_i) (right=False) or σ̂′(ê_i) (right=True).

        Solves form(i, y) = form(y, z) for all y ∈ A_D, then confirms the
        solution on A_{D+1}.
        """
        cache = self._sigma_hat_prime_cache if right else self._sigma_hat_cache
        r = cache.get(i)
        if r is not None:
            return r
        p = self.pres
        name = "σ̂′" if right else "σ̂"
        D = p.top_degree if p.top_degree is not None else p.degree(i)
        for _ in range(2):
            form = self._hat_form(D, right)
            key = (right, D)
            s = self._hat_solvers.get(key)
            if s is None:
                bas = p.basis(D)
                rows = {y: {z: v for z in bas if not is_zero(v := form(y, z))} for y in bas}
                try:
                    s = SquareSolver(rows, bas)
                except SingularSystem as exc:
                    raise NotFaithful(f"{name}: dual integral not faithful at degree {D}") from exc
                self._hat_solvers[key] = s
            z = s.solve({y: v for y in p.basis(D) if not is_zero(v := form(i, y))})
            if not self.verify:
                cache[i] = z
                return z
            Dv = _verify_degree(p, D)
            fv = self._hat_form(Dv, right)
            if all(fv(i, y) == sum((c * fv(y, k) for k, c in z.items()), ZERO) for y in p.basis(Dv)):
                cache[i] = z
                return z
            D = p.growth(D, D)
        raise DegreeOverflow(f"{name} image escapes the truncation", required_degree=D)

    def sigma_hat(self, b: DualElement) -> DualElement:
        """φ̂(bd) = φ̂(d σ̂(b))."""
        p = self.pres
        out: dict = {}
        for i, c in b.preimage.coeffs.items():
            for k, v in self._hat_solve(i, False).items():
                _accumulate(out, k, c * v)
        return DualElement(Element._raw(p, out))

    def sigma_hat_prime(self, b: DualElement) -> DualElement:
        """ψ̂(bd) = ψ̂(d σ̂′(b)) with ψ̂ = φ̂∘S."""
        p = self.pres
        out: dict = {}
        for i, c in b.preimage.coeffs.items():
            for k, v in self._hat_solve(i, True).items():
                _accumulate(out, k, c * v)
        return DualElement(Element._raw(p, out))

    def _invert_dual(self, fwd: Callable, b: DualElement) -> DualElement:
        """Preimage under a degree-preserving invertible dual map."""
        p = self.pres
        D = self._deg(b)
        bas = p.basis(D)
        rows: dict = {}
        for j in bas:
            for k, v in fwd(DualElement(p.basis_element(j))).preimage.coeffs.items():
                rows.setdefault(k, {})[j] = v
        s = SquareSolver(rows, bas)
        return DualElement(Element._raw(p, s.solve(dict(b.preimage.coeffs))))

    def sigma_hat_inv(self, b):
        return self._invert_dual(self.sigma_hat, b)

    def sigma_hat_prime_inv(self, b):
        return self._invert_dual(self.sigma_hat_prime, b)

    # -- δ̂ -----------------------------------------------------------------------------
    def delta_hat_char(self, x) -> object:
        """⟨e_x, δ̂⟩ = ε(σ⁻¹(e_x))."""
        p = self.pres
        return p.counit(self.mm.sigma_inv(p.basis_element(x)))

    def _inv_char_candidates(self) -> dict:
        p, mm = self.pres, self.mm
        return {
            "ε∘σ": lambda x: p.counit(mm.sigma(p.basis_element(x))),
            "ε∘σ⁻¹∘S": lambda x: p.counit(mm.sigma_inv(p.antipode(p.basis_element(x)))),
        }

    def calibrate_delta_hat_inv(self, tests: list[DualElement] | None = None) -> str:
        """Pick the δ̂⁻¹ character making δ̂(δ̂⁻¹ b) = b = (bδ̂⁻¹)δ̂ on tests."""
        if self._inv_char_name is not None:
            return self._inv_char_name
        p = self.pres
        if tests is None:
            D = 1 if p.top_degree is None else p.top_degree
            tests = [DualElement(p.basis_element(i)) for i in p.basis(D)]
        for name, chi in self._inv_char_candidates().items():
            ok = True
            for b in tests:
                left = self.convolve_character(self.convolve_character(b, chi, "left"), self.delta_hat_char, "left")
                right = self.convolve_character(self.convolve_character(b, chi, "right"), self.delta_hat_char, "right")
                if left != b or right != b:
                    ok = False
                    break
            if ok:
                self._inv_char_name = name
                return name
        raise ValueError("no δ̂⁻¹ candidate inverts δ̂ on the test set")

    def delta_hat_inv_char(self, x):
        name = self.calibrate_delta_hat_inv()
        return self._inv_char_candidates()[name](x)

    def delta_hat_actions(self, b: DualElement, which: str) -> DualElement:
        """which ∈ {left, right, inv-left, inv-right}: δ̂b, bδ̂, δ̂⁻¹b, bδ̂⁻¹."""
        chi = self.delta_hat_char if which in ("left", "right") else self.delta_hat_inv_char
        side = "left" if which.endswith("left") else "right"
        return self.convolve_character(b, chi, side)

    # -- coproduct on B via pairings ------------------------------------------------
    def coproduct_slice(self, b: DualElement, x: Element, orientation: str = "standard") -> DualElement:
        """Σ_{(b)} ⟨x, b₍₁₎⟩ b₍₂₎, i.e. z ↦ ⟨x z, b⟩ (standard) or ⟨z x, b⟩ (opposite)."""
        p = self.pres
        if not b or not x:
            return DualElement(p.zero())
        D = self._deg(b) if p.top_degree is not None else p.growth(b.degree, x.degree)

        def f(z):
            ez = p.basis_element(z)
            return self.pair(x * ez if orientation == "standard" else ez * x, b)

        return self.from_functional(f, D)

    def coproduct_slice_left(self, b: DualElement, x: Element, orientation: str = "standard") -> DualElement:
        """Σ_{(b)} b₍₁₎ ⟨x, b₍₂₎⟩, i.e. z ↦ ⟨z x, b⟩ (standard) or ⟨x z, b⟩ (opposite)."""
        return self.coproduct_slice(b, x, "opposite" if orientation == "standard" else "standard")

    # -- dual-side eigen-theory ------------------------------------------------------
    def dual_op(self, tag: str) -> Callable[[DualElement], DualElement]:
        return {
            "S2": self.dual_s2,
            "sigma_hat": self.sigma_hat,
            "sigma_hat_prime": self.sigma_hat_prime,
            "delta_hat_left": lambda b: self.delta_hat_actions(b, "left"),
            "delta_hat_right": lambda b: self.delta_hat_actions(b, "right"),
        }[tag]

    def eigen_dual(self, subspace: list[DualElement], tags: list[str]) -> EigenDecomposition:
        """Joint eigen-decomposition of dual maps on span(subspace), in preimage coordinates."""
        if not subspace:
            return EigenDecomposition("dual:" + ",".join(tags), [], [])
        blocks = [((), [b.preimage for b in subspace])]
        tier, notes = "exact", []
        for tag in tags:
            f = self.dual_op(tag)

            def op(a, f=f):
                return f(DualElement(a)).preimage

            nxt = []
            for lams, vecs in blocks:
                dec = eigen_decompose(op, vecs, tag=tag)
                if dec.tier != "exact":
                    tier = "float"
                    notes += dec.notes
                for lam, vs in dec.spaces:
                    nxt.append((lams + (lam,), vs))
            blocks = nxt
        return EigenDecomposition("dual:" + ",".join(tags), blocks, [b.preimage for b in subspace], tier, notes)

    # -- Plancherel -------------------------------------------------------------------
    def plancherel_check(self, a: Element, report: VerificationReport | None = None) -> VerificationReport:
        rep = report or VerificationReport("plancherel")
        p = self.pres
        with timed_check(rep, f"duality.plancherel[{a}]", "φ̂(â*â)=ψ(a*a)", GROUP) as t:
            ah = self.fourier(a)
            lhs = self.dual_left_integral(self.dual_mul(self.dual_star(ah), ah))
            rhs = p.right_integral(a.star() * a)
            t.compare(lhs, rhs, f"a={a}")
        return rep


def duality(pres: Presentation) -> Duality:
    d = getattr(pres, "_duality", None)
    if d is None:
        d = Duality(pres)
        pres._duality = d
    return d


# -- dual modular data ------------------------------------------------------------------


@dataclass(frozen=True)
class DualModularData:
    sigma_hat: Callable[[DualElement], DualElement]
    sigma_hat_prime: Callable[[DualElement], DualElement]
    s_hat_squared: Callable[[DualElement], DualElement]
    delta_hat_left: Callable[[DualElement], DualElement]
    delta_hat_right: Callable[[DualElement], DualElement]
    delta_hat_inv_left: Callable[[DualElement], DualElement]
    delta_hat_inv_right: Callable[[DualElement], DualElement]
    delta_hat_inv_character: str


def dual_modular_derive(pres: Presentation, max_degree: int) -> DualModularData:
    """Solve σ̂, σ̂′ on the Fourier image of A_max_degree and calibrate δ̂⁻¹."""
    d = duality(pres)
    for i in pres.basis(max_degree):
        d._hat_solve(i, False)
        d._hat_solve(i, True)
    name = d.calibrate_delta_hat_inv()
    return DualModularData(
        sigma_hat=d.sigma_hat,
        sigma_hat_prime=d.sigma_hat_prime,
        s_hat_squared=d.dual_s2,
        delta_hat_left=lambda b: d.delta_hat_actions(b, "left"),
        delta_hat_right=lambda b: d.delta_hat_actions(b, "right"),
        delta_hat_inv_left=lambda b: d.delta_hat_actions(b, "inv-left"),
        delta_hat_inv_right=lambda b: d.delta_hat_actions(b, "inv-right"),
        delta_hat_inv_character=name,
    )


# -- the duality suite ----------------------------------------------------------------------


def _character_power(pres: Presentation, chi: Callable, n: int) -> Callable:
    """Convolution power χ^{*n} of a character (n ≥ 1), evaluated on basis indices."""
    if n == 1:
        return chi
    prev = _character_power(pres, chi, n - 1)

    def f(x):
        acc = ZERO
        for (i, j), v in pres.comult_basis(x).items():
            u = prev(i)
            if not is_zero(u):
                acc = acc + v * u * chi(j)
        return acc

    return f


# -- abelian groups: the DFT ---------------------------------------------------------


def root_of_unity(n: int, k: int):
    """exp(−2πik/n); exact (a Gaussian rational) when n divides 4, else Float."""
    k %= n
    if 4 % n == 0:
        return (-I) ** (k * (4 // n))
    return cmath.exp(-2j * math.pi * k / n)


def _cyclic_order(pres: Presentation) -> int | None:
    G = getattr(pres, "group", None)
    if getattr(pres, "family", None) != "group-algebra" or G is None or not G.name.startswith("Z"):
        return None
    return G.order


def character_dual_basis(pres: Presentation) -> list[DualElement]:
    """For C[Z_n] (elements ordered as powers g^h): χ_k = Σ_h e^{−2πikh/n} û_h, k = 0..n−1.

    û_h = ψ(S(·)u_h) is the point functional at g^h, so χ_k is the character
    g^h ↦ e^{−2πikh/n} of Z_n, an element of B ≅ F(Z_n).
    """
    n = _cyclic_order(pres)
    if n is None:
        raise ValueError(f"{pres.name} is not the group algebra of a cyclic group")
    d = duality(pres)
    hats = [d.fourier(pres.basis_element(b)) for b in pres.basis(0)]
    out = []
    for k in range(n):
        acc = hats[0].scale(root_of_unity(n, 0))
        for h in range(1, n):
            acc = acc + hats[h].scale(root_of_unity(n, k * h))
        out.append(acc)
    return out


def dft_pairing_matrix(pres: Presentation) -> list[list]:
    """M[h][k] = ⟨u_{g^h}, χ_k⟩; equals the DFT matrix e^{−2πihk/n}."""
    d = duality(pres)
    chis = character_dual_basis(pres)
    return [[d.pair(pres.basis_element(b), chi) for chi in chis] for b in pres.basis(0)]


def check_duality(pres: Presentation, N: int, report: VerificationReport | None = None,
                  rng: random.Random | None = None, samples: int = 40) -> VerificationReport:
    """Exact checks of the Fourier duality and the dual modular data on A_N."""
    rep = report or VerificationReport("duality", {"example": pres.name, "degree": N})
    rng = rng or random.Random(0)
    p = pres
    d = duality(p)
    mm = d.mm
    bas = p.basis(N)
    E = [p.basis_element(i) for i in bas]
    B = [d.fourier(x) for x in E]
    pairs = [(x, y) for x in range(len(B)) for y in range(len(B))]
    if len(pairs) > samples * 10:
        pairs = rng.sample(pairs, samples * 10)
    triples = [tuple(rng.randrange(len(B)) for _ in range(3)) for _ in range(samples)]

    def chk(cid, anchor, **kw):
        return timed_check(rep, f"duality.{cid}", anchor, GROUP, **kw)

    with chk("fourier_faithful", "b=ψ(S(·)a) injective: pairing matrix ψ(S(x)z) nonsingular on A_N") as t:
        d.solver(N)
        for x in E:
            t.compare(d.from_functional(lambda i, b=d.fourier(x): d.pair_basis(i, b), N).preimage, x, str(x))

    with chk("dual_integral", "φ̂(b)=ε(a) when b=ψ(S(·)a)") as t:
        for x, b in zip(E, B):
            t.compare(d.dual_left_integral(b), p.counit(x), str(x))
        # φ̂ through the weight element agrees with ε(preimage)
        w = d.phi_weight(N if p.top_degree is None else p.top_degree)
        for x, b in zip(E, B):
            t.compare(d.pair(w, b), p.counit(x), f"weight at {x}")

    plancherel = list(E)
    if hasattr(p, "monomial"):
        plancherel += [p.monomial(m) for m in ("1", "a", "c", "c*", "c c*", "a c")]
    with chk("plancherel", "φ̂(â*â)=ψ(a*a)") as t:
        for a in plancherel:
            ah = d.fourier(a)
            t.compare(d.dual_left_integral(d.dual_mul(d.dual_star(ah), ah)), p.right_integral(a.star() * a), str(a))

    with chk("gns_inner_product", "⟨Λ̂(b),Λ̂(d)⟩=φ̂(d*b)=ψ(a_d* a_b)") as t:
        for i, j in pairs:
            lhs = d.dual_left_integral(d.dual_mul(d.dual_star(B[j]), B[i]))
            t.compare(lhs, p.inner(E[i], E[j]), f"({E[i]}, {E[j]})")

    with chk("dual_mul_associative", "(b1b2)b3=b1(b2b3) with (b1b2)(x)=Σb1(x₍₁₎)b2(x₍₂₎)") as t:
        for i, j, k in triples:
            t.compare(d.dual_mul(d.dual_mul(B[i], B[j]), B[k]), d.dual_mul(B[i], d.dual_mul(B[j], B[k])),
                      f"({E[i]}, {E[j]}, {E[k]})")

    with chk("dual_star", "⟨x,b*⟩=⟨S(x)*,b⟩⁻ and b*=ψ(S(·)S(a*)δ⁻¹)") as t:
        for x, b in zip(E, B):
            t.compare(d.dual_star(b), d.dual_star_by_pairing(b), str(x))
            t.compare(d.dual_star(d.dual_star(b)), b, f"({x})**")
            t.compare(d.dual_star(b.scale(I)), d.dual_star(b).scale(-I), f"conjugate-linearity at {x}")

    with chk("dual_star_antimultiplicative", "(b1b2)*=b2*b1*") as t:
        for i, j in pairs[:samples]:
            t.compare(d.dual_star(d.dual_mul(B[i], B[j])), d.dual_mul(d.dual_star(B[j]), d.dual_star(B[i])),
                      f"({E[i]}, {E[j]})")

    with chk("dual_antipode", "⟨x,S(b)⟩=⟨S(x),b⟩, S(b1b2)=S(b2)S(b1)") as t:
        for x, b in zip(E, B):
            t.compare(d.dual_antipode_inv(d.dual_antipode(b)), b, str(x))
        for i, j in pairs[:samples]:
            t.compare(d.dual_antipode(d.dual_mul(B[i], B[j])),
                      d.dual_mul(d.dual_antipode(B[j]), d.dual_antipode(B[i])), f"({E[i]}, {E[j]})")

    if p.top_degree is not None:
        with chk("dual_unit", "finite type: B unital with unit ψ(S(·)a₀), ψ(S(x)a₀)=ε(x)") as t:
            u = d.dual_unit()
            for x, b in zip(E, B):
                t.compare(d.dual_mul(u, b), b, f"1·{x}")
                t.compare(d.dual_mul(b, u), b, f"{x}·1")

    n_cyclic = _cyclic_order(p)
    if n_cyclic is not None:
        exact_dft = 4 % n_cyclic == 0
        with chk("dft_correspondence", "⟨u_h,χ_k⟩=e^{−2πihk/n}; χ_kχ_l=χ_{k+l}; χ_k*=χ_{−k}",
                 exact=exact_dft, tol=1e-12) as t:
            M = dft_pairing_matrix(p)
            chis = character_dual_basis(p)
            for h in range(n_cyclic):
                for k in range(n_cyclic):
                    t.compare(M[h][k], root_of_unity(n_cyclic, h * k), f"M[{h}][{k}]")
            for k in range(n_cyclic):
                t.compare(d.dual_star(chis[k]), chis[-k % n_cyclic], f"χ_{k}*")
                for l in range(n_cyclic):
                    t.compare(d.dual_mul(chis[k], chis[l]), chis[(k + l) % n_cyclic], f"χ_{k}χ_{l}")

    with chk("sigma_hat", "φ̂(bd)=φ̂(dσ̂(b))") as t:
        for i, j in pairs:
            t.compare(d.phihat_of_product(B[i], B[j]), d.phihat_of_product(B[j], d.sigma_hat(B[i])),
                      f"({E[i]}, {E[j]})")
            t.compare(d.phihat_of_product(B[i], B[j]), d.dual_left_integral(d.dual_mul(B[i], B[j])),
                      f"weight route ({E[i]}, {E[j]})")

    with chk("sigma_hat_prime", "ψ̂(bd)=ψ̂(dσ̂′(b)) with ψ̂=φ̂∘S") as t:
        for i, j in pairs:
            lhs = d.dual_right_integral(d.dual_mul(B[i], B[j]))
            t.compare(lhs, d.dual_right_integral(d.dual_mul(B[j], d.sigma_hat_prime(B[i]))), f"({E[i]}, {E[j]})")

    with chk("sigma_hat_automorphism", "σ̂(bd)=σ̂(b)σ̂(d), σ̂(b)*=σ̂⁻¹(b*)") as t:
        for i, j in pairs[:samples]:
            t.compare(d.sigma_hat(d.dual_mul(B[i], B[j])), d.dual_mul(d.sigma_hat(B[i]), d.sigma_hat(B[j])),
                      f"({E[i]}, {E[j]})")
        for x, b in zip(E, B):
            t.compare(d.dual_star(d.sigma_hat(b)), d.sigma_hat_inv(d.dual_star(b)), str(x))

    with chk("antipode_sigma_hat", "Sσ̂⁻¹(b)=σ̂′(S(b))") as t:
        for x, b in zip(E, B):
            t.compare(d.dual_antipode(d.sigma_hat_inv(b)), d.sigma_hat_prime(d.dual_antipode(b)), str(x))

    with chk("pairing_sigma", "⟨σ(x),b⟩=⟨x,S²(b)δ̂⁻¹⟩") as t:
        for i, j in pairs:
            t.compare(d.pair(mm.sigma(E[i]), B[j]),
                      d.pair(E[i], d.delta_hat_actions(d.dual_s2(B[j]), "inv-right")), f"({E[i]}, {E[j]})")

    with chk("pairing_sigma_hat", "⟨a,σ̂(b)⟩=⟨S²(a)δ⁻¹,b⟩") as t:
        for i, j in pairs:
            t.compare(d.pair(E[i], d.sigma_hat(B[j])), d.pair(p.s2(E[i]) * mm.delta_inv, B[j]),
                      f"({E[i]}, {E[j]})")

    with chk("delta_hat", "⟨a,δ̂⟩=ε(σ⁻¹(a)); δ̂δ̂⁻¹=1 (calibrated), left and right actions commute") as t:
        name = d.calibrate_delta_hat_inv()
        t.detail = f"δ̂⁻¹ character = {name}"
        for x, b in zip(E, B):
            for a1, a2 in (("left", "inv-left"), ("inv-left", "left"), ("right", "inv-right"), ("inv-right", "right")):
                t.compare(d.delta_hat_actions(d.delta_hat_actions(b, a1), a2), b, f"{a2}∘{a1} at {x}")
            t.compare(d.delta_hat_actions(d.delta_hat_actions(b, "left"), "right"),
                      d.delta_hat_actions(d.delta_hat_actions(b, "right"), "left"), f"commute at {x}")

    with chk("kappa_counit", "ε(κ(b))=⟨b,δ̂⁻¹⟩ (n=1 instance)") as t:
        for x in bas:
            t.compare(p.counit(mm.kappa(p.basis_element(x))), d.delta_hat_inv_char(x), p.index_name(x))

    with chk("kappa_counit_general_n", "ε(κⁿ(b))=⟨b,δ̂⁻¹⟩ for n>1 (recorded, not asserted)") as t:
        notes = []
        inv_pow = {}
        for n in (2, 3):
            def kn(x, n=n):
                y = p.basis_element(x)
                for _ in range(n):
                    y = mm.kappa(y)
                return p.counit(y)
            literal = all(kn(x) == d.delta_hat_inv_char(x) for x in bas)
            inv_pow[n] = _character_power(p, d.delta_hat_inv_char, n)
            power = all(kn(x) == inv_pow[n](x) for x in bas)
            notes.append(f"n={n}: literal δ̂⁻¹ {'holds' if literal else 'fails'}, "
                         f"δ̂⁻ⁿ {'holds' if power else 'fails'}")
        t.detail = "info: " + "; ".join(notes)

    with chk("eigen_dual", "B spanned by common eigenvectors of S², σ̂, σ̂′, δ̂· and ·δ̂; eigenvalues > 0") as t:
        tags = ["S2", "sigma_hat", "sigma_hat_prime", "delta_hat_left", "delta_hat_right"]
        sub = B if len(B) <= 20 else [b for b in B if b.degree <= 1]
        dec = d.eigen_dual(sub, tags)
        ops = [(lambda a, f=d.dual_op(tag): f(DualElement(a)).preimage) for tag in tags]
        verify_decomposition(dec, ops, t)
        if dec.tier != "exact":
            t.detail = "; ".join(dec.notes)

    return rep
