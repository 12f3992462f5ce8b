"""Modular data on A: sigma, sigma', delta, kappa, rho, orbits, eigenbases and
one-parameter groups.

sigma' and sigma are obtained from exact linear solves of their defining
relations psi(xy) = psi(y sigma'(x)) and phi(xy) = phi(y sigma(x)) with
phi = psi o S; delta^{-1} from psi(S(x)) = psi(x delta^{-1}).  Every solve
is confirmed on a larger truncation before it is trusted.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from .hopf import DegreeOverflow, Element, Presentation, TensorElement, _accumulate, linear_map_on_basis
from .linalg import InconsistentSystem, LinearSystem, SingularSystem, SquareSolver, nullspace
from .report import VerificationReport, timed_check
from .scalar import (ONE, ZERO, Gauss, PositiveEigenvalue, SpectrumViolation, conj,
                     default_tolerance, format_scalar, is_zero, scalar_pow_it, scalar_pow_z)


class NotFaithful(ValueError):
    """Integral not faithful / truncation too small."""


class PositivityViolation(ValueError):
    pass


class NotDiagonalizable(ValueError):
    pass


class OrbitEscape(ValueError):
    pass


# -- functional solves --------------------------------------------------------------


class FormSolver:
    """Solve ``L(y) = form(y, z)`` for z in A_D, all y in A_D.

    The matrix M[y, z] = form(y, z) is factored once per truncation degree.
    """

    def __init__(self, pres: Presentation, form: Callable, name: str):
        self.pres = pres
        self.form = form
        self.name = name
        self._solvers: dict[int, SquareSolver] = {}

    def solver(self, D: int) -> SquareSolver:
        s = self._solvers.get(D)
        if s is None:
            bas = self.pres.basis(D)
            rows = {}
            for y in bas:
                row = {}
                for z in bas:
                    v = self.form(y, z)
                    if not is_zero(v):
                        row[z] = v
                rows[y] = row
            try:
                s = SquareSolver(rows, bas)
            except SingularSystem as exc:
                raise NotFaithful(f"{self.name}: integral not faithful / truncation too small ({exc})") from exc
            self._solvers[D] = s
        return s

    def solve(self, D: int, rhs: Callable) -> Element:
        bas = self.pres.basis(D)
        vals = {}
        for y in bas:
            v = rhs(y)
            if not is_zero(v):
                vals[y] = v
        return Element._raw(self.pres, self.solver(D).solve(vals))


def _verify_degree(pres: Presentation, D: int) -> int:
    return D + 1 if pres.top_degree is None else min(D + 1, pres.top_degree)


class ModularMaps:
    """Lazily derived modular maps of a presentation (write-once caches)."""

    def __init__(self, pres: Presentation):
        self.pres = pres
        p = pres
        self._psi_form = FormSolver(p, self._psi_prod, "sigma'")
        self._phi_form = FormSolver(p, self._phi_prod, "sigma")
        self._cache: dict[str, dict] = {k: {} for k in ("sigma_prime", "sigma", "sigma_inv", "sigma_prime_inv")}
        self._delta: Element | None = None
        self._delta_inv: Element | None = None
        self.sigma_prime = self._basis_map("sigma_prime", self._solve_sigma_prime)
        self.sigma = self._basis_map("sigma", self._solve_sigma)
        self.sigma_inv = self._basis_map("sigma_inv", lambda i: self._invert("sigma", i))
        self.sigma_prime_inv = self._basis_map("sigma_prime_inv", lambda i: self._invert("sigma_prime", i))

    # forms ψ(yz) and φ(yz)
    def _psi_prod(self, y, z):
        p = self.pres
        acc = ZERO
        for k, v in p.mult_basis(y, z).items():
            w = p.integral_basis(k)
            if not is_zero(w):
                acc = acc + v * w
        return acc

    def _phi_prod(self, y, z):
        p = self.pres
        acc = ZERO
        for k, v in p.mult_basis(y, z).items():
            for kk, vv in p.antipode_basis(k).items():
                w = p.integral_basis(kk)
                if not is_zero(w):
                    acc = acc + v * vv * w
        return acc

    def psi(self, x: Element):
        return self.pres.right_integral(x)

    def phi(self, x: Element):
        return self.pres.left_integral(x)

    def _basis_map(self, name: str, solve_index: Callable) -> Callable[[Element], Element]:
        cache = self._cache[name]
        pres = self.pres

        def apply(x: Element) -> Element:
            out: dict = {}
            for i, a in x.coeffs.items():
                img = cache.get(i)
                if img is None:
                    img = solve_index(i)
                    cache[i] = img
                for k, v in img.items():
                    _accumulate(out, k, a * v)
            return Element._raw(pres, out)

        apply.__name__ = name
        return apply

    def _solve_by_form(self, i, form: FormSolver, lhs: Callable) -> dict:
        """z with lhs(i, y) = form(y, z) on A_D; confirmed on A_{D+1}."""
        p = self.pres
        D = p.degree(i)
        for attempt in range(2):
            z = form.solve(D, lambda y: lhs(i, y))
            Dv = _verify_degree(p, D)
            ok = all(lhs(i, y) == _form_on(form, y, z) for y in p.basis(Dv))
            if ok:
                return z.coeffs
            D = p.growth(D, D)
        raise DegreeOverflow(f"{form.name} image of {p.index_name(i)} escapes the truncation",
                             required_degree=D)

    def _solve_sigma_prime(self, i) -> dict:
        return self._solve_by_form(i, self._psi_form, self._psi_prod)

    def _solve_sigma(self, i) -> dict:
        return self._solve_by_form(i, self._phi_form, self._phi_prod)

    def _invert(self, name: str, i) -> dict:
        """Preimage of e_i under the degree-preserving automorphism `name`."""
        p = self.pres
        fwd = getattr(self, name)
        D = p.degree(i)
        bas = p.basis(D)
        rows: dict = {}
        for j in bas:  # column j = fwd(e_j)
            for k, v in fwd(p.basis_element(j)).coeffs.items():
                rows.setdefault(k, {})[j] = v
        ls = LinearSystem(order={b: n for n, b in enumerate(bas)})
        for k, row in rows.items():
            ls.add(row, {"x": ONE} if k == i else {})
        if i not in rows:
            raise DegreeOverflow(f"{p.index_name(i)} is not in the image of {name} on degree {D}",
                                 required_degree=p.growth(D, D))
        sol = ls.solution(bas)
        out = {j: r["x"] for j, r in sol.items() if "x" in r and not is_zero(r["x"])}
        if fwd(Element._raw(p, out)).coeffs != {i: ONE}:
            raise DegreeOverflow(f"{name} is not invertible on degree {D}", required_degree=p.growth(D, D))
        return out

    # -- derived composites -----------------------------------------------------
    def s2(self, x: Element) -> Element:
        return self.pres.s2(x)

    def s2_inv(self, x: Element) -> Element:
        return self.pres.s2_inv(x)

    def kappa(self, x: Element) -> Element:
        """κ = S⁻² ∘ σ."""
        return self.s2_inv(self.sigma(x))

    def kappa_inv(self, x: Element) -> Element:
        return self.sigma_inv(self.s2(x))

    def rho(self, x: Element) -> Element:
        """ρ = S² ∘ σ′."""
        return self.s2(self.sigma_prime(x))

    def rho_inv(self, x: Element) -> Element:
        return self.sigma_prime_inv(self.s2_inv(x))

    # -- modular element ----------------------------------------------------------
    def derive_delta(self, max_degree: int | None = None) -> Element:
        """δ with ψ(S(x)) = ψ(xδ⁻¹) on the truncation; cached."""
        if self._delta is not None:
            return self._delta
        p = self.pres
        top = p.top_degree if p.top_degree is not None else (max_degree if max_degree is not None else 2)
        check_deg = top if p.top_degree is not None else max(top, 1)

        def lhs(_i, y):
            return p.right_integral(p.antipode(p.basis_element(y)))

        w = None
        for D in range(0, top + 1):
            cand = self._psi_form.solve(D, lambda y: lhs(None, y))
            if all(lhs(None, y) == _form_on(self._psi_form, y, cand) for y in p.basis(check_deg)):
                w = cand
                break
        if w is None:
            raise DegreeOverflow("no modular element within the truncation", required_degree=p.growth(top, top))
        # δ: solve w·z = 1
        unit = p.unit()
        delta = None
        for D in range(w.degree, top + 1):
            bas = p.basis(D)
            rows: dict = {}
            for j in bas:
                for k, v in (w * p.basis_element(j)).coeffs.items():
                    rows.setdefault(k, {})[j] = v
            ls = LinearSystem(order={b: n for n, b in enumerate(bas)})
            try:
                for k in set(rows) | set(unit.coeffs):
                    c = unit.coef(k)
                    ls.add(rows.get(k, {}), {"u": c} if not is_zero(c) else {})
                sol = ls.solution(bas)
            except (InconsistentSystem, SingularSystem):
                continue
            delta = Element(p, {j: r.get("u", ZERO) for j, r in sol.items()})
            break
        if delta is None or delta * w != unit:
            raise DegreeOverflow("δ⁻¹ is not invertible within the truncation")
        self._delta, self._delta_inv = delta, w
        return delta

    @property
    def delta(self) -> Element:
        return self.derive_delta()

    @property
    def delta_inv(self) -> Element:
        self.derive_delta()
        return self._delta_inv

    def delta_left(self, x):
        return self.delta * x

    def delta_right(self, x):
        return x * self.delta

    def delta_inv_left(self, x):
        return self.delta_inv * x

    def delta_inv_right(self, x):
        return x * self.delta_inv

    # -- tags ----------------------------------------------------------------------
    def op(self, tag: str) -> Callable[[Element], Element]:
        return {
            "S2": self.s2, "sigma": self.sigma, "sigma_prime": self.sigma_prime,
            "kappa": self.kappa, "rho": self.rho,
            "delta_left": self.delta_left, "delta_right": self.delta_right,
            # ∇̂ on vectors: Λ(x) ↦ Λ(S⁻²(x)δ); τ (the automorphism ∇̂^{it}·∇̂^{-it}) is generated by S⁻²
            "nabla_hat": lambda x: self.s2_inv(x) * self.delta,
            "tau": self.s2_inv,
        }[tag]

    def op_inv(self, tag: str) -> Callable[[Element], Element]:
        return {
            "S2": self.s2_inv, "sigma": self.sigma_inv, "sigma_prime": self.sigma_prime_inv,
            "kappa": self.kappa_inv, "rho": self.rho_inv,
            "delta_left": self.delta_inv_left, "delta_right": self.delta_inv_right,
            "nabla_hat": lambda x: self.s2(x * self.delta_inv),
            "tau": self.s2,
        }[tag]

    # -- eigen machinery ---------------------------------------------------------
    def eigenbasis(self, tag: str, D: int) -> "EigenDecomposition":
        """Cached eigen-decomposition of a degree-preserving operator on A_D."""
        key = (tag, D)
        cache = self.__dict__.setdefault("_eig_cache", {})
        if key not in cache:
            bas = [self.pres.basis_element(b) for b in self.pres.basis(D)]
            cache[key] = eigen_decompose(self.op(tag), bas, tag=tag)
        return cache[key]

    def one_parameter_apply(self, group: str, t, x: Element) -> Element:
        """Replace each eigencomponent v (eigenvalue λ) of x by λ^{it} v.

        group ∈ {sigma_prime, sigma, tau, nabla_hat, delta_left, delta_right}; t may be
        real or complex (complex t uses the analytic extension λ^{iz}).
        """
        if not x.coeffs:
            return x
        dec = self.eigenbasis(group, x.degree)
        comps = dec.expand(x)
        out: dict = {}
        is_complex_t = isinstance(t, complex) and t.imag != 0
        for (lam, v), c in comps:
            f = scalar_pow_z(lam, t) if is_complex_t else scalar_pow_it(lam, float(t.real if isinstance(t, complex) else t))
            for k, w in v.coeffs.items():
                _accumulate(out, k, c * f * w)
        return Element._raw(self.pres, out)


def _form_on(form: FormSolver, y, z: Element):
    acc = ZERO
    for k, v in z.coeffs.items():
        f = form.form(y, k)
        if not is_zero(f):
            acc = acc + v * f
    return acc


def modular_maps(pres: Presentation) -> ModularMaps:
    """Cached ModularMaps record of a presentation."""
    mm = getattr(pres, "_modular_maps", None)
    if mm is None:
        mm = ModularMaps(pres)
        pres._modular_maps = mm
    return mm


# -- spans and coordinates ---------------------------------------------------------


class Span:
    """Exact (or float) span of Elements with coordinate extraction."""

    def __init__(self, pres: Presentation, vectors: list[Element] = (), tol=None):
        self.pres = pres
        self.tol = tol
        self.vectors: list[Element] = []
        self._ls = LinearSystem(tol, order=None)
        for v in vectors:
            self.add(v)

    def add(self, v: Element) -> bool:
        n = len(self.vectors)
        if self._ls.add(dict(v.coeffs), {n: ONE}, strict=False):
            self.vectors.append(v)
            return True
        return False

    def __len__(self):
        return len(self.vectors)

    def contains(self, v: Element) -> bool:
        row, _ = self._ls.reduce(dict(v.coeffs), {})
        return not row

    def coordinates(self, v: Element) -> list:
        """c with v = Σ c_j vectors[j]; raises OrbitEscape if v ∉ span."""
        row, rhs = self._ls.reduce(dict(v.coeffs), {})
        if row:
            raise OrbitEscape("vector not in span")
        return [-rhs.get(j, ZERO) for j in range(len(self.vectors))]

    def echelon_basis(self) -> list[Element]:
        """Fully reduced echelon basis, ordered by pivot (presentation order)."""
        pivots = sorted(self._ls.pivots, key=self.pres.sort_key)
        return [Element(self.pres, dict(self._ls.pivots[c][0])) for c in pivots]


_INVERTIBLE = {"S2", "sigma", "sigma_prime", "kappa", "rho", "delta_left", "delta_right", "nabla_hat", "tau"}


def orbit_subspace(mm: ModularMaps, x: Element, maps: list[str], max_dim: int | None = None) -> list[Element]:
    """Smallest subspace containing x, stable under the maps and inverses."""
    pres = mm.pres
    if not x.coeffs:
        return []
    ambient = max_dim
    if ambient is None:
        ambient = len(pres.basis(x.degree if pres.top_degree is None else pres.top_degree))
    fns = []
    for tag in maps:
        if tag not in _INVERTIBLE:
            raise ValueError(f"unknown map tag {tag!r}")
        fns += [mm.op(tag), mm.op_inv(tag)]
    span = Span(pres, [x])
    queue = [x]
    while queue:
        v = queue.pop()
        for f in fns:
            w = f(v)
            if span.add(w):
                if len(span) > ambient:
                    raise OrbitEscape(f"orbit of {x} exceeds ambient dimension {ambient}; escape witness {w}")
                queue.append(w)
    return span.echelon_basis()


def positivity_probe(mm: ModularMaps, x: Element) -> tuple:
    """(ψ(x*S²(x)), ψ(x*σ(x)), ψ(x*σ′(x))), each a nonnegative rational."""
    p = mm.pres
    xs = x.star()
    vals = (p.right_integral(xs * p.s2(x)), p.right_integral(xs * mm.sigma(x)),
            p.right_integral(xs * mm.sigma_prime(x)))
    for name, v in zip(("S2", "sigma", "sigma_prime"), vals):
        if type(v) is Gauss:
            if v.im or v.re < 0:
                raise PositivityViolation(f"ψ(x*{name}(x)) = {v} is not a nonnegative rational")
        elif abs(complex(v).imag) > default_tolerance() or complex(v).real < -default_tolerance():
            raise PositivityViolation(f"ψ(x*{name}(x)) = {v} is negative")
    return vals


# -- eigen-decomposition ------------------------------------------------------------


@dataclass
class EigenDecomposition:
    tag: str
    spaces: list  # [(eigenvalue(s), [Element])]; eigenvalue is PositiveEigenvalue or tuple of them
    subspace: list
    tier: str = "exact"
    notes: list = field(default_factory=list)
    _span: Span | None = None

    @property
    def dimension(self) -> int:
        return sum(len(vs) for _, vs in self.spaces)

    def pairs(self):
        for lam, vs in self.spaces:
            for v in vs:
                yield lam, v

    def expand(self, x: Element):
        """[((λ, v), c)] with x = Σ c v."""
        if self._span is None:
            pres = self.subspace[0].pres if self.subspace else x.pres
            self._span = Span(pres, [v for _, v in self.pairs()],
                              tol=None if self.tier == "exact" else default_tolerance())
        coords = self._span.coordinates(x)
        return [(pv, c) for pv, c in zip(self.pairs(), coords) if not is_zero(c)]


def _matrix_in_basis(op: Callable, basis: list[Element], span: Span) -> list[list]:
    cols = [span.coordinates(op(v)) for v in basis]
    n = len(basis)
    return [[cols[j][i] for j in range(n)] for i in range(n)]


def _rationalize(z: complex, tol: float) -> Gauss | None:
    if abs(z.imag) > 1e-6 * max(1.0, abs(z)):
        return None
    f = Fraction(z.real).limit_denominator(10 ** 12)
    return Gauss(f) if f else None


def _nullspace_coords(M: list[list], lam) -> list[list]:
    n = len(M)
    rows = []
    for i in range(n):
        row = {j: M[i][j] - (lam if i == j else ZERO) for j in range(n)}
        rows.append({j: v for j, v in row.items() if not is_zero(v)})
    return [[vec.get(j, ZERO) for j in range(n)] for vec in nullspace(rows, list(range(n)))]


def _mat_pow_rank_deficit(M, lam, n) -> int:
    """dim ker (M - λ)^n (generalized eigenspace dimension)."""
    A = [[M[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
    P = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for _ in range(n):
        P = [[sum((P[i][k] * A[k][j] for k in range(n) if not is_zero(P[i][k])), ZERO) for j in range(n)]
             for i in range(n)]
    rows = [{j: P[i][j] for j in range(n) if not is_zero(P[i][j])} for i in range(n)]
    return len(nullspace(rows, list(range(n))))


def eigen_decompose(op: Callable[[Element], Element], basis: list[Element], tag: str = "op",
                    tol: float | None = None) -> EigenDecomposition:
    """Exact eigen-decomposition of op on span(basis) (assumed op-stable).

    Numeric eigenvalues are rationalized and certified through exact kernel
    dimensions; irrational spectra fall back to the Float tier (logged);
    a deficient exact eigenspace with full generalized eigenspace is a
    hard NotDiagonalizable failure.
    """
    tol = default_tolerance() if tol is None else tol
    if not basis:
        return EigenDecomposition(tag, [], [])
    pres = basis[0].pres
    span = Span(pres, basis)
    basis = span.vectors
    n = len(basis)
    M = _matrix_in_basis(op, basis, span)
    exact = all(type(v) is Gauss for row in M for v in row)
    num = np.array([[complex(v) for v in row] for row in M])
    ev = np.linalg.eigvals(num)
    spaces = []
    covered = 0
    if exact:
        cands = []
        for z in ev:
            r = _rationalize(complex(z), tol)
            if r is not None and r not in cands:
                cands.append(r)
        found = []
        for lam in cands:
            vecs = _nullspace_coords(M, lam)
            if vecs:
                found.append((lam, vecs))
                covered += len(vecs)
        if covered < n:
            # a defective exact eigenvalue contradicts diagonalizability outright
            for lam, vecs in found:
                gdim = _mat_pow_rank_deficit(M, lam, n)
                if gdim > len(vecs):
                    raise NotDiagonalizable(f"{tag}: eigenvalue {lam} has geometric multiplicity {len(vecs)} "
                                            f"< algebraic {gdim}")
        else:
            for lam, vecs in found:
                pe = PositiveEigenvalue.certify(lam)
                spaces.append((pe, [_combine(pres, basis, c) for c in vecs]))
            return EigenDecomposition(tag, spaces, basis, "exact")
    # Float fallback
    w, V = np.linalg.eig(num)
    if np.linalg.matrix_rank(V, tol=1e-8) < n:
        raise NotDiagonalizable(f"{tag}: eigenvectors do not span (numerically defective)")
    groups: dict = {}
    for k in range(n):
        lam = complex(w[k])
        pe = PositiveEigenvalue.certify(lam, tol=max(tol, 1e-9 * abs(lam)))
        key = None
        for g in groups:
            if abs(g - lam) <= 1e-8 * max(1.0, abs(lam)):
                key = g
        key = lam if key is None else key
        groups.setdefault(key, (pe, []))[1].append(_combine(pres, basis, [complex(c) for c in V[:, k]]))
    spaces = list(groups.values())
    return EigenDecomposition(tag, spaces, basis, "float",
                              notes=["irrational or unresolved spectrum: Float fallback"])


def _combine(pres, basis, coords) -> Element:
    out: dict = {}
    for c, v in zip(coords, basis):
        if is_zero(c):
            continue
        for k, w in v.coeffs.items():
            _accumulate(out, k, c * w)
    return Element._raw(pres, out)


def joint_eigenbasis(mm: ModularMaps, subspace: list[Element], tags: list[str]) -> EigenDecomposition:
    """Simultaneous eigen-decomposition by successive refinement."""
    if not subspace:
        return EigenDecomposition("joint:" + ",".join(tags), [], [])
    blocks = [((), list(subspace))]
    tier = "exact"
    notes = []
    for tag in tags:
        op = mm.op(tag)
        nxt = []
        for lams, vecs in blocks:
            dec = eigen_decompose(op, vecs, tag=tag)
            if dec.tier != "exact":
                tier = "float"
                notes += dec.notes
            for lam, vs in dec.spaces:
                nxt.append((lams + (lam,), vs))
        blocks = nxt
    return EigenDecomposition("joint:" + ",".join(tags), blocks, list(subspace), tier, notes)


def verify_decomposition(dec: EigenDecomposition, ops: list[Callable], tally) -> None:
    """Eigen-equations exact, eigenvalues positive, vectors spanning the subspace."""
    for lams, vecs in dec.spaces:
        lams = lams if isinstance(lams, tuple) else (lams,)
        for lam, op in zip(lams, ops):
            tally.require(lam.certified_positive, f"eigenvalue {lam}", "non-positive")
            for v in vecs:
                tally.compare(op(v), v.scale(lam.value), f"{dec.tag}: λ={lam} v={v}")
    vecs = [v for _, vs in dec.spaces for v in vs]
    if dec.subspace:
        span = Span(dec.subspace[0].pres, vecs, tol=None if dec.tier == "exact" else default_tolerance())
        tally.require(len(span) == len(vecs) == len(dec.subspace), f"{dec.tag}: eigenvectors independent and spanning",
                      f"rank {len(span)} of {len(dec.subspace)}")


# -- group-likeness of δ^{it} ---------------------------------------------------------


def group_like_check_delta_it(mm: ModularMaps, t: float, pairs: list[tuple[Element, Element]],
                              tol: float | None = None) -> VerificationReport:
    """Δ(δ^{it})(a⊗c) = δ^{it}a ⊗ δ^{it}c with a⊗c = Σ Δ(a₍₁₎)(1⊗S(a₍₂₎)c)."""
    pres = mm.pres
    rep = VerificationReport("delta_it")
    exact = mm.delta == pres.unit()
    with timed_check(rep, f"modular.delta_it.grouplike[t={t}]", "Δ(δ^{it})=δ^{it}⊗δ^{it}",
                     "analytic structure", exact=exact, tol=tol) as tally:
        def dit(x):
            return mm.one_parameter_apply("delta_left", t, x)

        for a, c in pairs:
            lhs = TensorElement._raw(pres, {})
            for (i1, i2), v in pres.comul(a).coeffs.items():
                p = dit(pres.basis_element(i1, v))
                q = pres.antipode(pres.basis_element(i2)) * c
                lhs = lhs + pres.comul(p) * pres.tensor(pres.unit(), q)
            rhs = pres.tensor(dit(a), dit(c))
            tally.compare(lhs, rhs, f"a={a}, c={c}")
    return rep


# -- the modular-data suite ------------------------------------------------------------------


def random_element(pres: Presentation, N: int, rng, terms: int = 4, coeff_range: int = 3) -> Element:
    """Sparse seeded random element of A_N with Gaussian-integer coefficients."""
    bas = pres.basis(N)
    out: dict = {}
    for i in rng.sample(bas, min(len(bas), rng.randint(1, terms))):
        c = Gauss(rng.randint(-coeff_range, coeff_range), rng.randint(-coeff_range, coeff_range))
        if c:
            out[i] = c
    return Element._raw(pres, out)


ONE_PARAMETER_GROUPS = ("sigma_prime", "sigma", "tau", "delta_left", "delta_right")


def check_modular(pres: Presentation, N: int, report: VerificationReport | None = None, rng=None,
                  t_samples=(0.5, 1.0), tol: float | None = None, n_random: int = 200) -> VerificationReport:
    """Modular automorphisms, δ, orbits, positivity, spectra and one-parameter groups on A_N."""
    import random

    rep = report or VerificationReport("modular", {"example": pres.name, "degree": N})
    rng = rng or random.Random(0)
    p = pres
    mm = modular_maps(p)
    bas = p.basis(N)
    E = [p.basis_element(i) for i in bas]
    tol = default_tolerance() if tol is None else tol
    A = "analytic structure"

    def chk(cid, anchor, group=A, **kw):
        return timed_check(rep, f"modular.{cid}", anchor, group, **kw)

    with chk("sigma_prime", "ψ(xy)=ψ(yσ′(x))", group="modular structure") as t:
        for x in E:
            for y in E:
                t.compare(p.right_integral(x * y), p.right_integral(y * mm.sigma_prime(x)), f"({x}, {y})")

    with chk("sigma", "φ(xy)=φ(yσ(x)) with φ=ψ∘S") as t:
        for x in E:
            for y in E:
                t.compare(p.left_integral(x * y), p.left_integral(y * mm.sigma(x)), f"({x}, {y})")

    with chk("automorphisms", "σ, σ′ multiplicative and σ′(x)*=σ′⁻¹(x*), σ(x)*=σ⁻¹(x*)") as t:
        for x in E:
            t.compare(mm.sigma_prime(x).star(), mm.sigma_prime_inv(x.star()), f"σ′ at {x}")
            t.compare(mm.sigma(x).star(), mm.sigma_inv(x.star()), f"σ at {x}")
            for g in p.generators or bas:
                y = p.basis_element(g)
                t.compare(mm.sigma_prime(x * y), mm.sigma_prime(x) * mm.sigma_prime(y), f"σ′({x}·{y})")
                t.compare(mm.sigma(x * y), mm.sigma(x) * mm.sigma(y), f"σ({x}·{y})")

    with chk("commute", "S², σ, σ′ mutually commute") as t:
        for x in E:
            t.compare(p.s2(mm.sigma(x)), mm.sigma(p.s2(x)), f"S²σ at {x}")
            t.compare(p.s2(mm.sigma_prime(x)), mm.sigma_prime(p.s2(x)), f"S²σ′ at {x}")
            t.compare(mm.sigma(mm.sigma_prime(x)), mm.sigma_prime(mm.sigma(x)), f"σσ′ at {x}")

    with chk("sigma_sigma_prime", "σσ′(a)=δσ²(a)δ⁻¹") as t:
        for x in E:
            t.compare(mm.sigma(mm.sigma_prime(x)), mm.delta * mm.sigma(mm.sigma(x)) * mm.delta_inv, str(x))

    with chk("s2_coproduct", "Δ(S²(a))=(σ⊗σ′⁻¹)Δ(a)") as t:
        for x in E:
            t.compare(p.comul(p.s2(x)), p.comul(x).map_legs(mm.sigma, mm.sigma_prime_inv), str(x))

    with chk("kappa_rho_coproduct", "(κ⊗ρ⁻¹)Δ(a)=Δ(a), κ=S⁻²σ, ρ=S²σ′") as t:
        for x in E:
            t.compare(p.comul(x).map_legs(mm.kappa, mm.rho_inv), p.comul(x), str(x))

    with chk("kappa_coproduct", "Δ(κ(a))=(ι⊗κ)Δ(a)") as t:
        for x in E:
            t.compare(p.comul(mm.kappa(x)), p.comul(x).map_legs(None, mm.kappa), str(x))

    for cid, maps, anchor in (
        ("orbit.delta", ["delta_left", "delta_right"], "finite-dimensional subspace containing all δⁿa"),
        ("orbit.kappa_rho", ["kappa", "rho"], "finite-dimensional subspace containing all κⁿ(a) and ρⁿ(a)"),
        ("orbit.s2_sigma", ["S2", "sigma", "sigma_prime"],
         "finite-dimensional subspace containing all Sⁿ(a), σⁿ(a) and σ′ⁿ(a)"),
    ):
        with chk(cid, anchor) as t:
            samples = E + [random_element(p, N, rng) for _ in range(10)]
            dims = []
            for x in samples:
                if not x:
                    continue
                orb = orbit_subspace(mm, x, maps)
                ambient = len(p.basis(x.degree if p.top_degree is None else p.top_degree))
                dims.append(len(orb))
                t.require(0 < len(orb) <= ambient, str(x), f"dim {len(orb)} > {ambient}")
            t.detail = f"max orbit dimension {max(dims, default=0)}"

    with chk("positivity", "ψ(a*S²(a))≥0, ψ(a*σ(a))≥0, ψ(a*σ′(a))≥0") as t:
        count = 0
        for _ in range(n_random):
            x = random_element(p, N, rng)
            for name, v in zip(("S2", "sigma", "sigma_prime"), positivity_probe(mm, x)):
                t.require(type(v) is Gauss and v.im == 0 and v.re >= 0, f"{name} at {x}", format_scalar(v))
            count += 1
        t.detail = f"{count} seeded random elements"

    tags = ["S2", "sigma", "sigma_prime", "delta_left", "delta_right"]
    with chk("joint_eigenbasis", "spanned by common eigenvectors of S², σ, σ′, δ·, ·δ; eigenvalues > 0") as t:
        dec = joint_eigenbasis(mm, E, tags)
        verify_decomposition(dec, [mm.op(tag) for tag in tags], t)
        t.detail = f"{len(dec.spaces)} joint eigenspaces, tier {dec.tier}"

    with chk("group_law", "g_s∘g_t=g_{s+t}, g_0=id (σ′_t, σ_t, τ_t, δ^{it})", exact=False, tol=max(tol, 1e-10)) as t:
        for grp in ONE_PARAMETER_GROUPS:
            for x in E:
                t.compare(mm.one_parameter_apply(grp, 0.0, x), x, f"{grp}_0 at {x}")
            for _ in range(3):
                s, u = rng.uniform(-10, 10), rng.uniform(-10, 10)
                x = random_element(p, N, rng)
                t.compare(mm.one_parameter_apply(grp, s, mm.one_parameter_apply(grp, u, x)),
                          mm.one_parameter_apply(grp, s + u, x), f"{grp} s={s:.4f} t={u:.4f} x={x}")

    with chk("analytic_generator", "σ′_{−i}(a)=σ′(a) and τ_{−i}(a)=S⁻²(a)") as t:
        for grp, f in (("sigma_prime", mm.sigma_prime), ("tau", p.s2_inv)):
            for lam, v in mm.eigenbasis(grp, N).pairs():
                t.compare(mm.one_parameter_apply(grp, -1j, v), f(v), f"{grp} at {v}")

    with chk("one_parameter_automorphisms", "σ′_t, τ_t are *-automorphisms: σ′_t(xy)=σ′_t(x)σ′_t(y)",
             exact=False, tol=tol) as t:
        for tt in t_samples:
            for grp in ("sigma_prime", "tau"):
                for x in E[:8]:
                    for y in E[:8]:
                        g = mm.one_parameter_apply
                        t.compare(g(grp, tt, x * y), g(grp, tt, x) * g(grp, tt, y), f"{grp} t={tt} ({x},{y})")
                    t.compare(g(grp, tt, x).star(), g(grp, tt, x.star()), f"{grp} star at {x}")

    pairs = [(x, y) for x in E[:6] for y in E[:6]]
    for tt in t_samples:
        sub = group_like_check_delta_it(mm, tt, pairs, tol)
        rep.extend(sub)
    return rep
