"""Built-in presentations: C[G], F(G) for small finite groups and Pol(SU_q(2)).

Pol(SU_q(2)) uses the PBW basis W(s) c^l c*^m where W(s) = a^s for s >= 0 and
a*^{-s} for s < 0; basis indices are triples (s, l, m) of degree |s|+l+m.
The product is the normal form produced by the ordered rewriting system

    c a -> q^{-1} a c,   c* a -> q^{-1} a c*,   c a* -> q a* c,
    c* a* -> q a* c*,    c* c -> c c*,
    a a* -> 1 - q^2 c c*,   a* a -> 1 - c c*,

written in closed form (see :meth:`SUq2._mult`).  Confluence is certified by
:meth:`SUq2.certify_rewriting` (defining relations plus associativity on
generator-left triples, which by the diamond lemma is the critical-pair
condition).  The Haar functional is *solved* from left and right invariance.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache

from gmpy2 import mpq

from .hopf import DegreeOverflow, FinitePresentation, Presentation, _accumulate
from .linalg import InconsistentSystem, LinearSystem, SingularSystem
from .scalar import ONE, ZERO, Gauss, exact_sqrt, is_zero, rat


class InvalidGroup(ValueError):
    pass


# -- finite groups ---------------------------------------------------------------


@dataclass
class FiniteGroup:
    name: str
    elements: list[str]
    table: dict  # (g, h) -> gh
    identity: str = field(init=False)
    inverse: dict = field(init=False)

    def __post_init__(self):
        els = self.elements
        if len(set(els)) != len(els) or not els:
            raise InvalidGroup("group elements must be distinct and nonempty")
        for g in els:
            for h in els:
                if self.table.get((g, h)) not in els:
                    raise InvalidGroup(f"table not closed at ({g},{h})")
        ids = [e for e in els if all(self.table[(e, g)] == g == self.table[(g, e)] for g in els)]
        if len(ids) != 1:
            raise InvalidGroup("no unique identity")
        self.identity = ids[0]
        self.inverse = {}
        for g in els:
            inv = [h for h in els if self.table[(g, h)] == self.identity]
            if len(inv) != 1 or self.table[(inv[0], g)] != self.identity:
                raise InvalidGroup(f"{g} has no two-sided inverse")
            self.inverse[g] = inv[0]
        for g, h, k in itertools.product(els, repeat=3):
            t = self.table
            if t[(t[(g, h)], k)] != t[(g, t[(h, k)])]:
                raise InvalidGroup(f"table not associative at ({g},{h},{k})")

    def mul(self, g, h):
        return self.table[(g, h)]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_abelian(self) -> bool:
        return all(self.mul(g, h) == self.mul(h, g) for g in self.elements for h in self.elements)


def _power_name(k: int) -> str:
    return "e" if k == 0 else "g" if k == 1 else f"g{k}"


def cyclic_group(n: int) -> FiniteGroup:
    els = [_power_name(k) for k in range(n)]
    table = {(_power_name(i), _power_name(j)): _power_name((i + j) % n)
             for i in range(n) for j in range(n)}
    return FiniteGroup(f"Z{n}", els, table)


def symmetric_group_3() -> FiniteGroup:
    perms = {
        "e": (0, 1, 2), "(12)": (1, 0, 2), "(13)": (2, 1, 0),
        "(23)": (0, 2, 1), "(123)": (1, 2, 0), "(132)": (2, 0, 1),
    }
    by_perm = {p: n for n, p in perms.items()}
    # (g h)(i) = g(h(i)): apply h first
    table = {(g, h): by_perm[tuple(pg[ph[i]] for i in range(3))]
             for g, pg in perms.items() for h, ph in perms.items()}
    return FiniteGroup("S3", list(perms), table)


def dihedral_group_4() -> FiniteGroup:
    # elements s^f r^k, relations r^4 = s^2 = 1, r s = s r^{-1}
    def name(f, k):
        base = {0: "e", 1: "r", 2: "r2", 3: "r3"}[k] if not f else {0: "s", 1: "sr", 2: "sr2", 3: "sr3"}[k]
        return base

    table = {}
    for f1, k1, f2, k2 in itertools.product(range(2), range(4), range(2), range(4)):
        # s^f1 r^k1 s^f2 r^k2 = s^{f1+f2} r^{(-1)^f2 k1 + k2}
        k = ((-k1 if f2 else k1) + k2) % 4
        table[(name(f1, k1), name(f2, k2))] = name((f1 + f2) % 2, k)
    els = [name(f, k) for f in range(2) for k in range(4)]
    return FiniteGroup("D4", els, table)


GROUPS = {
    "Z2": lambda: cyclic_group(2),
    "Z4": lambda: cyclic_group(4),
    "Z8": lambda: cyclic_group(8),
    "S3": symmetric_group_3,
    "D4": dihedral_group_4,
}


def group(name: str) -> FiniteGroup:
    try:
        return GROUPS[name]()
    except KeyError:
        raise InvalidGroup(f"unknown group {name!r}; choose from {sorted(GROUPS)}") from None


# -- C[G] and F(G) ---------------------------------------------------------------


def make_group_algebra(G: FiniteGroup) -> FinitePresentation:
    u = {g: f"u_{g}" for g in G.elements}
    basis = [u[g] for g in G.elements]
    mult = {(u[g], u[h]): {u[G.mul(g, h)]: ONE} for g in G.elements for h in G.elements}
    comult = {u[g]: {(u[g], u[g]): ONE} for g in G.elements}
    inv = {u[g]: {u[G.inverse[g]]: ONE} for g in G.elements}
    pres = FinitePresentation(
        name=f"C[{G.name}]", basis=basis, degrees={b: 0 for b in basis},
        unit={u[G.identity]: ONE}, mult=mult, comult=comult, star=inv,
        antipode=inv, antipode_inv=inv,
        counit={b: ONE for b in basis},
        integral={u[G.identity]: ONE},
    )
    pres.group = G
    pres.family = "group-algebra"
    return pres


def make_function_algebra(G: FiniteGroup) -> FinitePresentation:
    e = {g: f"e_{g}" for g in G.elements}
    basis = [e[g] for g in G.elements]
    mult = {(e[g], e[g]): {e[g]: ONE} for g in G.elements}
    comult = {}
    for g in G.elements:
        terms = {}
        for h in G.elements:
            terms[(e[h], e[G.mul(G.inverse[h], g)])] = ONE
        comult[e[g]] = terms
    inv = {e[g]: {e[G.inverse[g]]: ONE} for g in G.elements}
    pres = FinitePresentation(
        name=f"F({G.name})", basis=basis, degrees={b: 0 for b in basis},
        unit={b: ONE for b in basis}, mult=mult, comult=comult,
        star={b: {b: ONE} for b in basis}, antipode=inv, antipode_inv=inv,
        counit={e[G.identity]: ONE}, integral={b: ONE for b in basis},
    )
    pres.group = G
    pres.family = "function-algebra"
    return pres


# -- Pol(SU_q(2)) ------------------------------------------------------------------

A, AS, C, CS = (1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, 0, 1)
UNIT = (0, 0, 0)


class SUq2(Presentation):
    """Pol(SU_q(2)) for an exact rational 0 < q < 1 on the PBW basis (s, l, m)."""

    family = "suq2"

    def __init__(self, q):
        super().__init__()
        q = rat(q)
        if not (0 < q < 1):
            raise ValueError("q must be an exact rational in (0, 1)")
        self.q = q
        self.name = f"Pol(SU_q(2)), q={q}"
        self.generators = [A, AS, C, CS]
        self.top_degree = None
        self._qpow_cache: dict = {}
        self._psi_values: dict = {UNIT: ONE}
        self._psi_degree = 0
        self._P = lru_cache(maxsize=None)(self._p_uncached)

    # -- basis --------------------------------------------------------------------
    def basis(self, max_degree: int) -> list:
        out = []
        for d in range(max_degree + 1):
            out.extend(self.basis_of_degree(d))
        return out

    @staticmethod
    def basis_of_degree(d: int) -> list:
        out = []
        for k in range(d + 1):
            for s in ((0,) if k == 0 else (k, -k)):
                for l in range(d - k + 1):
                    out.append((s, l, d - k - l))
        return out

    def degree(self, idx) -> int:
        s, l, m = idx
        return abs(s) + l + m

    def _order(self, idx):
        s, l, m = idx
        return (abs(s), s < 0, l, m)

    def unit_index(self):
        return UNIT

    def growth(self, n1, n2):
        return n1 + n2

    def index_name(self, idx) -> str:
        s, l, m = idx
        parts = []
        if s:
            g = "a" if s > 0 else "a*"
            parts.append(g if abs(s) == 1 else f"{g}^{abs(s)}")
        for g, k in (("c", l), ("c*", m)):
            if k:
                parts.append(g if k == 1 else f"{g}^{k}")
        return " ".join(parts) if parts else "1"

    def parse_index(self, text: str):
        """Inverse of :meth:`index_name` (e.g. ``"a* c^2 c*"``)."""
        text = text.strip()
        if text == "1":
            return UNIT
        s = l = m = 0
        for tok in text.split():
            mt = re.fullmatch(r"(a\*|a|c\*|c)(?:\^(\d+))?", tok)
            if not mt:
                raise ValueError(f"bad PBW monomial token {tok!r}")
            k = int(mt.group(2) or 1)
            g = mt.group(1)
            if g == "a":
                s += k
            elif g == "a*":
                s -= k
            elif g == "c":
                l += k
            else:
                m += k
        return (s, l, m)

    def monomial(self, text: str, coef=ONE):
        return self.basis_element(self.parse_index(text), coef)

    # -- scalars -------------------------------------------------------------------
    def qpow(self, n: int) -> Gauss:
        r = self._qpow_cache.get(n)
        if r is None:
            r = Gauss._new(self.q ** n if n >= 0 else 1 / self.q ** (-n), mpq(0))
            self._qpow_cache[n] = r
        return r

    # -- product -------------------------------------------------------------------
    def _p_uncached(self, s1: int, s2: int) -> tuple:
        """W(s1) W(s2) = sum coef * W(s) (c c*)^n, as ((s, n, coef), ...)."""
        if s1 >= 0 and s2 >= 0 or s1 <= 0 and s2 <= 0:
            return ((s1 + s2, 0, ONE),)
        if s1 > 0:  # a^{s1} a*^{k}: a a* = 1 - q^2 c c*, and c c* a*^{k-1} = q^{2(k-1)} a*^{k-1} c c*
            factor = self.qpow(2 * (-s2))
            inner = self._P(s1 - 1, s2 + 1)
        else:  # a*^{k} a^{s2}: a* a = 1 - c c*, and c c* a^{j} = q^{-2j} a^{j} c c*
            factor = self.qpow(-2 * (s2 - 1))
            inner = self._P(s1 + 1, s2 - 1)
        acc: dict = {}
        for s, n, coef in inner:
            _accumulate(acc, (s, n), coef)
            _accumulate(acc, (s, n + 1), -coef * factor)
        return tuple((s, n, v) for (s, n), v in acc.items())

    def _mult(self, i, j) -> dict:
        s1, l1, m1 = i
        s2, l2, m2 = j
        # c^l c*^m W(s2) = q^{-s2 (l+m)} W(s2) c^l c*^m
        pre = self.qpow(-s2 * (l1 + m1))
        out: dict = {}
        for s, n, coef in self._P(s1, s2):
            _accumulate(out, (s, l1 + l2 + n, m1 + m2 + n), coef * pre)
        return out

    # -- *-structure and antipode ---------------------------------------------------
    def _star(self, i) -> dict:
        s, l, m = i
        return {(-s, m, l): self.qpow(s * (l + m))}

    def _antipode(self, i) -> dict:
        s, l, m = i
        sign = -ONE if (l + m) % 2 else ONE
        return {(-s, l, m): sign * self.qpow(l - m + s * (l + m))}

    def _antipode_inv(self, i) -> dict:
        s, l, m = i
        sign = -ONE if (l + m) % 2 else ONE
        return {(-s, l, m): sign * self.qpow(m - l + s * (l + m))}

    def _counit(self, i):
        s, l, m = i
        return ONE if l == 0 and m == 0 else ZERO

    # -- coproduct ------------------------------------------------------------------
    def _generator_comult(self, g) -> dict:
        q = Gauss(self.q)
        return {
            A: {(A, A): ONE, (CS, C): -q},
            AS: {(AS, AS): ONE, (C, CS): -q},
            C: {(C, A): ONE, (AS, C): ONE},
            CS: {(CS, AS): ONE, (A, CS): ONE},
        }[g]

    @staticmethod
    def _split(i):
        """i = prev * g with g a generator, compatible with the normal form."""
        s, l, m = i
        if m:
            return (s, l, m - 1), CS
        if l:
            return (s, l - 1, 0), C
        if s > 0:
            return (s - 1, 0, 0), A
        return (s + 1, 0, 0), AS

    def _comult(self, i) -> dict:
        if i == UNIT:
            return {(UNIT, UNIT): ONE}
        if i in (A, AS, C, CS):
            return dict(self._generator_comult(i))
        prev, g = self._split(i)
        left = self.comult_basis(prev)
        right = self.comult_basis(g)
        out: dict = {}
        for (x1, x2), v in left.items():
            for (y1, y2), w in right.items():
                vw = v * w
                p1 = self.mult_basis(x1, y1)
                p2 = self.mult_basis(x2, y2)
                for k1, c1 in p1.items():
                    for k2, c2 in p2.items():
                        _accumulate(out, (k1, k2), vw * c1 * c2)
        return out

    # -- Haar functional ------------------------------------------------------------
    def _integral(self, i):
        d = self.degree(i)
        if d > self._psi_degree:
            self.solve_haar(d)
        return self._psi_values.get(i, ZERO)

    def solve_haar(self, max_degree: int) -> None:
        """Solve left+right invariance and psi(1) = 1 degree by degree.

        A_N = span of degree <= N monomials is a subcoalgebra, so the
        invariance equations for x in A_N only involve psi on A_N.
        """
        for d in range(self._psi_degree + 1, max_degree + 1):
            new = self.basis_of_degree(d)
            newset = set(new)
            ls = LinearSystem(order={k: n for n, k in enumerate(new)})
            for x in new:
                delta = self.comult_basis(x)
                for side in (0, 1):
                    rows: dict = {}  # other-leg index -> (row, rhs)
                    for key, v in delta.items():
                        inner, outer = key[side], key[1 - side]
                        row, rhs = rows.setdefault(outer, ({}, ZERO))
                        if inner in newset:
                            _accumulate(row, inner, v)
                        else:
                            known = self._psi_values.get(inner, ZERO)
                            if not is_zero(known):
                                rhs = rhs - v * known
                        rows[outer] = (row, rhs)
                    # ... = psi(x) * 1
                    row, rhs = rows.setdefault(UNIT, ({}, ZERO))
                    _accumulate(row, x, -ONE)
                    rows[UNIT] = (row, rhs)
                    for outer, (row, rhs) in rows.items():
                        try:
                            ls.add(row, {"psi": rhs} if not is_zero(rhs) else {})
                        except InconsistentSystem as exc:
                            raise SingularSystem(f"Haar invariance inconsistent at degree {d}: {exc}") from exc
            try:
                sol = ls.solution(new)
            except SingularSystem as exc:
                raise SingularSystem(f"Haar solve underdetermined at degree {d}: {exc}") from exc
            for k, rhs in sol.items():
                val = rhs.get("psi", ZERO)
                if not is_zero(val):
                    self._psi_values[k] = val
            self._psi_degree = d

    # -- certification ----------------------------------------------------------------
    def certify_rewriting(self, max_degree: int) -> list[str]:
        """Defining relations + associativity on generator-left triples.

        Returns a list of failure descriptions (empty when confluent up to
        max_degree).
        """
        fails = []
        q = Gauss(self.q)
        a, ast, c, cs = (self.basis_element(g) for g in (A, AS, C, CS))
        one = self.unit()
        relations = {
            "ac=qca": (a * c, (c * a).scale(q)),
            "ac*=qc*a": (a * cs, (cs * a).scale(q)),
            "cc*=c*c": (c * cs, cs * c),
            "a*a+c*c=1": (ast * a + cs * c, one),
            "aa*+q^2cc*=1": (a * ast + (c * cs).scale(q * q), one),
        }
        for name, (lhs, rhs) in relations.items():
            if lhs != rhs:
                fails.append(f"relation {name}: {lhs - rhs}")
        for idx in self.basis(max_degree):
            if idx == UNIT:
                continue
            prev, g = self._split(idx)
            if self.mult_basis(prev, g) != {idx: ONE}:
                fails.append(f"normal word {self.index_name(idx)} is not prev*gen")
        bas = self.basis(max_degree)
        for g in self.generators:
            for x in bas:
                gx = self.mult_basis(g, x)
                for y in bas:
                    lhs = self.mul(self.basis_element(g), self.basis_element(x) * self.basis_element(y))
                    rhs: dict = {}
                    for k, v in gx.items():
                        for kk, vv in self.mult_basis(k, y).items():
                            _accumulate(rhs, kk, v * vv)
                    if lhs.coeffs != rhs:
                        fails.append(f"critical triple ({self.index_name(g)}, {self.index_name(x)}, {self.index_name(y)})")
                        if len(fails) > 10:
                            return fails
        return fails

    def haar_oracle(self, idx):
        """Closed-form Haar value used only as an independent test oracle."""
        s, l, m = idx
        if s or l != m:
            return ZERO
        q2 = self.q ** 2
        return Gauss((1 - q2) / (1 - q2 ** (l + 1)))


def make_suq2(q, max_degree: int | None = None) -> SUq2:
    pres = SUq2(q)
    if max_degree is not None:
        pres.solve_haar(2 * max_degree)
    return pres


# -- example selection --------------------------------------------------------------

_EX_RE = re.compile(r"^group:(C|F)[\[(](\w+)[\])]$")


def parse_example(spec: str, q=None) -> Presentation:
    """``group:C[Z8]``, ``group:F[S3]`` (or ``F(S3)``), or ``suq2``."""
    spec = spec.strip()
    if spec == "suq2":
        return make_suq2(rat(q) if q is not None else mpq(1, 4))
    m = _EX_RE.match(spec)
    if not m:
        raise ValueError(f"unknown example {spec!r}")
    G = group(m.group(2))
    return make_group_algebra(G) if m.group(1) == "C" else make_function_algebra(G)


def builtin_examples() -> list[str]:
    out = []
    for g in GROUPS:
        out += [f"group:C[{g}]", f"group:F[{g}]"]
    return out + ["suq2"]


def is_rational_square(q) -> bool:
    return exact_sqrt(rat(q)) is not None
