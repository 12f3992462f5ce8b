"""Hopf *-algebras of compact/finite type given by a graded basis.

A :class:`Presentation` supplies structure maps on basis indices; elements and
tensors are finitely supported coefficient dicts over those indices.  All
structure maps are extended (conjugate-)linearly here and cached per basis
index.
"""
from __future__ import annotations

from abc import ABC, abstractmethod
from typing import Callable, Hashable, Iterable

from .scalar import ONE, ZERO, Gauss, conj, format_scalar, is_zero

Index = Hashable


class PresentationMismatch(ValueError):
    pass


class DegreeOverflow(ValueError):
    """An operation needs a larger truncation than is available."""

    def __init__(self, message: str, required_degree: int | None = None):
        super().__init__(message)
        self.required_degree = required_degree


def _accumulate(out: dict, key, value) -> None:
    nv = out.get(key, ZERO) + value
    if is_zero(nv):
        out.pop(key, None)
    else:
        out[key] = nv


class Element:
    """Finitely supported linear combination of basis indices."""

    __slots__ = ("pres", "coeffs")

    def __init__(self, pres: "Presentation", coeffs: dict | None = None):
        self.pres = pres
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not is_zero(v)}

    @classmethod
    def _raw(cls, pres, coeffs):
        e = object.__new__(cls)
        e.pres = pres
        e.coeffs = coeffs
        return e

    def _same(self, other: "Element") -> None:
        if other.pres is not self.pres:
            raise PresentationMismatch("elements live in different presentations")

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def coef(self, idx) -> object:
        return self.coeffs.get(idx, ZERO)

    @property
    def degree(self) -> int:
        return max((self.pres.degree(k) for k in self.coeffs), default=0)

    def is_exact(self) -> bool:
        return all(type(v) is Gauss for v in self.coeffs.values())

    def __add__(self, other):
        if not isinstance(other, Element):
            return self + self.pres.scalar(other)
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _accumulate(out, k, v)
        return Element._raw(self.pres, out)

    __radd__ = __add__

    def __neg__(self):
        return Element._raw(self.pres, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other if isinstance(other, Element) else -other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Element):
            return self.pres.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def scale(self, c) -> "Element":
        if is_zero(c):
            return Element._raw(self.pres, {})
        return Element._raw(self.pres, {k: v * c for k, v in self.coeffs.items()})

    def __eq__(self, other):
        if isinstance(other, Element):
            return other.pres is self.pres and not (self - other).coeffs
        if is_zero(other):
            return not self.coeffs
        return NotImplemented

    __hash__ = None

    def star(self) -> "Element":
        return self.pres.star(self)

    def __repr__(self):
        return f"Element({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        order = self.pres.sort_key
        parts = []
        for k in sorted(self.coeffs, key=order):
            v = self.coeffs[k]
            parts.append(f"({format_scalar(v)})*{self.pres.index_name(k)}")
        return " + ".join(parts)


class TensorElement:
    """Finitely supported combination of basis tuples (A⊗A or A⊗A⊗A)."""

    __slots__ = ("pres", "coeffs")

    def __init__(self, pres: "Presentation", coeffs: dict | None = None):
        self.pres = pres
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if not is_zero(v)}

    @classmethod
    def _raw(cls, pres, coeffs):
        t = object.__new__(cls)
        t.pres = pres
        t.coeffs = coeffs
        return t

    @classmethod
    def simple(cls, *legs: Element) -> "TensorElement":
        pres = legs[0].pres
        out: dict = {(): ONE}
        for leg in legs:
            nxt: dict = {}
            for key, c in out.items():
                for k, v in leg.coeffs.items():
                    _accumulate(nxt, key + (k,), c * v)
            out = nxt
        return cls._raw(pres, out)

    def __bool__(self):
        return bool(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs.items())

    def __len__(self):
        return len(self.coeffs)

    def __add__(self, other: "TensorElement"):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            _accumulate(out, k, v)
        return TensorElement._raw(self.pres, out)

    def __neg__(self):
        return TensorElement._raw(self.pres, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "TensorElement":
        if is_zero(c):
            return TensorElement._raw(self.pres, {})
        return TensorElement._raw(self.pres, {k: v * c for k, v in self.coeffs.items()})

    def __rmul__(self, c):
        return self.scale(c)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            return self.scale(other)
        p = self.pres
        out: dict = {}
        for ka, va in self.coeffs.items():
            for kb, vb in other.coeffs.items():
                c = va * vb
                legs: dict = {(): c}
                for i, j in zip(ka, kb):
                    prod = p.mult_basis(i, j)
                    nxt: dict = {}
                    for key, cc in legs.items():
                        for k, v in prod.items():
                            _accumulate(nxt, key + (k,), cc * v)
                    legs = nxt
                for key, v in legs.items():
                    _accumulate(out, key, v)
        return TensorElement._raw(p, out)

    def __eq__(self, other):
        if isinstance(other, TensorElement):
            return not (self - other).coeffs
        return NotImplemented

    __hash__ = None

    def map_legs(self, *maps: Callable[[Element], Element] | None) -> "TensorElement":
        """Apply a (linear) map to each leg; None means identity."""
        p = self.pres
        cache: list[dict] = [dict() for _ in maps]
        out: dict = {}
        for key, c in self.coeffs.items():
            legs: dict = {(): c}
            for pos, idx in enumerate(key):
                f = maps[pos]
                if f is None:
                    img = {idx: ONE}
                else:
                    img = cache[pos].get(idx)
                    if img is None:
                        img = f(p.basis_element(idx)).coeffs
                        cache[pos][idx] = img
                nxt: dict = {}
                for k0, c0 in legs.items():
                    for k, v in img.items():
                        _accumulate(nxt, k0 + (k,), c0 * v)
                legs = nxt
            for k, v in legs.items():
                _accumulate(out, k, v)
        return TensorElement._raw(p, out)

    def flip(self) -> "TensorElement":
        return TensorElement._raw(self.pres, {k[::-1]: v for k, v in self.coeffs.items()})

    def contract(self, pos: int, functional: Callable[[Index], object]) -> Element | "TensorElement":
        """Apply a functional to one leg."""
        out: dict = {}
        for key, c in self.coeffs.items():
            f = functional(key[pos])
            if is_zero(f):
                continue
            rest = key[:pos] + key[pos + 1:]
            _accumulate(out, rest, c * f)
        if all(len(k) == 1 for k in out) or not out:
            return Element._raw(self.pres, {k[0]: v for k, v in out.items()})
        return TensorElement._raw(self.pres, out)

    def __str__(self):
        if not self.coeffs:
            return "0"
        name = self.pres.index_name
        parts = []
        for k in sorted(self.coeffs, key=lambda t: tuple(self.pres.sort_key(i) for i in t)):
            legs = "⊗".join(name(i) for i in k)
            parts.append(f"({format_scalar(self.coeffs[k])})*{legs}")
        return " + ".join(parts)

    __repr__ = __str__


class Presentation(ABC):
    """A *-algebraic quantum group of compact type on a graded basis.

    Subclasses implement the structure maps on basis indices; this class
    provides caching and the linear extensions.
    """

    name: str = "presentation"
    #: Indices generating A as an algebra (used to shorten axiom checks).
    generators: list | None = None
    #: Highest degree with basis elements (None: unbounded).
    top_degree: int | None = None

    def __init__(self):
        self._mult_cache: dict = {}
        self._comult_cache: dict = {}
        self._star_cache: dict = {}
        self._s_cache: dict = {}
        self._sinv_cache: dict = {}
        self._eps_cache: dict = {}
        self._psi_cache: dict = {}
        self._gram_cache: dict = {}
        self._pair_cache: dict = {}

    # -- to be supplied ----------------------------------------------------
    @abstractmethod
    def basis(self, max_degree: int) -> list:
        """Indices of degree <= max_degree in deterministic order."""

    @abstractmethod
    def degree(self, idx) -> int: ...

    @abstractmethod
    def unit_index(self): ...

    @abstractmethod
    def _mult(self, i, j) -> dict: ...

    @abstractmethod
    def _comult(self, i) -> dict: ...

    @abstractmethod
    def _star(self, i) -> dict: ...

    @abstractmethod
    def _antipode(self, i) -> dict: ...

    @abstractmethod
    def _antipode_inv(self, i) -> dict: ...

    @abstractmethod
    def _counit(self, i): ...

    @abstractmethod
    def _integral(self, i): ...

    def growth(self, n1: int, n2: int) -> int:
        """Degree bound for products/coproduct legs of degree n1, n2 inputs."""
        g = n1 + n2
        return g if self.top_degree is None else min(g, self.top_degree)

    def index_name(self, idx) -> str:
        return str(idx)

    def sort_key(self, idx):
        return (self.degree(idx), self._order(idx))

    def _order(self, idx):
        return str(idx)

    # -- cached basis-level maps --------------------------------------------
    def mult_basis(self, i, j) -> dict:
        key = (i, j)
        r = self._mult_cache.get(key)
        if r is None:
            r = self._mult(i, j)
            self._mult_cache[key] = r
        return r

    def comult_basis(self, i) -> dict:
        r = self._comult_cache.get(i)
        if r is None:
            r = self._comult(i)
            self._comult_cache[i] = r
        return r

    def star_basis(self, i) -> dict:
        r = self._star_cache.get(i)
        if r is None:
            r = self._star(i)
            self._star_cache[i] = r
        return r

    def antipode_basis(self, i) -> dict:
        r = self._s_cache.get(i)
        if r is None:
            r = self._antipode(i)
            self._s_cache[i] = r
        return r

    def antipode_inv_basis(self, i) -> dict:
        r = self._sinv_cache.get(i)
        if r is None:
            r = self._antipode_inv(i)
            self._sinv_cache[i] = r
        return r

    def counit_basis(self, i):
        r = self._eps_cache.get(i)
        if r is None:
            r = self._counit(i)
            self._eps_cache[i] = r
        return r

    def integral_basis(self, i):
        r = self._psi_cache.get(i)
        if r is None:
            r = self._integral(i)
            self._psi_cache[i] = r
        return r

    # -- elements ------------------------------------------------------------
    def element(self, coeffs: dict | None = None) -> Element:
        return Element(self, coeffs)

    def basis_element(self, idx, coef=ONE) -> Element:
        return Element._raw(self, {idx: coef})

    def zero(self) -> Element:
        return Element._raw(self, {})

    def unit(self) -> Element:
        return self.basis_element(self.unit_index())

    def scalar(self, c) -> Element:
        return self.unit().scale(c)

    def _check(self, *xs: Element) -> None:
        for x in xs:
            if x.pres is not self:
                raise PresentationMismatch("element belongs to another presentation")

    def mul(self, x: Element, y: Element) -> Element:
        self._check(x, y)
        out: dict = {}
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                ab = a * b
                for k, v in self.mult_basis(i, j).items():
                    _accumulate(out, k, ab * v)
        return Element._raw(self, out)

    def _linear(self, x: Element, basis_map, conjugate=False) -> Element:
        self._check(x)
        out: dict = {}
        for i, a in x.coeffs.items():
            if conjugate:
                a = conj(a)
            for k, v in basis_map(i).items():
                _accumulate(out, k, a * v)
        return Element._raw(self, out)

    def star(self, x: Element) -> Element:
        return self._linear(x, self.star_basis, conjugate=True)

    def antipode(self, x: Element) -> Element:
        return self._linear(x, self.antipode_basis)

    def antipode_inv(self, x: Element) -> Element:
        return self._linear(x, self.antipode_inv_basis)

    def s2(self, x: Element) -> Element:
        return self.antipode(self.antipode(x))

    def s2_inv(self, x: Element) -> Element:
        return self.antipode_inv(self.antipode_inv(x))

    def counit(self, x: Element):
        self._check(x)
        acc = ZERO
        for i, a in x.coeffs.items():
            e = self.counit_basis(i)
            if not is_zero(e):
                acc = acc + a * e
        return acc

    def right_integral(self, x: Element):
        self._check(x)
        acc = ZERO
        for i, a in x.coeffs.items():
            p = self.integral_basis(i)
            if not is_zero(p):
                acc = acc + a * p
        return acc

    psi = right_integral

    def left_integral(self, x: Element):
        """phi = psi o S."""
        return self.right_integral(self.antipode(x))

    def comul(self, x: Element) -> TensorElement:
        self._check(x)
        out: dict = {}
        for i, a in x.coeffs.items():
            for k, v in self.comult_basis(i).items():
                _accumulate(out, k, a * v)
        return TensorElement._raw(self, out)

    def tensor(self, *legs: Element) -> TensorElement:
        return TensorElement.simple(*legs)

    # -- inner products ------------------------------------------------------
    def gram_basis(self, i, j):
        """<Lambda(i), Lambda(j)> = psi(j^* i)."""
        key = (i, j)
        r = self._gram_cache.get(key)
        if r is None:
            acc = ZERO
            for k, v in self.star_basis(j).items():
                for m, w in self.mult_basis(k, i).items():
                    p = self.integral_basis(m)
                    if not is_zero(p):
                        acc = acc + conj(v) * w * p
            r = acc
            self._gram_cache[key] = r
        return r

    def inner(self, x: Element, y: Element):
        """<Lambda(x), Lambda(y)>, linear in x, conjugate-linear in y."""
        acc = ZERO
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                g = self.gram_basis(i, j)
                if not is_zero(g):
                    acc = acc + a * conj(b) * g
        return acc

    def inner_tensor(self, v: TensorElement, w: TensorElement):
        acc = ZERO
        for ki, a in v.coeffs.items():
            for kj, b in w.coeffs.items():
                g = ONE
                for i, j in zip(ki, kj):
                    g = g * self.gram_basis(i, j)
                    if is_zero(g):
                        break
                if not is_zero(g):
                    acc = acc + a * conj(b) * g
        return acc

    def pairing_basis(self, x, z):
        """psi(S(x) z): value of the Fourier transform of z at x."""
        key = (x, z)
        r = self._pair_cache.get(key)
        if r is None:
            acc = ZERO
            for k, v in self.antipode_basis(x).items():
                for m, w in self.mult_basis(k, z).items():
                    p = self.integral_basis(m)
                    if not is_zero(p):
                        acc = acc + v * w * p
            r = acc
            self._pair_cache[key] = r
        return r

    def __repr__(self):
        return f"<{type(self).__name__} {self.name}>"


class FinitePresentation(Presentation):
    """Presentation given by explicit sparse tables (finite basis)."""

    def __init__(self, name: str, basis: list, degrees: dict, unit: dict,
                 mult: dict, comult: dict, star: dict, antipode: dict,
                 counit: dict, integral: dict, antipode_inv: dict | None = None,
                 generators: list | None = None, names: dict | None = None):
        super().__init__()
        self.name = name
        self._basis = list(basis)
        self._pos = {b: n for n, b in enumerate(self._basis)}
        self._degrees = dict(degrees)
        self.top_degree = max(self._degrees.values(), default=0)
        self._unit = {k: v for k, v in unit.items() if not is_zero(v)}
        if not self._unit:
            raise ValueError("unit must be nonzero")
        self._tables = {
            "mult": mult, "comult": comult, "star": star, "antipode": antipode,
        }
        self._eps = counit
        self._int = integral
        self._names = names or {}
        self.generators = generators
        self._sinv_table = antipode_inv if antipode_inv is not None else self._invert_antipode()

    def _invert_antipode(self) -> dict:
        from .linalg import SquareSolver

        rows: dict = {}
        # S as a matrix: column j = S(e_j); solve S X = I column by column
        for i in self._basis:
            rows[i] = {}
        for j in self._basis:
            for i, v in self._tables["antipode"].get(j, {}).items():
                rows[i][j] = v
        solver = SquareSolver(rows, self._basis)
        return {i: solver.solve({i: ONE}) for i in self._basis}

    def basis(self, max_degree: int) -> list:
        return [b for b in self._basis if self._degrees[b] <= max_degree]

    def degree(self, idx) -> int:
        return self._degrees[idx]

    def _order(self, idx):
        return self._pos[idx]

    def index_name(self, idx) -> str:
        return self._names.get(idx, str(idx))

    def unit_index(self):
        if len(self._unit) == 1 and next(iter(self._unit.values())) == 1:
            return next(iter(self._unit))
        raise NotImplementedError(f"the unit of {self.name} is not a single basis element")

    def unit(self) -> Element:
        return Element._raw(self, dict(self._unit))

    def _mult(self, i, j):
        return dict(self._tables["mult"].get((i, j), {}))

    def _comult(self, i):
        return dict(self._tables["comult"].get(i, {}))

    def _star(self, i):
        return dict(self._tables["star"].get(i, {}))

    def _antipode(self, i):
        return dict(self._tables["antipode"].get(i, {}))

    def _antipode_inv(self, i):
        return dict(self._sinv_table.get(i, {}))

    def _counit(self, i):
        return self._eps.get(i, ZERO)

    def _integral(self, i):
        return self._int.get(i, ZERO)

    def growth(self, n1, n2):
        return self.top_degree

    def corrupted(self, which: str, key, new_value) -> "FinitePresentation":
        """Copy with one structure constant replaced (negative controls)."""
        import copy

        tables = copy.deepcopy(self._tables)
        target = tables[which]
        entry_key, sub_key = key
        target.setdefault(entry_key, {})[sub_key] = new_value
        return FinitePresentation(
            f"{self.name}[corrupted]", self._basis, self._degrees, self._unit,
            tables["mult"], tables["comult"], tables["star"], tables["antipode"],
            self._eps, self._int, generators=self.generators, names=self._names,
        )


def linear_map_on_basis(pres: Presentation, f: Callable[[Element], Element]) -> Callable:
    """Cache a linear map by its values on basis indices."""
    cache: dict = {}

    def apply(x: Element) -> Element:
        out: dict = {}
        for i, a in x.coeffs.items():
            img = cache.get(i)
            if img is None:
                img = f(pres.basis_element(i)).coeffs
                cache[i] = img
            for k, v in img.items():
                _accumulate(out, k, a * v)
        return Element._raw(pres, out)

    return apply


def elements_of(pres: Presentation, idxs: Iterable) -> list[Element]:
    return [pres.basis_element(i) for i in idxs]
