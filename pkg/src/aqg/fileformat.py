"""Textual presentation files ("aqg-presentation v1").

Layout::

    aqg-presentation v1
    name: Kac-Paljutkin          # optional
    check-degree: 0              # optional, defaults to the top basis degree
    [basis]
    e0 0                         # index degree
    [unit]
    e0 1                         # index coefficient
    [mult]
    x y z 1/2                    # x·y has coefficient 1/2 on z
    [comult]
    x y z 1                      # Δ(x) has coefficient 1 on y⊗z
    [star]
    x y 1                        # x* has coefficient 1 on y (extended conjugate-linearly)
    [antipode]
    x y 1                        # S(x) has coefficient 1 on y
    [counit]
    x 1                          # ε(x)
    [integral]
    x 1                          # ψ(x), ψ the positive right integral

Coefficients use the exact scalar syntax ("p/q", "p/q+r/s*i"); float literals
are rejected.  Unspecified entries are zero; ``#`` starts a comment.
"""
from __future__ import annotations

from pathlib import Path

from .axioms import check_axioms
from .hopf import FinitePresentation
from .linalg import SingularSystem
from .report import VerificationReport
from .scalar import format_scalar, is_exact, parse_scalar

HEADER = "aqg-presentation v1"
SECTIONS = ("basis", "unit", "mult", "comult", "star", "antipode", "counit", "integral")
# number of index columns preceding the coefficient, per section
_ARITY = {"unit": 1, "mult": 3, "comult": 3, "star": 2, "antipode": 2, "counit": 1, "integral": 1}


class PresentationError(ValueError):
    """Malformed file, or a presentation that fails its axiom certification."""

    def __init__(self, message: str, report: VerificationReport | None = None):
        super().__init__(message)
        self.report = report


def parse_presentation(text: str, certify: bool = True) -> FinitePresentation:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [(n + 1, ln) for n, ln in enumerate(lines) if ln]
    if not lines or lines[0][1] != HEADER:
        raise PresentationError(f"missing header {HEADER!r}")
    meta: dict[str, str] = {}
    rows: dict[str, list] = {s: [] for s in SECTIONS}
    section = None
    seen: set[str] = set()
    for lineno, ln in lines[1:]:
        if ln.startswith("[") and ln.endswith("]"):
            section = ln[1:-1].strip()
            if section not in SECTIONS:
                raise PresentationError(f"line {lineno}: unknown section [{section}]")
            if section in seen:
                raise PresentationError(f"line {lineno}: duplicate section [{section}]")
            seen.add(section)
            continue
        if section is None:
            key, sep, value = ln.partition(":")
            if not sep:
                raise PresentationError(f"line {lineno}: expected 'key: value' before the first section")
            meta[key.strip()] = value.strip()
            continue
        rows[section].append((lineno, ln.split()))

    basis: list[str] = []
    degrees: dict[str, int] = {}
    for lineno, tok in rows["basis"]:
        if len(tok) != 2:
            raise PresentationError(f"line {lineno}: [basis] entries are 'index degree'")
        idx, deg = tok
        if idx in degrees:
            raise PresentationError(f"line {lineno}: duplicate basis index {idx!r}")
        try:
            d = int(deg)
        except ValueError:
            raise PresentationError(f"line {lineno}: degree {deg!r} is not an integer") from None
        if d < 0:
            raise PresentationError(f"line {lineno}: negative degree")
        basis.append(idx)
        degrees[idx] = d
    if not basis:
        raise PresentationError("empty [basis]: the presentation must be finite and nonempty")

    def coef(lineno, token):
        try:
            v = parse_scalar(token)
        except ValueError as exc:
            raise PresentationError(f"line {lineno}: {exc}") from None
        if not is_exact(v):
            raise PresentationError(f"line {lineno}: float coefficient {token!r}; exact syntax required")
        return v

    tables: dict[str, dict] = {s: {} for s in _ARITY}
    for s, arity in _ARITY.items():
        for lineno, tok in rows[s]:
            if len(tok) != arity + 1:
                raise PresentationError(f"line {lineno}: [{s}] entries take {arity} indices and a coefficient")
            idxs, v = tok[:arity], coef(lineno, tok[arity])
            for i in idxs:
                if i not in degrees:
                    raise PresentationError(f"line {lineno}: index {i!r} not declared in [basis]")
            if s in ("unit", "counit", "integral"):
                key, sub = idxs[0], None
            elif s == "mult":
                key, sub = (idxs[0], idxs[1]), idxs[2]
            elif s == "comult":
                key, sub = idxs[0], (idxs[1], idxs[2])
            else:
                key, sub = idxs[0], idxs[1]
            tgt = tables[s]
            if sub is None:
                if key in tgt:
                    raise PresentationError(f"line {lineno}: duplicate entry")
                tgt[key] = v
            else:
                if sub in tgt.setdefault(key, {}):
                    raise PresentationError(f"line {lineno}: duplicate entry")
                tgt[key][sub] = v

    try:
        pres = FinitePresentation(
            name=meta.get("name", "loaded"), basis=basis, degrees=degrees, unit=tables["unit"],
            mult=tables["mult"], comult=tables["comult"], star=tables["star"],
            antipode=tables["antipode"], counit=tables["counit"], integral=tables["integral"],
        )
    except SingularSystem:
        raise PresentationError("the antipode is not invertible") from None
    except ValueError as exc:
        raise PresentationError(str(exc)) from None
    pres.family = "loaded"
    try:
        pres.check_degree = int(meta.get("check-degree", pres.top_degree))
    except ValueError:
        raise PresentationError("check-degree must be an integer") from None
    if certify:
        rep = check_axioms(pres, pres.check_degree)
        if not rep.ok:
            bad = rep.failures()[0]
            raise PresentationError(
                f"presentation fails {bad.check_id} ({bad.anchor}); witness: {bad.witness}", rep)
    return pres


def load_presentation(path: str | Path, certify: bool = True) -> FinitePresentation:
    return parse_presentation(Path(path).read_text(encoding="utf-8"), certify=certify)


def dump_presentation(pres: FinitePresentation) -> str:
    """Serialize a finite presentation; ``parse_presentation`` inverts this exactly."""
    out = [HEADER, f"name: {pres.name}", f"check-degree: {pres.top_degree}", "[basis]"]
    out += [f"{b} {pres.degree(b)}" for b in pres._basis]

    def section(name, entries):
        out.append(f"[{name}]")
        out.extend(" ".join(map(str, row[:-1])) + " " + format_scalar(row[-1]) for row in entries)

    section("unit", [(k, v) for k, v in pres._unit.items()])
    t = pres._tables
    section("mult", [(i, j, k, v) for (i, j), d in t["mult"].items() for k, v in d.items() if v])
    section("comult", [(i, k1, k2, v) for i, d in t["comult"].items() for (k1, k2), v in d.items() if v])
    for name in ("star", "antipode"):
        section(name, [(i, k, v) for i, d in t[name].items() for k, v in d.items() if v])
    section("counit", [(k, v) for k, v in pres._eps.items() if v])
    section("integral", [(k, v) for k, v in pres._int.items() if v])
    return "\n".join(out) + "\n"
