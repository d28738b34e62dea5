"""Build a presentation and mast whose uniserial variety is a given affine variety.

Polynomials are first made multilinear by splitting every variable X_i into
copies X_i1..X_id (tied together by difference relations).  Each multilinear
variable then gets its own diamond ``alpha_i, beta_i, gamma_i`` in a chain of
2m + 1 vertices, and a monomial over the set A of variables becomes the path
that takes the ``gamma`` shortcut exactly over the diamonds in A.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from .field import QQ, Field
from .groebner import IdealBasis, ideal_equal
from .polynomial import Polynomial
from .quiver import AlgebraElement, Arrow, Path, Presentation, Quiver
from .variety import enumerate_detours, variety_generators


@dataclass(frozen=True)
class Multilinearization:
    """Multilinear system plus the map (input index, copy) -> new variable index."""

    polys: Tuple[Polynomial, ...]
    copies: Tuple[Tuple[int, int], ...]
    nvars: int
    field: Field

    def index_of(self, i: int, j: int) -> int:
        return self.copies.index((i, j))

    def name(self, k: int) -> str:
        i, j = self.copies[k]
        return f"X[{i + 1},{j + 1}]"


def multilinearize(polys: Sequence[Polynomial], nvars: int, field: Field = QQ
                   ) -> Multilinearization:
    """Replace X_i^r by X_i1*...*X_ir and append X_i1 - X_it for every extra copy.

    Every input variable keeps at least one copy, so variables that do not
    occur still contribute a free coordinate.
    """
    degrees = [max([f.degree_in(i) for f in polys] + [1]) for i in range(nvars)]
    copies = tuple((i, j) for i in range(nvars) for j in range(degrees[i]))
    start = {}
    for k, (i, j) in enumerate(copies):
        start.setdefault(i, k)
    n = len(copies)
    out = []
    for f in polys:
        terms: Dict[Tuple[int, ...], object] = {}
        for mono, c in f.terms.items():
            new = [0] * n
            for i, e in enumerate(mono):
                for j in range(e):
                    new[start[i] + j] = 1
            terms[tuple(new)] = c
        g = Polynomial(n, terms, field)
        if g:
            out.append(g)
    for i in range(nvars):
        for j in range(1, degrees[i]):
            out.append(Polynomial.variable(start[i], n, field)
                       - Polynomial.variable(start[i] + j, n, field))
    return Multilinearization(tuple(out), copies, n, field)


def chain_quiver(m: int) -> Quiver:
    """Vertices 1..2m+1 with alpha_i: 2i-1 -> 2i, beta_i: 2i -> 2i+1, gamma_i: 2i-1 -> 2i+1."""
    arrows = []
    for i in range(1, m + 1):
        a, b, c = str(2 * i - 1), str(2 * i), str(2 * i + 1)
        arrows += [Arrow(f"alpha{i}", a, b), Arrow(f"beta{i}", b, c), Arrow(f"gamma{i}", a, c)]
    return Quiver([str(v) for v in range(1, 2 * m + 2)], arrows)


def shortcut_path(quiver: Quiver, m: int, shortcuts) -> Path:
    """The path from 1 to 2m+1 using gamma_i for i in ``shortcuts`` (0-based)."""
    names = []
    for i in range(m):
        names += [f"gamma{i + 1}"] if i in shortcuts else [f"alpha{i + 1}", f"beta{i + 1}"]
    return quiver.path(names)


@dataclass(frozen=True)
class Realization:
    """A presentation and mast realizing ``system.polys`` (plus optional padding)."""

    system: Multilinearization
    polys: Tuple[Polynomial, ...]
    padded: bool
    presentation: Presentation
    mast: Path

    @property
    def nvars(self) -> int:
        return self.polys[0].nvars if self.polys else self.system.nvars + int(self.padded)

    def correspondence(self) -> List[dict]:
        table = enumerate_detours(self.presentation, self.mast)
        rows = []
        for d in table:
            k = d.first_var
            if k < self.system.nvars:
                i, j = self.system.copies[k]
                source = {"input_variable": f"X[{i + 1}]", "copy": j + 1}
            else:
                source = {"input_variable": None, "copy": None}
            rows.append({"variable": f"X[{k + 1}]", "detour_arrow": d.arrow,
                         "detour_u": table.u(d).to_text(), **source})
        return rows

    def correspondence_json(self) -> str:
        return json.dumps({"schema": "uniserial.realization/1", "padded": self.padded,
                           "variables": self.correspondence()}, indent=2)

    def ideal(self) -> IdealBasis:
        return IdealBasis(self.polys, self.nvars, self.system.field)


def _relation(poly: Polynomial, quiver: Quiver, m: int, field: Field) -> AlgebraElement:
    terms = {}
    for mono, c in poly.terms.items():
        path = shortcut_path(quiver, m, {i for i, e in enumerate(mono) if e})
        terms[path] = c
    return AlgebraElement(terms, field)


def realize_polys(polys: Sequence[Polynomial], nvars: int, field: Field = QQ) -> Realization:
    """Realize a system given as polynomials in ``nvars`` variables."""
    system = multilinearize(polys, nvars, field)
    rels = list(system.polys)
    m = system.nvars
    padded = False
    if m == 1 and any(f.terms.get((1,)) is not None for f in rels):
        # gamma_1 alone would be a relation path of length 1; add a variable forced to 0
        m = 2
        padded = True
        rels = [Polynomial(2, {mono + (0,): c for mono, c in f.terms.items()}, field)
                for f in rels]
        rels.append(Polynomial.variable(1, 2, field))
    quiver = chain_quiver(m)
    relations = tuple(_relation(f, quiver, m, field) for f in rels)
    presentation = Presentation(quiver, relations, field)
    mast = shortcut_path(quiver, m, set())
    return Realization(system, tuple(rels), padded, presentation, mast)


def realize_variety(polys: Sequence[Polynomial], nvars: int = None, field: Field = None
                    ) -> Realization:
    polys = list(polys)
    if nvars is None:
        if not polys:
            raise ValueError("nvars is required for an empty system")
        nvars = polys[0].nvars
    if field is None:
        field = polys[0].field if polys else QQ
    if nvars < 1:
        raise ValueError("at least one variable is required")
    return realize_polys(polys, nvars, field)


def verify_realization(r: Realization) -> bool:
    """Recompute V_p for the constructed mast and compare with the multilinear system."""
    v = variety_generators(r.presentation, r.mast)
    if v.nvars != r.nvars:
        return False
    if any(d.size != 1 for d in v.table):
        return False
    return ideal_equal(v.ideal, r.ideal())


def format_system(r: Realization) -> str:
    lines = []
    for f in r.system.polys:
        lines.append(f.to_string(r.system.name))
    if r.padded:
        lines.append("X[2] (padding variable)")
    return "\n".join(lines)


__all__ = ["Multilinearization", "Realization", "chain_quiver", "format_system",
           "multilinearize", "realize_polys", "realize_variety", "shortcut_path",
           "verify_realization"]
