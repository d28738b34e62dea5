"""Detours, routes and the polynomial equations of the uniserial variety V_p.

A mast ``p`` is an ordinary :class:`~uniserial.quiver.Path`; its prefix of
length ``j`` ends at ``p.vertices[j]``.  A detour ``(alpha, u)`` is identified
by the arrow name and the length of the prefix ``u``.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .field import Field
from .groebner import IdealBasis, is_unit_ideal
from .polynomial import Polynomial
from .quiver import AlgebraElement, Path, Presentation, QuiverError, prefix


@dataclass(frozen=True)
class Detour:
    """A detour (arrow, u) on a mast, with its ordered target prefixes.

    ``targets`` lists the lengths of the prefixes v_1, v_2, ... (ascending) that
    are longer than ``u`` and end where ``arrow`` ends.  Variable
    ``first_var + i`` (0-based) is the coefficient of ``v_{i+1}``.
    """

    arrow: str
    u_length: int
    targets: Tuple[int, ...]
    first_var: int

    @property
    def size(self) -> int:
        return len(self.targets)

    @property
    def variables(self) -> range:
        return range(self.first_var, self.first_var + len(self.targets))


class DetourTable:
    """All detours on a mast in canonical order (prefix length, then arrow name)."""

    def __init__(self, presentation: Presentation, mast: Path):
        self.presentation = presentation
        self.mast = mast
        quiver = presentation.quiver
        try:
            rebuilt = quiver.path(mast.arrows, mast.source)
        except QuiverError as exc:
            raise QuiverError(f"mast {mast} is not a path of the quiver: {exc}") from None
        if rebuilt != mast:
            raise QuiverError(f"mast {mast} does not match the quiver's arrow endpoints")
        l = mast.length
        found = []
        for j in range(l + 1):
            here = mast.vertices[j]
            for a in sorted(quiver.arrows_from(here), key=lambda a: a.name):
                if j < l and a.name == mast.arrows[j]:
                    continue
                targets = tuple(t for t in range(j + 1, l + 1) if mast.vertices[t] == a.target)
                if targets:
                    found.append((j, a.name, targets))
        detours = []
        var = 0
        for j, name, targets in found:
            detours.append(Detour(name, j, targets, var))
            var += len(targets)
        self.detours: Tuple[Detour, ...] = tuple(detours)
        self.nvars = var
        self._by_key: Dict[Tuple[str, int], Detour] = {(d.arrow, d.u_length): d for d in detours}

    @property
    def field(self) -> Field:
        return self.presentation.field

    @property
    def length(self) -> int:
        return self.mast.length

    def __len__(self):
        return len(self.detours)

    def __iter__(self):
        return iter(self.detours)

    def lookup(self, arrow: str, u_length: int) -> Optional[Detour]:
        return self._by_key.get((arrow, u_length))

    def prefix(self, j: int) -> Path:
        return prefix(self.mast, j)

    def u(self, d: Detour) -> Path:
        return prefix(self.mast, d.u_length)

    def target_paths(self, d: Detour) -> List[Path]:
        return [prefix(self.mast, t) for t in d.targets]

    def detour_path(self, d: Detour) -> Path:
        """The path arrow·u."""
        u = self.u(d)
        a = self.presentation.quiver.arrow(d.arrow)
        return Path(u.vertices + (a.target,), u.arrows + (d.arrow,))

    def variable_owner(self, i: int) -> Tuple[Detour, int]:
        for d in self.detours:
            if i in d.variables:
                return d, i - d.first_var
        raise IndexError(f"no variable with index {i}")

    def cycles_at_start(self) -> List[Path]:
        """Positive-length prefixes of the mast ending at its start vertex."""
        return [prefix(self.mast, j) for j in range(1, self.length + 1)
                if self.mast.vertices[j] == self.mast.source]

    def to_rows(self) -> List[dict]:
        rows = []
        for d in self.detours:
            for i, t in enumerate(d.targets):
                rows.append({
                    "index": d.first_var + i + 1,
                    "arrow": d.arrow,
                    "u": self.u(d).to_text(),
                    "target": prefix(self.mast, t).to_text(),
                })
        return rows

    def to_json(self) -> str:
        doc = {
            "schema": "uniserial.detours/1",
            "mast": self.mast.to_text(),
            "length": self.length,
            "nvars": self.nvars,
            "detours": [{
                "index": d.first_var + 1,
                "arrow": d.arrow,
                "u": self.u(d).to_text(),
                "targets": [prefix(self.mast, t).to_text() for t in d.targets],
                "variables": [f"X[{i + 1}]" for i in d.variables],
            } for d in self.detours],
        }
        return json.dumps(doc, indent=2, ensure_ascii=False)

    def to_text(self) -> str:
        lines = [f"mast {self.mast.to_text()}  (length {self.length}, N = {self.nvars})"]
        for d in self.detours:
            u = self.u(d).to_text()
            rhs = " + ".join(f"X[{d.first_var + i + 1}]*{prefix(self.mast, t).to_text()}"
                             for i, t in enumerate(d.targets))
            lines.append(f"({d.arrow}, {u}):  {d.arrow}*{u} = {rhs}"
                         if d.u_length else f"({d.arrow}, {u}):  {d.arrow} = {rhs}")
        return "\n".join(lines)


def enumerate_detours(presentation: Presentation, mast: Path) -> DetourTable:
    return DetourTable(presentation, mast)


def is_prefix(q: Path, mast: Path) -> bool:
    return q.length <= mast.length and q.vertices == mast.vertices[:q.length + 1] \
        and q.arrows == mast.arrows[:q.length]


def common_prefix_length(q: Path, mast: Path) -> int:
    n = 0
    for a, b in zip(q.arrows, mast.arrows):
        if a != b:
            break
        n += 1
    return n


def route_positions(q: Path, mast: Path) -> frozenset:
    """Positions (prefix lengths of the mast) at which ``q`` can end as a route.

    From position j an arrow either continues along the mast (only when it is
    the mast's next arrow) or jumps to any later position whose vertex is the
    arrow's target.
    """
    if q.source != mast.source:
        return frozenset()
    l = mast.length
    verts = mast.vertices
    positions = {0}
    for i, name in enumerate(q.arrows):
        tgt = q.vertices[i + 1]
        nxt = set()
        for j in positions:
            if j < l and mast.arrows[j] == name:
                nxt.add(j + 1)
            else:
                nxt.update(t for t in range(j + 1, l + 1) if verts[t] == tgt)
        if not nxt:
            return frozenset()
        positions = nxt
    return frozenset(positions)


def is_route(q: Path, mast: Path) -> bool:
    return bool(route_positions(q, mast))


class NonTermination(AssertionError):
    pass


def _terms_of(z, field):
    if isinstance(z, Path):
        return {z: field.one}
    if isinstance(z, AlgebraElement):
        return dict(z.terms)
    return dict(z)


def _rewrite(terms: Dict[Path, object], table: DetourTable, weight):
    """Iterate the simultaneous substitution map until only mast prefixes remain.

    ``weight(var_index, coeff)`` multiplies a coefficient by the value (or
    variable) attached to a detour target.
    """
    mast = table.mast
    bound = max((q.length for q in terms), default=0)
    current = terms
    for _ in range(bound + 1):
        nxt: Dict[Path, object] = {}
        changed = False
        for q, c in current.items():
            if not is_route(q, mast):
                changed = True
                continue
            if is_prefix(q, mast):
                nxt[q] = nxt[q] + c if q in nxt else c
                continue
            j = common_prefix_length(q, mast)
            d = table.lookup(q.arrows[j], j)
            if d is None:
                raise AssertionError(f"route {q} has no detour at its common prefix with {mast}")
            changed = True
            rest_vertices = q.vertices[j + 2:]
            rest_arrows = q.arrows[j + 1:]
            for i, t in enumerate(d.targets):
                coeff = weight(d.first_var + i, c)
                if not coeff:
                    continue
                new = Path(mast.vertices[:t + 1] + rest_vertices, mast.arrows[:t] + rest_arrows)
                nxt[new] = nxt[new] + coeff if new in nxt else coeff
        current = {q: c for q, c in nxt.items() if c}
        if not changed:
            return {q.length: c for q, c in current.items()}
    raise NonTermination(f"no fixpoint after {bound} substitution rounds")


@dataclass(frozen=True)
class SymbolicElement:
    """Normal form Σ τ_j(X)·prefix_j, stored as prefix length -> polynomial."""

    table: DetourTable
    coeffs: Mapping[int, Polynomial]

    def __getitem__(self, j: int) -> Polynomial:
        return self.coeffs.get(j, Polynomial.zero(self._nvars(), self.table.field))

    def _nvars(self):
        for c in self.coeffs.values():
            return c.nvars
        return self.table.nvars

    def is_zero(self) -> bool:
        return not any(self.coeffs.values())

    def polynomials(self) -> List[Polynomial]:
        return [self.coeffs[j] for j in sorted(self.coeffs) if self.coeffs[j]]

    def to_text(self) -> str:
        if self.is_zero():
            return "0"
        return " + ".join(f"({self.coeffs[j]})*{self.table.prefix(j).to_text()}"
                          for j in sorted(self.coeffs, reverse=True))


def normal_form(z: Union[AlgebraElement, Path, Mapping], table: DetourTable,
                point: Optional[Sequence] = None, nvars: Optional[int] = None,
                offset: int = 0):
    """Unique normal form of ``z`` modulo the substitution equations of the mast.

    Without ``point`` the result is a :class:`SymbolicElement` whose
    coefficients live in ``nvars`` variables (default N), the detour variables
    occupying indices ``offset .. offset + N - 1``.  With ``point`` the
    variables are specialized and the coordinate vector (length l + 1) over
    the field is returned.
    """
    field = table.field
    terms = _terms_of(z, field)
    if point is not None:
        if len(point) != table.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {table.nvars}")
        k = [field(v) for v in point]
        result = _rewrite({q: field(c) for q, c in terms.items()}, table,
                          lambda i, c: c * k[i])
        vec = [field.zero] * (table.length + 1)
        for j, c in result.items():
            vec[j] = c
        return vec
    n = table.nvars if nvars is None else nvars
    if offset + table.nvars > n:
        raise ValueError("detour variables do not fit in the ambient ring")
    variables = [Polynomial.variable(offset + i, n, field) for i in range(table.nvars)]
    start = {}
    for q, c in terms.items():
        start[q] = c if isinstance(c, Polynomial) else Polynomial.constant(c, n, field)
    result = _rewrite(start, table, lambda i, c: c * variables[i])
    return SymbolicElement(table, result)


@dataclass(frozen=True)
class UniserialVariety:
    """Generators of the ideal of V_p together with the detour table."""

    table: DetourTable
    ideal: IdealBasis

    @property
    def mast(self) -> Path:
        return self.table.mast

    @property
    def nvars(self) -> int:
        return self.table.nvars

    def is_nonempty(self) -> bool:
        return not is_unit_ideal(self.ideal)

    def contains(self, point: Sequence) -> bool:
        return point_on_variety(self.ideal, point)


def left_ideal_generators(presentation: Presentation, mast: Path, extra_length: int = 0,
                          prune: bool = True):
    """Yield g·w for relations g and paths w from the mast's start to source(g).

    ``w`` runs over paths of length <= l + extra_length.  With ``prune``,
    products whose every path is longer than l (hence a non-route) are skipped.
    """
    l = mast.length
    quiver = presentation.quiver
    ws = list(quiver.paths_from(mast.source, l + extra_length))
    for g in presentation.relations:
        src = next(iter(g.terms)).source
        glen = g.min_length()
        for w in ws:
            if w.target != src:
                continue
            if prune and glen + w.length > l:
                continue
            yield g * w


def variety_generators(presentation: Presentation, mast: Path, extra_length: int = 0,
                       prune: bool = True, order: str = "grevlex") -> UniserialVariety:
    table = enumerate_detours(presentation, mast)
    seen = set()
    polys = []
    for z in left_ideal_generators(presentation, mast, extra_length, prune):
        for f in normal_form(z, table).polynomials():
            key = f.monic(order)
            if key not in seen:
                seen.add(key)
                polys.append(f)
    ideal = IdealBasis(tuple(polys), table.nvars, presentation.field, order)
    return UniserialVariety(table, ideal)


def is_nonempty_variety(presentation: Presentation, mast: Path) -> bool:
    return variety_generators(presentation, mast).is_nonempty()


def point_on_variety(gens: IdealBasis, point: Sequence) -> bool:
    if len(point) != gens.nvars:
        raise ValueError(f"point has {len(point)} coordinates, expected {gens.nvars}")
    return all(not f.evaluate(point) for f in gens.polys)


def enumerate_masts(presentation: Presentation, vertices: Sequence) -> List[Path]:
    """All paths passing through ``vertices`` in order, one arrow per step."""
    quiver = presentation.quiver
    vertices = [str(v) for v in vertices]
    for v in vertices:
        quiver.vertex_path(v)
    choices = []
    for a, b in zip(vertices, vertices[1:]):
        arrows = sorted(quiver.arrows_between(a, b), key=lambda x: x.name)
        if not arrows:
            return []
        choices.append([x.name for x in arrows])
    return [Path(tuple(vertices), tuple(combo)) for combo in itertools.product(*choices)]
