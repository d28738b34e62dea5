"""Uniserial modules as matrices, layered graphs, isomorphism and mast transport."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .field import Field, format_scalar
from .linear import LinearSystem, mat_mul, mat_vec, solve_linear
from .polynomial import Polynomial
from .quiver import AlgebraElement, Path, Presentation, QuiverError, compose, prefix
from .variety import (DetourTable, UniserialVariety, enumerate_detours, normal_form,
                      point_on_variety, variety_generators)


class ModuleInvariantError(AssertionError):
    """A constructed module violates a structural invariant."""


class PointError(ValueError):
    """A point is not on the variety it was supplied for."""


Matrix = Tuple[Tuple[object, ...], ...]


def _freeze(rows) -> Matrix:
    return tuple(tuple(r) for r in rows)


def _zero_matrix(n: int, field: Field):
    return [[field.zero] * n for _ in range(n)]


@dataclass(frozen=True)
class UniserialModule:
    """Arrow actions on the basis b_0..b_l, where b_j is the image of prefix_j of the mast."""

    presentation: Presentation
    table: DetourTable
    point: Tuple[object, ...]
    matrices: Dict[str, Matrix]

    @property
    def mast(self) -> Path:
        return self.table.mast

    @property
    def field(self) -> Field:
        return self.presentation.field

    @property
    def dimension(self) -> int:
        return self.mast.length + 1

    def layer_vertex(self, j: int) -> str:
        return self.mast.vertices[j]

    def idempotent(self, vertex: str) -> Matrix:
        f = self.field
        n = self.dimension
        return _freeze([[f.one if i == j and self.layer_vertex(j) == vertex else f.zero
                         for j in range(n)] for i in range(n)])

    def path_matrix(self, path: Path) -> Matrix:
        m = self.idempotent(path.source)
        for name in path.arrows:
            m = _freeze(mat_mul(self.matrices[name], m, self.field))
        return m

    def element_matrix(self, z: AlgebraElement) -> Matrix:
        f = self.field
        n = self.dimension
        total = _zero_matrix(n, f)
        for path, c in z.terms.items():
            pm = self.path_matrix(path)
            for i in range(n):
                for j in range(n):
                    if pm[i][j]:
                        total[i][j] = total[i][j] + c * pm[i][j]
        return _freeze(total)

    def act(self, path: Path, vector: Sequence) -> List:
        return mat_vec(self.path_matrix(path), vector, self.field)

    def basis_vector(self, j: int) -> List:
        f = self.field
        return [f.one if i == j else f.zero for i in range(self.dimension)]

    def to_text(self) -> str:
        lines = [f"mast {self.mast.to_text()}  dimension {self.dimension}",
                 "point (" + ", ".join(format_scalar(c) for c in self.point) + ")",
                 "layers " + " ".join(f"b{j}:e({v})" for j, v in enumerate(self.mast.vertices))]
        for name in sorted(self.matrices):
            m = self.matrices[name]
            lines.append(f"{name}:")
            width = max((len(format_scalar(c)) for row in m for c in row), default=1)
            for row in m:
                lines.append("  [" + " ".join(format_scalar(c).rjust(width) for c in row) + "]")
        return "\n".join(lines)


def module_violations(m: UniserialModule) -> List[str]:
    """List every broken module invariant (empty when the module is sound)."""
    problems = []
    n = m.dimension
    quiver = m.presentation.quiver
    for name, mat in m.matrices.items():
        a = quiver.arrow(name)
        for i in range(n):
            for j in range(n):
                if not mat[i][j]:
                    continue
                if i <= j:
                    problems.append(f"{name} does not lower the radical layer at ({i}, {j})")
                if m.layer_vertex(j) != a.source or m.layer_vertex(i) != a.target:
                    problems.append(f"{name} breaks the vertex grading at ({i}, {j})")
    mast = m.mast
    for j, name in enumerate(mast.arrows):
        col = [row[j] for row in m.matrices[name]]
        if col != m.basis_vector(j + 1):
            problems.append(f"mast arrow {name} does not send b{j} to b{j + 1}")
    top = m.act(mast, m.basis_vector(0))
    if not top[n - 1]:
        problems.append("the mast annihilates the top element")
    for r in m.presentation.relations:
        if any(x for row in m.element_matrix(r) for x in row):
            problems.append(f"relation {r} acts nontrivially")
    return problems


def check_module(m: UniserialModule) -> UniserialModule:
    problems = module_violations(m)
    if problems:
        raise ModuleInvariantError("; ".join(problems))
    return m


def build_module(presentation: Presentation, mast: Path, point: Sequence,
                 variety: Optional[UniserialVariety] = None, check: bool = True
                 ) -> UniserialModule:
    """Matrices of the uniserial module attached to ``point`` on V_p."""
    if variety is None:
        variety = variety_generators(presentation, mast)
    table = variety.table
    field = presentation.field
    point = tuple(field(c) for c in point)
    if len(point) != table.nvars:
        raise PointError(f"point has {len(point)} coordinates, expected {table.nvars}")
    if not point_on_variety(variety.ideal, point):
        raise PointError("point is not on the variety of this mast")
    n = mast.length + 1
    matrices = {}
    for name, arrow in presentation.quiver.arrows.items():
        cols = []
        step = Path((arrow.source, arrow.target), (name,))
        for j in range(n):
            path = compose(step, prefix(mast, j))
            cols.append(normal_form(path, table, point) if path is not None
                        else [field.zero] * n)
        matrices[name] = _freeze([[cols[j][i] for j in range(n)] for i in range(n)])
    module = UniserialModule(presentation, table, point, matrices)
    return check_module(module) if check else module


# -- layered graphs ---------------------------------------------------------------


@dataclass(frozen=True)
class LayeredGraph:
    """Layers 1..l+1 labeled by vertices, mast edges and extra (i, j, arrow) edges."""

    layers: Tuple[str, ...]
    mast_edges: Tuple[Tuple[int, int, str], ...]
    extra_edges: Tuple[Tuple[int, int, str], ...]

    def to_dot(self, name: str = "uniserial") -> str:
        lines = [f"digraph {name} {{", "  rankdir=TB;", "  node [shape=plaintext];"]
        for i, v in enumerate(self.layers, start=1):
            lines.append(f'  L{i} [label="e({v})"];')
        for i, j, a in self.mast_edges:
            lines.append(f'  L{i} -> L{j} [label="{a}", style=solid];')
        for i, j, a in self.extra_edges:
            lines.append(f'  L{i} -> L{j} [label="{a}", style=dashed, constraint=false];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        out_edges: Dict[int, List[str]] = {}
        for i, j, a in self.extra_edges:
            out_edges.setdefault(i, []).append(f"{a} -> layer {j}")
        lines = []
        for i, v in enumerate(self.layers, start=1):
            extra = out_edges.get(i)
            lines.append(f"{i:>3}  {v}" + (f"    ({'; '.join(extra)})" if extra else ""))
            if i <= len(self.mast_edges):
                lines.append(f"     | {self.mast_edges[i - 1][2]}")
        return "\n".join(lines) + "\n"


def _solve_in_basis(columns: Sequence[Sequence], vector: Sequence, field: Field) -> List:
    n = len(vector)
    rows = [[columns[c][r] for c in range(len(columns))] for r in range(n)]
    sol = solve_linear(LinearSystem(_freeze(rows), tuple(vector), len(columns), field))
    if not sol.consistent:
        raise ModuleInvariantError("vector outside the span of the basis")
    return list(sol.particular)


def top_basis(m: UniserialModule, top: Optional[Sequence] = None) -> List[List]:
    """Images prefix_j·y of a top element y (default b_0), as coordinate columns."""
    field = m.field
    if top is None:
        y = m.basis_vector(0)
    else:
        y = [field(c) for c in top]
        if len(y) != m.dimension:
            raise PointError(f"top element needs {m.dimension} coordinates")
        if not y[0]:
            raise PointError("a top element needs a nonzero coefficient at b0")
        start = m.mast.source
        if any(c and m.layer_vertex(j) != start for j, c in enumerate(y)):
            raise PointError(f"a top element must lie in e({start}) of the module")
    return [m.act(prefix(m.mast, j), y) for j in range(m.dimension)]


def layered_graph(m: UniserialModule, top: Optional[Sequence] = None) -> LayeredGraph:
    field = m.field
    mast = m.mast
    basis = top_basis(m, top)
    quiver = m.presentation.quiver
    mast_edges = tuple((j + 1, j + 2, a) for j, a in enumerate(mast.arrows))
    extra = []
    for j in range(m.dimension):
        here = mast.vertices[j]
        for a in sorted(quiver.arrows_from(here), key=lambda x: x.name):
            if j < mast.length and a.name == mast.arrows[j]:
                continue
            image = mat_vec(m.matrices[a.name], basis[j], field)
            if not any(image):
                continue
            coords = _solve_in_basis(basis, image, field)
            low = next(i for i, c in enumerate(coords) if c)
            extra.append((j + 1, low + 1, a.name))
    return LayeredGraph(tuple(mast.vertices), mast_edges, tuple(sorted(extra)))


# -- isomorphism ------------------------------------------------------------------


@dataclass(frozen=True)
class IsoEquation:
    detour_index: int
    target: int
    lhs: Polynomial
    rhs: Polynomial

    @property
    def difference(self) -> Polynomial:
        return self.lhs - self.rhs


@dataclass(frozen=True)
class IsoSystem:
    """Equations a_i(X,Y,Z) = b_i(X,Y,Z), variables ordered X_1..X_N, Y_1..Y_N, Z_1..Z_t."""

    variety: UniserialVariety
    cycles: Tuple[int, ...]
    equations: Tuple[IsoEquation, ...]

    @property
    def table(self) -> DetourTable:
        return self.variety.table

    @property
    def n(self) -> int:
        return self.table.nvars

    @property
    def t(self) -> int:
        return len(self.cycles)

    @property
    def nvars(self) -> int:
        return 2 * self.n + self.t

    def name(self, i: int) -> str:
        n = self.n
        if i < n:
            return f"X[{i + 1}]"
        if i < 2 * n:
            return f"Y[{i - n + 1}]"
        return f"Z[{i - 2 * n + 1}]"

    def to_text(self) -> str:
        table = self.table
        lines = ["Z variables: " + (", ".join(
            f"Z[{j + 1}] <-> {table.prefix(c).to_text()}" for j, c in enumerate(self.cycles))
            or "none")]
        for eq in self.equations:
            d = table.detours[eq.detour_index]
            v = table.prefix(eq.target).to_text()
            lines.append(f"({d.arrow}, {table.u(d).to_text()}) at {v}:  "
                         f"{eq.lhs.to_string(self.name)} = {eq.rhs.to_string(self.name)}")
        return "\n".join(lines)


def iso_system(presentation: Presentation, mast: Path,
               variety: Optional[UniserialVariety] = None) -> IsoSystem:
    """Expand (Σ X_i v_i)(e + Σ Z_j w_j) = αu(e + Σ Z_j w_j) with Y substitutions."""
    if variety is None:
        variety = variety_generators(presentation, mast)
    table = variety.table
    field = presentation.field
    n = table.nvars
    cycles = tuple(j for j in range(1, mast.length + 1) if mast.vertices[j] == mast.source)
    total = 2 * n + len(cycles)
    one = Polynomial.constant(1, total, field)
    # z = e(1) + Σ Z_j w_j as (path, coefficient) pairs
    z = [(prefix(mast, 0), one)] + [
        (prefix(mast, c), Polynomial.variable(2 * n + j, total, field))
        for j, c in enumerate(cycles)]

    def times_z(path: Path, coeff: Polynomial) -> Dict[Path, Polynomial]:
        out: Dict[Path, Polynomial] = {}
        for w, zc in z:
            q = compose(path, w)
            if q is not None:
                out[q] = out[q] + coeff * zc if q in out else coeff * zc
        return out

    equations = []
    for di, d in enumerate(table.detours):
        lhs_terms: Dict[Path, Polynomial] = {}
        for i, t in enumerate(d.targets):
            x = Polynomial.variable(d.first_var + i, total, field)
            for q, c in times_z(prefix(mast, t), x).items():
                lhs_terms[q] = lhs_terms[q] + c if q in lhs_terms else c
        rhs_terms = times_z(table.detour_path(d), one)
        lhs = normal_form(lhs_terms, table, nvars=total, offset=n)
        rhs = normal_form(rhs_terms, table, nvars=total, offset=n)
        stray = (set(lhs.coeffs) | set(rhs.coeffs)) - set(d.targets)
        if any(lhs[j] or rhs[j] for j in stray):
            raise ModuleInvariantError(f"expansion for detour {d} left its target span")
        for t in d.targets:
            equations.append(IsoEquation(di, t, lhs[t], rhs[t]))
    for eq in equations:
        for j in range(len(cycles)):
            if eq.difference.degree_in(2 * n + j) > 1:
                raise ModuleInvariantError("isomorphism system is not linear in Z")
    return IsoSystem(variety, cycles, tuple(equations))


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    witness: Optional[Tuple[object, ...]]
    system: LinearSystem


def specialize_iso_system(sys: IsoSystem, k: Sequence, k2: Sequence) -> LinearSystem:
    field = sys.table.field
    n, t = sys.n, sys.t
    values = {i: field(c) for i, c in enumerate(k)}
    values.update({n + i: field(c) for i, c in enumerate(k2)})
    rows, rhs = [], []
    zero_mono = (0,) * sys.nvars
    for eq in sys.equations:
        f = eq.difference.specialize(values)
        row = [field.zero] * t
        const = field.zero
        for mono, c in f.terms.items():
            if mono == zero_mono:
                const = c
                continue
            zs = [j for j in range(t) if mono[2 * n + j]]
            if sum(mono) != 1 or len(zs) != 1:
                raise ModuleInvariantError(f"nonlinear term after specialization: {f}")
            row[zs[0]] = c
        rows.append(tuple(row))
        rhs.append(-const)
    return LinearSystem(tuple(rows), tuple(rhs), t, field)


def decide_iso(sys: IsoSystem, k: Sequence, k2: Sequence) -> IsoResult:
    """Isomorphism of the modules at ``k`` and ``k2``; the witness is one Z-solution."""
    for name, pt in (("first", k), ("second", k2)):
        if len(pt) != sys.n:
            raise PointError(f"{name} point has {len(pt)} coordinates, expected {sys.n}")
        if not point_on_variety(sys.variety.ideal, pt):
            raise PointError(f"{name} point is not on the variety")
    linear = specialize_iso_system(sys, k, k2)
    sol = solve_linear(linear)
    return IsoResult(sol.consistent, sol.particular if sol.consistent else None, linear)


def witness_map(m: UniserialModule, m2: UniserialModule, witness: Sequence,
                cycles: Sequence[int]) -> Matrix:
    """Matrix of the isomorphism b_0 ↦ b'_0 + Σ c_j w_j b'_0 (columns are images of b_j)."""
    field = m.field
    y = m2.basis_vector(0)
    for c, j in zip(witness, cycles):
        y[j] = y[j] + field(c)
    cols = top_basis(m2, y)
    n = m.dimension
    return _freeze([[cols[j][i] for j in range(n)] for i in range(n)])


def intertwines(m: UniserialModule, m2: UniserialModule, f: Matrix) -> bool:
    """True when ``f`` commutes with every arrow action: M'_a f = f M_a."""
    field = m.field
    for name in m.matrices:
        if mat_mul(m2.matrices[name], f, field) != mat_mul(f, m.matrices[name], field):
            return False
    return True


# -- transport between masts ---------------------------------------------------------


def _check_parallel(p: Path, q: Path):
    if p.vertices != q.vertices:
        raise QuiverError("masts must pass through the same vertex sequence")


@dataclass(frozen=True)
class Transport:
    point: Tuple[object, ...]
    basis_change: Matrix


def transport_mast(presentation: Presentation, p: Path, q: Path, point: Sequence,
                   source_variety: Optional[UniserialVariety] = None,
                   target_variety: Optional[UniserialVariety] = None) -> Optional[Transport]:
    """Coordinates on V_q of the module at ``point`` on V_p, or None outside the overlap."""
    _check_parallel(p, q)
    m = build_module(presentation, p, point, source_variety)
    field = presentation.field
    l = p.length
    cols = [m.act(prefix(q, j), m.basis_vector(0)) for j in range(l + 1)]
    if not cols[l][l]:
        return None
    if target_variety is None:
        target_variety = variety_generators(presentation, q)
    qtable = target_variety.table
    coords = [field.zero] * qtable.nvars
    for d in qtable.detours:
        image = mat_vec(m.matrices[d.arrow], cols[d.u_length], field)
        c = _solve_in_basis(cols, image, field)
        for j, cj in enumerate(c):
            if cj and j not in d.targets:
                raise ModuleInvariantError(f"detour {d.arrow} on q lands outside its targets")
        for i, t in enumerate(d.targets):
            coords[d.first_var + i] = c[t]
    if not point_on_variety(target_variety.ideal, coords):
        raise ModuleInvariantError("transported point is not on the target variety")
    change = _freeze([[cols[j][i] for j in range(l + 1)] for i in range(l + 1)])
    return Transport(tuple(coords), change)


def detour_bijection(presentation: Presentation, p: Path, q: Path
                     ) -> Dict[Tuple[str, int], Tuple[str, int]]:
    """Match detours on p with detours on q, keyed by (arrow, prefix length).

    Masts differing in several arrows are connected by changing one arrow at a
    time from the start; at each step the detour leaving along the new arrow is
    exchanged with the one leaving along the old arrow.
    """
    _check_parallel(p, q)
    tp = enumerate_detours(presentation, p)
    rho = {(d.arrow, d.u_length): (d.arrow, d.u_length) for d in tp}
    current = p
    for pos in range(p.length):
        if p.arrows[pos] == q.arrows[pos]:
            continue
        old, new = current.arrows[pos], q.arrows[pos]
        step = {}
        for key, (a, ul) in rho.items():
            if ul == pos and a == new:
                step[key] = (old, ul)
            else:
                step[key] = (a, ul)
        rho = step
        current = Path(current.vertices, current.arrows[:pos] + (new,) + current.arrows[pos + 1:])
    tq = enumerate_detours(presentation, q)
    for key, image in rho.items():
        dp, dq = tp.lookup(*key), tq.lookup(*image)
        if dq is None or dp.size != dq.size:
            raise ModuleInvariantError(f"detour {key} has no partner of equal size on q")
    if len(set(rho.values())) != len(tq):
        raise ModuleInvariantError("detour correspondence is not a bijection")
    return rho


__all__ = [
    "IsoEquation", "IsoResult", "IsoSystem", "LayeredGraph", "ModuleInvariantError",
    "PointError", "Transport", "UniserialModule", "build_module", "check_module",
    "decide_iso", "detour_bijection", "intertwines", "iso_system",
    "layered_graph", "module_violations", "specialize_iso_system", "top_basis",
    "transport_mast", "witness_map",
]
