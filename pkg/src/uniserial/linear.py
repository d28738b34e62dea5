"""Exact linear algebra: Gaussian elimination over QQ or GF(q)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .field import QQ, Field


@dataclass(frozen=True)
class LinearSystem:
    """``matrix @ Z = rhs`` with ``nvars`` unknowns."""

    matrix: Tuple[Tuple[object, ...], ...]
    rhs: Tuple[object, ...]
    nvars: int
    field: Field = QQ

    def __post_init__(self):
        matrix = tuple(tuple(self.field(c) for c in row) for row in self.matrix)
        rhs = tuple(self.field(c) for c in self.rhs)
        if len(matrix) != len(rhs):
            raise ValueError(f"{len(matrix)} rows but {len(rhs)} right-hand sides")
        for i, row in enumerate(matrix):
            if len(row) != self.nvars:
                raise ValueError(f"row {i} has {len(row)} entries, expected {self.nvars}")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "rhs", rhs)


@dataclass(frozen=True)
class LinearSolution:
    consistent: bool
    particular: Optional[Tuple[object, ...]]
    nullspace: Tuple[Tuple[object, ...], ...]


def rref(rows: Sequence[Sequence], ncols: int, field: Field):
    """Reduced row echelon form; returns (rows, pivot columns)."""
    m = [[field(c) for c in row] for row in rows]
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        inv = field.one / m[r][c]
        m[r] = [inv * x for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def solve_linear(system: LinearSystem) -> LinearSolution:
    """Decide consistency; return one solution (free variables 0) and a kernel basis."""
    field = system.field
    n = system.nvars
    aug = [list(row) + [b] for row, b in zip(system.matrix, system.rhs)]
    m, pivots = rref(aug, n + 1, field)
    if n in pivots:
        return LinearSolution(False, None, _kernel(m, pivots, n, field))
    x = [field.zero] * n
    for row, c in zip(m, pivots):
        x[c] = row[n]
    return LinearSolution(True, tuple(x), _kernel(m, pivots, n, field))


def _kernel(m, pivots, n, field):
    pivots = [c for c in pivots if c < n]
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for f in free:
        v = [field.zero] * n
        v[f] = field.one
        for row, c in zip(m, pivots):
            v[c] = -row[f]
        basis.append(tuple(v))
    return tuple(basis)


def mat_mul(a, b, field: Field):
    """Product of two matrices given as lists of rows."""
    inner = len(b)
    cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            s = field.zero
            for k in range(inner):
                if row[k] and b[k][j]:
                    s = s + row[k] * b[k][j]
            new.append(s)
        out.append(new)
    return out


def mat_vec(a, v, field: Field):
    out = []
    for row in a:
        s = field.zero
        for x, y in zip(row, v):
            if x and y:
                s = s + x * y
        out.append(s)
    return out


def identity(n: int, field: Field):
    return [[field.one if i == j else field.zero for j in range(n)] for i in range(n)]


def is_zero_matrix(a) -> bool:
    return all(not x for row in a for x in row)
