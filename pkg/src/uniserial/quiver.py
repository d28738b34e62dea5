"""Quivers, paths, path-algebra elements and presentations KΓ/I.

Paths compose right to left: ``later * earlier`` means "later after earlier".
A :class:`Path` stores its arrows in traversal order, earliest first, so the
prefix of length ``n`` (a right subpath in composition notation) is
``arrows[:n]``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

from .field import QQ, Field


class QuiverError(ValueError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    """Arrow sequence in traversal order plus the vertices it visits."""

    vertices: Tuple[str, ...]
    arrows: Tuple[str, ...] = ()

    def __post_init__(self):
        if len(self.vertices) != len(self.arrows) + 1:
            raise QuiverError("a path of length n visits n + 1 vertices")

    @property
    def source(self) -> str:
        return self.vertices[0]

    @property
    def target(self) -> str:
        return self.vertices[-1]

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self):
        return len(self.arrows)

    def sort_key(self):
        return (len(self.arrows), self.arrows, self.vertices)

    def to_text(self) -> str:
        if not self.arrows:
            return f"e({self.source})"
        parts = []
        for name in reversed(self.arrows):
            if parts and parts[-1][0] == name:
                parts[-1][1] += 1
            else:
                parts.append([name, 1])
        return "*".join(n if k == 1 else f"{n}^{k}" for n, k in parts)

    def __str__(self):
        return self.to_text()


class Quiver:
    """Finite directed multigraph; loops and parallel arrows allowed."""

    def __init__(self, vertices: Iterable, arrows: Iterable):
        self.vertices: Tuple[str, ...] = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverError("duplicate vertex")
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.arrows: Dict[str, Arrow] = {}
        for a in arrows:
            if not isinstance(a, Arrow):
                a = Arrow(str(a[0]), str(a[1]), str(a[2]))
            if a.name in self.arrows:
                raise QuiverError(f"duplicate arrow name {a.name!r}")
            for v in (a.source, a.target):
                if v not in self.index:
                    raise QuiverError(f"arrow {a.name!r} uses undeclared vertex {v!r}")
            self.arrows[a.name] = a

    def __eq__(self, other):
        return (isinstance(other, Quiver) and self.vertices == other.vertices
                and self.arrows == other.arrows)

    def __hash__(self):
        return hash((self.vertices, tuple(self.arrows.values())))

    def __repr__(self):
        return f"Quiver({list(self.vertices)}, {len(self.arrows)} arrows)"

    def arrow(self, name: str) -> Arrow:
        try:
            return self.arrows[name]
        except KeyError:
            raise QuiverError(f"unknown arrow {name!r}") from None

    def arrows_from(self, vertex: str) -> List[Arrow]:
        return [a for a in self.arrows.values() if a.source == vertex]

    def arrows_between(self, source: str, target: str) -> List[Arrow]:
        return [a for a in self.arrows.values() if a.source == source and a.target == target]

    def vertex_path(self, v) -> Path:
        v = str(v)
        if v not in self.index:
            raise QuiverError(f"unknown vertex {v!r}")
        return Path((v,), ())

    def path(self, arrows: Sequence[str], source: Optional[str] = None) -> Path:
        """Build a path from arrow names in traversal order (earliest first)."""
        arrows = tuple(arrows)
        if not arrows:
            if source is None:
                raise QuiverError("a vertex path needs its vertex")
            return self.vertex_path(source)
        first = self.arrow(arrows[0])
        if source is not None and str(source) != first.source:
            raise QuiverError(f"path does not start at vertex {source!r}")
        seq = [first.source]
        for name in arrows:
            a = self.arrow(name)
            if a.source != seq[-1]:
                raise QuiverError(f"arrow {name!r} starts at {a.source!r}, not {seq[-1]!r}: "
                                  f"not composable")
            seq.append(a.target)
        return Path(tuple(seq), arrows)

    def paths_from(self, vertex: str, max_length: int) -> Iterator[Path]:
        """All paths starting at ``vertex`` of length <= ``max_length``, shortest first."""
        layer = [self.vertex_path(vertex)]
        for _ in range(max_length + 1):
            yield from layer
            layer = [Path(p.vertices + (a.target,), p.arrows + (a.name,))
                     for p in layer for a in self.arrows_from(p.target)]
            if not layer:
                return

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows.values():
            indeg[a.target] += 1
        stack = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while stack:
            v = stack.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    stack.append(a.target)
        return seen == len(self.vertices)

    def has_double_arrows(self) -> bool:
        pairs = [(a.source, a.target) for a in self.arrows.values()]
        return len(pairs) != len(set(pairs))

    def path_algebra_dimension(self) -> int:
        """Number of paths (vertex paths included); the quiver must be acyclic."""
        if not self.is_acyclic():
            raise QuiverError("path algebra of a cyclic quiver is infinite dimensional")
        n = len(self.arrows) + 1
        return sum(1 for v in self.vertices for _ in self.paths_from(v, n))


def compose(later: Path, earlier: Path) -> Optional[Path]:
    """``later`` after ``earlier``, or None when the endpoints do not match."""
    if later.source != earlier.target:
        return None
    return Path(earlier.vertices + later.vertices[1:], earlier.arrows + later.arrows)


def prefix(p: Path, n: int) -> Path:
    """Initial segment of ``p`` of length ``n`` (from the start vertex)."""
    if not 0 <= n <= p.length:
        raise ValueError(f"prefix length {n} out of range 0..{p.length}")
    return Path(p.vertices[:n + 1], p.arrows[:n])


class AlgebraElement:
    """Finite K-linear combination of paths."""

    __slots__ = ("terms", "field")

    def __init__(self, terms: Optional[Mapping[Path, object]] = None, field: Field = QQ):
        self.field = field
        clean = {}
        for p, c in (terms or {}).items():
            c = field(c)
            if c:
                clean[p] = clean.get(p, field.zero) + c
                if not clean[p]:
                    del clean[p]
        self.terms: Dict[Path, object] = clean

    @classmethod
    def of_path(cls, p: Path, field: Field = QQ) -> "AlgebraElement":
        return cls({p: 1}, field)

    def __add__(self, other: "AlgebraElement"):
        out = dict(self.terms)
        for p, c in other.terms.items():
            out[p] = out.get(p, self.field.zero) + c
        return AlgebraElement(out, self.field)

    def __neg__(self):
        return AlgebraElement({p: -c for p, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "AlgebraElement":
        c = self.field(c)
        return AlgebraElement({p: c * a for p, a in self.terms.items()}, self.field)

    def __mul__(self, other):
        """Product in KΓ: ``self`` after ``other``."""
        if isinstance(other, Path):
            other = AlgebraElement.of_path(other, self.field)
        if not isinstance(other, AlgebraElement):
            return self.scale(other)
        out: Dict[Path, object] = {}
        for p, c in self.terms.items():
            for q, d in other.terms.items():
                r = compose(p, q)
                if r is not None:
                    out[r] = out.get(r, self.field.zero) + c * d
        return AlgebraElement(out, self.field)

    def __rmul__(self, other):
        if isinstance(other, Path):
            return AlgebraElement.of_path(other, self.field) * self
        return self.scale(other)

    def __eq__(self, other):
        return (isinstance(other, AlgebraElement) and self.field == other.field
                and self.terms == other.terms)

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def paths(self) -> List[Path]:
        return sorted(self.terms, key=Path.sort_key)

    def components(self) -> Dict[Tuple[str, str], "AlgebraElement"]:
        """Split into uniform pieces e_j·z·e_i keyed by (source, target)."""
        parts: Dict[Tuple[str, str], Dict[Path, object]] = {}
        for p, c in self.terms.items():
            parts.setdefault((p.source, p.target), {})[p] = c
        return {k: AlgebraElement(v, self.field) for k, v in parts.items()}

    def is_uniform(self) -> bool:
        return len({(p.source, p.target) for p in self.terms}) <= 1

    def min_length(self) -> int:
        return min((p.length for p in self.terms), default=0)

    def max_length(self) -> int:
        return max((p.length for p in self.terms), default=0)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        from fractions import Fraction
        out = ""
        for i, p in enumerate(sorted(self.terms, key=lambda q: (-q.length, q.to_text()))):
            c = self.terms[p]
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            body = p.to_text() if mag == 1 else f"{mag}*{p.to_text()}"
            if i == 0:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"AlgebraElement({self.to_text()!r})"


@dataclass(frozen=True)
class Presentation:
    """Λ = KΓ/I given by a quiver and uniform, admissible relations."""

    quiver: Quiver
    relations: Tuple[AlgebraElement, ...]
    field: Field = QQ
    notes: Tuple[str, ...] = dc_field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "relations", tuple(self.relations))
        for r in self.relations:
            if r.field != self.field:
                raise QuiverError(f"relation {r} is over {r.field}, presentation over {self.field}")
            if not r:
                raise QuiverError("zero relation")
            if not r.is_uniform():
                raise QuiverError(f"relation {r} is not uniform")
            if r.min_length() < 2:
                raise QuiverError(f"relation {r} contains a path of length < 2 (not admissible)")

    def path(self, arrows: Sequence[str], source=None) -> Path:
        return self.quiver.path(arrows, source)

    @classmethod
    def build(cls, quiver: Quiver, relations: Iterable[AlgebraElement], field: Field = QQ
              ) -> "Presentation":
        """Split non-uniform relations into uniform components, then validate."""
        rels = []
        notes = []
        for r in relations:
            if not r:
                continue
            parts = r.components()
            if len(parts) > 1:
                notes.append(f"relation {r} split into {len(parts)} uniform components")
            for key in sorted(parts):
                rels.append(parts[key])
        return cls(quiver, tuple(rels), field, tuple(notes))
