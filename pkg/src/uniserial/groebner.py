"""Polynomial ideals: Buchberger's algorithm, membership and ideal equality."""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Sequence, Tuple

from .field import QQ, Field
from .polynomial import Monomial, Polynomial, monomial_key


@dataclass(frozen=True)
class IdealBasis:
    """An ordered list of generators sharing one polynomial ring.

    ``is_groebner`` is set only by :func:`groebner_basis`, whose output is the
    reduced, monic Groebner basis for ``order``.
    """

    polys: Tuple[Polynomial, ...]
    nvars: int
    field: Field = QQ
    order: str = "grevlex"
    is_groebner: bool = dc_field(default=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "polys", tuple(self.polys))
        monomial_key(self.order)
        for f in self.polys:
            if f.nvars != self.nvars:
                raise ValueError(f"generator {f} has {f.nvars} variables, expected {self.nvars}")
            if f.field != self.field:
                raise ValueError(f"generator {f} is over {f.field}, expected {self.field}")

    @classmethod
    def of(cls, polys: Sequence[Polynomial], nvars: int = None, field: Field = None,
           order: str = "grevlex") -> "IdealBasis":
        polys = list(polys)
        if nvars is None:
            if not polys:
                raise ValueError("nvars required for an empty generator list")
            nvars = polys[0].nvars
        if field is None:
            field = polys[0].field if polys else QQ
        return cls(tuple(polys), nvars, field, order)

    def __iter__(self):
        return iter(self.polys)

    def __len__(self):
        return len(self.polys)

    def nonzero(self) -> "IdealBasis":
        return IdealBasis(tuple(f for f in self.polys if f), self.nvars, self.field, self.order)

    def to_text(self, names=None) -> str:
        if names is None:
            return "\n".join(str(f) for f in self.polys)
        return "\n".join(f.to_string(names) for f in self.polys)


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _sub(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


class _Reducer:
    """Full reduction of polynomials modulo a fixed list of divisors."""

    def __init__(self, divisors: Sequence[Polynomial], order: str):
        self.order = order
        self.key = monomial_key(order)
        self.divisors = []
        for g in divisors:
            if g:
                lm = max(g.terms, key=self.key)
                self.divisors.append((lm, g.terms[lm], g))

    def reduce(self, f: Polynomial) -> Polynomial:
        key = self.key
        p = dict(f.terms)
        remainder = {}
        while p:
            lm = max(p, key=key)
            c = p[lm]
            for glm, glc, g in self.divisors:
                if _divides(glm, lm):
                    factor = c / glc
                    shift = _sub(lm, glm)
                    for m, a in g.terms.items():
                        mm = tuple(x + y for x, y in zip(m, shift))
                        v = p.get(mm)
                        v = -factor * a if v is None else v - factor * a
                        if v:
                            p[mm] = v
                        else:
                            p.pop(mm, None)
                    break
            else:
                remainder[lm] = c
                del p[lm]
        return Polynomial._raw(f.nvars, remainder, f.field)


def reduce(f: Polynomial, divisors: Sequence[Polynomial], order: str = "grevlex") -> Polynomial:
    """Remainder of ``f`` on full multivariate division by ``divisors``."""
    return _Reducer(divisors, order).reduce(f)


def _s_polynomial(f: Polynomial, g: Polynomial, key) -> Polynomial:
    lf = max(f.terms, key=key)
    lg = max(g.terms, key=key)
    lcm = _lcm(lf, lg)
    return (f.mul_monomial(_sub(lcm, lf), f.field.one / f.terms[lf])
            - g.mul_monomial(_sub(lcm, lg), g.field.one / g.terms[lg]))


def _buchberger(gens: List[Polynomial], order: str) -> List[Polynomial]:
    key = monomial_key(order)
    basis = [g.monic(order) for g in gens if g]
    if any(g.is_constant() for g in basis):
        return [Polynomial.constant(1, basis[0].nvars, basis[0].field)]
    lms = [max(g.terms, key=key) for g in basis]
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    while pairs:
        i, j = min(pairs, key=lambda ij: (key(_lcm(lms[ij[0]], lms[ij[1]])), ij[1], ij[0]))
        pairs.discard((i, j))
        lcm = _lcm(lms[i], lms[j])
        # product criterion
        if all(a == 0 or b == 0 for a, b in zip(lms[i], lms[j])):
            continue
        # chain criterion
        if any(k not in (i, j) and _divides(lms[k], lcm)
               and (min(i, k), max(i, k)) not in pairs
               and (min(j, k), max(j, k)) not in pairs
               for k in range(len(basis))):
            continue
        h = _Reducer(basis, order).reduce(_s_polynomial(basis[i], basis[j], key))
        if not h:
            continue
        h = h.monic(order)
        if h.is_constant():
            return [h]
        basis.append(h)
        lms.append(max(h.terms, key=key))
        n = len(basis) - 1
        pairs |= {(k, n) for k in range(n)}
    return basis


def _reduced(basis: List[Polynomial], order: str) -> List[Polynomial]:
    key = monomial_key(order)
    basis = [g.monic(order) for g in basis if g]
    # drop generators whose leading monomial is divisible by another's
    basis.sort(key=lambda g: key(max(g.terms, key=key)))
    minimal: List[Polynomial] = []
    for g in basis:
        lm = max(g.terms, key=key)
        if not any(_divides(max(h.terms, key=key), lm) for h in minimal):
            minimal.append(g)
    out = []
    for idx, g in enumerate(minimal):
        others = minimal[:idx] + minimal[idx + 1:]
        out.append(_Reducer(others, order).reduce(g).monic(order))
    out.sort(key=lambda g: key(max(g.terms, key=key)), reverse=True)
    return out


def groebner_basis(gens: IdealBasis) -> IdealBasis:
    """Reduced monic Groebner basis of the ideal generated by ``gens``."""
    if gens.is_groebner:
        return gens
    polys = _reduced(_buchberger(list(gens.polys), gens.order), gens.order)
    return IdealBasis(tuple(polys), gens.nvars, gens.field, gens.order, is_groebner=True)


def ideal_contains(gb: IdealBasis, f: Polynomial) -> bool:
    gb = groebner_basis(gb)
    return not reduce(f, gb.polys, gb.order)


def is_unit_ideal(gens: IdealBasis) -> bool:
    return any(g.is_constant() and g for g in groebner_basis(gens).polys)


def ideal_equal(a: IdealBasis, b: IdealBasis) -> bool:
    """Mutual containment of the ideals generated by ``a`` and ``b``."""
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")
    if a.field != b.field:
        raise ValueError(f"field mismatch: {a.field} vs {b.field}")
    ga = groebner_basis(a)
    gb = groebner_basis(b)
    ra = _Reducer(ga.polys, ga.order)
    rb = _Reducer(gb.polys, gb.order)
    return all(not rb.reduce(f) for f in a.polys) and all(not ra.reduce(f) for f in b.polys)


def is_groebner(gens: IdealBasis) -> bool:
    """Check the S-polynomial criterion directly on ``gens``."""
    key = monomial_key(gens.order)
    polys = [g for g in gens.polys if g]
    red = _Reducer(polys, gens.order)
    for j in range(len(polys)):
        for i in range(j):
            if red.reduce(_s_polynomial(polys[i], polys[j], key)):
                return False
    return True
