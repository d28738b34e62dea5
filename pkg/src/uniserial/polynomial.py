"""Sparse multivariate polynomials with exact coefficients.

A polynomial is a mapping from exponent tuples to nonzero coefficients.  The
text syntax uses 1-based variables ``X[i]``::

    3/2*X[4]^2*X[7] - X[1] + 1
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Callable, Dict, Iterable, Mapping, Optional, Sequence, Tuple

from .field import QQ, Field

Monomial = Tuple[int, ...]


def grevlex_key(m: Monomial):
    return (sum(m), tuple(-e for e in reversed(m)))


def lex_key(m: Monomial):
    return m


ORDERS = {"grevlex": grevlex_key, "lex": lex_key}


def monomial_key(order: str):
    try:
        return ORDERS[order]
    except KeyError:
        raise ValueError(f"unknown monomial order {order!r}") from None


def default_name(i: int) -> str:
    return f"X[{i + 1}]"


class Polynomial:
    """Immutable sparse polynomial in ``nvars`` variables over ``field``."""

    __slots__ = ("nvars", "field", "terms", "_hash")

    def __init__(self, nvars: int, terms: Optional[Mapping[Monomial, object]] = None,
                 field: Field = QQ):
        self.nvars = nvars
        self.field = field
        clean: Dict[Monomial, object] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != nvars:
                    raise ValueError(f"monomial {m} does not have {nvars} exponents")
                c = field(c)
                if c:
                    clean[tuple(m)] = c
        self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def _raw(cls, nvars, terms, field):
        p = cls.__new__(cls)
        p.nvars = nvars
        p.field = field
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, nvars: int, field: Field = QQ) -> "Polynomial":
        return cls._raw(nvars, {}, field)

    @classmethod
    def constant(cls, c, nvars: int, field: Field = QQ) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: c}, field)

    @classmethod
    def variable(cls, i: int, nvars: int, field: Field = QQ) -> "Polynomial":
        """The variable with 0-based index ``i``."""
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range for {nvars} variables")
        m = [0] * nvars
        m[i] = 1
        return cls._raw(nvars, {tuple(m): field.one}, field)

    def _like(self, terms):
        return Polynomial._raw(self.nvars, terms, self.field)

    def _check(self, other):
        if other.nvars != self.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")
        if other.field != self.field:
            raise ValueError(f"field mismatch: {self.field} vs {other.field}")

    def _lift(self, other):
        if isinstance(other, Polynomial):
            self._check(other)
            return other
        try:
            return Polynomial.constant(other, self.nvars, self.field)
        except (TypeError, ValueError):
            return NotImplemented

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m)
            if s is None:
                out[m] = c
            else:
                s = s + c
                if s:
                    out[m] = s
                else:
                    del out[m]
        return self._like(out)

    __radd__ = __add__

    def __neg__(self):
        return self._like({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def __mul__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return other
        out: Dict[Monomial, object] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out.get(m)
                c = c1 * c2
                if s is None:
                    out[m] = c
                else:
                    s = s + c
                    if s:
                        out[m] = s
                    else:
                        del out[m]
        return self._like(out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        c = self.field(c)
        if not c:
            return Polynomial.zero(self.nvars, self.field)
        return self._like({m: c * a for m, a in self.terms.items()})

    def __truediv__(self, c):
        if isinstance(c, Polynomial):
            if not c.is_constant() or c.is_zero():
                raise TypeError("only division by nonzero constants is supported")
            c = c.constant_term()
        return self.scale(self.field.one / self.field(c))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1, self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def mul_monomial(self, m: Monomial, c=1) -> "Polynomial":
        c = self.field(c)
        return self._like({tuple(a + b for a, b in zip(k, m)): c * v
                           for k, v in self.terms.items()})

    # -- comparison ---------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return (self.nvars == other.nvars and self.field == other.field
                    and self.terms == other.terms)
        try:
            other = Polynomial.constant(other, self.nvars, self.field)
        except (TypeError, ValueError):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.field, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def constant_term(self):
        return self.terms.get((0,) * self.nvars, self.field.zero)

    def total_degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, i: int) -> int:
        return max((m[i] for m in self.terms), default=-1)

    def variables(self):
        """Sorted 0-based indices of variables that occur."""
        return sorted({i for m in self.terms for i, e in enumerate(m) if e})

    def leading_monomial(self, order: str = "grevlex") -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=monomial_key(order))

    def leading_coefficient(self, order: str = "grevlex"):
        return self.terms[self.leading_monomial(order)]

    def monic(self, order: str = "grevlex") -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.field.one / self.leading_coefficient(order))

    # -- evaluation and substitution ---------------------------------------

    def evaluate(self, point: Sequence):
        if len(point) != self.nvars:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.nvars}")
        point = [self.field(v) for v in point]
        total = self.field.zero
        for m, c in self.terms.items():
            term = c
            for v, e in zip(point, m):
                if e:
                    term = term * v**e
            total = total + term
        return total

    def substitute(self, images: Mapping[int, "Polynomial"], nvars: Optional[int] = None
                   ) -> "Polynomial":
        """Replace variable ``i`` by ``images[i]``; others map to themselves.

        The result lives in ``nvars`` variables (default: unchanged).  Variables
        not listed in ``images`` are only allowed to survive when the ambient
        variable count is unchanged.
        """
        target = self.nvars if nvars is None else nvars
        out = Polynomial.zero(target, self.field)
        cache: Dict[Tuple[int, int], Polynomial] = {}
        for m, c in self.terms.items():
            term = Polynomial.constant(c, target, self.field)
            for i, e in enumerate(m):
                if not e:
                    continue
                key = (i, e)
                if key not in cache:
                    if i in images:
                        img = images[i]
                        if img.nvars != target:
                            raise ValueError("substitution image has wrong variable count")
                    elif target == self.nvars:
                        img = Polynomial.variable(i, target, self.field)
                    else:
                        raise ValueError(f"no image given for variable {default_name(i)}")
                    cache[key] = img**e
                term = term * cache[key]
            out = out + term
        return out

    def specialize(self, values: Mapping[int, object]) -> "Polynomial":
        """Fix the listed variables to field values; the ring is unchanged."""
        field = self.field
        vals = {i: field(v) for i, v in values.items()}
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            new = list(m)
            for i, v in vals.items():
                e = m[i]
                if e:
                    c = c * v**e
                    new[i] = 0
            if not c:
                continue
            new = tuple(new)
            s = out.get(new)
            out[new] = c if s is None else s + c
        return Polynomial(self.nvars, out, field)

    def rename(self, mapping: Mapping[int, int], nvars: int) -> "Polynomial":
        """Move variable ``i`` to index ``mapping[i]`` in a ring of ``nvars`` variables."""
        out: Dict[Monomial, object] = {}
        for m, c in self.terms.items():
            new = [0] * nvars
            for i, e in enumerate(m):
                if e:
                    new[mapping[i]] += e
            new = tuple(new)
            s = out.get(new)
            out[new] = c if s is None else s + c
        return Polynomial(nvars, out, self.field)

    # -- text ---------------------------------------------------------------

    def to_string(self, names: Callable[[int], str] = default_name, order: str = "grevlex"
                  ) -> str:
        if not self.terms:
            return "0"
        key = monomial_key(order)
        pieces = []
        for m in sorted(self.terms, key=key, reverse=True):
            c = self.terms[m]
            negative = isinstance(c, Fraction) and c < 0
            mag = -c if negative else c
            factors = []
            for i, e in enumerate(m):
                if e == 1:
                    factors.append(names(i))
                elif e > 1:
                    factors.append(f"{names(i)}^{e}")
            if not factors:
                body = str(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(mag)] + factors)
            pieces.append(("-" if negative else "+", body))
        sign, body = pieces[0]
        text = ("-" if sign == "-" else "") + body
        for sign, body in pieces[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.to_string()

    def __repr__(self):
        return f"Polynomial({self.to_string()!r}, nvars={self.nvars}, field={self.field})"


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<var>[A-Za-z_]\w*\[\d+\])"
                    r"|(?P<op>[-+*^()]))")


class PolynomialSyntaxError(ValueError):
    pass


def _tokenize(text: str):
    pos = 0
    tokens = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos:pos + 1]!r} at column {pos + 1}")
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


def _var_index(token: str) -> Tuple[str, int]:
    name, idx = token[:-1].split("[")
    return name, int(idx)


def parse_polynomial(text: str, nvars: Optional[int] = None, field: Field = QQ,
                     variables: Optional[Mapping[str, int]] = None) -> Polynomial:
    """Parse polynomial text.

    ``variables`` maps a variable family name (``"X"``) to the 0-based offset of
    its first member; by default only the family ``X`` is accepted.  When
    ``nvars`` is omitted it is inferred from the largest index seen.
    """
    families = dict(variables) if variables else {"X": 0}
    tokens = _tokenize(text)
    if not tokens:
        raise PolynomialSyntaxError("empty polynomial")
    used = []
    for kind, value, col in tokens:
        if kind == "var":
            name, idx = _var_index(value)
            if name not in families:
                raise PolynomialSyntaxError(f"unknown variable family {name!r} at column {col + 1}")
            if idx < 1:
                raise PolynomialSyntaxError(f"variable indices are 1-based (column {col + 1})")
            used.append(families[name] + idx)
    n = nvars if nvars is not None else max(used, default=0)
    if used and max(used) > n:
        raise PolynomialSyntaxError(f"variable index {max(used)} exceeds {n} variables")

    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, len(text))

    def take(expected=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (expected is not None and tok[1] != expected):
            want = expected or "a token"
            raise PolynomialSyntaxError(f"expected {want} at column {tok[2] + 1}")
        pos += 1
        return tok

    def expr():
        kind, value, _ = peek()
        negate = False
        if kind == "op" and value in "+-":
            take()
            negate = value == "-"
        result = term()
        if negate:
            result = -result
        while peek()[0] == "op" and peek()[1] in "+-":
            _, op, _ = take()
            rhs = term()
            result = result + rhs if op == "+" else result - rhs
        return result

    def term():
        result = power()
        while peek()[0] == "op" and peek()[1] == "*":
            take()
            result = result * power()
        return result

    def power():
        base = atom()
        if peek()[0] == "op" and peek()[1] == "^":
            take()
            kind, value, col = take()
            if kind != "num" or "/" in value:
                raise PolynomialSyntaxError(f"exponent must be a nonnegative integer (column {col + 1})")
            base = base ** int(value)
        return base

    def atom():
        kind, value, col = take()
        if kind == "num":
            return Polynomial.constant(Fraction(value), n, field)
        if kind == "var":
            name, idx = _var_index(value)
            return Polynomial.variable(families[name] + idx - 1, n, field)
        if value == "(":
            inner = expr()
            take(")")
            return inner
        if value == "-":
            return -atom()
        raise PolynomialSyntaxError(f"unexpected {value!r} at column {col + 1}")

    result = expr()
    if pos != len(tokens):
        raise PolynomialSyntaxError(f"trailing input at column {tokens[pos][2] + 1}")
    return result


def parse_polynomials(lines: Iterable[str], nvars: Optional[int] = None, field: Field = QQ):
    """Parse one polynomial per non-blank line; ``#`` starts a comment."""
    texts = []
    for line in lines:
        line = line.split("#", 1)[0].strip()
        if line:
            texts.append(line)
    if nvars is None:
        nvars = max((parse_polynomial(t, field=field).nvars for t in texts), default=0)
    return [parse_polynomial(t, nvars, field) for t in texts]
