"""Exact coefficient fields: the rationals and prime fields GF(q).

Elements of ``QQ`` are :class:`fractions.Fraction`; elements of ``GF(q)``
are :class:`Mod` residues.  Both support the usual arithmetic operators, so
polynomial and matrix code is written once against either.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from functools import lru_cache


class Mod:
    """Residue class modulo a prime, stored canonically in ``[0, q)``."""

    __slots__ = ("value", "q")

    def __init__(self, value: int, q: int):
        self.value = value % q
        self.q = q

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.q != self.q:
                raise ValueError(f"mixing GF({self.q}) and GF({other.q})")
            return other
        if isinstance(other, int):
            return Mod(other, self.q)
        if isinstance(other, Fraction):
            return Mod(other.numerator, self.q) / Mod(other.denominator, self.q)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value + other.value, self.q)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value - other.value, self.q)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(other.value - self.value, self.q)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Mod(self.value * other.value, self.q)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if other.value == 0:
            raise ZeroDivisionError(f"division by zero in GF({self.q})")
        return Mod(self.value * pow(other.value, -1, self.q), self.q)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other / self

    def __neg__(self):
        return Mod(-self.value, self.q)

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return Mod(1, self.q) / Mod(pow(self.value, -n, self.q), self.q)
        return Mod(pow(self.value, n, self.q), self.q)

    def __eq__(self, other):
        if isinstance(other, Mod):
            return self.q == other.q and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.q
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.q))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"Mod({self.value}, {self.q})"

    def __str__(self):
        return str(self.value)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


class Field:
    """Descriptor for a coefficient field.

    ``characteristic`` is 0 for the rationals and ``q`` for ``GF(q)``.
    """

    def __init__(self, characteristic: int = 0):
        if characteristic and not _is_prime(characteristic):
            raise ValueError(f"GF({characteristic}): modulus must be prime")
        self.characteristic = characteristic

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, value):
        """Coerce an int, Fraction, Mod or numeric string into the field."""
        if isinstance(value, str):
            value = Fraction(value.strip())
        q = self.characteristic
        if q == 0:
            if isinstance(value, Mod):
                raise TypeError("cannot coerce a GF element into Q")
            return Fraction(value)
        if isinstance(value, Mod):
            if value.q != q:
                raise ValueError(f"GF({value.q}) element given for GF({q})")
            return value
        value = Fraction(value)
        if value.denominator % q == 0:
            raise ZeroDivisionError(f"{value} has no image in GF({q})")
        return Mod(value.numerator, q) / Mod(value.denominator, q)

    def elements(self):
        """All field elements, in order 0, 1, ..., q-1 (finite fields only)."""
        if not self.is_finite:
            raise ValueError("Q is infinite")
        return [Mod(i, self.characteristic) for i in range(self.characteristic)]

    def points(self, n: int):
        """Iterate over every point of affine n-space over a finite field."""
        return itertools.product(self.elements(), repeat=n)

    def __eq__(self, other):
        return isinstance(other, Field) and other.characteristic == self.characteristic

    def __hash__(self):
        return hash(("Field", self.characteristic))

    def __repr__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    __str__ = __repr__


QQ = Field(0)


@lru_cache(maxsize=None)
def GF(q: int) -> Field:
    return Field(q)


def parse_field(text: str) -> Field:
    """Parse ``Q``, ``QQ`` or ``GF(<prime>)``."""
    t = text.strip().replace(" ", "")
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("GF(") and t.endswith(")") and t[3:-1].isdigit():
        return GF(int(t[3:-1]))
    raise ValueError(f"unknown field {text!r}; expected Q or GF(<prime>)")


def format_scalar(c) -> str:
    return str(c)
