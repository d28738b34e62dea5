"""Text format for presentations KΓ/I and path literals.

Grammar (``#`` starts a comment, ``;`` separates statements)::

    field Q | GF(<prime>)
    quiver { vertex <id>+ ; arrow <name> : <id> -> <id> ; ... }
    relations { <expr> ; ... }

``<expr>`` is a signed sum of terms ``[<rational>*] a[^k] (* b[^k])*`` where
``a*b`` reads "a after b".  A bare ``e(<id>)`` denotes a vertex path.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from .field import QQ, Field, GF
from .quiver import AlgebraElement, Arrow, Path, Presentation, Quiver, QuiverError, compose


class PresentationError(ValueError):
    """Syntax or validation error, with 1-based source location when known."""

    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line is not None else ""
        super().__init__(where + message)


_TOKENS = re.compile(r"""
    (?P<ws>[ \t\r]+|\#[^\n]*)
  | (?P<nl>\n)
  | (?P<arrow>->)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<punct>[{};:*^+\-(),])
""", re.VERBOSE)


class _Tok:
    __slots__ = ("kind", "text", "line", "col")

    def __init__(self, kind, text, line, col):
        self.kind, self.text, self.line, self.col = kind, text, line, col

    def __repr__(self):
        return f"{self.kind}:{self.text}@{self.line}:{self.col}"


def _tokenize(text: str) -> List[_Tok]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKENS.match(text, pos)
        if not m:
            raise PresentationError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind != "ws":
            out.append(_Tok(kind, m.group(), line, m.start() - line_start + 1))
        pos = m.end()
    out.append(_Tok("eof", "", line, pos - line_start + 1))
    return out


class _Parser:
    def __init__(self, text: str, quiver: Optional[Quiver] = None, field: Field = QQ):
        self.toks = _tokenize(text)
        self.i = 0
        self.quiver = quiver
        self.field = field

    @property
    def tok(self) -> _Tok:
        return self.toks[self.i]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return PresentationError(message, tok.line, tok.col)

    def next(self) -> _Tok:
        t = self.tok
        self.i += 1
        return t

    def at(self, text) -> bool:
        return self.tok.text == text and self.tok.kind != "eof"

    def expect(self, text) -> _Tok:
        if not self.at(text):
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {shown!r}")
        return self.next()

    def ident(self, what="identifier") -> _Tok:
        if self.tok.kind not in ("ident", "num") or "/" in self.tok.text:
            shown = self.tok.text or "end of input"
            raise self.error(f"expected {what}, found {shown!r}")
        return self.next()

    # -- top level ------------------------------------------------------------

    def presentation(self) -> Presentation:
        field = QQ
        quiver = None
        relation_toks: List[Tuple[AlgebraElement, _Tok]] = []
        seen = set()
        while self.tok.kind != "eof":
            if self.at(";"):
                self.next()
                continue
            kw = self.ident("'field', 'quiver' or 'relations'")
            if kw.text in seen:
                raise self.error(f"duplicate {kw.text!r} section", kw)
            seen.add(kw.text)
            if kw.text == "field":
                field = self.field_spec()
                self.field = field
            elif kw.text == "quiver":
                if "relations" in seen:
                    raise self.error("'quiver' must precede 'relations'", kw)
                quiver = self.quiver_block()
                self.quiver = quiver
            elif kw.text == "relations":
                if quiver is None:
                    raise self.error("'relations' before 'quiver'", kw)
                relation_toks = self.relations_block()
            else:
                raise self.error(f"unknown section {kw.text!r}", kw)
        if quiver is None:
            raise self.error("missing 'quiver' section")
        rels = []
        notes = []
        for rel, tok in relation_toks:
            if not rel:
                continue
            parts = rel.components()
            if len(parts) > 1:
                notes.append(f"line {tok.line}: relation split into {len(parts)} uniform components")
            for key in sorted(parts):
                part = parts[key]
                if part.min_length() < 2:
                    raise self.error(f"relation contains a path of length < 2 ({part}); "
                                     f"relations must lie in J^2", tok)
                rels.append(part)
        return Presentation(quiver, tuple(rels), field, tuple(notes))

    def field_spec(self) -> Field:
        t = self.ident("field name")
        if t.text in ("Q", "QQ"):
            return QQ
        if t.text == "GF":
            self.expect("(")
            n = self.next()
            if n.kind != "num" or "/" in n.text:
                raise self.error("expected a prime modulus", n)
            self.expect(")")
            try:
                return GF(int(n.text))
            except ValueError as exc:
                raise self.error(str(exc), n) from None
        raise self.error(f"unknown field {t.text!r}; expected Q or GF(<prime>)", t)

    def quiver_block(self) -> Quiver:
        self.expect("{")
        vertices: List[str] = []
        arrows: List[Arrow] = []
        while not self.at("}"):
            if self.at(";"):
                self.next()
                continue
            kw = self.ident("'vertex' or 'arrow'")
            if kw.text == "vertex":
                count = 0
                while self.tok.kind in ("ident", "num") and "/" not in self.tok.text:
                    v = self.next()
                    if v.text in vertices:
                        raise self.error(f"duplicate vertex {v.text!r}", v)
                    vertices.append(v.text)
                    count += 1
                if not count:
                    raise self.error("expected at least one vertex id")
            elif kw.text == "arrow":
                name = self.ident("arrow name")
                if name.kind != "ident":
                    raise self.error("arrow names must start with a letter", name)
                if any(a.name == name.text for a in arrows):
                    raise self.error(f"duplicate arrow name {name.text!r}", name)
                self.expect(":")
                src = self.ident("source vertex")
                self.expect("->")
                tgt = self.ident("target vertex")
                for v in (src, tgt):
                    if v.text not in vertices:
                        raise self.error(f"undeclared vertex {v.text!r}", v)
                arrows.append(Arrow(name.text, src.text, tgt.text))
            else:
                raise self.error(f"expected 'vertex' or 'arrow', found {kw.text!r}", kw)
            if not self.at("}"):
                self.expect(";")
        self.expect("}")
        return Quiver(vertices, arrows)

    def relations_block(self):
        self.expect("{")
        rels = []
        while not self.at("}"):
            if self.at(";"):
                self.next()
                continue
            start = self.tok
            rels.append((self.expr(), start))
            if not self.at("}"):
                self.expect(";")
        self.expect("}")
        return rels

    # -- expressions ----------------------------------------------------------

    def expr(self) -> AlgebraElement:
        sign = 1
        if self.at("+") or self.at("-"):
            sign = -1 if self.next().text == "-" else 1
        total = self.term().scale(sign)
        while self.at("+") or self.at("-"):
            sign = -1 if self.next().text == "-" else 1
            total = total + self.term().scale(sign)
        return total

    def term(self) -> AlgebraElement:
        coeff = Fraction(1)
        if self.tok.kind == "num":
            t = self.next()
            coeff = Fraction(t.text)
            if not self.at("*"):
                raise self.error("a coefficient must be followed by '*' and a path", t)
            self.next()
        start = self.tok
        path = self.path_expr()
        try:
            c = self.field(coeff)
        except ZeroDivisionError as exc:
            raise self.error(str(exc), start) from None
        return AlgebraElement({path: c}, self.field)

    def path_expr(self) -> Path:
        factors = [self.factor()]
        while self.at("*"):
            self.next()
            factors.append(self.factor())
        # a*b is "a after b": the rightmost factor is traversed first
        result = factors[-1]
        for later in reversed(factors[:-1]):
            tok = self.tok
            composed = compose(later, result)
            if composed is None:
                raise self.error(f"path {later} cannot follow {result}: not composable", tok)
            result = composed
        return result

    def factor(self) -> Path:
        t = self.ident("arrow name or e(<vertex>)")
        if t.text == "e" and self.at("("):
            self.next()
            v = self.ident("vertex id")
            self.expect(")")
            try:
                return self.quiver.vertex_path(v.text)
            except QuiverError as exc:
                raise self.error(str(exc), v) from None
        if t.text not in self.quiver.arrows:
            raise self.error(f"unknown arrow {t.text!r}", t)
        power = 1
        if self.at("^"):
            self.next()
            n = self.next()
            if n.kind != "num" or "/" in n.text or int(n.text) < 1:
                raise self.error("exponent must be a positive integer", n)
            power = int(n.text)
        a = self.quiver.arrows[t.text]
        if power > 1 and a.source != a.target:
            raise self.error(f"{t.text}^{power}: arrow is not a loop, not composable", t)
        try:
            return self.quiver.path([t.text] * power)
        except QuiverError as exc:
            raise self.error(str(exc), t) from None


def parse_presentation(text: str) -> Presentation:
    return _Parser(text).presentation()


def load_presentation(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse_presentation(fh.read())


def parse_path(text: str, quiver: Quiver) -> Path:
    """Parse a path literal such as ``beta*alpha^2`` or ``e(1)``."""
    p = _Parser(text, quiver)
    path = p.path_expr()
    if p.tok.kind != "eof":
        raise p.error(f"trailing input {p.tok.text!r}")
    return path


def parse_element(text: str, quiver: Quiver, field: Field = QQ) -> AlgebraElement:
    p = _Parser(text, quiver, field)
    elem = p.expr()
    if p.tok.kind != "eof":
        raise p.error(f"trailing input {p.tok.text!r}")
    return elem


def format_presentation(pres: Presentation) -> str:
    q = pres.quiver
    field = "Q" if pres.field.characteristic == 0 else f"GF({pres.field.characteristic})"
    lines = [f"field {field}", "quiver {", "  vertex " + " ".join(q.vertices) + " ;"]
    for a in q.arrows.values():
        lines.append(f"  arrow {a.name} : {a.source} -> {a.target} ;")
    lines.append("}")
    lines.append("relations {")
    for r in pres.relations:
        lines.append(f"  {r.to_text()} ;")
    lines.append("}")
    return "\n".join(lines) + "\n"
