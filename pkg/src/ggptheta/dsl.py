"""Parser for the parameter expression language.

    rep  := term ("+" term)*  |  "0"
    term := [int "*"] atom ("*" atom)*
    atom := "1" | "chi(" int ")" | "t(" rational ")" | "sp(" int ")" | "op(" ["~"] ident ")"

``op(~P)`` is the contragredient of the opaque character ``op(P)``.
Error offsets are byte offsets into the UTF-8 encoded input.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ggptheta.errors import DSLSyntaxError
from ggptheta.localfield import PAdicField, square_class
from ggptheta.wdalg import TwistedChar, WDIrred, WDRep

_INT = re.compile(rb"[+-]?\d+")
_RATIONAL = re.compile(rb"[+-]?\d+(?:/\d+)?")
_IDENT = re.compile(rb"[A-Za-z_][A-Za-z0-9_]*")
_WS = re.compile(rb"\s*")


class _Parser:
    def __init__(self, text: str, p: int):
        self.src = text.encode("utf-8")
        self.pos = 0
        self.p = p

    def error(self, msg: str, at: int | None = None):
        return DSLSyntaxError(msg, self.pos if at is None else at)

    def skip(self) -> None:
        self.pos = _WS.match(self.src, self.pos).end()

    def peek(self, lit: bytes) -> bool:
        self.skip()
        return self.src.startswith(lit, self.pos)

    def expect(self, lit: bytes) -> None:
        if not self.peek(lit):
            raise self.error(f"expected {lit.decode()!r}")
        self.pos += len(lit)

    def match(self, pattern: re.Pattern) -> bytes | None:
        self.skip()
        m = pattern.match(self.src, self.pos)
        if not m:
            return None
        self.pos = m.end()
        return m.group()

    def parse(self) -> WDRep:
        self.skip()
        start = self.pos
        if self.match(re.compile(rb"0(?![\d/])")) is not None:
            self.skip()
            if self.pos == len(self.src):
                return WDRep.zero(self.p)
            self.pos = start
        items = [self.term()]
        while self.peek(b"+"):
            self.pos += 1
            items.append(self.term())
        self.skip()
        if self.pos != len(self.src):
            raise self.error("unexpected trailing input")
        return WDRep(self.p, tuple(items))

    def term(self) -> tuple[WDIrred, int]:
        self.skip()
        start = self.pos
        mult = 1
        num = self.match(_INT)
        if num is not None:
            if self.peek(b"*"):
                self.pos += 1
                mult = int(num)
                if mult < 1:
                    raise self.error("multiplicity must be at least 1", start)
            elif int(num) == 1 and num.lstrip(b"+") == b"1":
                return self._finish_term(start, mult, seen_one=True)
            else:
                raise self.error(f"bare integer {num.decode()} is not an atom", start)
        return self._finish_term(start, mult, seen_one=False)

    def _finish_term(self, start: int, mult: int, seen_one: bool) -> tuple[WDIrred, int]:
        d = square_class(self.p, 1)
        t = Fraction(0)
        n = 1
        opaque: list[tuple[str, int]] = []
        seen: set[str] = set()
        first = not seen_one
        while True:
            if not first:
                if not self.peek(b"*"):
                    break
                self.pos += 1
            first = False
            self.skip()
            at = self.pos
            kind, value = self.atom()
            if kind in ("chi", "t", "sp") and kind in seen:
                raise self.error(f"{kind}(...) given twice in one term", at)
            seen.add(kind)
            if kind == "chi":
                d = value
            elif kind == "t":
                t = value
            elif kind == "sp":
                n = value
            elif kind == "op":
                opaque.append(value)
        return WDIrred(TwistedChar(d, t, tuple(opaque)), n), mult

    def atom(self):
        at = self.pos
        if self.match(_IDENT) is None:
            num = self.match(_INT)
            if num is not None and num.lstrip(b"+") == b"1":
                return "one", None
            raise self.error("expected an atom: 1, chi(..), t(..), sp(..) or op(..)", at)
        name = self.src[at:self.pos].decode()
        self.expect(b"(")
        inner = self.pos
        if name == "chi":
            raw = self.match(_INT)
            if raw is None:
                raise self.error("chi needs an integer argument")
            if int(raw) == 0:
                raise self.error("chi(0) is not a character", inner)
            value = square_class(self.p, int(raw))
        elif name == "t":
            raw = self.match(_RATIONAL)
            if raw is None:
                raise self.error("t needs a rational argument")
            try:
                value = Fraction(raw.decode())
            except ZeroDivisionError:
                raise self.error("zero denominator", inner) from None
        elif name == "sp":
            raw = self.match(_INT)
            if raw is None:
                raise self.error("sp needs an integer argument")
            value = int(raw)
            if value < 1:
                raise self.error("sp(n) needs n >= 1", inner)
        elif name == "op":
            inverse = self.peek(b"~")
            if inverse:
                self.pos += 1
            raw = self.match(_IDENT)
            if raw is None:
                raise self.error("op needs a label")
            value = (raw.decode(), -1 if inverse else 1)
        else:
            raise self.error(f"unknown atom {name!r}", at)
        self.expect(b")")
        return name, value


def parse_rep(text: str, p: int) -> WDRep:
    """Parse a DSL expression into a representation over Q_p."""
    PAdicField(p)
    return _Parser(text, p).parse()


def format_rep(a: WDRep) -> str:
    return a.to_dsl()
