"""Parser and printer for chain system files.

A system file declares one ring, one orderly ranking, and named chains:

    # comment
    ring derivations=(t,x) indeterminates=(u,v)
    ranking orderly tiebreak=(u<v)
    chain B {
      u[0,2] - u[1,0] - 2*u[0,1]*u[0,0];
    }

A polynomial is a signed sum of terms; a term is an optional rational
coefficient and derivative factors like v[1,0]^2 joined by '*'.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .chains import DiffChain
from .diffpoly import (
    ConstantPolynomialError,
    DiffPoly,
    Ranking,
    RingSpec,
    make_derivative,
    poly_text,
)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ArityMismatchError(ParseError):
    """Multi-index length does not match the declared number of derivations."""


class UnknownIdentifierError(ParseError):
    """Name is not a declared indeterminate or derivation."""


class Token(NamedTuple):
    kind: str  # "ident", "int", "symbol", "end"
    value: str
    line: int
    column: int


_SYMBOLS = set("=(),<{};^*+-/[]")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, column = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            column = 1
            i += 1
        elif ch in " \t\r":
            column += 1
            i += 1
        elif ch == "#":
            while i < len(text) and text[i] != "\n":
                i += 1
        elif ch.isdigit():
            start = i
            while i < len(text) and text[i].isdigit():
                i += 1
            tokens.append(Token("int", text[start:i], line, column))
            column += i - start
        elif ch.isalpha() or ch == "_":
            start = i
            while i < len(text) and (text[i].isalnum() or text[i] == "_"):
                i += 1
            tokens.append(Token("ident", text[start:i], line, column))
            column += i - start
        elif ch in _SYMBOLS:
            tokens.append(Token("symbol", ch, line, column))
            column += 1
            i += 1
        else:
            raise ParseError(f"unexpected character {ch!r}", line, column)
    tokens.append(Token("end", "", line, column))
    return tokens


@dataclass
class SystemFile:
    ring: RingSpec
    ranking: Ranking
    chains: dict[str, DiffChain]


class _Parser:
    def __init__(self, text: str):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.ring: RingSpec | None = None
        self.ranking: Ranking | None = None

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def fail(self, message: str, tok: Token | None = None, kind=ParseError):
        tok = tok or self.peek()
        raise kind(message, tok.line, tok.column)

    def expect_symbol(self, sym: str) -> Token:
        tok = self.next()
        if tok.kind != "symbol" or tok.value != sym:
            self.fail(f"expected {sym!r}, found {tok.value!r}" if tok.value else f"expected {sym!r}", tok)
        return tok

    def expect_ident(self, name: str | None = None) -> Token:
        tok = self.next()
        if tok.kind != "ident" or (name is not None and tok.value != name):
            wanted = repr(name) if name else "an identifier"
            self.fail(f"expected {wanted}, found {tok.value!r}", tok)
        return tok

    def expect_int(self) -> int:
        tok = self.next()
        if tok.kind != "int":
            self.fail(f"expected an integer, found {tok.value!r}", tok)
        return int(tok.value)

    def at_symbol(self, sym: str) -> bool:
        tok = self.peek()
        return tok.kind == "symbol" and tok.value == sym

    def ident_list(self) -> list[str]:
        self.expect_symbol("(")
        names = [self.expect_ident().value]
        while self.at_symbol(","):
            self.next()
            names.append(self.expect_ident().value)
        self.expect_symbol(")")
        return names

    def parse(self) -> SystemFile:
        tok = self.expect_ident("ring")
        self.expect_ident("derivations")
        self.expect_symbol("=")
        derivations = self.ident_list()
        self.expect_ident("indeterminates")
        self.expect_symbol("=")
        indeterminates = self.ident_list()
        try:
            self.ring = RingSpec(tuple(derivations), tuple(indeterminates))
        except ValueError as exc:
            self.fail(str(exc), tok)

        tok = self.expect_ident("ranking")
        self.expect_ident("orderly")
        self.expect_ident("tiebreak")
        self.expect_symbol("=")
        self.expect_symbol("(")
        order_names = [self.tiebreak_name()]
        while self.at_symbol("<"):
            self.next()
            order_names.append(self.tiebreak_name())
        self.expect_symbol(")")
        if sorted(order_names) != sorted(self.ring.indeterminate_names):
            self.fail("tiebreak must list every indeterminate exactly once", tok)
        order = tuple(self.ring.indeterminate_names.index(name) for name in order_names)
        self.ranking = Ranking(self.ring, order)

        chains: dict[str, DiffChain] = {}
        while self.peek().kind != "end":
            name_tok, chain = self.chain_decl()
            if name_tok.value in chains:
                self.fail(f"duplicate chain name {name_tok.value!r}", name_tok)
            chains[name_tok.value] = chain
        if not chains:
            self.fail("expected at least one chain declaration")
        return SystemFile(self.ring, self.ranking, chains)

    def tiebreak_name(self) -> str:
        tok = self.expect_ident()
        if tok.value not in self.ring.indeterminate_names:
            self.fail(f"unknown indeterminate {tok.value!r}", tok, UnknownIdentifierError)
        return tok.value

    def chain_decl(self) -> tuple[Token, DiffChain]:
        self.expect_ident("chain")
        name_tok = self.expect_ident()
        self.expect_symbol("{")
        polys = []
        while not self.at_symbol("}"):
            start = self.peek()
            poly = self.poly()
            self.expect_symbol(";")
            if poly.is_constant():
                self.fail("chain elements must be non-constant", start)
            polys.append(poly)
        self.expect_symbol("}")
        if not polys:
            self.fail("chain must contain at least one polynomial", name_tok)
        try:
            return name_tok, DiffChain(polys, self.ranking)
        except ConstantPolynomialError as exc:
            self.fail(str(exc), name_tok)

    def poly(self) -> DiffPoly:
        total = DiffPoly.zero()
        sign = 1
        if self.at_symbol("+") or self.at_symbol("-"):
            sign = -1 if self.next().value == "-" else 1
        while True:
            total = total + sign * self.term()
            if self.at_symbol("+") or self.at_symbol("-"):
                sign = -1 if self.next().value == "-" else 1
            else:
                return total

    def term(self) -> DiffPoly:
        coeff = None
        if self.peek().kind == "int":
            numerator = self.expect_int()
            if self.at_symbol("/"):
                slash = self.next()
                denominator = self.expect_int()
                if denominator == 0:
                    self.fail("zero denominator", slash)
                coeff = Fraction(numerator, denominator)
            else:
                coeff = Fraction(numerator)
        factors = []
        if coeff is None or self.peek().kind == "ident":
            factors.append(self.factor())
        while self.at_symbol("*"):
            self.next()
            factors.append(self.factor())
        out = DiffPoly.constant(coeff if coeff is not None else 1)
        for f in factors:
            out = out * f
        return out

    def factor(self) -> DiffPoly:
        tok = self.expect_ident()
        try:
            indet = self.ring.indeterminate_names.index(tok.value)
        except ValueError:
            self.fail(f"unknown indeterminate {tok.value!r}", tok, UnknownIdentifierError)
        self.expect_symbol("[")
        open_tok = self.peek()
        index = [self.expect_int()]
        while self.at_symbol(","):
            self.next()
            index.append(self.expect_int())
        self.expect_symbol("]")
        if len(index) != self.ring.num_derivations:
            self.fail(
                f"multi-index of length {len(index)} for a ring with "
                f"{self.ring.num_derivations} derivations",
                open_tok,
                ArityMismatchError,
            )
        out = DiffPoly.variable(make_derivative(indet, index))
        if self.at_symbol("^"):
            caret = self.next()
            exponent = self.expect_int()
            if exponent < 1:
                self.fail("exponent must be positive", caret)
            out = out**exponent
        return out


def parse_system(text: str) -> SystemFile:
    return _Parser(text).parse()


def format_system(system: SystemFile) -> str:
    ring = system.ring
    lines = [
        "ring derivations=({}) indeterminates=({})".format(
            ",".join(ring.derivation_names), ",".join(ring.indeterminate_names)
        ),
        "ranking orderly tiebreak=({})".format(
            "<".join(ring.indeterminate_names[j] for j in system.ranking.indeterminate_order)
        ),
    ]
    for name, chain in system.chains.items():
        lines.append(f"chain {name} {{")
        for poly in chain.elements:
            lines.append(f"  {poly_text(poly, ring.indeterminate_names)};")
        lines.append("}")
    return "\n".join(lines) + "\n"
