# src/algebra/parser.py
"""
Recursive-descent parser for the polynomial text syntax.

    expr   := term (('+' | '-') term)*
    term   := unary ('*'? unary)*
    unary  := ('+' | '-') unary | atom (('^' | '**') INT)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'

Concatenated names such as ``U1V2`` are split by longest match against the
declared variables.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence

from .polynomial import GermMap, Poly, PolyVec, VariableSpace

_DIGITS = "0123456789"
_NAME_CHARS = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz_" + _DIGITS)
_OPERATORS = set("+-*/^()")
_ALIASES = {"−": "-", "·": "*", "×": "*"}


class PolySyntaxError(ValueError):
    """Malformed polynomial text; `position` is the 0-based character offset."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class UnknownVariableError(ValueError):
    def __init__(self, name: str, position: int, known: Sequence[str]):
        super().__init__(f"Unknown variable '{name}' at position {position} (known: {', '.join(known)})")
        self.name = name
        self.position = position


@dataclass(frozen=True)
class Token:
    kind: str  # NUM, NAME, OP, SEP, END
    value: str
    position: int


class _Tokenizer:
    def __init__(self, text: str, space: VariableSpace, separator: Optional[str]):
        self.text = text
        self.space = space
        self.separator = separator
        # longest names first so U10 wins over U1
        self.names = sorted(space.names, key=len, reverse=True)

    def tokens(self) -> List[Token]:
        tokens: List[Token] = []
        text = self.text
        i = 0
        while i < len(text):
            char = _ALIASES.get(text[i], text[i])
            if char.isspace():
                i += 1
            elif char in _DIGITS:
                start = i
                while i < len(text) and text[i] in _DIGITS:
                    i += 1
                tokens.append(Token("NUM", text[start:i], start))
            elif char in _NAME_CHARS:
                start = i
                while i < len(text) and text[i] in _NAME_CHARS:
                    i += 1
                tokens.extend(self._split_word(text[start:i], start))
            elif char == "*" and text[i + 1:i + 2] == "*":
                tokens.append(Token("OP", "^", i))
                i += 2
            elif char in _OPERATORS:
                tokens.append(Token("OP", char, i))
                i += 1
            elif self.separator is not None and char == self.separator:
                tokens.append(Token("SEP", char, i))
                i += 1
            else:
                raise PolySyntaxError(f"Unexpected character '{text[i]}'", i)
        tokens.append(Token("END", "", len(text)))
        return tokens

    def _split_word(self, word: str, start: int) -> List[Token]:
        if word in self.space:
            return [Token("NAME", word, start)]
        pieces = []
        offset = 0
        while offset < len(word):
            match = next((n for n in self.names if word.startswith(n, offset)), None)
            if match is None:
                raise UnknownVariableError(word[offset:], start + offset, self.space.names)
            pieces.append(Token("NAME", match, start + offset))
            offset += len(match)
        return pieces


class PolyParser:
    """Parses one or more comma/semicolon separated polynomials over a space."""

    def __init__(self, text: str, space: VariableSpace, separator: Optional[str] = None):
        self.text = text
        self.space = space
        self.tokens = _Tokenizer(text, space, separator).tokens()
        self.index = 0

    @property
    def current(self) -> Token:
        return self.tokens[self.index]

    def _advance(self) -> Token:
        token = self.tokens[self.index]
        self.index += 1
        return token

    def _at(self, kind: str, value: Optional[str] = None) -> bool:
        token = self.current
        return token.kind == kind and (value is None or token.value == value)

    def _expect(self, kind: str, value: Optional[str] = None) -> Token:
        if not self._at(kind, value):
            wanted = value or kind
            found = self.current.value or "end of input"
            raise PolySyntaxError(f"Expected '{wanted}' but found '{found}'", self.current.position)
        return self._advance()

    # ----------------------------------------------------------------- grammar

    def parse_list(self) -> List[Poly]:
        items = [self.parse_expr()]
        while self._at("SEP"):
            self._advance()
            items.append(self.parse_expr())
        if not self._at("END"):
            raise PolySyntaxError(f"Unexpected '{self.current.value}'", self.current.position)
        return items

    def parse_expr(self) -> Poly:
        result = self.parse_term()
        while self._at("OP", "+") or self._at("OP", "-"):
            op = self._advance().value
            term = self.parse_term()
            result = result + term if op == "+" else result - term
        return result

    def _starts_factor(self) -> bool:
        token = self.current
        return token.kind in ("NUM", "NAME") or (token.kind == "OP" and token.value == "(")

    def parse_term(self) -> Poly:
        result = self.parse_unary()
        while True:
            if self._at("OP", "*"):
                self._advance()
                result = result * self.parse_unary()
            elif self._starts_factor():
                result = result * self.parse_unary()
            else:
                return result

    def parse_unary(self) -> Poly:
        if self._at("OP", "-"):
            self._advance()
            return -self.parse_unary()
        if self._at("OP", "+"):
            self._advance()
            return self.parse_unary()
        base = self.parse_atom()
        if self._at("OP", "^"):
            self._advance()
            exponent = self._expect("NUM")
            return base ** int(exponent.value)
        return base

    def parse_atom(self) -> Poly:
        token = self.current
        if token.kind == "NUM":
            self._advance()
            value = Fraction(int(token.value))
            if self._at("OP", "/"):
                self._advance()
                denominator = self._expect("NUM")
                if int(denominator.value) == 0:
                    raise PolySyntaxError("Zero denominator", denominator.position)
                value /= int(denominator.value)
            return Poly.constant(self.space, value)
        if token.kind == "NAME":
            self._advance()
            return self.space.variable(token.value)
        if token.kind == "OP" and token.value == "(":
            self._advance()
            inner = self.parse_expr()
            self._expect("OP", ")")
            return inner
        found = token.value or "end of input"
        raise PolySyntaxError(f"Expected a term but found '{found}'", token.position)


def parse_poly(text: str, space: VariableSpace) -> Poly:
    return PolyParser(text, space).parse_list()[0]


def parse_polyvec(text: str, space: VariableSpace, separator: str = ",") -> PolyVec:
    return PolyVec(PolyParser(text, space, separator).parse_list(), space=space)


def parse_germ_text(text: str, space: VariableSpace, separator: str = ",",
                    target_names: Optional[Sequence[str]] = None) -> GermMap:
    """Parse comma-separated components into a GermMap (NonGermError on constants)."""
    return GermMap(space, parse_polyvec(text, space, separator).components, target_names)
