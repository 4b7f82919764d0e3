"""Surface syntax for path-algebra elements: parser and pretty-printer.

Grammar (LL(1); ``*`` is mandatory between factors):

    expr     := term (("+" | "-") term)*
    term     := factor ("*" factor)*
    factor   := atom ("^" nat)?
    atom     := rational | ident | "(" expr ")" | "-" atom
    rational := int ("/" posint)?
    ident    := "a0".."a4" | "b0".."b4" | "x" | "y" | "e0".."e5" | "t1".."t9"

The pretty-printer emits terms in the canonical order (path length, then
arrow-lexicographic) so output is diff-stable; printing then re-parsing
is the identity on canonical elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .freealg import FreeElement
from .polyring import NVARS, Poly
from .quiver import Quiver

ARROW_IDENTS = {f"a{i}" for i in range(5)} | {f"b{i}" for i in range(5)} | {"x", "y"}
IDEMPOTENT_IDENTS = {f"e{i}" for i in range(6)}
INDETERMINATE_IDENTS = {f"t{i}" for i in range(1, NVARS + 1)}
KNOWN_IDENTS = ARROW_IDENTS | IDEMPOTENT_IDENTS | INDETERMINATE_IDENTS


class ExprError(ValueError):
    """Parse or identifier-resolution failure, carrying line and column."""

    def __init__(self, message: str, line: int, column: int, expected=None):
        self.line = line
        self.column = column
        self.expected = sorted(expected) if expected else []
        detail = f"{message} at {line}:{column}"
        if self.expected:
            detail += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(detail)


# -- AST -------------------------------------------------------------------


@dataclass(frozen=True)
class Num:
    value: Fraction


@dataclass(frozen=True)
class Ident:
    name: str
    line: int = 0
    column: int = 0


@dataclass(frozen=True)
class Neg:
    operand: object


@dataclass(frozen=True)
class Pow:
    base: object
    exponent: int


@dataclass(frozen=True)
class Mul:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    # (sign, term) pairs with sign in {+1, -1}
    parts: tuple


# -- tokenizer ----------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # INT, IDENT, SYMBOL, END
    text: str
    line: int
    column: int


_SYMBOLS = set("+-*/^()")


def _tokenize(text: str) -> list[Token]:
    tokens = []
    line, col = 1, 1
    i = 0
    while i < len(text):
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        start_col = col
        if ch.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            tokens.append(Token("INT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch.isalpha():
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] == "_"):
                j += 1
            tokens.append(Token("IDENT", text[i:j], line, start_col))
            col += j - i
            i = j
            continue
        if ch in _SYMBOLS:
            tokens.append(Token("SYMBOL", ch, line, start_col))
            col += 1
            i += 1
            continue
        raise ExprError(f"unexpected character {ch!r}", line, start_col)
    tokens.append(Token("END", "", line, col))
    return tokens


class _Parser:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def expect_symbol(self, sym: str) -> Token:
        tok = self.peek()
        if tok.kind == "SYMBOL" and tok.text == sym:
            return self.advance()
        raise ExprError(
            f"unexpected {tok.text!r}" if tok.kind != "END" else "unexpected end of input",
            tok.line,
            tok.column,
            expected={repr(sym)},
        )

    def parse(self):
        node = self.expr()
        tok = self.peek()
        if tok.kind != "END":
            raise ExprError(
                f"unexpected {tok.text!r}",
                tok.line,
                tok.column,
                expected={"'+'", "'-'", "'*'", "'^'", "end of input"},
            )
        return node

    def expr(self):
        parts = [(1, self.term())]
        while True:
            tok = self.peek()
            if tok.kind == "SYMBOL" and tok.text in "+-":
                self.advance()
                sign = 1 if tok.text == "+" else -1
                parts.append((sign, self.term()))
            else:
                break
        return parts[0][1] if len(parts) == 1 and parts[0][0] == 1 else Sum(tuple(parts))

    def term(self):
        factors = [self.factor()]
        while True:
            tok = self.peek()
            if tok.kind == "SYMBOL" and tok.text == "*":
                self.advance()
                factors.append(self.factor())
            else:
                break
        return factors[0] if len(factors) == 1 else Mul(tuple(factors))

    def factor(self):
        base = self.atom()
        tok = self.peek()
        if tok.kind == "SYMBOL" and tok.text == "^":
            self.advance()
            exp_tok = self.peek()
            if exp_tok.kind != "INT":
                raise ExprError(
                    "exponent must be a natural number",
                    exp_tok.line,
                    exp_tok.column,
                    expected={"integer"},
                )
            self.advance()
            return Pow(base, int(exp_tok.text))
        return base

    def atom(self):
        tok = self.peek()
        if tok.kind == "INT":
            self.advance()
            value = Fraction(int(tok.text))
            nxt = self.peek()
            if nxt.kind == "SYMBOL" and nxt.text == "/":
                self.advance()
                den_tok = self.peek()
                if den_tok.kind != "INT" or int(den_tok.text) == 0:
                    raise ExprError(
                        "denominator must be a positive integer",
                        den_tok.line,
                        den_tok.column,
                        expected={"positive integer"},
                    )
                self.advance()
                value = Fraction(int(tok.text), int(den_tok.text))
            return Num(value)
        if tok.kind == "IDENT":
            self.advance()
            if tok.text not in KNOWN_IDENTS:
                raise ExprError(
                    f"unknown identifier {tok.text!r}", tok.line, tok.column
                )
            return Ident(tok.text, tok.line, tok.column)
        if tok.kind == "SYMBOL" and tok.text == "(":
            self.advance()
            inner = self.expr()
            self.expect_symbol(")")
            return inner
        if tok.kind == "SYMBOL" and tok.text == "-":
            self.advance()
            return Neg(self.atom())
        raise ExprError(
            f"unexpected {tok.text!r}" if tok.kind != "END" else "unexpected end of input",
            tok.line,
            tok.column,
            expected={"number", "identifier", "'('", "'-'"},
        )


def parse(text: str):
    """Parse surface syntax to an AST; raises ExprError with position info."""
    return _Parser(_tokenize(text)).parse()


# -- AST evaluation ------------------------------------------------------------


def to_element(ast, quiver: Quiver) -> FreeElement:
    """Evaluate an AST to a FreeElement on the given quiver.

    Scalars and indeterminates become coefficients of the identity.
    Identifiers that are not arrows or idempotents of the quiver are
    rejected, which is what rules out mixing alphabets of different
    quivers in one expression.
    """
    arrow_names = {a.name for a in quiver.arrows}
    idem_names = {f"e{v}": v for v in quiver.vertices}

    def ev(node) -> FreeElement:
        if isinstance(node, Num):
            return FreeElement.one(quiver).scale(node.value)
        if isinstance(node, Ident):
            if node.name in arrow_names:
                return FreeElement.from_path(quiver.path(node.name))
            if node.name in idem_names:
                return FreeElement.from_path(quiver.idempotent(idem_names[node.name]))
            if node.name in INDETERMINATE_IDENTS:
                return FreeElement.one(quiver).scale(Poly.var(int(node.name[1:])))
            raise ExprError(
                f"identifier {node.name!r} is not defined in quiver {quiver.name}",
                node.line,
                node.column,
            )
        if isinstance(node, Neg):
            return -ev(node.operand)
        if isinstance(node, Pow):
            return ev(node.base) ** node.exponent
        if isinstance(node, Mul):
            result = None
            for f in node.factors:
                value = ev(f)
                result = value if result is None else result * value
            return result
        if isinstance(node, Sum):
            result = FreeElement.zero(quiver)
            for sign, part in node.parts:
                value = ev(part)
                result = result + (value if sign > 0 else -value)
            return result
        raise TypeError(f"unexpected AST node {node!r}")

    return ev(ast)


def parse_element(text: str, quiver: Quiver) -> FreeElement:
    return to_element(parse(text), quiver)


# -- pretty-printing --------------------------------------------------------------


def format_poly(poly: Poly) -> str:
    return str(poly)


def _coefficient_prefix(poly: Poly) -> tuple[bool, str]:
    """(negative, text) where text is '' for a plain unit coefficient."""
    if poly.is_rational():
        value = poly.as_rational()
        negative = value < 0
        mag = abs(value)
        return negative, "" if mag == 1 else str(mag)
    if len(poly.terms) == 1:
        ((exp, coeff),) = poly.terms.items()
        negative = coeff < 0
        mag = abs(coeff)
        factors = [] if mag == 1 else [str(mag)]
        for i, e in enumerate(exp):
            if e == 1:
                factors.append(f"t{i + 1}")
            elif e > 1:
                factors.append(f"t{i + 1}^{e}")
        if negative and factors and "^" in factors[0]:
            # "- t1^2*..." would re-parse as (-t1)^2; force "- 1*t1^2*..."
            factors.insert(0, "1")
        return negative, "*".join(factors)
    return False, f"({poly})"


def format_element(element: FreeElement) -> str:
    """Canonical text: terms by (length, path-lex), '*' separated factors."""
    if element.is_zero():
        return "0"
    parts = []
    for path, coeff in element.sorted_terms():
        negative, prefix = _coefficient_prefix(coeff)
        body = str(path)
        if prefix:
            body = f"{prefix}*{body}"
        if not parts:
            parts.append(f"- {body}" if negative else body)
        else:
            parts.append(f"- {body}" if negative else f"+ {body}")
    return " ".join(parts)
