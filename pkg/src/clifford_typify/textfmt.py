"""Text form of multivectors.

Grammar (whitespace is insignificant)::

    expr  := ['-'] term (('+' | '-') term)*
    term  := coeff ['*'] blade | blade | coeff
    coeff := real | real 'i' | '(' real ('+' | '-') real 'i' ')'
    blade := 'e' | 'e' digits

For ``n <= 9`` every digit of a blade is one generator (``e134``).  For
``n > 9`` indices are separated by ``_`` (``e1_12``) and a blade without a
separator names a single generator (``e12`` is generator 12).

Exponents in reals use an upper-case ``E`` so that ``2e12`` always reads as
``2 * e12``.  The formatter emits the shortest decimal that round-trips, so
``parse(format(U)) == U`` exactly.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .algebra import REAL, Multivector, Signature, apply_operation, blade_indices, blade_mask
from .errors import InputError, ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:E[+-]?\d+)?)
  | (?P<blade>e[0-9_]*)
  | (?P<word>comm|anti|prod)\b
  | (?P<imag>i)
  | (?P<punct>[-+*()])
    """,
    re.VERBOSE,
)

BINARY_OPS = {"*": "product", "prod": "product", "comm": "commutator", "anti": "anticommutator"}


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    pos: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append(Token(kind, m.group(), pos))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, sig: Signature, field: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.sig = sig
        self.field = field
        self.end = len(text)

    def peek(self, offset: int = 0) -> Token | None:
        j = self.i + offset
        return self.tokens[j] if j < len(self.tokens) else None

    def take(self) -> Token:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input", self.end)
        self.i += 1
        return tok

    def expect(self, text: str) -> None:
        tok = self.take()
        if tok.text != text:
            raise ParseError(f"expected {text!r}, found {tok.text!r}", tok.pos)

    def at(self, text: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.text == text

    # expr := ['-'] term (('+'|'-') term)*
    def expression(self) -> Multivector:
        negate = False
        if self.at("-"):
            self.take()
            negate = True
        elif self.at("+"):
            self.take()
        coeffs: dict[int, complex] = {}
        mask, value = self.term()
        coeffs[mask] = -value if negate else value
        while self.peek() is not None and self.peek().text in "+-" and self.peek().kind == "punct":
            sign = -1 if self.take().text == "-" else 1
            mask, value = self.term()
            coeffs[mask] = coeffs.get(mask, 0) + sign * value
        if self.field == REAL:
            for mask, value in coeffs.items():
                if isinstance(value, complex) and value.imag != 0:
                    raise ParseError("imaginary coefficient in a real-field expression")
        return Multivector(self.sig, coeffs, self.field)

    def term(self) -> tuple[int, complex | float]:
        tok = self.peek()
        if tok is None:
            raise ParseError("expected a term", self.end)
        if tok.kind == "blade":
            return self.blade(), 1.0
        value = self.coeff()
        nxt = self.peek()
        if nxt is not None and nxt.text == "*" and self.peek(1) is not None and self.peek(1).kind == "blade":
            self.take()
            return self.blade(), value
        if nxt is not None and nxt.kind == "blade":
            return self.blade(), value
        return 0, value

    def coeff(self) -> complex | float:
        tok = self.take()
        if tok.text == "(":
            re_part = self.real()
            sign_tok = self.take()
            if sign_tok.text not in ("+", "-"):
                raise ParseError(f"expected '+' or '-' in complex coefficient, found {sign_tok.text!r}", sign_tok.pos)
            im_part = self.real()
            self.expect("i")
            self.expect(")")
            return complex(re_part, im_part if sign_tok.text == "+" else -im_part)
        if tok.kind == "imag":
            return 1j
        if tok.kind != "number":
            raise ParseError(f"expected a coefficient or blade, found {tok.text!r}", tok.pos)
        value = float(tok.text)
        if self.at("i"):
            self.take()
            return complex(0.0, value)
        return value

    def real(self) -> float:
        sign = 1.0
        if self.at("-") or self.at("+"):
            sign = -1.0 if self.take().text == "-" else 1.0
        tok = self.take()
        if tok.kind != "number":
            raise ParseError(f"expected a number, found {tok.text!r}", tok.pos)
        return sign * float(tok.text)

    def blade(self) -> int:
        tok = self.take()
        body = tok.text[1:]
        if not body:
            return 0
        n = self.sig.n
        if "_" in body:
            parts = body.split("_")
            if any(not p for p in parts):
                raise ParseError(f"empty generator index in {tok.text!r}", tok.pos)
            indices = [int(p) for p in parts]
        elif n > 9:
            indices = [int(body)]
        else:
            indices = [int(ch) for ch in body]
        if any(a < 1 for a in indices):
            raise ParseError(f"generator indices start at 1 in {tok.text!r}", tok.pos)
        try:
            return blade_mask(indices, n)
        except InputError as exc:
            raise ParseError(f"{exc} in {tok.text!r}", tok.pos) from None


def parse_multivector(text: str, sig: Signature, field: str = REAL) -> Multivector:
    """Parse one expression in the multivector grammar."""
    parser = _Parser(text, sig, field)
    if parser.peek() is None:
        raise ParseError("empty expression", 0)
    value = parser.expression()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return value


def parse_binary(text: str, sig: Signature, field: str = REAL) -> Multivector:
    """Evaluate ``EXPR [op EXPR]`` with ``op`` one of ``*``, ``comm``, ``anti``.

    The operator binds loosest, so ``e1 + e2 * e1 - e2`` is
    ``(e1 + e2)(e1 - e2)``.
    """
    parser = _Parser(text, sig, field)
    if parser.peek() is None:
        raise ParseError("empty expression", 0)
    left = parser.expression()
    tok = parser.peek()
    if tok is None:
        return left
    if tok.text not in BINARY_OPS:
        raise ParseError(f"expected an operator, found {tok.text!r}", tok.pos)
    parser.take()
    right = parser.expression()
    if parser.peek() is not None:
        tok = parser.peek()
        raise ParseError(f"trailing input {tok.text!r}", tok.pos)
    return apply_operation(BINARY_OPS[tok.text], left, right)


def format_real(x: float) -> str:
    if math.isfinite(x) and x == int(x) and abs(x) < 2**53:
        return str(int(x))
    return repr(float(x)).replace("e", "E")


def format_blade(mask: int, n: int) -> str:
    idx = blade_indices(mask)
    if n > 9:
        return "e" + "_".join(str(a) for a in idx)
    return "e" + "".join(str(a) for a in idx)


def _format_coeff(value: complex | float) -> tuple[bool, str]:
    """Return ``(negative, magnitude text)``; an empty text means unit magnitude."""
    if isinstance(value, complex):
        re_part, im_part = value.real, value.imag
        if im_part == 0:
            value = re_part
        elif re_part == 0:
            return im_part < 0, format_real(abs(im_part)) + "i"
        else:
            negative = re_part < 0
            if negative:
                re_part, im_part = -re_part, -im_part
            sign = "-" if im_part < 0 else "+"
            return negative, f"({format_real(re_part)}{sign}{format_real(abs(im_part))}i)"
    if value == 1 or value == -1:
        return value < 0, ""
    return value < 0, format_real(abs(value))


def format_multivector(u: Multivector) -> str:
    if u.is_zero():
        return "0"
    parts = []
    for mask, value in u:
        negative, mag = _format_coeff(value)
        blade = format_blade(mask, u.n)
        term = f"{mag}*{blade}" if mag else blade
        if not parts:
            parts.append(("-" if negative else "") + term)
        else:
            parts.append(("- " if negative else "+ ") + term)
    return " ".join(parts)

