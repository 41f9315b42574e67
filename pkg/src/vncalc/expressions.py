"""A small expression language for building group elements.

Grammar::

    expr    := term ('*' term)*
    term    := atom postfix*
    postfix := '^' integer | '^' atom          # power, or conjugation g^h
    atom    := name | '[' expr ',' expr ']' | '(' expr ')'
             | 'dot' '(' cycles ')' | 'embed' '(' word ',' expr ')'
             | 's' '(' path ')'

Postfix binds tighter than '*'; whitespace is ignored.  ``g^-1`` is the
inverse, ``g^k`` an integer power, and ``g^h`` conjugation by h.  In a
product the right factor acts first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .constructions import (
    Permutation,
    dot,
    embed,
    load_alpha_plan,
    make_s_alpha,
    make_t,
    make_tau,
    sigma_dot,
)
from .element import (
    VnElement,
    commutator,
    compose,
    conjugate,
    identity,
    power,
)
from .errors import ExpressionError
from .words import Alphabet, Word, check_letters


class Expr:
    """Base class for expression nodes."""


@dataclass(frozen=True)
class NameRef(Expr):
    name: str


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple[Expr, ...]


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: int


@dataclass(frozen=True)
class Conjugation(Expr):
    base: Expr
    by: Expr


@dataclass(frozen=True)
class CommutatorExpr(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class DotLift(Expr):
    cycles: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class EmbedExpr(Expr):
    cone: Word
    inner: Expr


@dataclass(frozen=True)
class SpinalFromFile(Expr):
    path: str


# The symbol class includes path characters so bare file arguments like
# s(plans/p.alpha) tokenize; they are meaningful only inside s(...).
_TOKEN_RE = re.compile(
    r"\s*(?:(?P<name>[A-Za-z_][A-Za-z0-9_]*)|(?P<int>\d+)"
    r'|(?P<string>"[^"]*")|(?P<sym>[*^()\[\],.\-/:~]))'
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip():
                raise ExpressionError(f"unexpected character {text[pos]!r}", pos)
            break
        kind = m.lastgroup
        tokens.append((kind, m.group(kind), m.start(kind)))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None, len(self.text))

    def next(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, value: str):
        kind, text, where = self.next()
        if text != value:
            raise ExpressionError(f"expected {value!r}, got {text!r}", where)

    def fail(self, message: str):
        raise ExpressionError(message, self.peek()[2])

    def parse(self) -> Expr:
        expr = self.parse_expr()
        if self.pos != len(self.tokens):
            self.fail(f"trailing input {self.peek()[1]!r}")
        return expr

    def parse_expr(self) -> Expr:
        factors = [self.parse_term()]
        while self.peek()[1] == "*":
            self.next()
            factors.append(self.parse_term())
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def parse_term(self) -> Expr:
        node = self.parse_atom()
        while self.peek()[1] == "^":
            self.next()
            kind, text, _ = self.peek()
            if text == "-":
                self.next()
                kind, text, where = self.next()
                if kind != "int":
                    raise ExpressionError("expected an integer after '^-'", where)
                node = Power(node, -int(text))
            elif kind == "int":
                self.next()
                node = Power(node, int(text))
            else:
                node = Conjugation(node, self.parse_atom())
        return node

    def parse_atom(self) -> Expr:
        kind, text, where = self.peek()
        if text == "(":
            self.next()
            inner = self.parse_expr()
            self.expect(")")
            return inner
        if text == "[":
            self.next()
            left = self.parse_expr()
            self.expect(",")
            right = self.parse_expr()
            self.expect("]")
            return CommutatorExpr(left, right)
        if kind == "name":
            self.next()
            if self.peek()[1] != "(":
                return NameRef(text)
            if text == "dot":
                return self.parse_dot_call()
            if text == "embed":
                return self.parse_embed_call()
            if text == "s":
                return self.parse_spinal_call()
            raise ExpressionError(f"unknown constructor {text!r}", where)
        raise ExpressionError(f"expected an atom, got {text!r}", where)

    def parse_dot_call(self) -> Expr:
        self.expect("(")
        cycles = []
        while self.peek()[1] == "(":
            self.next()
            entries = []
            while True:
                kind, text, where = self.peek()
                if kind == "int":
                    self.next()
                    entries.append(int(text))
                elif text == ",":
                    self.next()
                elif text == ")":
                    self.next()
                    break
                else:
                    raise ExpressionError("expected a letter or ')' in a cycle", where)
            if not entries:
                self.fail("empty cycle")
            cycles.append(tuple(entries))
        self.expect(")")
        if not cycles:
            self.fail("dot() needs at least one cycle")
        return DotLift(tuple(cycles))

    def parse_embed_call(self) -> Expr:
        self.expect("(")
        cone = self.parse_word()
        self.expect(",")
        inner = self.parse_expr()
        self.expect(")")
        return EmbedExpr(cone, inner)

    def parse_word(self) -> Word:
        kind, text, where = self.next()
        if kind == "name" and text == "eps":
            return Word()
        if kind != "int":
            raise ExpressionError(f"expected a word, got {text!r}", where)
        letters = [int(text)]
        while self.peek()[1] == ".":
            self.next()
            kind, text, where = self.next()
            if kind != "int":
                raise ExpressionError(f"expected a letter after '.', got {text!r}", where)
            letters.append(int(text))
        return Word(tuple(letters))

    def parse_spinal_call(self) -> Expr:
        self.expect("(")
        kind, text, where = self.next()
        if kind == "string":
            path = text[1:-1]
        elif kind in ("name", "int"):
            # Bare paths run until the closing parenthesis.
            path = text
            while self.peek()[1] not in (")", None):
                path += self.next()[1]
        else:
            raise ExpressionError(f"expected a plan file path, got {text!r}", where)
        self.expect(")")
        return SpinalFromFile(path)


def parse_expression(text: str) -> Expr:
    return _Parser(text).parse()


@dataclass(frozen=True)
class EvalEnv:
    """Name bindings plus the ambient alphabet."""

    alphabet: Alphabet
    bindings: tuple[tuple[str, VnElement], ...]

    def lookup(self, name: str) -> VnElement:
        for key, g in self.bindings:
            if key == name:
                return g
        raise ExpressionError(f"unknown name {name!r}")


def default_env(alphabet: Alphabet, extra: dict[str, VnElement] | None = None) -> EvalEnv:
    names = {
        "id": identity(alphabet),
        "sigma": sigma_dot(alphabet),
        "tau": make_tau(alphabet),
        "t": make_t(alphabet),
    }
    if extra:
        names.update(extra)
    return EvalEnv(alphabet, tuple(sorted(names.items())))


def eval_expression(expr: Expr, env: EvalEnv) -> VnElement:
    if isinstance(expr, NameRef):
        return env.lookup(expr.name)
    if isinstance(expr, Product):
        out = eval_expression(expr.factors[0], env)
        for factor in expr.factors[1:]:
            out = compose(out, eval_expression(factor, env))
        return out
    if isinstance(expr, Power):
        return power(eval_expression(expr.base, env), expr.exponent)
    if isinstance(expr, Conjugation):
        return conjugate(eval_expression(expr.base, env), eval_expression(expr.by, env))
    if isinstance(expr, CommutatorExpr):
        return commutator(eval_expression(expr.left, env), eval_expression(expr.right, env))
    if isinstance(expr, DotLift):
        try:
            perm = Permutation.from_cycles(expr.cycles, env.alphabet.degree)
        except ValueError as exc:
            raise ExpressionError(str(exc)) from exc
        return dot(perm, env.alphabet)
    if isinstance(expr, EmbedExpr):
        check_letters(expr.cone, env.alphabet)
        return embed(expr.cone, eval_expression(expr.inner, env))
    if isinstance(expr, SpinalFromFile):
        plan = load_alpha_plan(expr.path)
        if plan.alphabet != env.alphabet:
            raise ExpressionError(
                f"plan degree {plan.alphabet.degree} differs from session degree "
                f"{env.alphabet.degree}"
            )
        return make_s_alpha(plan)
    raise ExpressionError(f"cannot evaluate node {expr!r}")


_ATOMIC = (NameRef, CommutatorExpr, DotLift, EmbedExpr, SpinalFromFile)


def format_expression(expr: Expr) -> str:
    """Canonical printing; parse(format(e)) reproduces e."""
    if isinstance(expr, NameRef):
        return expr.name
    if isinstance(expr, Product):
        return " * ".join(_fmt_factor(f) for f in expr.factors)
    if isinstance(expr, Power):
        return f"{_fmt_factor(expr.base)}^{expr.exponent}"
    if isinstance(expr, Conjugation):
        by = format_expression(expr.by)
        if not isinstance(expr.by, _ATOMIC):
            by = f"({by})"
        return f"{_fmt_factor(expr.base)}^{by}"
    if isinstance(expr, CommutatorExpr):
        return f"[{format_expression(expr.left)}, {format_expression(expr.right)}]"
    if isinstance(expr, DotLift):
        cycles = "".join("(" + " ".join(str(x) for x in c) + ")" for c in expr.cycles)
        return f"dot({cycles})"
    if isinstance(expr, EmbedExpr):
        return f"embed({expr.cone}, {format_expression(expr.inner)})"
    if isinstance(expr, SpinalFromFile):
        return f's("{expr.path}")'
    raise ExpressionError(f"cannot print node {expr!r}")


def _fmt_factor(expr: Expr) -> str:
    text = format_expression(expr)
    return f"({text})" if isinstance(expr, Product) else text
