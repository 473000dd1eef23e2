"""Code expressions: ``P(3) x D(3,3)``, ``punct(B(3,8,4); 1,5)`` and friends.

Grammar (whitespace-insensitive)::

    expr    := atom (('x' | '⊗') atom)*       left-associative, flattened
    atom    := ctor | 'punct' '(' expr ';' int (',' int)* ')' | '(' expr ')'
    ctor    := ('P' | 'D' | 'R' | 'B') '(' int (',' int)* ')'

Products are left-associative and flatten into a single :class:`ProductCode`.
Puncture positions are 1-based.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from . import codes
from .codes import LinearCode
from .errors import ExpressionError, FieldMismatch
from .slrc import ProductCode

_ARITY = {"P": 1, "D": 2, "R": 3, "B": 3}


@dataclass(frozen=True)
class Ctor:
    kind: str
    args: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.kind}({','.join(map(str, self.args))})"

    @property
    def q(self) -> int:
        return self.args[0]


@dataclass(frozen=True)
class Punct:
    inner: "Node"
    positions: tuple[int, ...]

    def __str__(self) -> str:
        return f"punct({self.inner}; {','.join(map(str, self.positions))})"

    @property
    def q(self) -> int:
        return self.inner.q


@dataclass(frozen=True)
class Product:
    factors: tuple["Node", ...]

    def __str__(self) -> str:
        return " x ".join(f"({f})" if isinstance(f, Product) else str(f) for f in self.factors)

    @property
    def q(self) -> int:
        return self.factors[0].q


Node = Union[Ctor, Punct, Product]


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, msg: str, pos: int | None = None) -> ExpressionError:
        return ExpressionError(msg, self.text, self.pos if pos is None else pos)

    def skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            found = repr(self.peek()) if self.peek() else "end of input"
            raise self.error(f"expected {ch!r}, found {found}")
        self.pos += 1

    def integer(self) -> int:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise self.error("expected an integer")
        return int(self.text[start:self.pos])

    def word(self) -> str:
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isalpha():
            self.pos += 1
        return self.text[start:self.pos]

    def parse(self) -> Node:
        node = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return node

    def expr(self) -> Node:
        factors = [self.atom()]
        while self.peek() in ("x", "⊗"):
            self.pos += 1
            factors.append(self.atom())
        if len(factors) == 1:
            return factors[0]
        # Kronecker products are associative, so nested products flatten exactly
        flat: list[Node] = []
        for f in factors:
            flat.extend(f.factors if isinstance(f, Product) else (f,))
        return Product(tuple(flat))

    def atom(self) -> Node:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            node = self.expr()
            self.expect(")")
            return node
        if not ch:
            raise self.error("expected a code, found end of input")
        start = self.pos
        name = self.word()
        if name == "punct":
            self.expect("(")
            inner = self.expr()
            self.expect(";")
            positions = [self.integer()]
            while self.peek() == ",":
                self.pos += 1
                positions.append(self.integer())
            self.expect(")")
            return Punct(inner, tuple(sorted(set(positions))))
        if name in _ARITY:
            self.expect("(")
            args = [self.integer()]
            while self.peek() == ",":
                self.pos += 1
                args.append(self.integer())
            self.expect(")")
            if len(args) != _ARITY[name]:
                raise self.error(
                    f"{name} takes {_ARITY[name]} argument(s), got {len(args)}", start
                )
            return Ctor(name, tuple(args))
        raise self.error(f"unknown constructor {name!r}" if name else f"unexpected {ch!r}", start)


def parse(text: str) -> Node:
    """Parse a code expression, raising :class:`ExpressionError` with a caret position."""
    return _Parser(text).parse()


def _leaf_fields(node: Node) -> set[int]:
    if isinstance(node, Ctor):
        return {node.q}
    if isinstance(node, Punct):
        return _leaf_fields(node.inner)
    out: set[int] = set()
    for f in node.factors:
        out |= _leaf_fields(f)
    return out


def build(node: Node | str) -> LinearCode:
    """Construct the code an expression denotes."""
    if isinstance(node, str):
        node = parse(node)
    qs = _leaf_fields(node)
    if len(qs) > 1:
        raise FieldMismatch(f"expression mixes field orders {sorted(qs)}")
    return _build(node)


def _build(node: Node) -> LinearCode:
    if isinstance(node, Ctor):
        a = node.args
        if node.kind == "P":
            c = codes.make_P(*a)
        elif node.kind == "D":
            c = codes.make_D(*a)
        elif node.kind == "R":
            c = codes.make_R(*a)
        else:
            c = codes.make_BCH(*a)
        c.name = str(node)
        return c
    if isinstance(node, Punct):
        c = _build(node.inner).puncture(node.positions)
        c.name = str(node)
        return c
    return ProductCode([_build(f) for f in node.factors], name=str(node))


def canonical(text: str) -> str:
    return str(parse(text))
