"""Parsing and evaluation of left-distributive terms."""

from __future__ import annotations

from collections.abc import Callable, Iterator, Sequence
from typing import TypeVar

import numpy as np

from .core import LaverEngine, get_default_engine
from .exceptions import DomainError, TermSyntaxError
from .models import Atom, LdTerm, Node

_T = TypeVar("_T")

OPERATORS = ("*", "⋆")


class _Parser:
    """Recursive-descent parser over the term grammar."""

    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0

    def _skip(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _peek(self) -> str:
        self._skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def _expect(self, token: str) -> None:
        if self._peek() != token:
            found = self._peek() or "end of input"
            raise TermSyntaxError(f"Expected {token!r}, found {found!r}", self.pos)
        self.pos += 1

    def _number(self) -> int:
        self._skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] in "0123456789":
            self.pos += 1
        if start == self.pos:
            found = self._peek() or "end of input"
            raise TermSyntaxError(f"Expected a number, found {found!r}", start)
        return int(self.text[start : self.pos])

    def parse(self) -> LdTerm:
        term = self._expr()
        if self._peek():
            if self._peek() in OPERATORS:
                raise TermSyntaxError("Products must be parenthesized", self.pos)
            raise TermSyntaxError(f"Unexpected {self._peek()!r}", self.pos)
        return term

    def _expr(self) -> LdTerm:
        if self._peek() == "(":
            self.pos += 1
            left = self._expr()
            if self._peek() not in OPERATORS:
                found = self._peek() or "end of input"
                raise TermSyntaxError(f"Expected '*', found {found!r}", self.pos)
            self.pos += 1
            right = self._expr()
            if self._peek() in OPERATORS:
                raise TermSyntaxError("Products must be parenthesized", self.pos)
            self._expect(")")
            return Node(left, right)
        start = self.pos
        value = self._number()
        if value < 1:
            raise TermSyntaxError(f"Atoms must be >= 1, got {value}", start)
        if self._peek() != "^":
            return Atom(value)
        self.pos += 1
        self._expect("(")
        exponent_at = self.pos
        exponent = self._number()
        if exponent < 1:
            raise TermSyntaxError(
                f"Power exponent must be >= 1, got {exponent}", exponent_at
            )
        self._expect(")")
        return left_power_term(Atom(value), exponent)


def parse(text: str) -> LdTerm:
    """
    Parse a term such as "((1*1)*(1*1))" or "1^(5)".

    Raises:
        TermSyntaxError: With the offending position.

    """
    return _Parser(text).parse()


def left_power_term(base: LdTerm, k: int) -> LdTerm:
    """Return the term x^(k), where x^(1) = x and x^(k+1) = x^(k) * x."""
    if k < 1:
        raise DomainError(f"Power exponent must be >= 1, got {k}")
    term = base
    for _ in range(k - 1):
        term = Node(term, base)
    return term


def fold(
    term: LdTerm, leaf: Callable[[Atom], _T], combine: Callable[[_T, _T], _T]
) -> _T:
    """Reduce a term bottom-up without recursion."""
    values: list[_T] = []
    stack: list[tuple[LdTerm, bool]] = [(term, False)]
    while stack:
        node, expanded = stack.pop()
        if isinstance(node, Atom):
            values.append(leaf(node))
        elif expanded:
            right = values.pop()
            values.append(combine(values.pop(), right))
        else:
            stack.append((node, True))
            stack.append((node.right, False))
            stack.append((node.left, False))
    return values[0]


def unparse(term: LdTerm) -> str:
    """Return the canonical text of a term: '*' operator, no whitespace."""
    return fold(term, lambda atom: str(atom.value), lambda a, b: f"({a}*{b})")


def leaf_count(term: LdTerm) -> int:
    """Return the number of atoms in a term."""
    return fold(term, lambda _: 1, lambda a, b: a + b)


def eval_term(term: LdTerm, n: int, engine: LaverEngine | None = None) -> int:
    """
    Evaluate a term in the table of order 2^n.

    Raises:
        DomainError: If an atom is outside [1, 2^n].

    """
    engine = engine or get_default_engine()
    return fold(
        term,
        lambda atom: atom.value,
        lambda p, q: engine.star_prod(n, p, q),
    )


def equal_in(
    n: int, s: LdTerm, t: LdTerm, engine: LaverEngine | None = None
) -> bool:
    """Return True if s and t evaluate to the same element of order 2^n."""
    return eval_term(s, n, engine) == eval_term(t, n, engine)


def random_term(
    rng: np.random.Generator, leaves: int, atoms: Sequence[int] = (1,)
) -> LdTerm:
    """Return a random term with the given number of atoms drawn from atoms."""
    if leaves < 1:
        raise DomainError(f"A term has at least one atom, got {leaves}")
    if leaves == 1:
        return Atom(int(rng.choice(atoms)))
    split = int(rng.integers(1, leaves))
    return Node(
        random_term(rng, split, atoms), random_term(rng, leaves - split, atoms)
    )


def _subterm(term: LdTerm, path: Sequence[int]) -> LdTerm:
    for step in path:
        if not isinstance(term, Node):
            raise DomainError(f"Path {tuple(path)} leaves the term")
        term = term.right if step else term.left
    return term


def _replace(term: LdTerm, path: Sequence[int], new: LdTerm) -> LdTerm:
    if not path:
        return new
    if not isinstance(term, Node):
        raise DomainError(f"Path {tuple(path)} leaves the term")
    if path[0]:
        return Node(term.left, _replace(term.right, path[1:], new))
    return Node(_replace(term.left, path[1:], new), term.right)


def rewrite_sites(term: LdTerm) -> Iterator[tuple[int, ...]]:
    """Yield the paths of the subterms of the form p*(q*r)."""
    stack: list[tuple[LdTerm, tuple[int, ...]]] = [(term, ())]
    while stack:
        node, path = stack.pop()
        if isinstance(node, Node):
            if isinstance(node.right, Node):
                yield path
            stack.append((node.right, (*path, 1)))
            stack.append((node.left, (*path, 0)))


def ld_rewrite(term: LdTerm, path: Sequence[int]) -> LdTerm:
    """
    Expand p*(q*r) into (p*q)*(p*r) at the subterm reached by path.

    A path is a sequence of 0 (left) and 1 (right) steps from the root.

    Raises:
        DomainError: If the subterm is not of the form p*(q*r).

    """
    target = _subterm(term, path)
    if not isinstance(target, Node) or not isinstance(target.right, Node):
        raise DomainError(f"No p*(q*r) subterm at {tuple(path)}")
    p, inner = target.left, target.right
    return _replace(term, path, Node(Node(p, inner.left), Node(p, inner.right)))
