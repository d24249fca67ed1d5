"""Terms in the language of groupoids, viewed as ordered full binary trees.

A term is either a :class:`Leaf` holding a 1-based variable index or a
:class:`Node` joining two subterms.  Terms are immutable values with
structural equality, so they can be used as dictionary keys and shared
freely between threads.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Literal, Sequence, Union

from .errors import (
    EmptyInputError,
    EmptyTermListError,
    JuxtapositionError,
    MalformedTermError,
    NoEggsError,
    SizeLimitError,
    UnbalancedParenError,
    UnknownTokenError,
)

__all__ = [
    "Leaf",
    "Node",
    "Term",
    "DepthVector",
    "LeftmostDecomposition",
    "EggPartition",
    "RootedPartition",
    "RootedOrderedPartition",
    "MAX_BRACKETING_SIZE",
    "MAX_FULL_LINEAR_SIZE",
    "enumerate_bracketings",
    "enumerate_full_linear_terms",
    "relabel",
    "mirror",
    "depth_vector",
    "leftmost_decomposition",
    "leftmost_bracketing",
    "rightmost_bracketing",
    "standard_variant",
    "egg_partition",
    "rooted_partition",
    "rooted_ordered_partition",
    "parse_term",
    "format_term",
]

MAX_BRACKETING_SIZE = 16
MAX_FULL_LINEAR_SIZE = 10

LETTERS = "vwxyz"


@dataclass(frozen=True, slots=True)
class Leaf:
    var: int

    def __post_init__(self) -> None:
        if not isinstance(self.var, int) or isinstance(self.var, bool) or self.var < 1:
            raise MalformedTermError(f"leaf label must be a positive integer, got {self.var!r}")

    @property
    def size(self) -> int:
        return 1

    def labels(self) -> tuple[int, ...]:
        return (self.var,)

    def __str__(self) -> str:
        return format_term(self)


@dataclass(frozen=True, slots=True)
class Node:
    left: Term
    right: Term

    @property
    def size(self) -> int:
        return self.left.size + self.right.size

    def labels(self) -> tuple[int, ...]:
        """Leaf labels in left-to-right order."""
        out: list[int] = []
        stack: list[Term] = [self]
        while stack:
            t = stack.pop()
            if isinstance(t, Leaf):
                out.append(t.var)
            else:
                stack.append(t.right)
                stack.append(t.left)
        return tuple(out)

    def __str__(self) -> str:
        return format_term(self)


Term = Union[Leaf, Node]


def _check_linear(t: Term) -> tuple[int, ...]:
    labels = t.labels()
    if len(set(labels)) != len(labels):
        raise MalformedTermError(f"term {format_term(t)} repeats a variable")
    return labels


def is_bracketing(t: Term) -> bool:
    return t.labels() == tuple(range(1, t.size + 1))


def is_full_linear(t: Term) -> bool:
    return sorted(t.labels()) == list(range(1, t.size + 1))


# ---------------------------------------------------------------------------
# enumeration


def _bracketings(lo: int, hi: int) -> Iterator[Term]:
    if lo == hi:
        yield Leaf(lo)
        return
    for mid in range(lo, hi):
        for left in _bracketings(lo, mid):
            for right in _bracketings(mid + 1, hi):
                yield Node(left, right)


def enumerate_bracketings(n: int, max_size: int = MAX_BRACKETING_SIZE) -> Iterator[Term]:
    """Yield every bracketing of ``x1 ... xn`` exactly once.

    Order: the root split is tried with left sizes 1..n-1 ascending, and
    each side is enumerated recursively in the same order (left-major).
    """
    if not 1 <= n <= max_size:
        raise SizeLimitError(f"bracketing size must be in 1..{max_size}, got {n}")
    return _bracketings(1, n)


def relabel(t: Term, mapping: Sequence[int] | dict[int, int]) -> Term:
    """Replace each leaf label ``i`` by ``mapping[i]`` (dict) or ``mapping[i-1]`` (sequence)."""
    if isinstance(mapping, dict):
        get = mapping.__getitem__
    else:
        get = lambda i: mapping[i - 1]  # noqa: E731
    if isinstance(t, Leaf):
        return Leaf(get(t.var))
    return Node(relabel(t.left, mapping), relabel(t.right, mapping))


def enumerate_full_linear_terms(n: int, max_size: int = MAX_FULL_LINEAR_SIZE) -> Iterator[Term]:
    """Yield every full linear term over ``x1..xn``: bracketing-major, then
    permutations of the labels in lexicographic order."""
    if not 1 <= n <= max_size:
        raise SizeLimitError(f"full linear term size must be in 1..{max_size}, got {n}")

    def gen() -> Iterator[Term]:
        perms = list(itertools.permutations(range(1, n + 1)))
        for b in _bracketings(1, n):
            for p in perms:
                yield relabel(b, p)

    return gen()


def mirror(t: Term) -> Term:
    """The left-right mirror image of ``t`` (what an anti-isomorphism does to a term)."""
    if isinstance(t, Leaf):
        return t
    return Node(mirror(t.right), mirror(t.left))


# ---------------------------------------------------------------------------
# depths

DepthKind = Literal["full", "left", "right"]


@dataclass(frozen=True)
class DepthVector:
    kind: str
    values: dict[int, int]

    def as_tuple(self) -> tuple[int, ...]:
        """Values ordered by leaf label."""
        return tuple(self.values[i] for i in sorted(self.values))

    def reduced(self, modulus: int) -> tuple[int, ...]:
        return tuple(v % modulus for v in self.as_tuple())


def positional_depths(t: Term) -> list[tuple[int, int, int]]:
    """``(label, left_depth, right_depth)`` for each leaf, left to right."""
    out: list[tuple[int, int, int]] = []
    stack: list[tuple[Term, int, int]] = [(t, 0, 0)]
    while stack:
        s, lft, rgt = stack.pop()
        if isinstance(s, Leaf):
            out.append((s.var, lft, rgt))
        else:
            stack.append((s.right, lft, rgt + 1))
            stack.append((s.left, lft + 1, rgt))
    return out


def depth_vector(t: Term, kind: DepthKind = "full") -> DepthVector:
    """Number of all, left, or right edges on each root-to-leaf path."""
    _check_linear(t)
    if kind not in ("full", "left", "right"):
        raise ValueError(f"unknown depth kind {kind!r}")
    values = {}
    for label, lft, rgt in positional_depths(t):
        values[label] = {"full": lft + rgt, "left": lft, "right": rgt}[kind]
    return DepthVector(kind, values)


# ---------------------------------------------------------------------------
# leftmost decomposition and standard bracketings


@dataclass(frozen=True)
class LeftmostDecomposition:
    head: Leaf
    tail: tuple[Term, ...]

    @property
    def m(self) -> int:
        return len(self.tail)

    def rebuild(self) -> Term:
        return leftmost_bracketing([self.head, *self.tail])


def leftmost_decomposition(t: Term) -> LeftmostDecomposition:
    tail: list[Term] = []
    while isinstance(t, Node):
        tail.append(t.right)
        t = t.left
    tail.reverse()
    return LeftmostDecomposition(t, tuple(tail))


def leftmost_bracketing(terms: Iterable[Term]) -> Term:
    """``[t1, ..., tk]``: left-associated product preserving list order."""
    it = iter(terms)
    try:
        acc = next(it)
    except StopIteration:
        raise EmptyTermListError("leftmost bracketing of an empty list") from None
    for t in it:
        acc = Node(acc, t)
    return acc


def rightmost_bracketing(terms: Iterable[Term]) -> Term:
    """``<t1, ..., tk>``: right-associated product preserving list order."""
    items = list(terms)
    if not items:
        raise EmptyTermListError("rightmost bracketing of an empty list")
    acc = items[-1]
    for t in reversed(items[:-1]):
        acc = Node(t, acc)
    return acc


def standard_variant(t: Term, which: Literal["L", "L<", "R", "R<"]) -> Term:
    labels = _check_linear(t)
    if which in ("L<", "R<"):
        labels = tuple(sorted(labels))
    leaves = [Leaf(i) for i in labels]
    if which in ("L", "L<"):
        return leftmost_bracketing(leaves)
    if which in ("R", "R<"):
        return rightmost_bracketing(leaves)
    raise ValueError(f"unknown variant {which!r}")


# ---------------------------------------------------------------------------
# nests and set partitions


@dataclass(frozen=True)
class EggPartition:
    blocks: frozenset[frozenset[int]]

    @property
    def pairs(self) -> frozenset[frozenset[int]]:
        return frozenset(b for b in self.blocks if len(b) == 2)

    def sorted_blocks(self) -> list[list[int]]:
        return sorted(sorted(b) for b in self.blocks)


def egg_partition(t: Term) -> EggPartition:
    """Egg pairs of the maximal nests of ``t``; every other variable is a singleton.

    A nest is a leaf, or a node with one leaf child whose other child is a
    nest.  A nontrivial nest contains exactly one subterm ``xi xj`` and
    those two variables are its eggs.
    """
    labels = _check_linear(t)
    if len(labels) < 2:
        raise NoEggsError("a single variable has no eggs")
    pairs: list[frozenset[int]] = []

    def visit(s: Term) -> tuple[bool, frozenset[int] | None]:
        if isinstance(s, Leaf):
            return True, None
        l_nest, l_eggs = visit(s.left)
        r_nest, r_eggs = visit(s.right)
        l_leaf = isinstance(s.left, Leaf)
        r_leaf = isinstance(s.right, Leaf)
        if l_leaf and r_leaf:
            return True, frozenset((s.left.var, s.right.var))
        if l_leaf and r_nest:
            return True, r_eggs
        if r_leaf and l_nest:
            return True, l_eggs
        for nest, eggs in ((l_nest, l_eggs), (r_nest, r_eggs)):
            if nest and eggs is not None:
                pairs.append(eggs)
        return False, None

    root_nest, root_eggs = visit(t)
    if root_nest and root_eggs is not None:
        pairs.append(root_eggs)
    paired = set().union(*pairs)
    singles = [frozenset((i,)) for i in labels if i not in paired]
    return EggPartition(frozenset(pairs + singles))


@dataclass(frozen=True)
class RootedPartition:
    root: int
    blocks: frozenset[frozenset[int]]

    @property
    def root_block(self) -> frozenset[int]:
        return frozenset((self.root,))


@dataclass(frozen=True)
class RootedOrderedPartition:
    root: int
    blocks: tuple[frozenset[int], ...]

    @property
    def root_block(self) -> frozenset[int]:
        return frozenset((self.root,))


def rooted_partition(t: Term) -> RootedPartition:
    _check_linear(t)
    dec = leftmost_decomposition(t)
    return RootedPartition(dec.head.var, frozenset(frozenset(s.labels()) for s in dec.tail))


def rooted_ordered_partition(t: Term) -> RootedOrderedPartition:
    _check_linear(t)
    dec = leftmost_decomposition(t)
    return RootedOrderedPartition(dec.head.var, tuple(frozenset(s.labels()) for s in dec.tail))


# ---------------------------------------------------------------------------
# text form
#
#   term     := variable | "(" term term ")"
#   variable := "x" digits | one of v w x y z   (letters map to 1..5)
#
# Whitespace and "*" between subterms are ignored; the outermost parentheses
# may be omitted; redundant parentheses around a single subterm are accepted.


class _Parser:
    def __init__(self, text: str):
        self.data = text.encode("utf-8")
        self.pos = 0

    def skip(self) -> None:
        while self.pos < len(self.data) and self.data[self.pos] in b" \t\r\n*":
            self.pos += 1

    def sequence(self, closing: bool) -> Term:
        start = self.pos
        items: list[Term] = []
        while True:
            self.skip()
            if self.pos >= len(self.data):
                if closing:
                    raise UnbalancedParenError("missing ')'", self.pos)
                break
            c = self.data[self.pos]
            if c == ord(")"):
                if not closing:
                    raise UnbalancedParenError("unexpected ')'", self.pos)
                break
            if len(items) == 2:
                raise JuxtapositionError("more than two juxtaposed subterms", self.pos)
            items.append(self.atom())
        if not items:
            if closing:
                raise EmptyInputError("empty parentheses", start)
            raise EmptyInputError("empty input", start)
        if closing:
            self.pos += 1
        return items[0] if len(items) == 1 else Node(items[0], items[1])

    def atom(self) -> Term:
        c = self.data[self.pos]
        if c == ord("("):
            self.pos += 1
            return self.sequence(closing=True)
        if c == ord("x") and self.pos + 1 < len(self.data) and chr(self.data[self.pos + 1]).isdigit():
            end = self.pos + 1
            while end < len(self.data) and chr(self.data[end]).isdigit():
                end += 1
            value = int(self.data[self.pos + 1 : end])
            if value < 1:
                raise UnknownTokenError("variable index must be positive", self.pos)
            self.pos = end
            return Leaf(value)
        if chr(c) in LETTERS:
            self.pos += 1
            return Leaf(LETTERS.index(chr(c)) + 1)
        raise UnknownTokenError(f"unknown token {chr(c)!r}", self.pos)


def parse_term(text: str) -> Term:
    """Parse the text form of a term, e.g. ``"(x1 x2) x3"`` or ``"w((xy)z)"``."""
    return _Parser(text).sequence(closing=False)


def format_term(t: Term, letters: bool = False) -> str:
    """Render ``t`` with juxtaposition, omitting the outermost parentheses.

    With ``letters=True`` and all labels at most 5, variables print as v..z.
    """
    use_letters = letters and max(t.labels()) <= len(LETTERS)

    def var(i: int) -> str:
        return LETTERS[i - 1] if use_letters else f"x{i}"

    def go(s: Term, top: bool) -> str:
        if isinstance(s, Leaf):
            return var(s.var)
        body = go(s.left, False) + go(s.right, False)
        return body if top else f"({body})"

    return go(t, True)
