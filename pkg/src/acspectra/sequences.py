"""Exact integer sequences used as spectrum bounds.

Everything here works on Python integers, so values are exact for any n.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable

from .errors import UnknownNameError

__all__ = [
    "catalan",
    "schroeder3",
    "modular_catalan",
    "fibonacci",
    "stirling2",
    "bell",
    "restricted_bell",
    "ordered_bell",
    "SequenceOracle",
    "bound_formula",
    "formula_labels",
    "named_sequence",
    "sequence_names",
]


def catalan(n: int) -> int:
    return comb(2 * n, n) // (n + 1)


def schroeder3(n: int) -> int:
    """(2n)! / (2^n n!), the number of perfect matchings on 2n points."""
    return factorial(2 * n) // (2**n * factorial(n))


def modular_catalan(k: int, n: int) -> int:
    """Alternating binomial sum; equals the number of ``n+1``-leaf trees up to
    right-depth congruence mod ``k``."""
    if k < 1:
        raise ValueError("k must be positive")
    if n == 0:
        return 1
    total = Fraction(0)
    j = 0
    while j * k <= n - 1:
        total += Fraction((-1) ** j * comb(n, j) * comb(2 * n - j * k, n + 1), n)
        j += 1
    assert total.denominator == 1
    return int(total)


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def bell(n: int) -> int:
    return sum(stirling2(n, k) for k in range(n + 1))


@lru_cache(maxsize=None)
def restricted_bell(n: int, m: int) -> int:
    """Partitions of an n-set into blocks of size at most m."""
    if n == 0:
        return 1
    # the block containing element n has j further elements
    return sum(comb(n - 1, j) * restricted_bell(n - 1 - j, m) for j in range(min(m, n)))


def ordered_bell(n: int) -> int:
    return sum(factorial(k) * stirling2(n, k) for k in range(n + 1))


@dataclass(frozen=True)
class SequenceOracle:
    """An exact sequence given piecewise: ``pieces`` holds ``(first, last, f)``
    with ``last=None`` for an unbounded final range."""

    name: str
    pieces: tuple[tuple[int, int | None, Callable[[int], int]], ...]
    params: tuple[tuple[str, int], ...] = ()

    @property
    def start(self) -> int:
        return min(lo for lo, _, _ in self.pieces)

    def defined(self, n: int) -> bool:
        return any(lo <= n and (hi is None or n <= hi) for lo, hi, _ in self.pieces)

    def __call__(self, n: int) -> int:
        for lo, hi, f in self.pieces:
            if lo <= n and (hi is None or n <= hi):
                return f(n)
        raise ValueError(f"{self.name} is not defined at n={n}")

    def values(self, first: int, last: int) -> list[int]:
        return [self(n) for n in range(first, last + 1)]


def _single(name: str, f: Callable[[int], int], start: int = 1, **params: int) -> SequenceOracle:
    return SequenceOracle(name, ((start, None, f),), tuple(params.items()))


def _ac_right_depth(k: int) -> Callable[[int], int]:
    def f(n: int) -> int:
        tail = sum(factorial(i) * stirling2(n - 1, i) for i in range(0, k - 1))
        return factorial(k) * stirling2(n, k) + n * tail

    return f


_FORMULAS: dict[str, Callable[[], SequenceOracle]] = {
    "1": lambda: _single("1", lambda n: 1),
    "2": lambda: _single("2", lambda n: 2),
    "3": lambda: _single("3", lambda n: 3),
    "4": lambda: _single("4", lambda n: 4),
    "n": lambda: _single("n", lambda n: n),
    "n+1": lambda: _single("n+1", lambda n: n + 1),
    "2n": lambda: _single("2n", lambda n: 2 * n),
    "3n": lambda: _single("3n", lambda n: 3 * n),
    "2n^2": lambda: _single("2n^2", lambda n: 2 * n * n),
    "n-1": lambda: _single("n-1", lambda n: n - 1, start=2),
    "2^{n-1}-1": lambda: _single("2^{n-1}-1", lambda n: 2 ** (n - 1) - 1, start=2),
    "2^{n-2}": lambda: _single("2^{n-2}", lambda n: 2 ** (n - 2), start=2),
    "2^n-2": lambda: _single("2^n-2", lambda n: 2**n - 2, start=2),
    "n(2^{n-1}-1)": lambda: _single("n(2^{n-1}-1)", lambda n: n * (2 ** (n - 1) - 1), start=2),
    "A185109": lambda: _single(
        "A185109", lambda n: factorial(n) + sum(factorial(k) * comb(n, k) for k in range(n - 2))
    ),
    "F(n+1)-1": lambda: _single("F(n+1)-1", lambda n: fibonacci(n + 1) - 1, start=2),
    "B(n,2)-1": lambda: _single("B(n,2)-1", lambda n: restricted_bell(n, 2) - 1, start=2),
    "nB(n-1)": lambda: _single("nB(n-1)", lambda n: n * bell(n - 1)),
    "nB'(n-1)": lambda: _single("nB'(n-1)", lambda n: n * ordered_bell(n - 1)),
    "C(n-1)": lambda: _single("C(n-1)", lambda n: catalan(n - 1)),
    "D(n-1)": lambda: _single("D(n-1)", lambda n: schroeder3(n - 1)),
    "n!C(n-1)": lambda: _single("n!C(n-1)", lambda n: factorial(n) * catalan(n - 1)),
    "floor(2^n/3)": lambda: _single("floor(2^n/3)", lambda n: 2**n // 3),
    "(2^n-(-1)^n)/3": lambda: _single("(2^n-(-1)^n)/3", lambda n: (2**n - (-1) ** n) // 3),
    "Prop3.3/assoc": lambda: SequenceOracle(
        "Prop3.3/assoc", ((1, 2, lambda n: 1), (3, 3, lambda n: 2), (4, None, lambda n: 3))
    ),
    "Prop3.3/ac": lambda: SequenceOracle("Prop3.3/ac", ((3, 3, lambda n: 3), (4, None, lambda n: n + 1))),
    "Prop3.5/assoc": lambda: SequenceOracle(
        "Prop3.5/assoc", ((1, 2, lambda n: 1), (3, 3, lambda n: 2), (4, None, lambda n: 3))
    ),
    "Prop3.5/ac": lambda: SequenceOracle(
        "Prop3.5/ac", ((1, 2, lambda n: n), (3, 3, lambda n: 2 * n), (4, None, lambda n: 3 * n))
    ),
    "Thm3.6/assoc": lambda: SequenceOracle("Thm3.6/assoc", ((3, 3, lambda n: 2), (4, None, lambda n: 4))),
    "Thm3.6/ac": lambda: SequenceOracle(
        "Thm3.6/ac", ((3, 3, lambda n: n * n), (4, None, lambda n: 2 * n * n))
    ),
}

_PARAM_FORMULAS: dict[str, Callable[[int], SequenceOracle]] = {
    "C(k,n-1)": lambda k: _single("C(k,n-1)", lambda n: modular_catalan(k, n - 1), k=k),
    "k!S(n,k)+n*sum_{i<=k-2} i!S(n-1,i)": lambda k: _single(
        "k!S(n,k)+n*sum_{i<=k-2} i!S(n-1,i)", _ac_right_depth(k), k=k
    ),
    "k": lambda k: _single("k", lambda n: k, k=k),
    "kn": lambda k: _single("kn", lambda n: k * n, k=k),
}

_ALIASES = {
    "n!+sum_{k=0}^{n-3} k!binom(n,k)": "A185109",
    "n(2^(n-1)-1)": "n(2^{n-1}-1)",
    "2^(n-2)": "2^{n-2}",
    "2^(n-1)-1": "2^{n-1}-1",
}


def formula_labels() -> list[str]:
    return list(_FORMULAS) + list(_PARAM_FORMULAS)


def bound_formula(label: str, k: int | None = None) -> SequenceOracle:
    """Exact oracle for a named bound formula; parametrised formulas need ``k``."""
    label = _ALIASES.get(label, label)
    if label in _FORMULAS:
        return _FORMULAS[label]()
    if label in _PARAM_FORMULAS:
        if k is None or k < 1:
            raise ValueError(f"formula {label!r} needs a positive parameter k")
        return _PARAM_FORMULAS[label](k)
    raise UnknownNameError(f"unknown bound formula {label!r}")


# Plain sequences for the command line; ``k`` is the second argument where one is taken.
_NAMED: dict[str, tuple[Callable[..., int], bool]] = {
    "catalan": (catalan, False),
    "schroeder3": (schroeder3, False),
    "modular-catalan": (lambda n, k: modular_catalan(k, n), True),
    "fibonacci": (fibonacci, False),
    "bell": (bell, False),
    "restricted-bell": (restricted_bell, True),
    "ordered-bell": (ordered_bell, False),
    "stirling2": (stirling2, True),
}


def sequence_names() -> list[str]:
    return list(_NAMED) + formula_labels()


def named_sequence(name: str, k: int | None = None) -> Callable[[int], int]:
    """A callable ``n -> value`` for a plain sequence or a bound formula."""
    if name in _NAMED:
        f, needs_k = _NAMED[name]
        if needs_k:
            if k is None:
                raise ValueError(f"sequence {name!r} needs --k")
            return lambda n: f(n, k)
        return f
    return bound_formula(name, k)
