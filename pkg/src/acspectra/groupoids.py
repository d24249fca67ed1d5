"""Finite groupoids given by Cayley tables over ``{0, ..., k-1}``."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Any, Mapping, Sequence

import numpy as np

from .errors import AssignmentError, CapExceededError, CayleyFormatError, SizeLimitError
from .terms import Leaf, Term

__all__ = [
    "Groupoid",
    "MAX_ISOMORPHISM_SIZE",
    "evaluate",
    "evaluate_grid",
    "find_isomorphism",
    "parse_cayley",
    "load_groupoid",
]

MAX_ISOMORPHISM_SIZE = 8


@dataclass(frozen=True)
class Groupoid:
    table: tuple[tuple[int, ...], ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        table = tuple(tuple(int(v) for v in row) for row in self.table)
        object.__setattr__(self, "table", table)
        k = len(table)
        if k == 0:
            raise CayleyFormatError("a groupoid needs at least one element")
        for r, row in enumerate(table):
            if len(row) != k:
                raise CayleyFormatError(f"row {r} has {len(row)} entries, expected {k}")
            for c, v in enumerate(row):
                if not 0 <= v < k:
                    raise CayleyFormatError(f"entry ({r},{c}) = {v} is outside 0..{k - 1}")

    @property
    def size(self) -> int:
        return len(self.table)

    @cached_property
    def array(self) -> np.ndarray:
        arr = np.array(self.table, dtype=np.uint8)
        arr.setflags(write=False)
        return arr

    def op(self, a: int, b: int) -> int:
        return self.table[a][b]

    def is_commutative(self) -> bool:
        return bool((self.array == self.array.T).all())

    def is_associative(self) -> bool:
        t = self.array
        idx = np.arange(self.size)
        lhs = t[t[idx[:, None], idx[None, :]][:, :, None], idx[None, None, :]]
        rhs = t[idx[:, None, None], t[idx[:, None], idx[None, :]][None, :, :]]
        return bool((lhs == rhs).all())

    def identity_element(self) -> int | None:
        for e in range(self.size):
            if all(self.table[e][a] == a and self.table[a][e] == a for a in range(self.size)):
                return e
        return None

    def opposite(self, name: str | None = None) -> Groupoid:
        """The groupoid with ``a * b`` replaced by ``b * a``."""
        return Groupoid(tuple(zip(*self.table)), name=name)

    def label(self) -> str:
        return self.name or "<unnamed>"

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {"size": self.size, "table": [list(r) for r in self.table]}
        if self.name:
            out["name"] = self.name
        return out


def evaluate(g: Groupoid, t: Term, a: Mapping[int, int] | Sequence[int]) -> int:
    """Value of ``t`` under the assignment ``a`` (a mapping, or a sequence indexed from x1)."""

    def value(i: int) -> int:
        try:
            v = a[i] if isinstance(a, Mapping) else a[i - 1]
        except (KeyError, IndexError):
            raise AssignmentError(f"no value assigned to x{i}") from None
        if not 0 <= v < g.size:
            raise AssignmentError(f"x{i} = {v} is outside 0..{g.size - 1}")
        return v

    def go(s: Term) -> int:
        if isinstance(s, Leaf):
            return value(s.var)
        return g.table[go(s.left)][go(s.right)]

    return go(t)


def evaluate_grid(g: Groupoid, t: Term, variables: Sequence[int], cap: int | None = None) -> np.ndarray:
    """Evaluate ``t`` at every assignment of ``variables`` at once.

    The result is a flat array of length ``k ** len(variables)`` indexed by
    the assignment, first variable most significant.
    """
    k, v = g.size, len(variables)
    if cap is not None and k**v > cap:
        raise CapExceededError(f"{k}^{v} assignments exceed the cap of {cap}")
    axis = {var: i for i, var in enumerate(variables)}
    if v == 0:
        grid = np.zeros((0, 1), dtype=np.uint8)
    else:
        grid = np.indices((k,) * v, dtype=np.uint8).reshape(v, -1)
    flat = g.array.ravel()

    def go(s: Term) -> np.ndarray:
        if isinstance(s, Leaf):
            if s.var not in axis:
                raise AssignmentError(f"no value assigned to x{s.var}")
            return grid[axis[s.var]]
        return flat[go(s.left).astype(np.intp) * k + go(s.right)]

    return go(t)


def find_isomorphism(g: Groupoid, h: Groupoid, anti: bool = False) -> tuple[int, ...] | None:
    """First bijection ``f`` (lexicographic) with ``f(a*b) = f(a)*f(b)``,
    or ``f(a*b) = f(b)*f(a)`` when ``anti`` is set; ``None`` if there is none."""
    if g.size != h.size:
        raise SizeLimitError(f"sizes differ: {g.size} vs {h.size}")
    if g.size > MAX_ISOMORPHISM_SIZE:
        raise SizeLimitError(f"brute-force search is limited to size {MAX_ISOMORPHISM_SIZE}")
    k = g.size
    pairs = list(itertools.product(range(k), repeat=2))
    for f in itertools.permutations(range(k)):
        if anti:
            ok = all(f[g.table[a][b]] == h.table[f[b]][f[a]] for a, b in pairs)
        else:
            ok = all(f[g.table[a][b]] == h.table[f[a]][f[b]] for a, b in pairs)
        if ok:
            return f
    return None


def _from_rows(rows: Any, name: str | None, size: int | None = None) -> Groupoid:
    if not isinstance(rows, (list, tuple)) or not rows:
        raise CayleyFormatError("table must be a nonempty list of rows")
    if size is not None and size != len(rows):
        raise CayleyFormatError(f"declared size {size} but table has {len(rows)} rows")
    for row in rows:
        if not isinstance(row, (list, tuple)) or not all(isinstance(v, int) and not isinstance(v, bool) for v in row):
            raise CayleyFormatError("table rows must be lists of integers")
    return Groupoid(tuple(tuple(r) for r in rows), name=name)


def parse_cayley(source: str | Mapping[str, Any], name: str | None = None) -> Groupoid:
    """Build a groupoid from Cayley text or a structured document.

    Text: ``k`` rows of ``k`` integers, rows separated by newlines or ``/``.
    A string starting with ``{`` is read as JSON.  Structured documents
    carry ``size``, ``table`` and optionally ``name``.
    """
    if isinstance(source, Mapping):
        if "table" not in source:
            raise CayleyFormatError("structured document needs a 'table' field")
        size = source.get("size")
        if size is not None and (not isinstance(size, int) or size < 1):
            raise CayleyFormatError(f"invalid size {size!r}")
        return _from_rows(source["table"], source.get("name", name), size)
    text = source.strip()
    if text.startswith("{"):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CayleyFormatError(f"invalid JSON: {exc}") from None
        return parse_cayley(doc, name)
    rows = []
    for line in text.replace("/", "\n").splitlines():
        if line.strip():
            try:
                rows.append([int(tok) for tok in line.split()])
            except ValueError:
                raise CayleyFormatError(f"non-integer entry in row {line.strip()!r}") from None
    return _from_rows(rows, name)


def load_groupoid(path: str | Path) -> Groupoid:
    p = Path(path)
    return parse_cayley(p.read_text(), name=p.stem)
