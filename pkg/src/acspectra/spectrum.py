"""Associative spectra and ac-spectra by deduplicating induced term functions.

Every term function of arity ``n`` over a ``k``-element groupoid is stored as
a :class:`FunctionTable`: the ``k**n`` values in assignment order, first
argument most significant.  Two engines count distinct tables:

``dp``
    Builds the distinct tables of arity ``n`` from those of smaller arity.
    A term splits uniquely at its root into two subterms, and the function
    of the whole depends only on the functions of the two parts, so
    deduplicating at every level loses nothing.  For bracketings the left
    part always takes a prefix of the arguments.  For full linear terms the
    left part takes an arbitrary nonempty proper subset ``S`` of positions;
    relabelling each side increasingly onto ``1..|S|`` lands in the lower
    levels, and each level is closed under permuting arguments because all
    subsets are tried, so restricting to increasing position maps is
    complete.
``naive``
    Streams every term and evaluates it directly.  It exists as an oracle
    for the ``dp`` engine on small ``n``.
"""

from __future__ import annotations

import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Any, Iterable, Iterator, Literal, Sequence

import numpy as np

from .errors import MalformedTermError, SizeLimitError
from .groupoids import Groupoid, evaluate_grid
from .terms import (
    Term,
    enumerate_bracketings,
    enumerate_full_linear_terms,
    positional_depths,
)

__all__ = [
    "FunctionTable",
    "SpectrumReport",
    "DepthClassQuery",
    "DEFAULT_MAX_FUNCTIONS",
    "DEFAULT_MAX_ENTRIES",
    "ENGINE_LIMITS",
    "bits_per_entry",
    "pack_rows",
    "induced_table",
    "compose_split",
    "associative_spectrum",
    "ac_spectrum",
    "spectrum",
    "count_depth_classes",
    "depth_class_key",
]

DEFAULT_MAX_FUNCTIONS = 2_000_000
DEFAULT_MAX_ENTRIES = 1 << 22
# Largest n each engine accepts by default, per spectrum kind.
ENGINE_LIMITS = {
    ("associative", "dp"): 10,
    ("associative", "naive"): 6,
    ("ac", "dp"): 7,
    ("ac", "naive"): 6,
}
# Upper bound on uint8 entries materialised per composition block.
_BLOCK_ENTRIES = 1 << 23

Kind = Literal["associative", "ac"]
Engine = Literal["dp", "naive"]


def bits_per_entry(k: int) -> int:
    return max(1, (k - 1).bit_length())


def pack_rows(values: np.ndarray, k: int) -> np.ndarray:
    """Pack each row of ``values`` (entries < k) at ``bits_per_entry(k)`` bits per entry."""
    values = np.asarray(values, dtype=np.uint8)
    if values.ndim == 1:
        values = values[None, :]
    rows, n = values.shape
    b = bits_per_entry(k)
    if b == 8:
        return values.copy()
    planes = (values[:, :, None] >> np.arange(b, dtype=np.uint8)) & 1
    return np.packbits(planes.reshape(rows, n * b), axis=1)


class FunctionTable:
    """An ``arity``-ary operation on ``{0..base-1}`` as a flat value vector."""

    __slots__ = ("arity", "base", "values", "__dict__")

    def __init__(self, arity: int, base: int, values: np.ndarray):
        values = np.ascontiguousarray(values, dtype=np.uint8)
        if values.shape != (base**arity,):
            raise ValueError(f"expected {base ** arity} entries, got shape {values.shape}")
        if values.size and int(values.max()) >= base:
            raise ValueError("table entry out of range")
        values.setflags(write=False)
        self.arity = arity
        self.base = base
        self.values = values

    @classmethod
    def identity(cls, base: int) -> FunctionTable:
        return cls(1, base, np.arange(base, dtype=np.uint8))

    @classmethod
    def projection(cls, base: int, arity: int, i: int) -> FunctionTable:
        """The table of ``(a1..an) -> ai`` (``i`` is 1-based)."""
        grid = np.indices((base,) * arity, dtype=np.uint8).reshape(arity, -1)
        return cls(arity, base, grid[i - 1])

    @cached_property
    def packed(self) -> bytes:
        return pack_rows(self.values, self.base)[0].tobytes()

    def __call__(self, *args: int) -> int:
        if len(args) != self.arity:
            raise TypeError(f"expected {self.arity} arguments")
        idx = 0
        for a in args:
            idx = idx * self.base + a
        return int(self.values[idx])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FunctionTable):
            return NotImplemented
        return (self.arity, self.base, self.packed) == (other.arity, other.base, other.packed)

    def __hash__(self) -> int:
        return hash((self.arity, self.base, self.packed))

    def __repr__(self) -> str:
        return f"FunctionTable(arity={self.arity}, base={self.base})"


def induced_table(g: Groupoid, t: Term, max_entries: int = DEFAULT_MAX_ENTRIES) -> FunctionTable:
    """The term function of a full linear term ``t`` on ``g``."""
    n = t.size
    if sorted(t.labels()) != list(range(1, n + 1)):
        raise MalformedTermError("induced_table needs a full linear term over x1..xn")
    values = evaluate_grid(g, t, range(1, n + 1), cap=max_entries)
    return FunctionTable(n, g.size, values)


@lru_cache(maxsize=512)
def _split_indices(k: int, m: int, left: tuple[int, ...]) -> tuple[np.ndarray, np.ndarray]:
    """For every assignment of arity ``m``: index of its restriction to the
    ``left`` positions and to the remaining ones."""
    right = tuple(i for i in range(1, m + 1) if i not in left)
    digits = np.indices((k,) * m, dtype=np.int64).reshape(m, -1)

    def sub_index(pos: tuple[int, ...]) -> np.ndarray:
        idx = np.zeros(k**m, dtype=np.int64)
        for j in pos:
            idx = idx * k + digits[j - 1]
        return idx

    il, ir = sub_index(left), sub_index(right)
    il.setflags(write=False)
    ir.setflags(write=False)
    return il, ir


def _check_positions(left: Sequence[int], m: int) -> tuple[int, ...]:
    pos = tuple(int(i) for i in left)
    if not pos or len(pos) >= m or any(b <= a for a, b in zip(pos, pos[1:])) or pos[0] < 1 or pos[-1] > m:
        raise ValueError(f"left positions {pos} must be a strictly increasing proper subset of 1..{m}")
    return pos


def compose_split(
    f: FunctionTable, h: FunctionTable, left_positions: Sequence[int], g: Groupoid
) -> FunctionTable:
    """``(a1..am) -> f(a|left) * h(a|rest)`` with ``m = f.arity + h.arity``."""
    m = f.arity + h.arity
    pos = _check_positions(left_positions, m)
    if len(pos) != f.arity:
        raise ValueError(f"{len(pos)} left positions for a table of arity {f.arity}")
    k = g.size
    il, ir = _split_indices(k, m, pos)
    values = g.array.ravel()[f.values[il].astype(np.intp) * k + h.values[ir]]
    return FunctionTable(m, k, values)


# ---------------------------------------------------------------------------
# deduplication


class _DistinctTables:
    """Distinct rows of one arity, keyed by their packed bytes."""

    def __init__(self, k: int, keep_values: bool):
        self.k = k
        self.keep_values = keep_values
        self.keys: set[bytes] = set()
        self.ordered: list[tuple[bytes, np.ndarray]] = []
        self.packed_bytes = 0

    def __len__(self) -> int:
        return len(self.keys)

    def add_unique(self, rows: np.ndarray, packed: np.ndarray) -> None:
        for row, key_arr in zip(rows, packed):
            key = key_arr.tobytes()
            if key not in self.keys:
                self.keys.add(key)
                self.packed_bytes += len(key)
                if self.keep_values:
                    self.ordered.append((key, row.copy()))

    def finish(self) -> np.ndarray:
        """Distinct rows sorted by packed key, so level order never depends on scheduling."""
        self.ordered.sort(key=lambda kv: kv[0])
        if not self.ordered:
            return np.zeros((0, 0), dtype=np.uint8)
        return np.stack([row for _, row in self.ordered])


def _unique_block(block: np.ndarray, k: int) -> tuple[np.ndarray, np.ndarray]:
    packed = pack_rows(block, k)
    width = packed.shape[1]
    keys = np.ascontiguousarray(packed).view(np.dtype((np.void, width))).ravel()
    _, first = np.unique(keys, return_index=True)
    first.sort()
    return block[first], packed[first]


def _pair_blocks(left: np.ndarray, right: np.ndarray, n_out: int) -> Iterator[tuple[slice, slice]]:
    a, b = len(left), len(right)
    per_pair = max(1, n_out)
    cb = max(1, min(b, _BLOCK_ENTRIES // per_pair))
    ca = max(1, _BLOCK_ENTRIES // (per_pair * cb))
    for i in range(0, a, ca):
        for j in range(0, b, cb):
            yield slice(i, min(a, i + ca)), slice(j, min(b, j + cb))


def _run_blocks(work, blocks, pool, threads):
    """Apply ``work`` to each block, yielding results in submission order."""
    if pool is None:
        yield from map(work, blocks)
        return
    while True:
        window = list(itertools.islice(blocks, 2 * threads))
        if not window:
            return
        yield from pool.map(work, window)


@dataclass
class SpectrumReport:
    groupoid: str
    kind: str
    engine: str
    values: list[int] = field(default_factory=list)
    seconds: list[float] = field(default_factory=list)
    distinct_bytes: list[int] = field(default_factory=list)
    truncated: bool = False
    truncation_reason: str | None = None

    @property
    def n_max(self) -> int:
        return len(self.values)

    def value(self, n: int) -> int:
        return self.values[n - 1]

    def to_dict(self, timings: bool = False) -> dict[str, Any]:
        out: dict[str, Any] = {
            "groupoid": self.groupoid,
            "kind": self.kind,
            "engine": self.engine,
            "values": list(self.values),
            "truncated": self.truncated,
        }
        if self.truncation_reason:
            out["truncation_reason"] = self.truncation_reason
        if timings:
            out["seconds"] = [round(s, 6) for s in self.seconds]
            out["distinct_bytes"] = list(self.distinct_bytes)
        return out


def _check_engine(kind: str, engine: str, n_max: int, limit: int | None) -> None:
    if (kind, engine) not in ENGINE_LIMITS:
        raise ValueError(f"unknown engine {engine!r} for {kind} spectrum")
    cap = ENGINE_LIMITS[(kind, engine)] if limit is None else limit
    if not 1 <= n_max <= cap:
        raise SizeLimitError(f"{engine} engine for the {kind} spectrum accepts n in 1..{cap}, got {n_max}")


def _dp(
    g: Groupoid,
    kind: str,
    n_max: int,
    report: SpectrumReport,
    max_functions: int,
    max_entries: int,
    threads: int,
) -> None:
    k = g.size
    flat = g.array.ravel().astype(np.uint8)
    levels: dict[int, np.ndarray] = {1: np.arange(k, dtype=np.uint8)[None, :]}
    report.values.append(1)
    report.seconds.append(0.0)
    report.distinct_bytes.append(pack_rows(levels[1], k).size)
    pool = ThreadPoolExecutor(threads) if threads > 1 else None
    try:
        for n in range(2, n_max + 1):
            if k**n > max_entries:
                report.truncated = True
                report.truncation_reason = f"{k}^{n} entries exceed the cap of {max_entries}"
                return
            start = time.perf_counter()
            acc = _DistinctTables(k, keep_values=n < n_max)
            if kind == "associative":
                splits: Iterable[tuple[int, ...]] = (tuple(range(1, p + 1)) for p in range(1, n))
            else:
                splits = (c for p in range(1, n) for c in itertools.combinations(range(1, n + 1), p))
            for pos in splits:
                p = len(pos)
                left, right = levels[p], levels[n - p]
                il, ir = _split_indices(k, n, pos)
                lv = left[:, il].astype(np.uint16) * k
                rv = right[:, ir].astype(np.uint16)

                def work(blk: tuple[slice, slice], lv=lv, rv=rv) -> tuple[np.ndarray, np.ndarray]:
                    sa, sb = blk
                    out = flat[lv[sa, None, :] + rv[None, sb, :]]
                    return _unique_block(out.reshape(-1, k**n), k)

                blocks = _pair_blocks(left, right, k**n)
                for rows, packed in _run_blocks(work, blocks, pool, threads):
                    acc.add_unique(rows, packed)
                    if len(acc) > max_functions:
                        report.truncated = True
                        report.truncation_reason = (
                            f"more than {max_functions} distinct functions at n={n}"
                        )
                        return
            if n < n_max:
                levels[n] = acc.finish()
            report.values.append(len(acc))
            report.seconds.append(time.perf_counter() - start)
            report.distinct_bytes.append(acc.packed_bytes)
    finally:
        if pool:
            pool.shutdown()


def _naive(
    g: Groupoid, kind: str, n_max: int, report: SpectrumReport, max_functions: int, max_entries: int
) -> None:
    k = g.size
    for n in range(1, n_max + 1):
        if k**n > max_entries:
            report.truncated = True
            report.truncation_reason = f"{k}^{n} entries exceed the cap of {max_entries}"
            return
        start = time.perf_counter()
        acc = _DistinctTables(k, keep_values=False)
        terms = enumerate_bracketings(n) if kind == "associative" else enumerate_full_linear_terms(n)
        variables = range(1, n + 1)
        batch: list[np.ndarray] = []
        for t in itertools.chain(terms, [None]):
            if t is not None:
                batch.append(evaluate_grid(g, t, variables))
            if batch and (t is None or len(batch) >= 512):
                acc.add_unique(*_unique_block(np.stack(batch), k))
                batch = []
                if len(acc) > max_functions:
                    report.truncated = True
                    report.truncation_reason = f"more than {max_functions} distinct functions at n={n}"
                    return
        report.values.append(len(acc))
        report.seconds.append(time.perf_counter() - start)
        report.distinct_bytes.append(acc.packed_bytes)


def spectrum(
    g: Groupoid,
    kind: Kind,
    n_max: int,
    engine: Engine = "dp",
    *,
    max_functions: int = DEFAULT_MAX_FUNCTIONS,
    max_entries: int = DEFAULT_MAX_ENTRIES,
    threads: int = 1,
    n_limit: int | None = None,
) -> SpectrumReport:
    """Spectrum values for ``n = 1..n_max``.

    Exceeding ``max_functions`` or ``max_entries`` stops early: the report
    keeps the completed prefix and sets ``truncated``.  ``n_limit``
    overrides the per-engine default range check.
    """
    if kind not in ("associative", "ac"):
        raise ValueError(f"unknown spectrum kind {kind!r}")
    _check_engine(kind, engine, n_max, n_limit)
    report = SpectrumReport(g.label(), kind, engine)
    if engine == "dp":
        _dp(g, kind, n_max, report, max_functions, max_entries, max(1, threads))
    else:
        _naive(g, kind, n_max, report, max_functions, max_entries)
    return report


def associative_spectrum(g: Groupoid, n_max: int, engine: Engine = "dp", **kwargs: Any) -> SpectrumReport:
    return spectrum(g, "associative", n_max, engine, **kwargs)


def ac_spectrum(g: Groupoid, n_max: int, engine: Engine = "dp", **kwargs: Any) -> SpectrumReport:
    return spectrum(g, "ac", n_max, engine, **kwargs)


# ---------------------------------------------------------------------------
# depth congruence classes

DepthClassKind = Literal["full", "left", "right", "leftmost-left"]
DepthScope = Literal["bracketings", "full-linear"]
MAX_DEPTH_CLASS_N = {"bracketings": 14, "full-linear": 7}


@dataclass(frozen=True)
class DepthClassQuery:
    n: int
    modulus: int
    kind: str = "full"
    scope: str = "bracketings"

    def __post_init__(self) -> None:
        if self.n < 1 or self.modulus < 1:
            raise ValueError("n and modulus must be positive")
        if self.kind not in ("full", "left", "right", "leftmost-left"):
            raise ValueError(f"unknown depth kind {self.kind!r}")
        if self.scope not in MAX_DEPTH_CLASS_N:
            raise ValueError(f"unknown scope {self.scope!r}")


def _positional_key(t: Term, kind: str, modulus: int) -> tuple[int, ...]:
    rows = positional_depths(t)
    if kind == "leftmost-left":
        return (rows[0][1] % modulus,)
    col = {"full": lambda r: r[1] + r[2], "left": lambda r: r[1], "right": lambda r: r[2]}[kind]
    return tuple(col(r) % modulus for r in rows)


def depth_class_key(t: Term, kind: str, modulus: int) -> tuple[int, ...]:
    """Label-indexed reduced depths; for ``leftmost-left`` the pair
    (leftmost label, its left depth mod ``modulus``)."""
    rows = positional_depths(t)
    if kind == "leftmost-left":
        return (rows[0][0], rows[0][1] % modulus)
    col = {"full": lambda r: r[1] + r[2], "left": lambda r: r[1], "right": lambda r: r[2]}[kind]
    return tuple(col(r) % modulus for r in sorted(rows))


def count_depth_classes(q: DepthClassQuery, method: Literal["fast", "enumerate"] = "fast") -> int:
    """Number of classes of terms whose depth data agree modulo ``q.modulus``.

    For full linear terms the ``fast`` method uses that the label-indexed
    key of a relabelled bracketing is a rearrangement of its positional key,
    so it expands the distinct positional keys of bracketings instead of
    walking all ``n! * C(n-1)`` terms; ``enumerate`` walks them.
    """
    limit = MAX_DEPTH_CLASS_N[q.scope]
    if q.n > limit:
        raise SizeLimitError(f"{q.scope} depth classes are limited to n <= {limit}")
    if q.scope == "bracketings":
        return len({_positional_key(t, q.kind, q.modulus) for t in enumerate_bracketings(q.n)})
    if method == "enumerate":
        return len({depth_class_key(t, q.kind, q.modulus) for t in enumerate_full_linear_terms(q.n)})
    positional = {_positional_key(t, q.kind, q.modulus) for t in enumerate_bracketings(q.n)}
    if q.kind == "leftmost-left":
        return q.n * len(positional)
    keys: set[tuple[int, ...]] = set()
    for key in positional:
        keys.update(itertools.permutations(key))
    return len(keys)
