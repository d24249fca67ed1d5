"""Catalog of spectrum bounds and a verifier that replays them on groupoids.

A :class:`BoundProfile` says: every groupoid meeting the hypothesis has
``s^a_n <= assoc_bound(n)`` and ``s^ac_n <= ac_bound(n)`` from the given
starting points on.  Hypotheses are sets of catalog identities, or for the
depth profiles the statement that terms with congruent depth data induce the
same function.  The latter is checked by exhaustive scans over small ``n``.
"""

from __future__ import annotations

from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import factorial
from typing import Any, Callable, Iterable

from .errors import UnknownNameError
from .groupoids import Groupoid
from .identities import catalog_identity, satisfies_identity
from .registry import all_groupoids, registry
from .sequences import SequenceOracle, bound_formula, modular_catalan
from .spectrum import (
    DepthClassQuery,
    SpectrumReport,
    ac_spectrum,
    associative_spectrum,
    count_depth_classes,
    depth_class_key,
    induced_table,
)
from .terms import enumerate_full_linear_terms, mirror

__all__ = [
    "BoundProfile",
    "BoundCheck",
    "VerificationReport",
    "DepthClassCheck",
    "DEPTH_SCAN_N",
    "PROFILES",
    "profile",
    "profile_names",
    "resolve_witness",
    "noncommutative_monoid",
    "depth_hypothesis_scan",
    "verify",
    "verify_all",
    "depth_class_checks",
]

DEPTH_SCAN_N = 5

VERDICTS = ("attains", "holds", "hypothesis not met", "not attained", "violation")


@dataclass(frozen=True)
class BoundProfile:
    """One upper-bound result.

    ``assoc_bound``/``ac_bound`` are ``None`` only for the relative profile,
    where the ac bound is ``n! * s^a_n``.  ``dual_witnesses`` are the
    opposites of witnesses; they meet the mirrored hypothesis.
    """

    name: str
    identity_labels: tuple[str, ...]
    assoc_bound: SequenceOracle | None
    ac_bound: SequenceOracle | None
    start_assoc: int
    start_ac: int
    witnesses: tuple[str, ...]
    dual_witnesses: tuple[str, ...] = ()
    implication: bool = True
    depth_kind: str | None = None
    modulus: int | None = None

    @property
    def hypothesis_only(self) -> bool:
        return self.depth_kind is not None

    @property
    def relative(self) -> bool:
        return self.ac_bound is None

    def ac_limit(self, n: int, assoc_value: int | None = None) -> int:
        if self.ac_bound is None:
            if assoc_value is None:
                raise ValueError("relative bound needs the associative spectrum value")
            return factorial(n) * assoc_value
        return self.ac_bound(n)

    def describe(self) -> dict[str, Any]:
        def oracle(o: SequenceOracle | None) -> str:
            return "n!*s^a_n" if o is None else o.name

        return {
            "name": self.name,
            "identities": list(self.identity_labels),
            "depth_hypothesis": None
            if self.depth_kind is None
            else {"kind": self.depth_kind, "modulus": self.modulus},
            "assoc_bound": None if self.assoc_bound is None else oracle(self.assoc_bound),
            "ac_bound": oracle(self.ac_bound),
            "start_assoc": self.start_assoc,
            "start_ac": self.start_ac,
            "witnesses": list(self.witnesses),
            "dual_witnesses": list(self.dual_witnesses),
            "implication": self.implication,
        }


def _p(
    name: str,
    ids: str,
    assoc: str,
    ac: str,
    starts: tuple[int, int],
    witnesses: Iterable[str],
    duals: Iterable[str] = (),
    **kw: Any,
) -> BoundProfile:
    k = kw.pop("k", None)
    return BoundProfile(
        name,
        tuple(ids.split()),
        bound_formula(assoc, k),
        bound_formula(ac, k),
        starts[0],
        starts[1],
        tuple(witnesses),
        tuple(duals),
        **kw,
    )


PROFILES: tuple[BoundProfile, ...] = (
    _p("Prop3.1", "1", "1", "n", (1, 1), ["SC275", "P"], ["SC2029"]),
    _p("Prop3.2", "3 4 5 7", "2", "n+1", (3, 3), ["SC7", "SC28"], ["SC4", "SC5"]),
    _p("Prop3.3", "2 7 15", "Prop3.3/assoc", "Prop3.3/ac", (4, 4), ["SC405"]),
    _p("Prop3.4", "3 5 7 8 9", "2", "2n", (3, 3), ["SC189", "N"], ["SC170"]),
    _p("Prop3.5", "5 7 10 11 12 16", "Prop3.5/assoc", "Prop3.5/ac", (4, 4), ["SC3242"], ["SC3302"]),
    _p("Thm3.6", "5 7 11 13 17 18", "Thm3.6/assoc", "Thm3.6/ac", (4, 4), ["SC3162"], ["SC2467"]),
    _p("Prop4.1", "2 7", "n-1", "2^{n-1}-1", (2, 2), ["SC1066"]),
    _p("Prop4.2", "4 5 7", "n-1", "A185109", (2, 1), ["SC367"], ["SC10"]),
    _p("Prop4.3", "3 6 14", "2^{n-2}", "2^n-2", (2, 2), ["SC2302"], ["SC2155"]),
    _p("Thm4.4", "3 7 12", "2^{n-2}", "n(2^{n-1}-1)", (2, 2), ["SC271", "SC356"], ["SC1610", "SC2032"]),
    _p("Prop5.1", "2 11", "F(n+1)-1", "B(n,2)-1", (2, 2), ["SC79", "SC1701"]),
    _p("Thm5.2", "3 5", "2^{n-2}", "nB(n-1)", (2, 1), ["SC41", "SC96"], ["SC398", "SC1069"]),
    _p(
        "Thm5.3",
        "5 7",
        "2^{n-2}",
        "nB'(n-1)",
        (2, 1),
        ["SC262", "SC1812", "SC2446"],
        ["SC1441", "SC1793", "SC2430"],
    ),
    _p("Thm1.2", "2", "C(n-1)", "D(n-1)", (1, 1), ["SC1108", "SC2407", "SC3093"]),
    _p(
        "Thm6.1",
        "",
        "C(k,n-1)",
        "k!S(n,k)+n*sum_{i<=k-2} i!S(n-1,i)",
        (1, 1),
        ["SC2302"],
        ["SC2155"],
        k=2,
        depth_kind="right",
        modulus=2,
    ),
    _p(
        "Thm6.2",
        "",
        "k",
        "kn",
        (4, 4),
        ["SC3242"],
        ["SC3302"],
        k=3,
        depth_kind="leftmost-left",
        modulus=3,
    ),
    _p(
        "Thm6.4",
        "",
        "floor(2^n/3)",
        "(2^n-(-1)^n)/3",
        (2, 1),
        ["SC2346"],
        depth_kind="full",
        modulus=2,
    ),
    BoundProfile("Thm7.1", (), None, None, 1, 1, ("M3",), implication=False),
)

_BY_NAME = {p.name: p for p in PROFILES}


def profile_names() -> list[str]:
    return [p.name for p in PROFILES]


def profile(name: str) -> BoundProfile:
    try:
        return _BY_NAME[name]
    except KeyError:
        raise UnknownNameError(f"unknown bound profile {name!r}") from None


def noncommutative_monoid() -> Groupoid:
    """Identity 0 adjoined to the left-zero band {1, 2}."""
    return Groupoid(((0, 1, 2), (1, 1, 1), (2, 2, 2)), name="M3")


_EXTRA_WITNESSES: dict[str, Callable[[], Groupoid]] = {"M3": noncommutative_monoid}


def resolve_witness(name: str) -> Groupoid:
    if name in _EXTRA_WITNESSES:
        return _EXTRA_WITNESSES[name]()
    return registry(name)


@dataclass(frozen=True)
class BoundCheck:
    kind: str
    n: int
    value: int
    bound: int | None
    in_range: bool

    @property
    def relation(self) -> str:
        if self.bound is None:
            return "n/a"
        if self.value < self.bound:
            return "<"
        return "=" if self.value == self.bound else ">"

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "n": self.n,
            "value": self.value,
            "bound": self.bound,
            "relation": self.relation,
            "in_range": self.in_range,
        }


@dataclass
class VerificationReport:
    profile: str
    groupoid: str
    mirrored: bool
    hypotheses: dict[str, bool]
    checks: list[BoundCheck]
    verdict: str
    expected_attains: bool
    truncated: bool = False
    notes: list[str] = field(default_factory=list)

    @property
    def failed(self) -> bool:
        """A violation, or a named witness that does not attain its bound."""
        return self.verdict == "violation" or (self.expected_attains and self.verdict != "attains")

    def to_dict(self) -> dict[str, Any]:
        return {
            "profile": self.profile,
            "groupoid": self.groupoid,
            "mirrored": self.mirrored,
            "hypotheses": dict(self.hypotheses),
            "checks": [c.to_dict() for c in self.checks],
            "verdict": self.verdict,
            "expected_attains": self.expected_attains,
            "failed": self.failed,
            "truncated": self.truncated,
            "notes": list(self.notes),
        }


@dataclass(frozen=True)
class DepthScanResult:
    implies: bool
    iff: bool
    n_max: int


def depth_hypothesis_scan(
    g: Groupoid, kind: str, modulus: int, n_max: int = DEPTH_SCAN_N, mirrored: bool = False
) -> DepthScanResult:
    """Exhaustively compare depth-class keys with induced functions.

    ``implies``: terms with equal keys always induce equal functions.
    ``iff``: additionally, equal functions force equal keys.  With
    ``mirrored`` the keys are taken on the mirror image of each term, which
    is the hypothesis an opposite groupoid satisfies.
    """
    implies = iff = True
    for n in range(1, n_max + 1):
        by_key: dict[tuple[int, ...], set[bytes]] = defaultdict(set)
        by_function: dict[bytes, set[tuple[int, ...]]] = defaultdict(set)
        for t in enumerate_full_linear_terms(n):
            key = depth_class_key(mirror(t) if mirrored else t, kind, modulus)
            table = induced_table(g, t).packed
            by_key[key].add(table)
            by_function[table].add(key)
        if any(len(v) > 1 for v in by_key.values()):
            implies = iff = False
            break
        if any(len(v) > 1 for v in by_function.values()):
            iff = False
    return DepthScanResult(implies, iff, n_max)


SpectrumCache = dict[tuple[str, str], SpectrumReport]


def _spectrum(
    g: Groupoid, kind: str, n_max: int, cache: SpectrumCache | None, threads: int
) -> SpectrumReport:
    key = (repr(g.table), kind)
    if cache is not None and key in cache and cache[key].n_max >= n_max:
        report = cache[key]
    else:
        fn = associative_spectrum if kind == "associative" else ac_spectrum
        report = fn(g, n_max, threads=threads)
        if cache is not None:
            cache[key] = report
    return report


def verify(
    p: BoundProfile,
    g: Groupoid,
    n_max_assoc: int = 9,
    n_max_ac: int = 6,
    *,
    mirrored: bool = False,
    expected_attains: bool | None = None,
    cache: SpectrumCache | None = None,
    threads: int = 1,
) -> VerificationReport:
    """Replay ``p`` on ``g`` for ``n`` up to the given limits.

    With ``mirrored`` the hypothesis is replaced by its mirror image (the
    form an anti-isomorphic copy satisfies); the bounds are unchanged since
    anti-isomorphic groupoids have equal spectra.
    """
    name = g.label()
    if expected_attains is None:
        expected_attains = name in (p.dual_witnesses if mirrored else p.witnesses)
    notes: list[str] = []

    hypotheses: dict[str, bool] = {}
    for label in p.identity_labels:
        ident = catalog_identity(label)
        if mirrored:
            ident = ident.mirrored()
        hypotheses[label] = satisfies_identity(g, ident)
    if p.depth_kind is not None:
        assert p.modulus is not None
        scan = depth_hypothesis_scan(g, p.depth_kind, p.modulus, min(DEPTH_SCAN_N, n_max_ac), mirrored)
        hypotheses[f"depth:{p.depth_kind}:{p.modulus}"] = scan.implies
        notes.append(f"depth keys characterise term functions up to n={scan.n_max}: {scan.iff}")

    assoc = _spectrum(g, "associative", n_max_assoc, cache, threads)
    ac = _spectrum(g, "ac", n_max_ac, cache, threads)
    truncated = assoc.truncated or ac.truncated
    if truncated:
        notes.append("spectrum truncated by a cap; only the completed prefix was checked")

    checks: list[BoundCheck] = []
    for n in range(1, min(n_max_assoc, assoc.n_max) + 1):
        value = assoc.value(n)
        if p.assoc_bound is None:
            continue
        bound = p.assoc_bound(n) if p.assoc_bound.defined(n) else None
        checks.append(BoundCheck("associative", n, value, bound, bound is not None and n >= p.start_assoc))
    for n in range(1, min(n_max_ac, ac.n_max) + 1):
        value = ac.value(n)
        if p.relative:
            bound: int | None = p.ac_limit(n, assoc.value(n)) if n <= assoc.n_max else None
        else:
            assert p.ac_bound is not None
            bound = p.ac_bound(n) if p.ac_bound.defined(n) else None
        checks.append(BoundCheck("ac", n, value, bound, bound is not None and n >= p.start_ac))

    live = [c for c in checks if c.in_range]
    assoc_equal = all(c.relation == "=" for c in live if c.kind == "associative")
    ac_equal = all(c.relation == "=" for c in live if c.kind == "ac")

    if not all(hypotheses.values()):
        verdict = "hypothesis not met"
    elif any(c.relation == ">" for c in live):
        verdict = "violation"
    elif p.implication and ac_equal and not assoc_equal:
        verdict = "violation"
        notes.append("ac bound attained without the associative bound")
    elif not live:
        verdict = "holds"
        notes.append("no n in the checked range reaches the starting point")
    elif assoc_equal and ac_equal:
        verdict = "attains"
    else:
        verdict = "holds"
    if expected_attains and verdict == "holds":
        verdict = "not attained"

    return VerificationReport(
        p.name,
        name + (" (mirrored hypothesis)" if mirrored else ""),
        mirrored,
        hypotheses,
        checks,
        verdict,
        expected_attains,
        truncated,
        notes,
    )


@dataclass(frozen=True)
class DepthClassCheck:
    kind: str
    modulus: int
    scope: str
    n: int
    count: int
    expected: int

    @property
    def ok(self) -> bool:
        return self.count == self.expected

    def to_dict(self) -> dict[str, Any]:
        return {
            "kind": self.kind,
            "modulus": self.modulus,
            "scope": self.scope,
            "n": self.n,
            "count": self.count,
            "expected": self.expected,
            "ok": self.ok,
        }


def depth_class_checks(n_bracketings: int = 10, n_full_linear: int = 7) -> list[DepthClassCheck]:
    """Class counts against their closed forms.

    ``floor(2^n/3)`` is compared from ``n = 2``: a single leaf forms one
    class although the formula gives 0.
    """
    out: list[DepthClassCheck] = []
    for k in (2, 3, 4):
        for n in range(1, n_bracketings + 1):
            count = count_depth_classes(DepthClassQuery(n, k, "right", "bracketings"))
            out.append(DepthClassCheck("right", k, "bracketings", n, count, modular_catalan(k, n - 1)))
    for n in range(2, n_bracketings + 1):
        count = count_depth_classes(DepthClassQuery(n, 2, "full", "bracketings"))
        out.append(DepthClassCheck("full", 2, "bracketings", n, count, 2**n // 3))
    for n in range(1, n_full_linear + 1):
        count = count_depth_classes(DepthClassQuery(n, 2, "full", "full-linear"))
        out.append(DepthClassCheck("full", 2, "full-linear", n, count, (2**n - (-1) ** n) // 3))
    return out


def _jobs(include_sweep: bool) -> list[tuple[BoundProfile, Groupoid, bool, bool]]:
    jobs: list[tuple[BoundProfile, Groupoid, bool, bool]] = []
    for p in PROFILES:
        jobs.extend((p, resolve_witness(w), False, True) for w in p.witnesses)
        jobs.extend((p, resolve_witness(w), True, True) for w in p.dual_witnesses)
    if include_sweep:
        relative = profile("Thm7.1")
        jobs.extend((relative, g, False, False) for g in all_groupoids())
    return jobs


def verify_all(
    n_max_assoc: int = 9,
    n_max_ac: int = 6,
    *,
    profiles: Iterable[str] | None = None,
    include_sweep: bool = True,
    threads: int = 1,
) -> list[VerificationReport]:
    """Every profile against each of its witnesses and their opposites, then
    the relative bound over the whole registry.  Reports come back in catalog
    order whatever ``threads`` is."""
    wanted = None if profiles is None else set(profiles)
    jobs = [j for j in _jobs(include_sweep) if wanted is None or j[0].name in wanted]
    cache: SpectrumCache = {}
    # spectra are shared between jobs, so fill the cache serially first
    for _, g, _, _ in jobs:
        _spectrum(g, "associative", n_max_assoc, cache, 1)
        _spectrum(g, "ac", n_max_ac, cache, 1)

    def run(job: tuple[BoundProfile, Groupoid, bool, bool]) -> VerificationReport:
        p, g, mirrored, expected = job
        return verify(p, g, n_max_assoc, n_max_ac, mirrored=mirrored, expected_attains=expected, cache=cache)

    if threads <= 1:
        return [run(j) for j in jobs]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(run, jobs))
