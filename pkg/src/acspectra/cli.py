"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error,
3 a cap truncated a computation (the completed prefix is still printed).
"""

from __future__ import annotations

import csv
import functools
import io
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

import click

from .bounds import depth_class_checks, profile, profile_names, resolve_witness, verify, verify_all
from .errors import SpectraError
from .groupoids import Groupoid, find_isomorphism, load_groupoid
from .identities import identity_catalog, satisfies_identity
from .registry import ANTI_ISOMORPHIC_PAIRS, all_groupoids
from .sequences import named_sequence
from .spectrum import DEFAULT_MAX_FUNCTIONS, DepthClassQuery, count_depth_classes, spectrum

EXIT_FAILURE = 1
EXIT_USAGE = 2
EXIT_TRUNCATED = 3

FORMATS = click.Choice(["text", "json", "csv"])


class InputError(click.ClickException):
    exit_code = EXIT_USAGE


def _guard(fn: Callable[..., Any]) -> Callable[..., Any]:
    @functools.wraps(fn)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return fn(*args, **kwargs)
        except (SpectraError, ValueError, KeyError, OSError) as exc:
            raise InputError(str(exc)) from None

    return wrapper


def _emit_json(doc: dict[str, Any]) -> None:
    click.echo(json.dumps(doc, indent=2, sort_keys=True))


def _emit_csv(header: Sequence[str], rows: Sequence[Sequence[Any]]) -> None:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    click.echo(buf.getvalue(), nl=False)


def _groupoid(name: str | None, table: str | None) -> Groupoid:
    if (name is None) == (table is None):
        raise InputError("give exactly one of --groupoid or --table")
    if table is not None:
        return load_groupoid(table)
    return resolve_witness(name)  # registry names plus the extra witnesses


def _groupoid_ref(ref: str) -> Groupoid:
    return load_groupoid(ref) if Path(ref).is_file() else resolve_witness(ref)


def _int_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        first = int(lo)
        last = int(hi) if sep else first
    except ValueError:
        raise InputError(f"expected N or N..M, got {text!r}") from None
    if last < first:
        raise InputError(f"empty range {text!r}")
    return range(first, last + 1)


groupoid_option = click.option("--groupoid", "name", metavar="NAME", help="Registry groupoid.")
table_option = click.option(
    "--table", type=click.Path(exists=True, dir_okay=False), help="Cayley table file (text or JSON)."
)
format_option = click.option("--format", "fmt", type=FORMATS, default="text", show_default=True)
threads_option = click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True)


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
def main() -> None:
    """Associative spectra and ac-spectra of finite groupoids."""


def _spectrum_command(kind: str, label: str) -> Callable[..., None]:
    @groupoid_option
    @table_option
    @click.option("--nmax", type=click.IntRange(min=1), default=6, show_default=True)
    @click.option("--engine", type=click.Choice(["dp", "naive"]), default="dp", show_default=True)
    @format_option
    @threads_option
    @click.option("--max-functions", type=click.IntRange(min=1), default=DEFAULT_MAX_FUNCTIONS, show_default=True)
    @click.option("--timings", is_flag=True, help="Include per-n timings in JSON output.")
    @_guard
    def command(
        name: str | None,
        table: str | None,
        nmax: int,
        engine: str,
        fmt: str,
        threads: int,
        max_functions: int,
        timings: bool,
    ) -> None:
        g = _groupoid(name, table)
        report = spectrum(g, kind, nmax, engine, max_functions=max_functions, threads=threads)  # type: ignore[arg-type]
        if fmt == "json":
            _emit_json({"command": label, **report.to_dict(timings=timings)})
        elif fmt == "csv":
            rows = [(n, v, engine, str(report.truncated).lower()) for n, v in enumerate(report.values, 1)]
            _emit_csv(["n", "value", "engine", "truncated"], rows)
        else:
            click.echo(" ".join(str(v) for v in report.values))
            if report.truncated:
                click.echo(f"truncated: {report.truncation_reason}")
        if report.truncated:
            click.echo(f"warning: stopped after n={report.n_max}: {report.truncation_reason}", err=True)
            sys.exit(EXIT_TRUNCATED)

    return command


main.command("spectrum", help="Associative spectrum s^a_n for n = 1..NMAX.")(_spectrum_command("associative", "spectrum"))
main.command("ac-spectrum", help="ac-spectrum s^ac_n for n = 1..NMAX.")(_spectrum_command("ac", "ac-spectrum"))


@main.command(help="Check every catalog identity on a groupoid.")
@groupoid_option
@table_option
@format_option
@_guard
def identities(name: str | None, table: str | None, fmt: str) -> None:
    g = _groupoid(name, table)
    rows = [(ident.label, str(ident), satisfies_identity(g, ident)) for ident in identity_catalog()]
    if fmt == "json":
        _emit_json(
            {
                "command": "identities",
                "groupoid": g.label(),
                "identities": [{"label": lab, "identity": s, "holds": ok} for lab, s, ok in rows],
            }
        )
    elif fmt == "csv":
        _emit_csv(["label", "identity", "holds"], [(lab, s, str(ok).lower()) for lab, s, ok in rows])
    else:
        for lab, s, ok in rows:
            click.echo(f"({lab:>2}) {s:<32} {'pass' if ok else 'fail'}")


@main.command("verify", help="Replay the bound results on their witnesses or on a given groupoid.")
@click.option("--profile", "profile_name", metavar="NAME", help="One profile, e.g. Thm4.4.")
@groupoid_option
@table_option
@click.option("--nmax-assoc", type=click.IntRange(min=1), default=9, show_default=True)
@click.option("--nmax-ac", type=click.IntRange(min=1), default=6, show_default=True)
@click.option("--mirrored", is_flag=True, help="Check the mirrored hypothesis (for opposite groupoids).")
@format_option
@threads_option
@_guard
def verify_command(
    profile_name: str | None,
    name: str | None,
    table: str | None,
    nmax_assoc: int,
    nmax_ac: int,
    mirrored: bool,
    fmt: str,
    threads: int,
) -> None:
    depth_checks = []
    if name is None and table is None:
        names = None if profile_name is None else [profile(profile_name).name]
        reports = verify_all(nmax_assoc, nmax_ac, profiles=names, threads=threads)
        if profile_name is None:
            depth_checks = depth_class_checks()
    else:
        g = _groupoid(name, table)
        chosen = profile_names() if profile_name is None else [profile_name]
        reports = [verify(profile(p), g, nmax_assoc, nmax_ac, mirrored=mirrored, threads=threads) for p in chosen]

    failed = any(r.failed for r in reports) or any(not c.ok for c in depth_checks)
    truncated = any(r.truncated for r in reports)
    if fmt == "json":
        _emit_json(
            {
                "command": "verify",
                "nmax_assoc": nmax_assoc,
                "nmax_ac": nmax_ac,
                "reports": [r.to_dict() for r in reports],
                "depth_classes": [c.to_dict() for c in depth_checks],
                "failed": failed,
            }
        )
    elif fmt == "csv":
        rows = [
            (r.profile, r.groupoid, str(r.mirrored).lower(), r.verdict, str(r.expected_attains).lower())
            for r in reports
        ]
        _emit_csv(["profile", "groupoid", "mirrored", "verdict", "expected_attains"], rows)
    else:
        for r in reports:
            mark = "FAIL" if r.failed else "ok"
            click.echo(f"{r.profile:<8} {r.groupoid:<34} {r.verdict:<20} {mark}")
        for c in depth_checks:
            mark = "ok" if c.ok else "FAIL"
            click.echo(f"depth {c.kind}/{c.modulus} {c.scope} n={c.n}: {c.count} vs {c.expected} {mark}")
    if failed:
        click.echo("verification failed", err=True)
        sys.exit(EXIT_FAILURE)
    if truncated:
        click.echo("warning: some spectra were truncated by a cap", err=True)
        sys.exit(EXIT_TRUNCATED)


@main.command(help="Search for an isomorphism (or anti-isomorphism) between two groupoids.")
@click.option("--a", "first", required=True, metavar="NAME|FILE")
@click.option("--b", "second", required=True, metavar="NAME|FILE")
@click.option("--anti", is_flag=True, help="Look for an anti-isomorphism.")
@format_option
@_guard
def classify(first: str, second: str, anti: bool, fmt: str) -> None:
    g, h = _groupoid_ref(first), _groupoid_ref(second)
    witness = find_isomorphism(g, h, anti=anti)
    relation = "anti-isomorphism" if anti else "isomorphism"
    if fmt == "json":
        _emit_json(
            {
                "command": "classify",
                "a": g.label(),
                "b": h.label(),
                "anti": anti,
                "found": witness is not None,
                "witness": None if witness is None else list(witness),
            }
        )
    elif fmt == "csv":
        _emit_csv(
            ["a", "b", "anti", "found", "witness"],
            [(g.label(), h.label(), str(anti).lower(), str(witness is not None).lower(),
              "" if witness is None else " ".join(map(str, witness)))],
        )
    elif witness is None:
        click.echo(f"no {relation} from {g.label()} to {h.label()}")
    else:
        mapping = ", ".join(f"{a}->{b}" for a, b in enumerate(witness))
        click.echo(f"{relation} {g.label()} -> {h.label()}: {mapping}")
    if witness is None:
        sys.exit(EXIT_FAILURE)


@main.command("registry", help="List the embedded groupoids.")
@format_option
def registry_command(fmt: str) -> None:
    groupoids = all_groupoids()
    if fmt == "json":
        _emit_json(
            {
                "command": "registry",
                "groupoids": [g.to_dict() for g in groupoids],
                "anti_isomorphic_pairs": [list(p) for p in ANTI_ISOMORPHIC_PAIRS],
            }
        )
    elif fmt == "csv":
        rows = [(g.name, g.size, "/".join(" ".join(map(str, r)) for r in g.table)) for g in groupoids]
        _emit_csv(["name", "size", "table"], rows)
    else:
        for g in groupoids:
            click.echo(f"{g.name:<8} {' / '.join(' '.join(map(str, r)) for r in g.table)}")


@main.command("depth-classes", help="Count classes of terms with congruent depth data.")
@click.option("--kind", type=click.Choice(["full", "left", "right", "leftmost-left"]), default="full", show_default=True)
@click.option("--k", "modulus", type=click.IntRange(min=1), required=True, help="Modulus.")
@click.option("--scope", type=click.Choice(["bracketings", "full-linear"]), default="bracketings", show_default=True)
@click.option("--n", "n_range", default="1..8", show_default=True, metavar="N|N..M")
@click.option("--method", type=click.Choice(["fast", "enumerate"]), default="fast", show_default=True)
@format_option
@_guard
def depth_classes(kind: str, modulus: int, scope: str, n_range: str, method: str, fmt: str) -> None:
    rows = [(n, count_depth_classes(DepthClassQuery(n, modulus, kind, scope), method)) for n in _int_range(n_range)]  # type: ignore[arg-type]
    if fmt == "json":
        _emit_json(
            {
                "command": "depth-classes",
                "kind": kind,
                "modulus": modulus,
                "scope": scope,
                "counts": [{"n": n, "count": c} for n, c in rows],
            }
        )
    elif fmt == "csv":
        _emit_csv(["n", "count"], rows)
    else:
        for _, c in rows:
            click.echo(c)


@main.command(help="Print values of an integer sequence or bound formula, one per line.")
@click.argument("name")
@click.option("--k", type=int, default=None, help="Parameter for sequences that take one.")
@click.option("--n", "n_range", default="1..10", show_default=True, metavar="N|N..M")
@format_option
@_guard
def seq(name: str, k: int | None, n_range: str, fmt: str) -> None:
    f = named_sequence(name, k)
    rows = [(n, f(n)) for n in _int_range(n_range)]
    if fmt == "json":
        doc: dict[str, Any] = {"command": "seq", "name": name, "values": [{"n": n, "value": v} for n, v in rows]}
        if k is not None:
            doc["k"] = k
        _emit_json(doc)
    elif fmt == "csv":
        _emit_csv(["n", "value"], rows)
    else:
        for _, v in rows:
            click.echo(v)


def run(argv: Sequence[str] | None = None) -> int:
    """Invoke the CLI in-process and return its exit code."""
    try:
        main.main(args=list(argv) if argv is not None else None, prog_name="acspectra", standalone_mode=True)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else (0 if exc.code is None else 1)
    return 0
