"""Named groupoids.

The three-element tables are keyed by their Siena Catalog labels, which are
treated as opaque names.  ``P`` is the two-element left projection
``x*y = x`` and ``N`` is ``x*y = x+1 (mod 2)``.
"""

from __future__ import annotations

from .errors import UnknownNameError
from .groupoids import Groupoid

__all__ = ["TABLES", "ANTI_ISOMORPHIC_PAIRS", "registry", "registry_names", "all_groupoids"]

TABLES: dict[str, tuple[tuple[int, ...], ...]] = {
    # assorted small examples and their opposites
    "SC271": ((0, 0, 0), (1, 1, 0), (2, 2, 2)),
    "SC356": ((0, 0, 0), (2, 1, 1), (1, 2, 2)),
    "SC1066": ((0, 0, 2), (0, 0, 2), (2, 2, 1)),
    "SC10": ((0, 0, 0), (0, 0, 0), (1, 0, 0)),
    "SC405": ((0, 0, 1), (0, 0, 1), (1, 1, 0)),
    "SC3242": ((1, 1, 1), (2, 2, 2), (0, 0, 0)),
    "SC79": ((0, 0, 0), (0, 1, 0), (0, 0, 1)),
    "SC1610": ((0, 1, 1), (0, 1, 2), (0, 1, 2)),
    "SC2032": ((0, 1, 2), (0, 1, 2), (1, 0, 2)),
    "SC367": ((0, 0, 1), (0, 0, 0), (0, 0, 0)),
    "SC3302": ((1, 2, 0), (1, 2, 0), (1, 2, 0)),
    # commutative examples attaining the Catalan / double-factorial bounds
    "SC1108": ((0, 0, 2), (0, 1, 1), (2, 1, 2)),
    "SC2407": ((1, 0, 0), (0, 2, 0), (0, 0, 0)),
    "SC3093": ((1, 1, 0), (1, 2, 0), (0, 0, 1)),
    # xy = x and its opposite
    "SC275": ((0, 0, 0), (1, 1, 1), (2, 2, 2)),
    "SC2029": ((0, 1, 2), (0, 1, 2), (0, 1, 2)),
    "SC4": ((0, 0, 0), (0, 0, 0), (0, 1, 0)),
    "SC5": ((0, 0, 0), (0, 0, 0), (0, 1, 1)),
    "SC7": ((0, 0, 0), (0, 0, 0), (0, 2, 0)),
    "SC28": ((0, 0, 0), (0, 0, 1), (0, 0, 1)),
    "SC170": ((0, 0, 0), (0, 2, 1), (0, 2, 1)),
    "SC189": ((0, 0, 0), (0, 2, 2), (0, 1, 1)),
    "SC2467": ((1, 0, 0), (1, 0, 0), (1, 0, 1)),
    "SC3162": ((1, 1, 1), (0, 0, 0), (0, 0, 1)),
    # subtraction on Z/3 and its opposite
    "SC2155": ((0, 1, 2), (2, 0, 1), (1, 2, 0)),
    "SC2302": ((0, 2, 1), (1, 0, 2), (2, 1, 0)),
    "SC1701": ((0, 1, 1), (1, 0, 0), (1, 0, 1)),
    # rooted set partitions
    "SC41": ((0, 0, 0), (0, 0, 1), (1, 1, 2)),
    "SC96": ((0, 0, 0), (0, 1, 0), (2, 0, 2)),
    "SC398": ((0, 0, 1), (0, 0, 1), (0, 1, 2)),
    "SC1069": ((0, 0, 2), (0, 1, 0), (0, 0, 2)),
    # rooted ordered set partitions
    "SC262": ((0, 0, 0), (1, 1, 0), (1, 1, 2)),
    "SC1441": ((0, 0, 2), (2, 1, 2), (0, 0, 2)),
    "SC1793": ((0, 1, 1), (1, 2, 1), (1, 2, 1)),
    "SC1812": ((0, 1, 1), (1, 2, 2), (1, 1, 1)),
    "SC2430": ((1, 0, 0), (0, 2, 1), (0, 2, 1)),
    "SC2446": ((1, 0, 0), (0, 2, 2), (0, 1, 1)),
    # depth congruences; SC2346 is a*b = -a-b on Z/3
    "SC2346": ((0, 2, 1), (2, 1, 0), (1, 0, 2)),
    "SC64": ((0, 0, 0), (0, 0, 2), (1, 1, 0)),
    "SC399": ((0, 0, 1), (0, 0, 1), (0, 2, 0)),
    # groupoids with computed but unexplained spectra
    "SC258": ((0, 0, 0), (1, 1, 0), (1, 0, 1)),
    "SC685": ((0, 0, 1), (1, 1, 0), (1, 0, 0)),
    "SC1594": ((0, 1, 1), (0, 1, 0), (0, 0, 1)),
    "SC1600": ((0, 1, 1), (0, 1, 0), (1, 0, 0)),
    "SC1414": ((0, 0, 2), (2, 0, 2), (2, 2, 0)),
    "SC1477": ((0, 0, 2), (2, 2, 0), (2, 0, 0)),
    "SC1693": ((0, 1, 1), (1, 0, 0), (0, 0, 1)),
    "SC1717": ((0, 1, 1), (1, 0, 1), (0, 1, 0)),
    "SC229": ((0, 0, 0), (1, 0, 1), (1, 1, 1)),
    "SC1553": ((0, 1, 1), (0, 0, 1), (0, 1, 1)),
    # two-element groupoids
    "P": ((0, 0), (1, 1)),
    "N": ((1, 1), (0, 0)),
}

ANTI_ISOMORPHIC_PAIRS: tuple[tuple[str, str], ...] = (
    ("SC271", "SC1610"),
    ("SC356", "SC2032"),
    ("SC10", "SC367"),
    ("SC405", "SC405"),
    ("SC3242", "SC3302"),
    ("SC79", "SC79"),
    ("SC4", "SC7"),
    ("SC5", "SC28"),
    ("SC170", "SC189"),
    ("SC2467", "SC3162"),
    ("SC2155", "SC2302"),
    ("SC41", "SC398"),
    ("SC96", "SC1069"),
    ("SC262", "SC1441"),
    ("SC1812", "SC1793"),
    ("SC2446", "SC2430"),
    ("SC64", "SC399"),
    ("SC258", "SC1594"),
    ("SC685", "SC1600"),
    ("SC1414", "SC1717"),
    ("SC1477", "SC1693"),
    ("SC229", "SC1553"),
    ("SC275", "SC2029"),
)


def registry_names() -> list[str]:
    return list(TABLES)


def registry(name: str) -> Groupoid:
    try:
        table = TABLES[name]
    except KeyError:
        raise UnknownNameError(f"unknown groupoid {name!r}") from None
    return Groupoid(table, name=name)


def all_groupoids() -> list[Groupoid]:
    return [registry(n) for n in TABLES]
