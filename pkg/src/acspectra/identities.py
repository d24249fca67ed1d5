"""Identities between terms and the catalog of the eighteen identities used
by the bound profiles."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groupoids import Groupoid, evaluate_grid
from .terms import Term, format_term, mirror, parse_term
from .errors import MalformedTermError, UnknownNameError

__all__ = ["Identity", "IDENTITY_CAP", "satisfies_identity", "identity_catalog", "catalog_identity"]

IDENTITY_CAP = 10**7


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term
    label: str = ""

    def __post_init__(self) -> None:
        for side in (self.lhs, self.rhs):
            labels = side.labels()
            if len(set(labels)) != len(labels):
                raise MalformedTermError(f"identity side {format_term(side)} is not linear")

    @classmethod
    def parse(cls, lhs: str, rhs: str, label: str = "") -> Identity:
        return cls(parse_term(lhs), parse_term(rhs), label)

    @property
    def variables(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.lhs.labels()) | set(self.rhs.labels())))

    def mirrored(self) -> Identity:
        """The identity an anti-isomorphic groupoid satisfies."""
        return Identity(mirror(self.lhs), mirror(self.rhs), self.label + "op" if self.label else "")

    def __str__(self) -> str:
        return f"{format_term(self.lhs, letters=True)} ≈ {format_term(self.rhs, letters=True)}"


def satisfies_identity(g: Groupoid, identity: Identity, cap: int = IDENTITY_CAP) -> bool:
    """True iff both sides agree under all assignments of the union of their variables."""
    variables = identity.variables
    lhs = evaluate_grid(g, identity.lhs, variables, cap=cap)
    rhs = evaluate_grid(g, identity.rhs, variables, cap=cap)
    return bool(np.array_equal(lhs, rhs))


# (16) and (18) compare a comb of five variables with another shape; both
# sides are full linear terms over v..z.
_CATALOG = (
    ("1", "xy", "x"),
    ("2", "xy", "yx"),
    ("3", "(xy)z", "(xz)y"),
    ("4", "x(yz)", "y(xz)"),
    ("5", "x(yz)", "x(zy)"),
    ("6", "x(yz)", "z(yx)"),
    ("7", "w(x(yz))", "w((xy)z)"),
    ("8", "(wx)(yz)", "(w(xy))z"),
    ("9", "w(x(yz))", "((wx)y)z"),
    ("10", "((wx)y)z", "((wy)x)z"),
    ("11", "((wx)y)z", "((wx)z)y"),
    ("12", "(wx)(yz)", "(wy)(xz)"),
    ("13", "(w(xy))z", "(w(xz))y"),
    ("14", "w(x(yz))", "(w(xy))z"),
    ("15", "(v(wx))(yz)", "(vw)(x(yz))"),
    ("16", "(((vw)x)y)z", "v(w(x(yz)))"),
    ("17", "v(w(x(yz)))", "((v(wx))y)z"),
    ("18", "(vw)(x(yz))", "(((vw)x)y)z"),
)


def identity_catalog() -> list[Identity]:
    return [Identity.parse(lhs, rhs, label) for label, lhs, rhs in _CATALOG]


def catalog_identity(label: str) -> Identity:
    for ident in identity_catalog():
        if ident.label == str(label):
            return ident
    raise UnknownNameError(f"no catalog identity labelled {label!r}")
