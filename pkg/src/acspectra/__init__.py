"""Associative spectra and ac-spectra of finite groupoids."""

from . import bounds, errors, groupoids, identities, registry, sequences, spectrum, terms
from .bounds import BoundProfile, VerificationReport, profile, verify, verify_all
from .groupoids import Groupoid, evaluate, find_isomorphism, load_groupoid, parse_cayley
from .identities import Identity, catalog_identity, identity_catalog, satisfies_identity
from .registry import ANTI_ISOMORPHIC_PAIRS, all_groupoids, registry_names
from .registry import registry as registry_groupoid
from .sequences import bound_formula
from .spectrum import (
    DepthClassQuery,
    FunctionTable,
    SpectrumReport,
    ac_spectrum,
    associative_spectrum,
    count_depth_classes,
    induced_table,
)
from .terms import (
    Leaf,
    Node,
    Term,
    depth_vector,
    enumerate_bracketings,
    enumerate_full_linear_terms,
    format_term,
    parse_term,
)

__version__ = "0.1.0"

__all__ = [
    "bounds",
    "errors",
    "groupoids",
    "identities",
    "registry",
    "sequences",
    "spectrum",
    "terms",
    "BoundProfile",
    "VerificationReport",
    "profile",
    "verify",
    "verify_all",
    "Groupoid",
    "evaluate",
    "find_isomorphism",
    "load_groupoid",
    "parse_cayley",
    "Identity",
    "catalog_identity",
    "identity_catalog",
    "satisfies_identity",
    "ANTI_ISOMORPHIC_PAIRS",
    "all_groupoids",
    "registry_names",
    "registry_groupoid",
    "bound_formula",
    "DepthClassQuery",
    "FunctionTable",
    "SpectrumReport",
    "ac_spectrum",
    "associative_spectrum",
    "count_depth_classes",
    "induced_table",
    "Leaf",
    "Node",
    "Term",
    "depth_vector",
    "enumerate_bracketings",
    "enumerate_full_linear_terms",
    "format_term",
    "parse_term",
]
