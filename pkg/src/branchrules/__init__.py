"""Essential bases and branching semigroups for simple Lie algebras."""

from __future__ import annotations

from .branching import (
    Embedding,
    branching_slice,
    check_compatibility,
    load_embedding,
    make_regular_embedding,
    tilde_fixed_signatures,
    tilde,
)
from .essential import MonomialOrderSpec, Signature, essential_signatures
from .hwmodule import HWModule, build_module
from .pairs import get_pair
from .rootsys import RootSystem, build_root_system
from .semigroup import GeneratorSet, certify, compute_relations, discover_generators

__all__ = [
    "Embedding",
    "GeneratorSet",
    "HWModule",
    "MonomialOrderSpec",
    "RootSystem",
    "Signature",
    "branching_slice",
    "build_module",
    "build_root_system",
    "certify",
    "check_compatibility",
    "compute_relations",
    "discover_generators",
    "essential_signatures",
    "get_pair",
    "load_embedding",
    "make_regular_embedding",
    "tilde_fixed_signatures",
    "tilde",
]
