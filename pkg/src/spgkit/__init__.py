"""Workbench for subset partition graphs and their diameter bounds."""

from .bounds import bound_values, lemma1_f, recursion_table, verify_lemma1, verify_theorem_chain
from .core import RestrictedGraph, Spg, VertexClass, build_spg, reduce_dimension, restrict
from .generators import from_incidence, gen_hypercube, gen_simplex
from .metrics import diameter, distance, symbol_ball
from .pathfinder import certified_path, verify_certificate
from .properties import (
    check_adjacency,
    check_dimension_reduction,
    check_endpoint_count,
    check_strong_adjacency,
)
from .search import sigma_exact, sigma_search

__all__ = [
    "RestrictedGraph",
    "Spg",
    "VertexClass",
    "bound_values",
    "build_spg",
    "certified_path",
    "check_adjacency",
    "check_dimension_reduction",
    "check_endpoint_count",
    "check_strong_adjacency",
    "diameter",
    "distance",
    "from_incidence",
    "gen_hypercube",
    "gen_simplex",
    "lemma1_f",
    "recursion_table",
    "reduce_dimension",
    "restrict",
    "sigma_exact",
    "sigma_search",
    "symbol_ball",
    "verify_certificate",
    "verify_lemma1",
    "verify_theorem_chain",
]
