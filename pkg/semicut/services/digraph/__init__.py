"""
Digraph services: instance type, ordering evaluators, generators, text format.
"""

from semicut.services.digraph.digraph_service import (
    Arc,
    FeedbackArcSet,
    Ordering,
    SemiCompleteDigraph,
    Weight,
    backward_arcs,
    cut_profile,
    fas_weight,
    is_feedback_arc_set,
    is_tournament,
    ordering_cost,
    ordering_cost_by_cuts,
    ordering_cost_weighted,
    ordering_from_fas,
    ordering_width,
    relabel,
    to_networkx,
    validate,
    with_weights,
    without_weights,
)
from semicut.services.digraph.format_service import read_digraph, write_digraph
from semicut.services.digraph.generator_service import (
    gen_noisy_transitive,
    gen_random_semicomplete,
    gen_random_tournament,
    gen_transitive,
    gen_weighted,
)

__all__ = [
    "Arc",
    "FeedbackArcSet",
    "Ordering",
    "SemiCompleteDigraph",
    "Weight",
    "backward_arcs",
    "cut_profile",
    "fas_weight",
    "gen_noisy_transitive",
    "gen_random_semicomplete",
    "gen_random_tournament",
    "gen_transitive",
    "gen_weighted",
    "is_feedback_arc_set",
    "is_tournament",
    "ordering_cost",
    "ordering_cost_by_cuts",
    "ordering_cost_weighted",
    "ordering_from_fas",
    "ordering_width",
    "read_digraph",
    "relabel",
    "to_networkx",
    "validate",
    "with_weights",
    "without_weights",
    "write_digraph",
]
