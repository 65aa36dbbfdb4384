"""Exact computations for right-angled Artin groups and their automorphisms."""
from .graph import Graph, GraphError, graph_from_dot, graph_from_json, load_graph
from .words import GroupElement, commutator, invert, multiply
from .magnus import (
    AtLeast, Series, bracket_eval, centralizer_witness, l2_basis, l2_coordinates,
    lcs_depth, lcs_membership, magnus, series_invert, series_mul,
)
from .autos import (
    Automorphism, ExtendedPartialConj, Inversion, Kijk, PartialConj, Symmetry, Transvection,
    enumerate_standard_generators, enumerate_torelli_generators, inner, johnson_level,
    make_generator, tau1_formula, tau1_magnus, torelli_h1_report,
)
from .rigidity import (
    SubgroupSpec, decomposition_tree, rank_bound_check, sl_dimension, tmain_obligations,
)

__version__ = "0.1.0"
