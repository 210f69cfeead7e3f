"""Artin-Tits groups from Coxeter graphs: classification, word problem,
parabolic membership, centers and torsion certificates."""

from .amalgam import decomposition_tree, is_trivial, member_rewrite, reduce_syllabic, reduced_form
from .coxeter import coxeter_number, enumerate_W, is_identity_in_W, order_in_W, pi_word
from .errors import (
    GraphError,
    GraphParseError,
    NotSphericalError,
    ResourceLimitError,
    UnsupportedBaseCase,
    WordParseError,
)
from .garside import (
    center_generator_spherical,
    garside_delta,
    is_trivial_spherical,
    member_rewrite_spherical,
    normal_form,
    np_decompose,
)
from .graph import INF, CoxeterGraph, classify, connected_components, induced_subgraph, load_graph, parse_graph, serialize_graph
from .limits import Limits
from .structure import (
    center_description,
    torsion_certificate,
    verify_center_derivation,
    verify_center_description,
    verify_torsion_certificate,
)
from .words import format_word, parse_word, support
