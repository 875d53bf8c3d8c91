"""Connected-sum decompositions of 3-orbifolds as labelled trees."""
from .atoms import Atom, Circle, Graph, builtin_identity, puncture_capabilities
from .core2d import (
    Classification,
    MaximalityViolation,
    SphericalType,
    TwoOrbifold,
    cap_punctured_discal,
    classify_two_orbifold,
    complexity_class,
    is_admissible_vertex_triple,
    punctured_spherical_is_discal,
)
from .nu import CyclicityGraph, alpha_sum, beta_sum, blow_up, build_cyclicity_graph, euler_check
from .splitproc import run_split
from .sumtree import (
    Attachment,
    CanonicalForm,
    RealizationTree,
    SumEdge,
    canonicalize,
    contract_trivial,
    efficiency_violations,
    equivalent,
    slide,
    validate,
)
from .textfmt import Document, ParseError, parse, serialize

__version__ = "0.1.0"
