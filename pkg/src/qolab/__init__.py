"""Finite quasi-orders: Dilworth covers, auxiliary colouring graphs, G0 levels and tree ranks."""

from .auxgraph import (
    AuxGraph,
    ColoringCertificate,
    aux_graph,
    aux_graph_bruteforce,
    chromatic_number,
    enumerate_colorings,
    witness_set,
)
from .dilworth import (
    ChainCover,
    DichotomyResult,
    dichotomy,
    enumerate_antichains,
    min_chain_cover,
    width,
    width_and_antichain,
)
from .g0 import DenseSequences, G0Level, dense_sequences, g0_level, hom_search
from .procedures import (
    PaperCover,
    SetFamily,
    independence_extend,
    paper_chain_cover,
    puncture_extend,
    reduced_relation,
    verify_proposition,
)
from .relation import (
    FiniteRelation,
    Graph,
    QuasiOrder,
    QuotientPoset,
    derive,
    interval,
    is_quasi_order,
    parse_relation,
    quotient,
    random_quasi_order,
    section,
)
from .trees import BorelCode, FiniteTree, eval_borel_code, pruning_derivative, pruning_rank

__version__ = "0.1.0"
