"""Wirelength of hypercube embeddings into products of paths and cycles."""

from .cube import (
    MAX_DIM,
    VertexSubset,
    block_product,
    boundary_edges,
    gray_preimage,
    gray_rank,
    gray_sequence,
    gray_unrank,
    hypercube_edges,
    permute_coordinates,
    theta,
)
from .host import (
    CYCLE,
    PATH,
    Cut,
    HostFactor,
    HostSpec,
    HostSpecError,
    InducedSet,
    cut_edges,
    cuts,
    enumerate_hosts,
    factor_distance,
    factor_edge_labels,
    flatten,
    host_distance,
    host_edges,
    induced_set,
    parse_host,
    separating_cuts,
    unflatten,
)
from .wirelength import (
    Embedding,
    FormulaTerm,
    WirelengthReport,
    formula_wl,
    gray_cut_sum,
    gray_embedding,
    preimage,
    random_embedding,
    read_embedding,
    wl_cut,
    wl_cut_naive,
    wl_direct,
    write_embedding,
)
from .search import (
    CheckResult,
    SearchBudget,
    SearchResult,
    VerifyReport,
    anneal_search,
    brute_force_min,
    transposition_delta,
    verify_spec,
)

__version__ = "0.1.0"

__all__ = [
    "MAX_DIM",
    "VertexSubset",
    "block_product",
    "boundary_edges",
    "gray_preimage",
    "gray_rank",
    "gray_sequence",
    "gray_unrank",
    "hypercube_edges",
    "permute_coordinates",
    "theta",
    "CYCLE",
    "PATH",
    "Cut",
    "HostFactor",
    "HostSpec",
    "HostSpecError",
    "InducedSet",
    "cut_edges",
    "cuts",
    "enumerate_hosts",
    "factor_distance",
    "factor_edge_labels",
    "flatten",
    "host_distance",
    "host_edges",
    "induced_set",
    "parse_host",
    "separating_cuts",
    "unflatten",
    "Embedding",
    "FormulaTerm",
    "WirelengthReport",
    "formula_wl",
    "gray_cut_sum",
    "gray_embedding",
    "preimage",
    "random_embedding",
    "read_embedding",
    "wl_cut",
    "wl_cut_naive",
    "wl_direct",
    "write_embedding",
    "CheckResult",
    "SearchBudget",
    "SearchResult",
    "VerifyReport",
    "anneal_search",
    "brute_force_min",
    "transposition_delta",
    "verify_spec",
]
