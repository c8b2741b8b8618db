"""Overlapping community detection: ego-network seeding, epsilon merging, and
MCMC inference on an observed-hidden network."""

try:
    from ._core import (  # noqa: F401
        CapacityError,
        ConfigError,
        Graph,
        InputError,
        avg_f1,
        detect_communities,
        ego_minus_ego,
        induced_subgraph,
        load_edge_list,
        local_seed,
        onmi,
        parse_edge_list,
        planted_overlap,
        read_cover,
        write_cover,
        __version__,
    )
except ImportError:  # in-tree builds put _core next to the package dir
    from _core import (  # noqa: F401
        CapacityError,
        ConfigError,
        Graph,
        InputError,
        avg_f1,
        detect_communities,
        ego_minus_ego,
        induced_subgraph,
        load_edge_list,
        local_seed,
        onmi,
        parse_edge_list,
        planted_overlap,
        read_cover,
        write_cover,
        __version__,
    )

__all__ = [
    "CapacityError",
    "ConfigError",
    "Graph",
    "InputError",
    "avg_f1",
    "detect_communities",
    "ego_minus_ego",
    "induced_subgraph",
    "load_edge_list",
    "local_seed",
    "onmi",
    "parse_edge_list",
    "planted_overlap",
    "read_cover",
    "write_cover",
    "__version__",
]
