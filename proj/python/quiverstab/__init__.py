"""Exact King and Bridgeland stability for quiver representations over F_p."""

from ._core import (
    CapExceededError,
    Document,
    QuiverstabError,
    census,
    central_charge,
    chambers,
    hn_filtration,
    jh_factors,
    nef,
    potential_walls,
    run_cli,
    s_equivalent,
    stability,
)

__all__ = [
    "CapExceededError",
    "Document",
    "QuiverstabError",
    "census",
    "central_charge",
    "chambers",
    "hn_filtration",
    "jh_factors",
    "nef",
    "potential_walls",
    "run_cli",
    "s_equivalent",
    "stability",
]
