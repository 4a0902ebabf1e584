"""Discrete Ricci curvature, curvature profiles and positional encodings."""

import numpy as np

from . import _ricci
from ._ricci import Graph, InputError, NumericalError

__version__ = _ricci.__version__

__all__ = ["Graph", "InputError", "NumericalError", "curvature", "encode", "rewire", "__version__"]


def _graph(edges, num_nodes):
    if isinstance(edges, Graph):
        return edges
    if num_nodes is None:
        raise ValueError("num_nodes is required when passing an edge array")
    return Graph(np.asarray(edges, dtype=np.int64).reshape(-1, 2), int(num_nodes))


def curvature(edges, num_nodes=None, method="orc-exact", alpha=None, eps=0.01, sinkhorn_iters=10000, threads=0):
    """Edge curvatures in canonical edge order.

    Returns (kappa, edges) where edges is the (E, 2) array of (u, v) with u < v
    sorted lexicographically. Sinkhorn runs add a third element, the per-edge
    convergence flags.
    """
    if alpha is None:
        alpha = 0.5 if method in ("orc-idleness", "orc_idleness") else 0.0
    kappa, order, converged, _ = _ricci.curvature(_graph(edges, num_nodes), method, alpha, eps, sinkhorn_iters, threads)
    return (kappa, order) if converged is None else (kappa, order, converged)


def encode(edges, num_nodes=None, spec=None, threads=0):
    """Node feature matrix (rows in node-id order) and a manifest dict.

    spec keys: lcp (variant name), lcp_method, alpha, ldp (bool), lape (k),
    rwpe (walk length), include_features (bool).
    """
    spec = dict(spec or {})
    unknown = set(spec) - {"lcp", "lcp_method", "alpha", "ldp", "lape", "rwpe", "include_features"}
    if unknown:
        raise ValueError(f"unknown encode spec keys: {sorted(unknown)}")
    lcp_method = spec.get("lcp_method", "orc-exact")
    alpha = spec.get("alpha")
    if alpha is None:
        alpha = 0.5 if lcp_method in ("orc-idleness", "orc_idleness") else 0.0
    return _ricci.encode(
        _graph(edges, num_nodes),
        spec.get("lcp", "none") or "none",
        lcp_method,
        alpha,
        bool(spec.get("ldp", False)),
        int(spec.get("lape", 0)),
        int(spec.get("rwpe", 0)),
        bool(spec.get("include_features", False)),
        threads,
    )


def rewire(edges, num_nodes=None, iters=3, k_add=4, k_remove=4, h_per_edge=1, alpha=0.0, threads=0):
    """Curvature-based rewiring. Returns (edges, plan) with plan a list of actions."""
    return _ricci.rewire(_graph(edges, num_nodes), iters, k_add, k_remove, h_per_edge, alpha, threads)
