"""Overpartition kbar-rank toolkit: bijection, rank tables and q-series identity checks."""

import json

from ._okrank import (
    DomainError,
    OkrankError,
    UsageError,
    ValidationError,
    __version__,
    euler_product,
    generalized_durfee,
    is_self_k_conjugate,
    k_conjugate,
    kbar_rank,
    list_identities,
    mock_chi,
    mock_X,
    overpartitions,
    vector_to_over,
)
from . import _okrank


def over_to_vector(overpartition):
    """'13,10,9,7o,6' -> {'gamma_len': .., 'delta': [..], 'alpha': [..], 'beta': [..]}"""
    return json.loads(_okrank.over_to_vector_json(overpartition))


def vector_to_overpartition(vector):
    return vector_to_over(json.dumps(vector))


def rank_table(stat, method="gf", max_n=10, k=0):
    """Table as a dict; entries keyed by (n, m, j)."""
    raw = json.loads(_okrank.rank_table_json(stat, method, max_n, k))
    raw["entries"] = {(n, m, j): c for n, m, j, c in raw["entries"]}
    return raw


def verify(identity, order=None, perturb=None):
    return json.loads(_okrank.verify_json(identity, order, perturb))


def verify_all(scale=1.0, jobs=1):
    return [json.loads(r) for r in _okrank.verify_all_json(scale, jobs)]


__all__ = [
    "DomainError",
    "OkrankError",
    "UsageError",
    "ValidationError",
    "__version__",
    "euler_product",
    "generalized_durfee",
    "is_self_k_conjugate",
    "k_conjugate",
    "kbar_rank",
    "list_identities",
    "mock_chi",
    "mock_X",
    "over_to_vector",
    "overpartitions",
    "rank_table",
    "vector_to_over",
    "vector_to_overpartition",
    "verify",
    "verify_all",
]
