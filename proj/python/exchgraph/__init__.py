"""Python interface to the exchgraph library.

Mixing specs, seeds, limit laws and ensemble configs are plain dicts in the
same shape as the CLI config file, e.g. ``{"variant": "PowerLaw", "alpha": 1,
"beta": 3}``.
"""

import json

from . import _core
from ._core import InvalidParameter, NoThresholdError

__all__ = [
    "InvalidParameter",
    "NoThresholdError",
    "sample_graph",
    "moment",
    "xi",
    "out_pmf",
    "in_pmf",
    "limit_pmf",
    "count_motifs",
    "mean_motifs",
    "var_motifs",
    "hub_statistic",
    "hub_limit_cdf",
    "gf2_rank",
    "expected_solutions",
    "rate_sup",
    "gamma_critical",
]


def _s(obj):
    return json.dumps(obj)


def sample_graph(config, replica=0):
    """Adjacency matrix (uint8, rows are senders) of one replica."""
    return _core.sample_graph(_s(config), replica)


def moment(mixing, n, i):
    return _core.moment(_s(mixing), n, i)


def xi(mixing, n, i):
    return _core.xi(_s(mixing), n, i)


def out_pmf(mixing, n, kmax):
    return _core.out_pmf(_s(mixing), n, kmax)


def in_pmf(mixing, n, rows, kmax):
    return _core.in_pmf(_s(mixing), n, rows, kmax)


def limit_pmf(law, kmax):
    return _core.limit_pmf(_s(law), kmax)


def count_motifs(matrix, cycle_lengths=()):
    return json.loads(_core.count_motifs(matrix, list(cycle_lengths)))


def mean_motifs(mixing, n, rows=None):
    return json.loads(_core.mean_motifs(_s(mixing), n, n if rows is None else rows))


def var_motifs(mixing, n):
    return json.loads(_core.var_motifs(_s(mixing), n))


def hub_statistic(matrix):
    return _core.hub_statistic(matrix)


def hub_limit_cdf(alpha, beta, x):
    return _core.hub_limit_cdf(alpha, beta, x)


def gf2_rank(matrix):
    return json.loads(_core.gf2_rank(matrix))


def expected_solutions(mixing, n, rows=None):
    return json.loads(_core.expected_solutions(_s(mixing), n, n if rows is None else rows))


def rate_sup(seed, gamma):
    return json.loads(_core.rate_sup(_s(seed), gamma))


def gamma_critical(seed):
    return json.loads(_core.gamma_critical(_s(seed)))
