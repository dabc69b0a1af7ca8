"""CN selection strategies.

Strategy 1 (M-PEGA): max metric, then min realtime CN degree, then random.
Strategy 2 (MM-PEGA): r-edge local girth equal to the VN's, then max edge
local girth, then min realtime CN degree, then random.

Survivor lists stay in ascending CN order, and the random source is asked
for one integer only when more than one CN survives.
"""

from collections.abc import Collection, Sequence
from typing import Any, Protocol

from pytanner.constants import NEG_INF
from pytanner.exceptions import ConstructionError, TannerValidationError
from pytanner.graph import TannerGraph
from pytanner.metric import MetricValue

Survivors = tuple[int, ...]


class RandomSource(Protocol):
    """The slice of numpy.random.Generator the strategies rely on."""

    def integers(self, low: int, high: None | int = None) -> Any: ...


def rk(r: int, d: int, k: int) -> int:
    """Return r_k = min{r, d - k + 1}, the edge-trials of stage k."""
    if r < 1:
        msg = f"edge-trials must be positive, got {r}"
        raise TannerValidationError(msg)
    if not 1 <= k <= d:
        msg = f"stage {k} is out of [1, {d}]"
        raise TannerValidationError(msg)
    return min(r, d - k + 1)


def pick(survivors: Sequence[int], rng: RandomSource) -> int:
    """Return the only survivor, or a uniformly drawn one."""
    if not survivors:
        msg = "no CN survived the selection criteria"
        raise ConstructionError(msg)
    if len(survivors) == 1:
        return survivors[0]
    return survivors[int(rng.integers(len(survivors)))]


def _min_degree(pool: Sequence[int], degrees: Sequence[int]) -> Survivors:
    lowest = min(degrees[c] for c in pool)
    return tuple(c for c in pool if degrees[c] == lowest)


def rank_strategy1(
    g: TannerGraph,
    v: int,
    metrics: Sequence[MetricValue],
    admissible: None | Collection[int] = None,
) -> list[Survivors]:
    """Return the survivors after each Strategy 1 criterion."""
    pool = [
        c
        for c in range(g.m)
        if not g.has_edge(c, v) and (admissible is None or c in admissible)
    ]
    if not pool:
        msg = f"v{v} has no CN left to connect to"
        raise ConstructionError(msg)
    top = max(metrics[c] for c in pool)
    by_metric = tuple(c for c in pool if metrics[c] == top)
    return [by_metric, _min_degree(by_metric, g.cn_degrees())]


def select_strategy1(
    g: TannerGraph,
    v: int,
    metrics: Sequence[MetricValue],
    rng: RandomSource,
    admissible: None | Collection[int] = None,
) -> int:
    """Return the CN Strategy 1 selects for the next edge of `v`.

    CNs already joined to `v` are never candidates.
    """
    return pick(rank_strategy1(g, v, metrics, admissible)[-1], rng)


def rank_strategy2(
    per_cn: Sequence[MetricValue],
    edge_girths: Sequence[MetricValue],
    g_v: MetricValue,
    degrees: Sequence[int],
) -> list[Survivors]:
    """Return the survivors after each Strategy 2 criterion."""
    if g_v.distance == NEG_INF:
        msg = "the r-edge local girth of the VN is -inf"
        raise ConstructionError(msg)
    first = tuple(c for c, x in enumerate(per_cn) if x == g_v)
    if not first:
        msg = f"no CN reaches the r-edge local girth {g_v}"
        raise ConstructionError(msg)
    top = max(edge_girths[c] for c in first)
    second = tuple(c for c in first if edge_girths[c] == top)
    return [first, second, _min_degree(second, degrees)]


def select_strategy2(
    per_cn: Sequence[MetricValue],
    edge_girths: Sequence[MetricValue],
    g_v: MetricValue,
    degrees: Sequence[int],
    rng: RandomSource,
) -> int:
    """Return the CN Strategy 2 selects.

    Parameters
    ----------
    per_cn : sequence of MetricValue
        the r-edge local girths of the CNs, -inf for excluded CNs.
    edge_girths : sequence of MetricValue
        the local girth each candidate edge would get on its own.
    g_v : MetricValue
        the r-edge local girth of the VN.
    degrees : sequence of int
        realtime CN degrees.
    rng : RandomSource

    Raises
    ------
    ConstructionError
        `g_v` is -inf or nothing survives.
    """
    return pick(rank_strategy2(per_cn, edge_girths, g_v, degrees)[-1], rng)
