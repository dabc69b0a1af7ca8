"""Metrics between check nodes and a variable node.

Two metrics are supported:

- distance: the length of the shortest path f = d
- distance-ACE pair: f = (d, a), where `a` is the minimum ACE over the
  shortest paths and the ACE of a path sums d_vj - 2 over its VNs

Pairs are ordered lexicographically. The +inf sentinel marks unreachable
nodes, the -inf sentinel marks CNs already joined to the VN.
"""

import math
from collections.abc import Sequence
from enum import Enum
from functools import total_ordering

from pytanner.constants import INF, NEG_INF
from pytanner.exceptions import MetricKindError
from pytanner.graph import Edge, TannerGraph
from pytanner.utils import Ordering, order, validate_index

Number = int | float


class MetricKind(str, Enum):
    """Metric selector, fixed for a whole construction run."""

    distance = "dist"
    distance_ace = "dist-ace"


def _fmt(x: Number) -> str:
    return str(x) if math.isfinite(x) else ("inf" if x > 0 else "-inf")


@total_ordering
class MetricValue:
    """A distance, or a (distance, ACE) pair when `ace` is given."""

    __slots__ = ("_ace", "_distance")

    def __init__(self, distance: Number, ace: None | Number = None) -> None:
        self._distance = distance
        self._ace = ace

    @property
    def distance(self) -> Number:
        return self._distance

    @property
    def ace(self) -> None | Number:
        return self._ace

    @property
    def kind(self) -> MetricKind:
        if self._ace is None:
            return MetricKind.distance
        return MetricKind.distance_ace

    @property
    def key(self) -> tuple[Number, ...]:
        if self._ace is None:
            return (self._distance,)
        return (self._distance, self._ace)

    def is_finite(self) -> bool:
        return math.isfinite(self._distance)

    def _same_kind(self, other: "MetricValue") -> None:
        if (self._ace is None) != (other._ace is None):
            msg = f"cannot combine {self!r} with {other!r}"
            raise MetricKindError(msg)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MetricValue):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __lt__(self, other: "MetricValue") -> bool:
        if not isinstance(other, MetricValue):
            return NotImplemented
        self._same_kind(other)
        return self.key < other.key

    def __add__(self, other: "MetricValue") -> "MetricValue":
        if not isinstance(other, MetricValue):
            return NotImplemented
        self._same_kind(other)
        if NEG_INF in self.key or NEG_INF in other.key:
            msg = "-inf does not take part in metric arithmetic"
            raise MetricKindError(msg)
        if self._ace is None or other._ace is None:
            return MetricValue(self._distance + other._distance)
        if math.isinf(self._distance) or math.isinf(other._distance):
            return MetricValue(INF, INF)
        return MetricValue(
            self._distance + other._distance, self._ace + other._ace
        )

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        if self._ace is None:
            return f"{cls_name}({_fmt(self._distance)})"
        return f"{cls_name}({_fmt(self._distance)}, {_fmt(self._ace)})"

    def __str__(self) -> str:
        if self._ace is None:
            return _fmt(self._distance)
        if not math.isfinite(self._distance):
            return _fmt(self._distance)
        return f"({_fmt(self._distance)}, {_fmt(self._ace)})"


def _value(kind: MetricKind, distance: Number, ace: Number) -> MetricValue:
    if kind is MetricKind.distance:
        return MetricValue(distance)
    return MetricValue(distance, ace)


def zero(kind: MetricKind) -> MetricValue:
    return _value(kind, 0, 0)


def one(kind: MetricKind) -> MetricValue:
    return _value(kind, 1, 0)


def infinity(kind: MetricKind) -> MetricValue:
    return _value(kind, INF, INF)


def neg_infinity(kind: MetricKind) -> MetricValue:
    return _value(kind, NEG_INF, NEG_INF)


def zero_vn(kind: MetricKind, degree: int) -> MetricValue:
    """Return 0_vj = (0, d_vj - 2)."""
    return _value(kind, 0, degree - 2)


def one_vn(kind: MetricKind, degree: int) -> MetricValue:
    """Return 1_vj = (1, d_vj - 2), the metric of an existing edge."""
    return _value(kind, 1, degree - 2)


def compare(a: MetricValue, b: MetricValue) -> Ordering:
    """Compare two metric values of the same kind.

    Raises
    ------
    MetricKindError
        the values are of different kinds.
    """
    return order(a, b)


def add(a: MetricValue, b: MetricValue) -> MetricValue:
    """Return the componentwise sum, +inf being absorbing."""
    return a + b


def _layers(
    g: TannerGraph,
    v: int,
    *,
    with_ace: bool,
    skip: None | Edge = None,
    target: None | int = None,
) -> tuple[list[Number], list[Number]]:
    """Layered BFS from VN v over alternating VN/CN layers.

    Returns the CN distances and the minimum accumulated ACE over the
    shortest paths (zeros when `with_ace` is off). With a `target` CN the
    search stops once the target's layer is complete.
    """
    m, n = g.m, g.n
    weights = [d - 2 for d in g.degrees]
    cn_adj, vn_adj = g.cn_adjacency, g.vn_adjacency
    cn_dist: list[Number] = [INF] * m
    cn_ace: list[Number] = [INF if with_ace else 0] * m
    vn_dist: list[Number] = [INF] * n
    vn_ace: list[Number] = [INF if with_ace else 0] * n
    skip_c, skip_v = skip if skip is not None else (-1, -1)

    vn_dist[v] = 0
    vn_ace[v] = weights[v] if with_ace else 0
    frontier = [v]
    depth = 0
    while frontier:
        next_cns: list[int] = []
        for x in frontier:
            ax = vn_ace[x]
            for c in vn_adj[x]:
                if x == skip_v and c == skip_c:
                    continue
                if cn_dist[c] == INF:
                    cn_dist[c] = depth + 1
                    cn_ace[c] = ax
                    next_cns.append(c)
                elif with_ace and cn_dist[c] == depth + 1 and ax < cn_ace[c]:
                    cn_ace[c] = ax
        if target is not None and cn_dist[target] != INF:
            break
        next_vns: list[int] = []
        for c in next_cns:
            ac = cn_ace[c]
            for y in cn_adj[c]:
                if c == skip_c and y == skip_v:
                    continue
                if vn_dist[y] == INF:
                    vn_dist[y] = depth + 2
                    vn_ace[y] = ac + weights[y] if with_ace else 0
                    next_vns.append(y)
                elif with_ace and vn_dist[y] == depth + 2:
                    vn_ace[y] = min(vn_ace[y], ac + weights[y])
        frontier = next_vns
        depth += 2
    return cn_dist, cn_ace


def bfs_metrics(
    g: TannerGraph,
    v: int,
    kind: MetricKind,
    *,
    skip: None | Edge = None,
) -> list[MetricValue]:
    """Return F_{Vc, v}: the metric from every CN to the VN `v`.

    Parameters
    ----------
    g : TannerGraph
    v : int
        the target VN index.
    kind : MetricKind
    skip : (int, int), optional
        an edge treated as absent.

    Returns
    -------
    list[MetricValue]
        m entries, +inf for CNs that cannot reach `v`.
    """
    validate_index(v, g.n, "VN index")
    with_ace = kind is MetricKind.distance_ace
    dist, ace = _layers(g, v, with_ace=with_ace, skip=skip)
    if not with_ace:
        return [MetricValue(d) for d in dist]
    return [
        MetricValue(d, a) if d != INF else MetricValue(INF, INF)
        for d, a in zip(dist, ace)
    ]


def metric_between(
    g: TannerGraph,
    c: int,
    v: int,
    kind: MetricKind,
    *,
    skip: None | Edge = None,
) -> MetricValue:
    """Return f_{c, v}, stopping the search as soon as it is settled."""
    validate_index(c, g.m, "CN index")
    validate_index(v, g.n, "VN index")
    with_ace = kind is MetricKind.distance_ace
    dist, ace = _layers(g, v, with_ace=with_ace, skip=skip, target=c)
    if dist[c] == INF:
        return infinity(kind)
    return _value(kind, dist[c], ace[c])


def best(values: Sequence[MetricValue], kind: MetricKind) -> MetricValue:
    """Return the maximum value, -inf for an empty sequence."""
    return max(values, default=neg_infinity(kind))
