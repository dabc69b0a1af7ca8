"""Cycle structure analysis of Tanner graphs.

Girth, local girths, ACE spectrum, the VN local girth distribution (VNLGD)
and a brute-force cycle enumerator that serves as an independent oracle.
"""

import logging
import math
import re
from collections import Counter
from collections.abc import Iterable, Iterator, Mapping, Sequence
from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Any

import networkx as nx

from pytanner.constants import (
    DEFAULT_ACE_DEPTH,
    INF,
    ORACLE_NODE_LIMIT,
    VNLGD_TOLERANCE,
)
from pytanner.exceptions import TannerValidationError
from pytanner.graph import Edge, TannerGraph
from pytanner.metric import (
    MetricKind,
    MetricValue,
    infinity,
    metric_between,
    one,
)
from pytanner.utils import Ordering, order, validate_index, validate_positive

logger = logging.getLogger(__name__)

Girth = int | float


def local_girth_edge(
    g: TannerGraph, c: int, v: int, kind: MetricKind
) -> MetricValue:
    """Return the metric of the shortest cycle through the edge (c, v).

    Raises
    ------
    TannerValidationError
        the edge does not exist.
    """
    validate_index(c, g.m, "CN index")
    validate_index(v, g.n, "VN index")
    if not g.has_edge(c, v):
        msg = f"edge (c{c}, v{v}) does not exist"
        raise TannerValidationError(msg)
    return metric_between(g, c, v, kind, skip=(c, v)) + one(kind)


def local_girth_vn(g: TannerGraph, v: int, kind: MetricKind) -> MetricValue:
    """Return the metric of the shortest cycle through the VN `v`."""
    validate_index(v, g.n, "VN index")
    return min(
        (local_girth_edge(g, c, v, kind) for c in g.vn_adjacency[v]),
        default=infinity(kind),
    )


def girth(g: TannerGraph, kind: MetricKind) -> MetricValue:
    """Return the metric of the shortest cycle in the graph."""
    return min(
        (local_girth_vn(g, v, kind) for v in range(g.n)),
        default=infinity(kind),
    )


def distance_girth(g: TannerGraph) -> Girth:
    """Return the girth as an int, or math.inf for a forest."""
    return girth(g, MetricKind.distance).distance


def local_girths(g: TannerGraph) -> list[Girth]:
    """Return the distance local girth of every VN."""
    kind = MetricKind.distance
    return [local_girth_vn(g, v, kind).distance for v in range(g.n)]


def _fmt_entry(x: Girth) -> str:
    return "inf" if math.isinf(x) else str(int(x))


@total_ordering
class AceSpectrum(Sequence[Girth]):
    """The ACE spectrum (eta_2, eta_4, ..., eta_2dmax).

    Entry i holds the minimum ACE over all cycles of length 2(i+1),
    math.inf when there are none. Larger spectra are better.
    """

    @classmethod
    def from_string(cls, text: str) -> "AceSpectrum":
        """Parse the '(inf, inf, 26, 13, 6)' notation."""
        body = text.strip().removeprefix("(").removesuffix(")")
        try:
            return cls(
                INF if tok.strip() in {"inf", "∞"} else int(tok)
                for tok in body.split(",")
            )
        except ValueError as e:
            msg = f"invalid ACE spectrum {text!r}"
            raise TannerValidationError(msg) from e

    def __init__(self, eta: Iterable[Girth]) -> None:
        self._eta: tuple[Girth, ...] = tuple(
            INF if math.isinf(x) else int(x) for x in eta
        )
        validate_positive(len(self._eta), "ACE spectrum depth")

    @property
    def depth(self) -> int:
        return len(self._eta)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, AceSpectrum):
            return self._eta == other._eta
        if isinstance(other, Sequence) and not isinstance(other, str):
            return self._eta == tuple(other)
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._eta)

    def __lt__(self, other: Iterable[Girth]) -> bool:
        if isinstance(other, AceSpectrum):
            return self._eta < other._eta
        return self._eta < tuple(other)

    def __getitem__(self, key: Any) -> Any:
        return self._eta[key]

    def __iter__(self) -> Iterator[Girth]:
        yield from self._eta

    def __len__(self) -> int:
        return len(self._eta)

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}({self})"

    def __str__(self) -> str:
        return "(" + ", ".join(_fmt_entry(x) for x in self._eta) + ")"


def compare_spectra(a: AceSpectrum, b: AceSpectrum) -> Ordering:
    """Lexicographic comparison on (eta_2, eta_4, ...)."""
    if a.depth != b.depth:
        msg = f"spectra depths differ: {a.depth} != {b.depth}"
        raise TannerValidationError(msg)
    return order(a, b)


def ace_spectrum(g: TannerGraph, d_max: int = DEFAULT_ACE_DEPTH) -> AceSpectrum:
    """Return the ACE spectrum of depth `d_max`.

    Every cycle is enumerated once by a bounded DFS started at the
    smallest VN index it contains and oriented so that its first CN has a
    smaller index than its last. Branches whose ACE can no longer improve
    any reachable slot are cut.
    """
    validate_positive(d_max, "d_max")
    max_len = 2 * d_max
    best: list[Girth] = [INF] * (d_max + 1)
    cn_adj, vn_adj = g.cn_adjacency, g.vn_adjacency
    weights = [d - 2 for d in g.degrees]
    cyclic_vn = [len(adj) >= 2 for adj in vn_adj]
    cyclic_cn = [len(adj) >= 2 for adj in cn_adj]
    on_path_vn = [False] * g.n
    on_path_cn = [False] * g.m
    cn_members = [set(adj) for adj in cn_adj]

    def bound(length: int) -> Girth:
        # best value still improvable by closing at any length > `length`
        return max(best[(length + 2) // 2 : d_max + 1], default=-1)

    def from_cn(start: int, first: int, c: int, length: int, ace: int) -> None:
        # `length` edges so far, path ends at CN c
        if length + 1 >= 4 and c > first and start in cn_members[c]:
            slot = (length + 1) // 2
            if ace < best[slot]:
                best[slot] = ace
        if length + 3 > max_len:
            return
        for y in cn_adj[c]:
            if y <= start or on_path_vn[y] or not cyclic_vn[y]:
                continue
            acc = ace + weights[y]
            if acc >= bound(length + 1):
                continue
            on_path_vn[y] = True
            for c2 in vn_adj[y]:
                if c2 == c or on_path_cn[c2] or not cyclic_cn[c2]:
                    continue
                on_path_cn[c2] = True
                from_cn(start, first, c2, length + 2, acc)
                on_path_cn[c2] = False
            on_path_vn[y] = False

    for s in range(g.n):
        if not cyclic_vn[s]:
            continue
        on_path_vn[s] = True
        for c in vn_adj[s]:
            if not cyclic_cn[c]:
                continue
            on_path_cn[c] = True
            from_cn(s, c, c, 1, weights[s])
            on_path_cn[c] = False
        on_path_vn[s] = False
    return AceSpectrum(best[1:])


_TERM = re.compile(
    r"^\s*(?P<p>[0-9]*\.?[0-9]+(?:[eE][-+]?[0-9]+)?)\s*\*?\s*"
    r"x\s*\^\s*\{?\s*(?P<i>[0-9]+|inf|∞)\s*\}?\s*$"
)


@total_ordering
class Vnlgd(Mapping[Girth, Fraction | float]):
    """VN local girth distribution phi(x) = sum p_i x^i.

    Keys are local girths (math.inf for VNs on no cycle), values the
    fraction of VNs. Smaller distributions are better.
    """

    @classmethod
    def from_string(cls, text: str, tolerance: float = 5e-4) -> "Vnlgd":
        """Parse the '0.0293x^8 + 0.9707x^10' notation."""
        terms: dict[Girth, float] = {}
        for chunk in text.split("+"):
            match = _TERM.match(chunk)
            if match is None:
                msg = f"invalid VNLGD term {chunk.strip()!r} in {text!r}"
                raise TannerValidationError(msg)
            raw = match["i"]
            key: Girth = INF if raw in {"inf", "∞"} else int(raw)
            terms[key] = terms.get(key, 0.0) + float(match["p"])
        return cls(terms, tolerance=tolerance)

    def __init__(
        self,
        terms: Mapping[Girth, Fraction | float],
        tolerance: float = VNLGD_TOLERANCE,
    ) -> None:
        cleaned: dict[Girth, Fraction | float] = {}
        for key, p in terms.items():
            if not 0 <= p <= 1:
                msg = f"fraction {p} at x^{key} is outside [0, 1]"
                raise TannerValidationError(msg)
            if p:
                cleaned[INF if math.isinf(key) else int(key)] = p
        total = sum(cleaned.values())
        if abs(total - 1) > tolerance:
            msg = f"VNLGD fractions sum to {float(total)}, not 1"
            raise TannerValidationError(msg)
        self._terms = dict(sorted(cleaned.items()))

    def __getitem__(self, key: Girth) -> Fraction | float:
        return self._terms[key]

    def __iter__(self) -> Iterator[Girth]:
        yield from self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __hash__(self) -> int:
        return hash(tuple((k, float(p)) for k, p in self._terms.items()))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Mapping):
            return NotImplemented
        return self._terms == dict(other)

    def __lt__(self, other: "Vnlgd") -> bool:
        return compare_vnlgd(self, other) is Ordering.less

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}({str(self)!r})"

    def __str__(self) -> str:
        return " + ".join(
            f"{float(p):.4f}x^{_fmt_entry(key)}"
            for key, p in self._terms.items()
        )


def compare_vnlgd(a: Vnlgd, b: Vnlgd) -> Ordering:
    """Compare fractions at increasing girth values, the inf bin last."""
    for key in sorted(set(a) | set(b)):
        pa, pb = a.get(key, 0), b.get(key, 0)
        if pa != pb:
            return order(pa, pb)
    return Ordering.equal


def vnlgd(g: TannerGraph) -> Vnlgd:
    """Return the distance-metric VNLGD with exact fractions."""
    counts = Counter(local_girths(g))
    return Vnlgd({key: Fraction(cnt, g.n) for key, cnt in counts.items()})


@dataclass(frozen=True)
class Cycle:
    """A simple cycle of a Tanner graph."""

    length: int
    ace: int
    cns: tuple[int, ...]
    vns: tuple[int, ...]
    edges: frozenset[Edge]


def to_networkx(g: TannerGraph) -> nx.Graph:
    """Return the graph with nodes ('c', i) and ('v', j)."""
    h = nx.Graph()
    h.add_nodes_from((("c", i) for i in range(g.m)), bipartite=0)
    h.add_nodes_from((("v", j) for j in range(g.n)), bipartite=1)
    h.add_edges_from((("c", c), ("v", v)) for c, v in g.edges())
    return h


def brute_force_cycles(
    g: TannerGraph, max_len: int, limit: int = ORACLE_NODE_LIMIT
) -> list[Cycle]:
    """Enumerate every simple cycle of length <= `max_len` exactly once.

    Raises
    ------
    TannerValidationError
        more than `limit` nodes carry edges.
    """
    h = to_networkx(g)
    h.remove_nodes_from([node for node, deg in h.degree() if deg == 0])
    if h.number_of_nodes() > limit:
        msg = (
            f"{h.number_of_nodes()} connected nodes exceed the "
            f"oracle limit of {limit}"
        )
        raise TannerValidationError(msg)

    seen: set[frozenset[Edge]] = set()
    cycles: list[Cycle] = []
    for nodes in nx.simple_cycles(h, length_bound=max_len):
        if len(nodes) < 4:
            continue
        edges: set[Edge] = set()
        for a, b in zip(nodes, nodes[1:] + nodes[:1]):
            c, v = (a, b) if a[0] == "c" else (b, a)
            edges.add((c[1], v[1]))
        key = frozenset(edges)
        if key in seen:
            continue
        seen.add(key)
        vns = tuple(sorted(x for kind, x in nodes if kind == "v"))
        cycles.append(
            Cycle(
                length=len(nodes),
                ace=sum(g.degrees[j] - 2 for j in vns),
                cns=tuple(sorted(x for kind, x in nodes if kind == "c")),
                vns=vns,
                edges=key,
            )
        )
    logger.debug("enumerated %d cycles up to length %d", len(cycles), max_len)
    return cycles
