"""Tanner graph data model.

Glossary:

- CN: check node, a row of the parity-check matrix H
- VN: variable node, a column of H
- an edge (c, v) exists iff h[c, v] == 1
- the realtime degree of a node is its current adjacency length,
  the target degree of a VN is the one it must reach when finished
"""

from collections.abc import Iterable, Iterator, Sequence
from contextlib import contextmanager
from typing import Any

import numpy as np
import numpy.typing as npt

from pytanner.exceptions import (
    DegreeOverflowError,
    DuplicateEdgeError,
    TannerValidationError,
)
from pytanner.utils import validate_index, validate_positive

Edge = tuple[int, int]


class DegreeSequence(Sequence[int]):
    """The target VN degrees D = {d_vj | 0 <= j < n}.

    Compares equal to plain sequences of the same integers.
    """

    def __init__(
        self,
        degrees: Iterable[int],
        m: None | int = None,
        *,
        allow_isolated: bool = False,
    ) -> None:
        self._degrees: list[int] = [int(d) for d in degrees]
        lower = 0 if allow_isolated else 1
        for j, d in enumerate(self._degrees):
            if d < lower:
                msg = f"degree of v{j} must be at least {lower}, got {d}"
                raise TannerValidationError(msg)
        if m is not None:
            self.check_bound(m)

    def check_bound(self, m: int) -> "DegreeSequence":
        """Return self if no degree exceeds the CN count `m`."""
        for j, d in enumerate(self._degrees):
            if d > m:
                msg = f"degree {d} of v{j} exceeds the CN count m={m}"
                raise TannerValidationError(msg)
        return self

    def __eq__(self, other: object) -> bool:
        if isinstance(other, DegreeSequence):
            return self._degrees == other._degrees
        if isinstance(other, Sequence):
            return self._degrees == list(other)
        return NotImplemented

    __hash__ = None  # type: ignore[assignment]

    def __getitem__(self, key: Any) -> Any:
        if isinstance(key, slice):
            return DegreeSequence(self._degrees[key], allow_isolated=True)
        return self._degrees[key]

    def __iter__(self) -> Iterator[int]:
        yield from self._degrees

    def __len__(self) -> int:
        return len(self._degrees)

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}({self._degrees})"

    @property
    def max_degree(self) -> int:
        return max(self._degrees, default=0)


class TannerGraph:
    """A bipartite Tanner graph with incremental edge insertion.

    Adjacency lists keep insertion order in both directions, per-VN sets
    answer edge existence in constant time. Once a construction is over
    the graph is only read.
    """

    @classmethod
    def from_edges(
        cls,
        m: int,
        n: int,
        edges: Iterable[Edge],
        degrees: None | Iterable[int] = None,
    ) -> "TannerGraph":
        """Return a graph holding the given edges.

        Without `degrees`, the target degrees are the realized ones
        (isolated VNs are allowed on this path only).
        """
        edge_list = [(int(c), int(v)) for c, v in edges]
        if degrees is None:
            realized = [0] * validate_positive(n, "n")
            for c, v in edge_list:
                realized[validate_index(v, n, "VN index")] += 1
            seq = DegreeSequence(realized, allow_isolated=True)
        elif isinstance(degrees, DegreeSequence):
            seq = degrees
        else:
            seq = DegreeSequence(degrees)
        g = cls(m, n, seq)
        g.add_edge_set(edge_list)
        return g

    def __init__(self, m: int, n: int, degrees: Iterable[int]) -> None:
        self._m = validate_positive(m, "m")
        self._n = validate_positive(n, "n")
        seq = (
            degrees
            if isinstance(degrees, DegreeSequence)
            else DegreeSequence(degrees)
        )
        if len(seq) != n:
            msg = f"{len(seq)} degrees given for n={n} VNs"
            raise TannerValidationError(msg)
        self._degrees = seq.check_bound(m)
        self._cn_adj: list[list[int]] = [[] for _ in range(m)]
        self._vn_adj: list[list[int]] = [[] for _ in range(n)]
        self._vn_sets: list[set[int]] = [set() for _ in range(n)]
        self._edges: list[Edge] = []

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TannerGraph):
            return NotImplemented
        return (
            self._m == other._m
            and self._n == other._n
            and set(self._edges) == set(other._edges)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}(m={self._m}, n={self._n}, edges={self.num_edges})"

    @property
    def m(self) -> int:
        return self._m

    @property
    def n(self) -> int:
        return self._n

    @property
    def degrees(self) -> DegreeSequence:
        """Target VN degrees."""
        return self._degrees

    @property
    def num_edges(self) -> int:
        return len(self._edges)

    @property
    def cn_adjacency(self) -> list[list[int]]:
        """Per-CN VN lists (read only)."""
        return self._cn_adj

    @property
    def vn_adjacency(self) -> list[list[int]]:
        """Per-VN CN lists (read only)."""
        return self._vn_adj

    def edges(self) -> list[Edge]:
        """Return the edges in insertion order."""
        return list(self._edges)

    def has_edge(self, c: int, v: int) -> bool:
        return c in self._vn_sets[v]

    def cn_degree(self, c: int) -> int:
        return len(self._cn_adj[c])

    def vn_degree(self, v: int) -> int:
        return len(self._vn_adj[v])

    def cn_degrees(self) -> list[int]:
        return [len(adj) for adj in self._cn_adj]

    def is_complete(self) -> bool:
        """Return True when every VN reached its target degree."""
        return all(
            len(adj) == d for adj, d in zip(self._vn_adj, self._degrees)
        )

    def _check(self, c: int, v: int) -> None:
        validate_index(c, self._m, "CN index")
        validate_index(v, self._n, "VN index")

    def add_edge(self, c: int, v: int) -> None:
        """Insert the edge (c, v).

        Raises
        ------
        TannerValidationError
            an index is out of range.
        DuplicateEdgeError
            the edge already exists.
        DegreeOverflowError
            v already has its target degree.
        """
        self.add_edge_set([(c, v)])

    def add_edge_set(self, edges: Iterable[Edge]) -> None:
        """Insert a set of edges atomically: all of them or none."""
        batch = list(edges)
        pending: dict[int, int] = {}
        seen: set[Edge] = set()
        for c, v in batch:
            self._check(c, v)
            if (c, v) in seen or self.has_edge(c, v):
                msg = f"edge (c{c}, v{v}) already exists"
                raise DuplicateEdgeError(msg)
            seen.add((c, v))
            pending[v] = pending.get(v, 0) + 1
        for v, extra in pending.items():
            if len(self._vn_adj[v]) + extra > self._degrees[v]:
                msg = (
                    f"v{v} would exceed its target degree {self._degrees[v]}"
                )
                raise DegreeOverflowError(msg)
        for c, v in batch:
            self._cn_adj[c].append(v)
            self._vn_adj[v].append(c)
            self._vn_sets[v].add(c)
            self._edges.append((c, v))

    def _pop_edge(self, c: int, v: int) -> None:
        last = self._edges.pop()
        if last != (c, v) or self._cn_adj[c][-1] != v:
            msg = f"edge (c{c}, v{v}) is not the most recent insertion"
            raise TannerValidationError(msg)
        self._cn_adj[c].pop()
        self._vn_adj[v].pop()
        self._vn_sets[v].discard(c)

    @contextmanager
    def trial(self, edges: Iterable[Edge]) -> Iterator["TannerGraph"]:
        """Insert edges for the duration of the block, then undo them.

        Trials nest; the removal is last in, first out.
        """
        batch = list(edges)
        self.add_edge_set(batch)
        try:
            yield self
        finally:
            for c, v in reversed(batch):
                self._pop_edge(c, v)

    def copy(self) -> "TannerGraph":
        g = type(self)(self._m, self._n, self._degrees)
        g.add_edge_set(self._edges)
        return g

    def to_dense(self) -> npt.NDArray[np.uint8]:
        """Return the m x n parity-check matrix H."""
        h = np.zeros((self._m, self._n), dtype=np.uint8)
        if self._edges:
            rows, cols = zip(*self._edges)
            h[list(rows), list(cols)] = 1
        return h


def new_graph(m: int, n: int, degrees: Iterable[int]) -> TannerGraph:
    """Return the edgeless graph G = (V, {})."""
    return TannerGraph(m, n, degrees)


def add_edge(g: TannerGraph, c: int, v: int) -> TannerGraph:
    """Return `g` after inserting (c, v) in place."""
    g.add_edge(c, v)
    return g


def add_edge_set(g: TannerGraph, edges: Iterable[Edge]) -> TannerGraph:
    """Return `g` after inserting every edge in place, or none of them."""
    g.add_edge_set(edges)
    return g
