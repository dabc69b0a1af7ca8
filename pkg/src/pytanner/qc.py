"""Quasi-cyclic (QC) lifting.

The parity-check matrix of a QC code is a J x K array of N x N circulants.
Placing one edge (c, v) implies its N cyclic copies

    {(c, v)_N} = {(pi(c, N, t), pi(v, N, t)) | 0 <= t < N},

with pi(x, N, t) = floor(x / N) * N + (x + t) mod N.
"""

from collections.abc import Iterable, Sequence
from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

from pytanner.exceptions import ConstructionError, TannerValidationError
from pytanner.graph import Edge, TannerGraph
from pytanner.metric import (
    MetricKind,
    MetricValue,
    bfs_metrics,
    metric_between,
    neg_infinity,
    one,
)
from pytanner.utils import validate_index, validate_positive


def pi(x: int, N: int, t: int) -> int:  # noqa: N803
    """Return the index of x cyclically shifted by t within its group."""
    return (x // N) * N + (x + t) % N


def expand_edge_set(c: int, v: int, N: int) -> list[Edge]:  # noqa: N803
    """Return {(c, v)_N}, the edge itself first."""
    validate_positive(N, "circulant size")
    return [(pi(c, N, t), pi(v, N, t)) for t in range(N)]


@dataclass(frozen=True)
class QcParams:
    """Circulant size N and the J x K circulant array shape."""

    N: int  # noqa: N815
    J: int  # noqa: N815
    K: int  # noqa: N815
    cpm_only: bool = False


def validate_qc_params(
    m: int,
    n: int,
    N: int,  # noqa: N803
    degrees: Sequence[int],
    *,
    cpm_only: bool = False,
) -> QcParams:
    """Return the QC parameters if (m, n, N, D) can be lifted.

    Raises
    ------
    TannerValidationError
        N does not divide m and n, degrees vary within a VN group, a degree
        is out of (0, m], or a CPM-only degree exceeds the J row groups.
    """
    validate_positive(N, "circulant size")
    if m % N or n % N:
        msg = f"m={m} and n={n} must be multiples of N={N}"
        raise TannerValidationError(msg)
    if len(degrees) != n:
        msg = f"{len(degrees)} degrees given for n={n} VNs"
        raise TannerValidationError(msg)
    J, K = m // N, n // N  # noqa: N806
    limit = J if cpm_only else m
    for head in range(0, n, N):
        group = degrees[head : head + N]
        d = group[0]
        if any(x != d for x in group):
            msg = f"degrees of VN group v{head}..v{head + N - 1} differ"
            raise TannerValidationError(msg)
        if not 0 < d <= limit:
            msg = f"degree {d} of VN group at v{head} is out of (0, {limit}]"
            raise TannerValidationError(msg)
    return QcParams(N=N, J=J, K=K, cpm_only=cpm_only)


def qc_edge_local_girth(
    g: TannerGraph,
    c: int,
    v: int,
    N: int,  # noqa: N803
    kind: MetricKind,
) -> MetricValue:
    """Return the local girth the edge (c, v) gets with its cyclic copies.

    The other N - 1 copies are inserted before measuring, so cycles that
    close inside the lifted set are accounted for.

    Raises
    ------
    TannerValidationError
        the cyclic set is already (partially) present.
    """
    validate_index(c, g.m, "CN index")
    validate_index(v, g.n, "VN index")
    edges = expand_edge_set(c, v, N)
    present = sum(g.has_edge(*e) for e in edges)
    if present:
        msg = (
            f"{present} of the {N} cyclic copies of (c{c}, v{v}) "
            "already exist"
        )
        raise TannerValidationError(msg)
    with g.trial(edges[1:]):
        return metric_between(g, c, v, kind) + one(kind)


def _used_row_groups(
    g: TannerGraph,
    v: int,
    N: int,  # noqa: N803
) -> set[int]:
    """Return the row groups holding a nonzero block in v's column group."""
    head = (v // N) * N
    return {c // N for j in range(head, head + N) for c in g.vn_adjacency[j]}


def cpm_candidate_filter(
    g: TannerGraph,
    v: int,
    N: int,  # noqa: N803
) -> set[int]:
    """Return the CNs whose circulant block in v's column group is zero.

    Raises
    ------
    ConstructionError
        every block of the column group is already nonzero.
    """
    validate_index(v, g.n, "VN index")
    used = _used_row_groups(g, v, N)
    admissible = {c for c in range(g.m) if c // N not in used}
    if not admissible:
        msg = (
            f"no zero circulant left for v{v}: all {g.m // N} row groups "
            "are used"
        )
        raise ConstructionError(msg)
    return admissible


def circulant_blocks(
    g: TannerGraph,
    N: int,  # noqa: N803
) -> npt.NDArray[np.int64]:
    """Return the J x K array of circulant weights (0 = zero block)."""
    if g.m % N or g.n % N:
        msg = f"graph {g.m}x{g.n} is not tiled by {N}x{N} circulants"
        raise TannerValidationError(msg)
    blocks = np.zeros((g.m // N, g.n // N), dtype=np.int64)
    for c, v in g.edges():
        blocks[c // N, v // N] += 1
    return blocks // N


def check_qc_structure(
    g: TannerGraph,
    N: int,  # noqa: N803
    *,
    cpm_only: bool = False,
) -> None:
    """Raise unless (c, v) in E implies {(c, v)_N} in E for every edge.

    With `cpm_only`, every nonzero block must also be a permutation
    matrix.
    """
    blocks = circulant_blocks(g, N)
    for c, v in g.edges():
        for cc, vv in expand_edge_set(c, v, N):
            if not g.has_edge(cc, vv):
                msg = (
                    f"edge (c{c}, v{v}) lacks its cyclic copy (c{cc}, v{vv})"
                )
                raise TannerValidationError(msg)
    if cpm_only and (blocks > 1).any():
        rg, cg = (int(x) for x in np.argwhere(blocks > 1)[0])
        msg = f"block ({rg}, {cg}) has weight {blocks[rg, cg]}, not a CPM"
        raise TannerValidationError(msg)


class CirculantLift:
    """Edge-set expansion and edge local girths for a circulant size.

    N = 1 is the plain, non-QC case: a single BFS measures every
    candidate. For N > 1 each candidate gets its own measurement over the
    graph holding the candidate's other cyclic copies.
    """

    def __init__(self, circulant_size: int = 1, *, cpm_only: bool = False):
        self.N = validate_positive(circulant_size, "circulant size")
        self.cpm_only = cpm_only

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}({self.N}, cpm_only={self.cpm_only})"

    def edge_set(self, c: int, v: int) -> list[Edge]:
        return expand_edge_set(c, v, self.N)

    def candidates(self, g: TannerGraph, v: int) -> list[int]:
        """Return the CNs the VN `v` may be joined to, ascending."""
        pool: Iterable[int] = (
            sorted(cpm_candidate_filter(g, v, self.N))
            if self.cpm_only
            else range(g.m)
        )
        return [c for c in pool if not g.has_edge(c, v)]

    def edge_girths(
        self,
        g: TannerGraph,
        v: int,
        kind: MetricKind,
        candidates: Iterable[int],
    ) -> list[MetricValue]:
        """Return g_(c, v) after inserting (c, v)_N, -inf off `candidates`."""
        girths = [neg_infinity(kind)] * g.m
        if self.N == 1:
            metrics = bfs_metrics(g, v, kind)
            unit = one(kind)
            for c in candidates:
                girths[c] = metrics[c] + unit
        else:
            for c in candidates:
                girths[c] = qc_edge_local_girth(g, c, v, self.N, kind)
        return girths
