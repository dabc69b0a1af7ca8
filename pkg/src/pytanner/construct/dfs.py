"""Depth-first computation of the r-edge local girths.

The r-edge local girth of a VN v is the best local girth v can reach after
r more edges, maximized over CN sequences (CNS) and measured as the minimum
realtime edge local girth along the sequence. The search enumerates CN
indices in strictly decreasing order so every CN set is visited once, and
cuts branches whose running minimum already falls below the best value.
"""

from collections.abc import Sequence
from dataclasses import dataclass

from pytanner.exceptions import ConstructionError
from pytanner.graph import TannerGraph
from pytanner.metric import MetricKind, MetricValue, infinity, neg_infinity
from pytanner.qc import CirculantLift
from pytanner.utils import validate_index


@dataclass
class DfsState:
    """Per-layer variables: layer t, running minimum g_t, index bound u_t
    and the best value lambda_t of the completed branches."""

    t: int
    g_t: MetricValue
    u_t: int
    lambda_t: MetricValue


class _Search:
    def __init__(
        self,
        g: TannerGraph,
        v: int,
        r: int,
        kind: MetricKind,
        lift: CirculantLift,
        *,
        prune: bool,
    ) -> None:
        self.g = g
        self.v = v
        self.r = r
        self.kind = kind
        self.lift = lift
        self.prune = prune
        self.g_v = neg_infinity(kind)
        self.per_cn = [neg_infinity(kind)] * g.m

    def layer(
        self,
        state: DfsState,
        candidates: Sequence[int],
        girths: Sequence[MetricValue],
    ) -> None:
        for i in candidates:
            if i >= state.u_t:
                break
            g_next = min(state.g_t, girths[i])
            if self.prune and g_next < self.g_v:
                continue
            if state.t == self.r:
                self.g_v = max(self.g_v, g_next)
                self.per_cn[i] = max(self.per_cn[i], g_next)
                state.lambda_t = max(state.lambda_t, g_next)
                continue
            child = DfsState(
                t=state.t + 1,
                g_t=g_next,
                u_t=i,
                lambda_t=neg_infinity(self.kind),
            )
            with self.g.trial(self.lift.edge_set(i, self.v)):
                pool = self.lift.candidates(self.g, self.v)
                deeper = [c for c in pool if c < i]
                self.layer(
                    child,
                    deeper,
                    self.lift.edge_girths(self.g, self.v, self.kind, deeper),
                )
            state.lambda_t = max(state.lambda_t, child.lambda_t)
            self.per_cn[i] = max(self.per_cn[i], child.lambda_t)


def multi_edge_local_girths(
    g: TannerGraph,
    v: int,
    r_eff: int,
    kind: MetricKind,
    *,
    lift: None | CirculantLift = None,
    prune: bool = True,
) -> tuple[MetricValue, list[MetricValue], list[MetricValue]]:
    """Return the r-edge local girths of `v` and of every CN.

    Parameters
    ----------
    g : TannerGraph
        the graph, left unchanged on return.
    v : int
        the current VN.
    r_eff : int
        the edge-trials of this stage.
    kind : MetricKind
    lift : CirculantLift, optional
        the circulant lift, non-QC by default.
    prune : bool
        skip branches that cannot beat the best value found so far.
        Pruning keeps the VN's value and the CNs reaching it, values of
        the other CNs become lower bounds.

    Raises
    ------
    ConstructionError
        fewer than `r_eff` CNs or degree slots are left for `v`.

    Returns
    -------
    (MetricValue, list[MetricValue], list[MetricValue])
        g_v, the per-CN values (-inf for excluded CNs) and the edge local
        girths of the first layer.
    """
    validate_index(v, g.n, "VN index")
    lift = lift if lift is not None else CirculantLift()
    candidates = lift.candidates(g, v)
    room = g.degrees[v] - g.vn_degree(v)
    if not 1 <= r_eff <= min(len(candidates), room):
        msg = (
            f"edge-trials {r_eff} for v{v} exceed the {len(candidates)} "
            f"candidate CNs or the {room} free degree slots"
        )
        raise ConstructionError(msg)

    search = _Search(g, v, r_eff, kind, lift, prune=prune)
    girths = lift.edge_girths(g, v, kind, candidates)
    root = DfsState(
        t=1, g_t=infinity(kind), u_t=g.m, lambda_t=neg_infinity(kind)
    )
    search.layer(root, candidates, girths)
    return search.g_v, search.per_cn, girths
