"""Progressive edge growth: M-PEGA, MM-PEGA and their QC variants."""

import logging
import time
from collections.abc import Iterator, Sequence
from dataclasses import dataclass
from typing import Any

import numpy as np

from pytanner.construct.config import ConstructionConfig, Variant
from pytanner.construct.dfs import multi_edge_local_girths
from pytanner.construct.strategies import (
    RandomSource,
    Survivors,
    pick,
    rank_strategy1,
    rank_strategy2,
    rk,
)
from pytanner.exceptions import ConstructionError, TannerValidationError
from pytanner.graph import TannerGraph, new_graph
from pytanner.metric import MetricKind, MetricValue, bfs_metrics, one
from pytanner.qc import (
    CirculantLift,
    QcParams,
    check_qc_structure,
    qc_edge_local_girth,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class StageRecord:
    """One stage of one VN.

    `local_girth` is the r-edge local girth of the VN the stage aimed at,
    `edge_girth` the local girth the selected edge got when it was placed.
    `survivors` lists the CNs left after each selection criterion.
    """

    vn: int
    stage: int
    cn: int
    edge_trials: int
    local_girth: MetricValue
    edge_girth: MetricValue
    survivors: tuple[Survivors, ...]


class ConstructionTrace(Sequence[StageRecord]):
    """Stage records in construction order."""

    def __init__(self, records: None | Sequence[StageRecord] = None) -> None:
        self._records: list[StageRecord] = list(records or [])

    def __getitem__(self, key: Any) -> Any:
        if isinstance(key, slice):
            return type(self)(self._records[key])
        return self._records[key]

    def __iter__(self) -> Iterator[StageRecord]:
        yield from self._records

    def __len__(self) -> int:
        return len(self._records)

    def __repr__(self) -> str:
        cls_name = type(self).__name__
        return f"{cls_name}({len(self._records)} stages)"

    def append(self, record: StageRecord) -> None:
        self._records.append(record)

    def for_vn(self, vn: int) -> list[StageRecord]:
        return [rec for rec in self._records if rec.vn == vn]

    def alpha(self, vn: int, stage: int) -> None | MetricValue:
        """Return the min edge local girth over the stages before `stage`.

        None for the first stage.
        """
        return min(
            (rec.edge_girth for rec in self.for_vn(vn) if rec.stage < stage),
            default=None,
        )


class PegBuilder:
    """Grows the edges of a Tanner graph VN by VN, stage by stage.

    With a circulant size N > 1 only the head VN of each group drives the
    stages and every selected edge is inserted with its N cyclic copies.
    """

    @classmethod
    def from_config(
        cls,
        cfg: ConstructionConfig,
        graph: None | TannerGraph = None,
    ) -> "PegBuilder":
        if graph is None:
            graph = new_graph(cfg.m, cfg.n, cfg.degrees)
        return cls(
            graph,
            kind=cfg.kind,
            edge_trials=cfg.edge_trials,
            variant=cfg.variant,
            circulant_size=cfg.circulant_size,
            cpm_only=cfg.cpm_only,
            rng=np.random.default_rng(cfg.seed),
        )

    def __init__(
        self,
        graph: TannerGraph,
        *,
        kind: MetricKind = MetricKind.distance,
        edge_trials: int = 1,
        variant: Variant = Variant.mm_pega,
        circulant_size: int = 1,
        cpm_only: bool = False,
        rng: None | RandomSource = None,
        prune: bool = True,
    ) -> None:
        self._graph = graph
        self._kind = MetricKind(kind)
        self._trials = 1 if variant is Variant.m_pega else edge_trials
        self._variant = Variant(variant)
        self._lift = CirculantLift(circulant_size, cpm_only=cpm_only)
        self._rng: RandomSource = (
            rng if rng is not None else np.random.default_rng()
        )
        self._prune = prune
        self.trace = ConstructionTrace()

    @property
    def graph(self) -> TannerGraph:
        return self._graph

    def stage(self, v: int) -> StageRecord:
        """Run the next stage of `v` and insert the selected edge(s).

        Raises
        ------
        TannerValidationError
            `v` is not the head of its VN group.
        ConstructionError
            `v` is complete, or no admissible CN is left.
        """
        g, kind, lift = self._graph, self._kind, self._lift
        if v % lift.N:
            msg = f"v{v} does not head a group of {lift.N} VNs"
            raise TannerValidationError(msg)
        d = g.degrees[v]
        k = g.vn_degree(v) + 1
        if k > d:
            msg = f"v{v} already has its {d} edges"
            raise ConstructionError(msg)

        if self._variant is Variant.m_pega:
            r_k = 1
            metrics = bfs_metrics(g, v, kind)
            survivors = rank_strategy1(
                g, v, metrics, admissible=set(lift.candidates(g, v))
            )
            cn = pick(survivors[-1], self._rng)
            g_v = metrics[cn] + one(kind)
            edge_girth = (
                g_v
                if lift.N == 1
                else qc_edge_local_girth(g, cn, v, lift.N, kind)
            )
        else:
            r_k = rk(self._trials, d, k)
            g_v, per_cn, girths = multi_edge_local_girths(
                g, v, r_k, kind, lift=lift, prune=self._prune
            )
            if max(per_cn) != g_v:
                msg = (
                    f"v{v} stage {k}: max CN value {max(per_cn)} differs "
                    f"from the VN value {g_v}"
                )
                raise ConstructionError(msg)
            survivors = rank_strategy2(per_cn, girths, g_v, g.cn_degrees())
            cn = pick(survivors[-1], self._rng)
            edge_girth = girths[cn]

        g.add_edge_set(lift.edge_set(cn, v))
        record = StageRecord(
            vn=v,
            stage=k,
            cn=cn,
            edge_trials=r_k,
            local_girth=g_v,
            edge_girth=edge_girth,
            survivors=tuple(survivors),
        )
        self.trace.append(record)
        logger.debug(
            "v%d stage %d/%d: c%d (g_v=%s, edge girth %s, r_k=%d)",
            v, k, d, cn, g_v, edge_girth, r_k,
        )  # fmt: skip
        return record

    def grow(self, v: int) -> list[StageRecord]:
        """Run the remaining stages of `v`."""
        records = []
        while self._graph.vn_degree(v) < self._graph.degrees[v]:
            records.append(self.stage(v))
        return records

    def run(self) -> tuple[TannerGraph, ConstructionTrace]:
        """Grow every VN (group) in index order."""
        for v in range(0, self._graph.n, self._lift.N):
            self.grow(v)
        return self._graph, self.trace


def run_construction(
    cfg: ConstructionConfig,
) -> tuple[TannerGraph, ConstructionTrace]:
    """Construct a code with M-PEGA or MM-PEGA.

    QC configurations are handed over to `run_qc_construction`.
    """
    if cfg.is_qc:
        return run_qc_construction(cfg)
    started = time.perf_counter()
    g, trace = PegBuilder.from_config(cfg).run()
    logger.info(
        "%s r=%d (%dx%d): %d edges in %.2fs",
        cfg.variant.value, cfg.effective_trials, cfg.m, cfg.n,
        g.num_edges, time.perf_counter() - started,
    )  # fmt: skip
    return g, trace


def run_qc_construction(
    cfg: ConstructionConfig,
    params: None | QcParams = None,
) -> tuple[TannerGraph, ConstructionTrace]:
    """Construct a QC code with QC-PEGA, CP-PEGA or MM-QC-PEGA.

    Raises
    ------
    TannerValidationError
        the configuration cannot be lifted, or `params` disagree with it.
    ConstructionError
        the CPM restriction ran out of zero circulants.
    """
    expected = cfg.qc_params()
    if params is not None and params != expected:
        msg = f"{params} do not match the configuration ({expected})"
        raise TannerValidationError(msg)
    started = time.perf_counter()
    g, trace = PegBuilder.from_config(cfg).run()
    check_qc_structure(g, expected.N, cpm_only=expected.cpm_only)
    logger.info(
        "%s r=%d N=%d (%dx%d, cpm_only=%s): %d edges in %.2fs",
        cfg.variant.value, cfg.effective_trials, expected.N, cfg.m, cfg.n,
        expected.cpm_only, g.num_edges, time.perf_counter() - started,
    )  # fmt: skip
    return g, trace
