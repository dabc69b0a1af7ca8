from pytanner.construct.builder import (
    ConstructionTrace,
    PegBuilder,
    StageRecord,
    run_construction,
    run_qc_construction,
)
from pytanner.construct.config import ConstructionConfig, Variant
from pytanner.construct.dfs import DfsState, multi_edge_local_girths
from pytanner.construct.strategies import (
    RandomSource,
    rk,
    select_strategy1,
    select_strategy2,
)

__all__ = [
    "ConstructionConfig",
    "ConstructionTrace",
    "DfsState",
    "PegBuilder",
    "RandomSource",
    "StageRecord",
    "Variant",
    "multi_edge_local_girths",
    "rk",
    "run_construction",
    "run_qc_construction",
    "select_strategy1",
    "select_strategy2",
]
