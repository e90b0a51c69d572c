"""scikit-learn style wrappers around recoding, decomposition and the oracle."""
from __future__ import annotations

from typing import Any, Iterable, Sequence

from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from ._validation import check_alignment, check_budget, check_gap_policy, check_partition_system
from .alignment import DEFAULT_GAP_CHARS, alignment_to_partition_system
from .decomposition import (
    BlockRecord,
    DecompositionState,
    InducedSystem,
    add_partition,
    decompose,
    induced_partitions,
)
from .oracle import (
    DEFAULT_BUDGET,
    PMap,
    QuasiMedianGraph,
    ReferenceDecomposition,
    blocks_and_cut_vertices,
    gv_cut_test,
    quasi_median_graph,
)
from .partitions import GroundSet, Partition, PartitionSystem


def _require(est: BaseEstimator, attr: str) -> None:
    if not hasattr(est, attr):
        raise NotFittedError(f"{type(est).__name__} is not fitted yet; call fit first")


# outputs are not arrays, so sklearn's set_output wrapping is switched off
class AlignmentRecoder(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Turn an alignment into a partition system, one partition per informative column."""

    def __init__(self, gap_policy: str = "letter", gap_chars: str = DEFAULT_GAP_CHARS):
        self.gap_policy = gap_policy
        self.gap_chars = gap_chars

    def fit(self, X, y=None):
        check_gap_policy(self.gap_policy)
        self.system_, self.report_ = alignment_to_partition_system(
            check_alignment(X), self.gap_policy, self.gap_chars
        )
        self.n_features_in_ = self.system_.n
        return self

    def transform(self, X) -> PartitionSystem:
        _require(self, "system_")
        system, _ = alignment_to_partition_system(check_alignment(X), self.gap_policy, self.gap_chars)
        return system


class BlockDecomposition(TransformerMixin, BaseEstimator, auto_wrap_output_keys=None):
    """Blocks of the quasi-median graph, found without building the graph.

    ``fit`` accepts a :class:`PartitionSystem`, an :class:`Alignment` or a
    list of row strings. ``transform`` returns the induced system of every
    block, ordered by smallest partition id.
    """

    def __init__(self, gap_policy: str = "letter", gap_chars: str = DEFAULT_GAP_CHARS,
                 order: Sequence[int] | None = None):
        self.gap_policy = gap_policy
        self.gap_chars = gap_chars
        self.order = order

    def fit(self, X, y=None):
        self.system_, self.report_ = check_partition_system(X, self.gap_policy, self.gap_chars)
        self.state_ = decompose(self.system_, self.order)
        return self

    def partial_fit(self, partition: Partition | Sequence[Any], ground: GroundSet | None = None):
        """Add one partition (or a list of per-element labels) to the current state."""
        if not hasattr(self, "state_"):
            if ground is None:
                raise NotFittedError("the first partial_fit call needs the ground set")
            self.system_, self.report_ = PartitionSystem(ground), None
            self.state_ = DecompositionState(ground)
        if not isinstance(partition, Partition):
            partition = Partition.from_labels(list(partition))
        add_partition(self.state_, partition.with_id(len(self.state_.partitions)))
        return self

    @property
    def blocks_(self) -> list[BlockRecord]:
        _require(self, "state_")
        return sorted(self.state_.blocks.values(), key=lambda b: min(b.parts))

    @property
    def induced_systems_(self) -> list[InducedSystem]:
        return [induced_partitions(self.state_, b) for b in self.blocks_]

    @property
    def n_blocks_(self) -> int:
        return len(self.blocks_)

    @property
    def n_extra_vertices_(self) -> int:
        return len(self.state_.extra_vertices)

    def transform(self, X=None) -> list[InducedSystem]:
        _require(self, "state_")
        if X is None or X is self.system_:
            return self.induced_systems_
        system, _ = check_partition_system(X, self.gap_policy, self.gap_chars)
        state = decompose(system)
        return [induced_partitions(state, b) for b in sorted(state.blocks.values(), key=lambda b: min(b.parts))]


class QuasiMedianOracle(BaseEstimator):
    """Builds the whole quasi-median graph; only for small inputs.

    ``predict`` tells, for each given vertex (index or P-map), whether it is
    a cut vertex according to the auxiliary-graph test.
    """

    def __init__(self, budget: int = DEFAULT_BUDGET, gap_policy: str = "letter",
                 gap_chars: str = DEFAULT_GAP_CHARS):
        self.budget = budget
        self.gap_policy = gap_policy
        self.gap_chars = gap_chars

    def fit(self, X, y=None):
        budget = check_budget(self.budget)
        self.system_, self.report_ = check_partition_system(X, self.gap_policy, self.gap_chars)
        self.graph_: QuasiMedianGraph = quasi_median_graph(self.system_, budget)
        self.reference_: ReferenceDecomposition = blocks_and_cut_vertices(self.graph_)
        return self

    def predict(self, vertices: Iterable[int | PMap] | None = None) -> list[bool]:
        _require(self, "graph_")
        if vertices is None:
            vertices = range(len(self.graph_.vertices))
        return [gv_cut_test(self.graph_, v) for v in vertices]
