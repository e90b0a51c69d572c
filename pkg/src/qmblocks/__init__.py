"""Block decomposition of quasi-median graphs built from sequence alignments."""
from .alignment import Alignment, RecodingReport, alignment_to_partition_system, parse_alignment, read_alignment
from .decomposition import BlockRecord, DecompositionState, InducedSystem, add_partition, decompose, induced_partitions
from .estimators import AlignmentRecoder, BlockDecomposition, QuasiMedianOracle
from .exceptions import (
    AlignmentParseError,
    BudgetExceededError,
    DuplicatePartitionError,
    InternalInvariantError,
    PreconditionError,
    QMBlocksError,
    StructuralError,
)
from .partitions import GroundSet, Partition, PartitionSystem, nsc_components, nsc_graph, strongly_compatible

__all__ = [
    "Alignment",
    "AlignmentParseError",
    "AlignmentRecoder",
    "BlockDecomposition",
    "BlockRecord",
    "BudgetExceededError",
    "DecompositionState",
    "DuplicatePartitionError",
    "GroundSet",
    "InducedSystem",
    "InternalInvariantError",
    "Partition",
    "PartitionSystem",
    "PreconditionError",
    "QMBlocksError",
    "QuasiMedianOracle",
    "RecodingReport",
    "StructuralError",
    "add_partition",
    "alignment_to_partition_system",
    "decompose",
    "induced_partitions",
    "nsc_components",
    "nsc_graph",
    "parse_alignment",
    "read_alignment",
    "strongly_compatible",
]
