"""Argument checks shared by the estimators and the command line."""
from __future__ import annotations

import numbers
from typing import Any, Sequence

from .alignment import (
    DEFAULT_GAP_CHARS,
    FORMATS,
    GAP_POLICIES,
    Alignment,
    RecodingReport,
    alignment_to_partition_system,
)
from .partitions import PartitionSystem


def check_choice(value: str, choices: Sequence[str], name: str) -> str:
    if value not in choices:
        raise ValueError(f"{name} must be one of {', '.join(choices)}; got {value!r}")
    return value


def check_format(fmt: str) -> str:
    return check_choice(fmt, FORMATS, "format")


def check_gap_policy(policy: str) -> str:
    return check_choice(policy, GAP_POLICIES, "gap_policy")


def check_budget(budget: Any) -> int:
    if isinstance(budget, bool) or not isinstance(budget, numbers.Integral) or budget < 1:
        raise ValueError(f"budget must be a positive integer; got {budget!r}")
    return int(budget)


def check_alignment(X: Any) -> Alignment:
    """Accept an :class:`Alignment` or a sequence of equal-length row strings."""
    if isinstance(X, Alignment):
        return X
    if isinstance(X, str):
        raise TypeError("pass a sequence of rows, not a single string")
    rows = list(X)
    if not all(isinstance(r, str) for r in rows):
        raise TypeError("alignment rows must be strings")
    return Alignment.from_rows(rows)


def check_partition_system(
    X: Any,
    gap_policy: str = "letter",
    gap_chars: str = DEFAULT_GAP_CHARS,
) -> tuple[PartitionSystem, RecodingReport | None]:
    """Coerce ``X`` to a partition system, recoding alignments on the way."""
    if isinstance(X, PartitionSystem):
        return X, None
    return alignment_to_partition_system(check_alignment(X), check_gap_policy(gap_policy), gap_chars)
