"""Reading alignments and recoding their columns as partitions."""
from __future__ import annotations

import io
from dataclasses import dataclass, field
from typing import IO, Iterable, Sequence

from .exceptions import AlignmentParseError
from .partitions import GroundSet, Partition, PartitionSystem

FORMATS = ("fasta", "table")
GAP_POLICIES = ("letter", "drop-column")
DEFAULT_GAP_CHARS = "-.?"


@dataclass(frozen=True)
class Alignment:
    names: tuple[str, ...]
    rows: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise AlignmentParseError("alignment has no sequences")
        if len(self.names) != len(self.rows):
            raise AlignmentParseError("number of names and rows differ")
        if len(set(self.names)) != len(self.names):
            dup = next(x for x in self.names if self.names.count(x) > 1)
            raise AlignmentParseError(f"duplicate sequence name {dup!r}")
        width = len(self.rows[0])
        for name, row in zip(self.names, self.rows):
            if len(row) != width:
                raise AlignmentParseError(
                    f"sequence {name!r} has length {len(row)}, expected {width}"
                )
        if width == 0:
            raise AlignmentParseError("alignment has no columns")

    @classmethod
    def from_rows(cls, rows: Sequence[str], names: Sequence[str] | None = None) -> "Alignment":
        if names is None:
            names = [f"s{i + 1}" for i in range(len(rows))]
        return cls(tuple(names), tuple(r.upper() for r in rows))

    @property
    def n(self) -> int:
        return len(self.rows)

    @property
    def length(self) -> int:
        return len(self.rows[0])

    @property
    def alphabet(self) -> frozenset[str]:
        return frozenset("".join(self.rows))

    def column(self, j: int) -> str:
        return "".join(row[j] for row in self.rows)


@dataclass
class RecodingReport:
    kept_columns: list[int] = field(default_factory=list)
    dropped_constant_columns: list[int] = field(default_factory=list)
    dropped_gap_columns: list[int] = field(default_factory=list)
    merged_duplicates: dict[int, list[int]] = field(default_factory=dict)
    warnings: list[str] = field(default_factory=list)


def _read_text(source: str | bytes | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def _parse_fasta(text: str) -> Alignment:
    names: list[str] = []
    chunks: list[list[str]] = []
    header_lines: list[int] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped:
            continue
        if stripped.startswith(">"):
            header = stripped[1:].split()
            if not header:
                raise AlignmentParseError("empty sequence name", lineno, 2)
            if header[0] in names:
                raise AlignmentParseError(f"duplicate sequence name {header[0]!r}", lineno, 2)
            names.append(header[0])
            chunks.append([])
            header_lines.append(lineno)
        else:
            if not names:
                raise AlignmentParseError("sequence data before first '>' header", lineno, 1)
            chunks[-1].append("".join(stripped.split()))
    if not names:
        raise AlignmentParseError("empty input")
    rows = ["".join(c).upper() for c in chunks]
    for name, row, lineno in zip(names, rows, header_lines):
        if not row:
            raise AlignmentParseError(f"sequence {name!r} is empty", lineno)
        if len(row) != len(rows[0]):
            raise AlignmentParseError(
                f"sequence {name!r} has length {len(row)}, expected {len(rows[0])}", lineno
            )
    return Alignment(tuple(names), tuple(rows))


def _parse_table(text: str) -> Alignment:
    names: list[str] = []
    rows: list[str] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise AlignmentParseError("expected 'name<TAB>sequence'", lineno, len(line) + 1)
        name, seq = line.split("\t", 1)
        name = name.strip()
        seq = "".join(seq.split()).upper()
        if not name:
            raise AlignmentParseError("empty sequence name", lineno, 1)
        if name in names:
            raise AlignmentParseError(f"duplicate sequence name {name!r}", lineno, 1)
        if not seq:
            raise AlignmentParseError(f"sequence {name!r} is empty", lineno, len(line) + 1)
        if rows and len(seq) != len(rows[0]):
            raise AlignmentParseError(
                f"sequence {name!r} has length {len(seq)}, expected {len(rows[0])}",
                lineno,
                line.index("\t") + 2,
            )
        names.append(name)
        rows.append(seq)
    if not names:
        raise AlignmentParseError("empty input")
    return Alignment(tuple(names), tuple(rows))


def parse_alignment(source: str | bytes | IO, format: str = "fasta") -> Alignment:
    """Parse FASTA or tab-separated text. Characters are upper-cased."""
    if format not in FORMATS:
        raise ValueError(f"unknown format {format!r}; expected one of {FORMATS}")
    text = _read_text(source)
    return _parse_fasta(text) if format == "fasta" else _parse_table(text)


def read_alignment(path: str, format: str = "fasta") -> Alignment:
    with open(path, "rb") as fh:
        return parse_alignment(fh, format)


def write_fasta(alignment: Alignment) -> str:
    buf = io.StringIO()
    for name, row in zip(alignment.names, alignment.rows):
        buf.write(f">{name}\n{row}\n")
    return buf.getvalue()


def alignment_to_partition_system(
    alignment: Alignment,
    gap_policy: str = "letter",
    gap_chars: Iterable[str] = DEFAULT_GAP_CHARS,
) -> tuple[PartitionSystem, RecodingReport]:
    """Recode each non-constant column as the partition of rows by character.

    Equal partitions from different columns are merged; the system keeps the
    count and the (0-based) indices of the columns behind each one.
    """
    if gap_policy not in GAP_POLICIES:
        raise ValueError(f"unknown gap policy {gap_policy!r}; expected one of {GAP_POLICIES}")
    gaps = frozenset(gap_chars)
    ground = GroundSet(alignment.names)
    report = RecodingReport()
    index: dict[Partition, int] = {}
    partitions: list[Partition] = []
    columns: dict[int, list[int]] = {}
    for j in range(alignment.length):
        col = alignment.column(j)
        if gap_policy == "drop-column" and gaps.intersection(col):
            report.dropped_gap_columns.append(j)
            continue
        if len(set(col)) < 2:
            report.dropped_constant_columns.append(j)
            continue
        report.kept_columns.append(j)
        p = Partition.from_labels(col)
        if p not in index:
            index[p] = len(partitions)
            partitions.append(p.with_id(len(partitions)))
            columns[index[p]] = []
        columns[index[p]].append(j)
    if not partitions:
        report.warnings.append("no informative columns; the decomposition is empty")
    system = PartitionSystem(
        ground,
        partitions,
        {pid: len(cols) for pid, cols in columns.items()},
        columns,
    )
    report.merged_duplicates = {pid: cols for pid, cols in columns.items() if len(cols) > 1}
    return system, report
