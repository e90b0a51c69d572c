"""Partition algebra over a finite ground set.

Parts are stored as integer bit masks over element indices, so union and
cover tests are single big-int operations.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Iterable, Iterator, Sequence

from .exceptions import PreconditionError, StructuralError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the indices of the set bits of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def lowest_bit(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def mask_of(indices: Iterable[int]) -> int:
    mask = 0
    for i in indices:
        mask |= 1 << i
    return mask


@dataclass(frozen=True)
class GroundSet:
    """Ordered, named elements; element ``i`` keeps index ``i`` for good."""

    elements: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(self.elements))
        if not self.elements:
            raise StructuralError("ground set must contain at least one element")
        if any(not isinstance(e, str) or not e for e in self.elements):
            raise StructuralError("element names must be non-empty strings")
        if len(set(self.elements)) != len(self.elements):
            raise StructuralError("element names must be unique")

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def index(self, name: str) -> int:
        return self.elements.index(name)

    def names(self, mask: int) -> list[str]:
        return [self.elements[i] for i in iter_bits(mask)]

    def mask(self, names: Iterable[str]) -> int:
        lookup = {e: i for i, e in enumerate(self.elements)}
        return mask_of(lookup[x] for x in names)


@dataclass(frozen=True)
class Partition:
    """A partition of ``range(n)`` into at least two non-empty parts.

    Parts are kept sorted by their smallest member, so two partitions built
    from differently ordered parts compare (and hash) equal. ``id`` is
    bookkeeping only and takes no part in equality.
    """

    parts: tuple[int, ...]
    n: int
    id: int | None = field(default=None, compare=False)
    labels: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        parts = tuple(sorted(self.parts, key=lowest_bit))
        if any(p <= 0 for p in parts):
            raise StructuralError("parts must be non-empty")
        seen = 0
        for p in parts:
            if seen & p:
                raise StructuralError("parts must be pairwise disjoint")
            seen |= p
        if seen != (1 << self.n) - 1:
            raise StructuralError("parts must cover the ground set exactly")
        if len(parts) < 2:
            raise StructuralError("a partition needs at least two parts")
        labels = [0] * self.n
        for k, p in enumerate(parts):
            for i in iter_bits(p):
                labels[i] = k
        object.__setattr__(self, "parts", parts)
        object.__setattr__(self, "labels", tuple(labels))

    @classmethod
    def from_labels(cls, labels: Sequence[Hashable], id: int | None = None) -> "Partition":
        """Group element indices by equal label (e.g. one alignment column)."""
        groups: dict[Hashable, int] = {}
        for i, lab in enumerate(labels):
            groups[lab] = groups.get(lab, 0) | (1 << i)
        return cls(tuple(groups.values()), len(labels), id=id)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]], n: int, id: int | None = None) -> "Partition":
        return cls(tuple(mask_of(b) for b in blocks), n, id=id)

    def __len__(self) -> int:
        return len(self.parts)

    def part_of(self, x: int) -> int:
        """Mask of the part containing element ``x``."""
        return self.parts[self.labels[x]]

    def part_index(self, x: int) -> int:
        return self.labels[x]

    def index_of_part(self, part: int) -> int:
        return self.parts.index(part)

    def with_id(self, id: int) -> "Partition":
        return Partition(self.parts, self.n, id=id)

    def as_sets(self) -> list[list[int]]:
        return [list(iter_bits(p)) for p in self.parts]


@dataclass
class PartitionSystem:
    """Distinct partitions of one ground set, in a fixed order.

    ``partitions[i].id == i``. Multiplicity and source columns record how
    many (and which) alignment columns collapsed onto each partition.
    """

    ground: GroundSet
    partitions: list[Partition] = field(default_factory=list)
    multiplicity: dict[int, int] = field(default_factory=dict)
    source_columns: dict[int, list[int]] = field(default_factory=dict)

    def __post_init__(self):
        seen = set()
        for i, p in enumerate(self.partitions):
            if p.n != self.ground.n:
                raise StructuralError(f"partition {i} is over {p.n} elements, ground set has {self.ground.n}")
            if p in seen:
                raise StructuralError(f"partition {i} duplicates an earlier one")
            seen.add(p)
            if p.id != i:
                self.partitions[i] = p.with_id(i)
            self.multiplicity.setdefault(i, 1)
            self.source_columns.setdefault(i, [])
            if self.multiplicity[i] < 1:
                raise StructuralError("multiplicities must be positive")

    @classmethod
    def from_partitions(cls, ground: GroundSet, partitions: Iterable[Partition]) -> "PartitionSystem":
        """Build a system, merging repeated partitions into multiplicities."""
        index: dict[Partition, int] = {}
        distinct: list[Partition] = []
        mult: dict[int, int] = {}
        for p in partitions:
            if p in index:
                mult[index[p]] += 1
                continue
            index[p] = len(distinct)
            mult[len(distinct)] = 1
            distinct.append(p.with_id(len(distinct)))
        return cls(ground, distinct, mult)

    @property
    def m(self) -> int:
        return len(self.partitions)

    @property
    def n(self) -> int:
        return self.ground.n

    def __len__(self) -> int:
        return len(self.partitions)

    def __iter__(self) -> Iterator[Partition]:
        return iter(self.partitions)

    def __getitem__(self, pid: int) -> Partition:
        return self.partitions[pid]

    @property
    def max_parts(self) -> int:
        return max((len(p) for p in self.partitions), default=0)

    def subsystem(self, pids: Iterable[int]) -> "PartitionSystem":
        """The listed partitions, renumbered from zero in the given order."""
        pids = list(pids)
        return PartitionSystem(
            self.ground,
            [self.partitions[i].with_id(k) for k, i in enumerate(pids)],
            {k: self.multiplicity[i] for k, i in enumerate(pids)},
            {k: list(self.source_columns[i]) for k, i in enumerate(pids)},
        )


@dataclass(frozen=True)
class CompatibilityResult:
    compatible: bool
    b_pq: int | None = None
    b_qp: int | None = None


def strongly_compatible(p: Partition, q: Partition) -> CompatibilityResult:
    """Test whether some part of ``p`` and some part of ``q`` cover the ground set.

    For distinct compatible partitions the covering pair is unique and is
    returned as ``b_pq`` (the part of ``p``) and ``b_qp`` (the part of ``q``).
    Equal partitions are compatible with no covering pair reported.
    """
    if p.n != q.n:
        raise StructuralError("partitions are over different ground sets")
    if p == q:
        return CompatibilityResult(True)
    full = (1 << p.n) - 1
    for a in p.parts:
        for b in q.parts:
            if a | b == full:
                return CompatibilityResult(True, a, b)
    return CompatibilityResult(False)


def b_equal_check(p: Partition, q: Partition, r: Partition) -> bool:
    """Check that ``r`` sees the same covering part against ``p`` and ``q``.

    Only meaningful when ``p`` and ``q`` are distinct and not strongly
    compatible while ``r`` is strongly compatible (and distinct) with both.
    """
    if len({p, q, r}) != 3:
        raise PreconditionError("p, q and r must be distinct partitions")
    if strongly_compatible(p, q).compatible:
        raise PreconditionError("p and q must not be strongly compatible")
    rp, rq = strongly_compatible(r, p), strongly_compatible(r, q)
    if not (rp.compatible and rq.compatible):
        raise PreconditionError("r must be strongly compatible with p and q")
    return rp.b_pq == rq.b_pq


class NscGraph:
    """Graph on partition ids joining pairs that are not strongly compatible."""

    def __init__(self, vertices: Iterable[int], edges: Iterable[tuple[int, int]]):
        self.vertices = sorted(vertices)
        self.edges = sorted({(min(e), max(e)) for e in edges})
        self._components: list[frozenset[int]] | None = None

    def adjacency(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {v: [] for v in self.vertices}
        for a, b in self.edges:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    @property
    def components(self) -> list[frozenset[int]]:
        if self._components is None:
            self._components = _bfs_components(self.vertices, self.adjacency())
        return self._components


def _bfs_components(vertices: list[int], adj: dict[int, list[int]]) -> list[frozenset[int]]:
    seen: set[int] = set()
    out = []
    for start in vertices:
        if start in seen:
            continue
        seen.add(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    comp.append(w)
                    queue.append(w)
        out.append(frozenset(comp))
    return out


def nsc_graph(system: PartitionSystem) -> NscGraph:
    parts = system.partitions
    edges = [
        (i, j)
        for i in range(len(parts))
        for j in range(i + 1, len(parts))
        if not strongly_compatible(parts[i], parts[j]).compatible
    ]
    return NscGraph(range(len(parts)), edges)


def nsc_components(graph: NscGraph) -> list[frozenset[int]]:
    """Connected components, ordered by their smallest partition id."""
    return list(graph.components)
