"""Incremental block decomposition of a quasi-median graph.

The graph itself is never built. For every block B the state keeps the
partitions whose edges lie in B, the ground elements labelling vertices of
B (``x_mask``), the unlabelled cut vertices of B (extra vertices) and, for
each of those, one ground element lying beyond B as seen from that vertex.

Adding a partition P splits the existing blocks into those holding some
partition not strongly compatible with P (merged, together with P, into a
new block C) and the rest. A kept block D touches C in at most one vertex
z of the old graph; in the new graph it meets C at the copy of z whose
P-coordinate is the part of P covering the ground set together with D's
partitions. Old extra vertices lying on the merged region are split by that
part, and labelled attachment points whose copy loses every label become
new extra vertices.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .exceptions import (
    DuplicatePartitionError,
    InternalInvariantError,
    PreconditionError,
    StructuralError,
)
from .partitions import (
    GroundSet,
    Partition,
    PartitionSystem,
    iter_bits,
    lowest_bit,
    strongly_compatible,
)


@dataclass
class ExtraVertex:
    id: int
    incident_blocks: set[int] = field(default_factory=set)


@dataclass
class BlockRecord:
    id: int
    parts: set[int] = field(default_factory=set)
    x_mask: int = 0
    members_s: set[int] = field(default_factory=set)
    directions: dict[int, int] = field(default_factory=dict)

    @property
    def members_x(self) -> frozenset[int]:
        return frozenset(iter_bits(self.x_mask))


@dataclass
class DecompositionState:
    ground: GroundSet
    partitions: dict[int, Partition] = field(default_factory=dict)
    blocks: dict[int, BlockRecord] = field(default_factory=dict)
    extra_vertices: dict[int, ExtraVertex] = field(default_factory=dict)
    next_block_id: int = 0
    next_vertex_id: int = 0

    @property
    def processed(self) -> set[int]:
        return set(self.partitions)

    def block_of(self, pid: int) -> BlockRecord:
        for block in self.blocks.values():
            if pid in block.parts:
                return block
        raise KeyError(pid)

    def new_block(self, parts: Iterable[int], x_mask: int) -> BlockRecord:
        block = BlockRecord(self.next_block_id, set(parts), x_mask)
        self.blocks[block.id] = block
        self.next_block_id += 1
        return block

    def new_extra_vertex(self) -> ExtraVertex:
        v = ExtraVertex(self.next_vertex_id)
        self.extra_vertices[v.id] = v
        self.next_vertex_id += 1
        return v


@dataclass(frozen=True)
class BlockCompatibility:
    """Outcome of testing a new partition against every partition of a block.

    ``c_restriction`` is the intersection of the parts of the block's
    partitions that cover the ground set together with the new partition;
    ``attach_part`` is the part of the new partition doing the covering
    (the same for every partition of the block).
    """

    compatible: bool
    c_restriction: int = 0
    attach_part: int | None = None


@dataclass
class InducedSystem:
    block_id: int
    ground: GroundSet
    tokens: tuple[tuple[str, int], ...]
    partitions: list[Partition]

    def as_system(self) -> PartitionSystem:
        return PartitionSystem(self.ground, [p.with_id(i) for i, p in enumerate(self.partitions)])


def is_compatible(p: Partition, block: BlockRecord, partitions: Mapping[int, Partition]) -> BlockCompatibility:
    if not block.parts:
        raise PreconditionError(f"block {block.id} has no partitions")
    c_restriction = -1
    attach = set()
    for qid in sorted(block.parts):
        res = strongly_compatible(p, partitions[qid])
        if not res.compatible:
            return BlockCompatibility(False)
        if res.b_pq is None:
            raise PreconditionError("partition is already part of the block")
        attach.add(res.b_pq)
        c_restriction &= res.b_qp
    if len(attach) != 1:
        raise InternalInvariantError(f"covering part of the new partition differs across block {block.id}")
    return BlockCompatibility(True, c_restriction & ((1 << p.n) - 1), attach.pop())


def direction_element(state: DecompositionState, vid: int, bid: int) -> int:
    """An element every path from which to extra vertex ``vid`` uses an edge of block ``bid``."""
    block = state.blocks[bid]
    if block.x_mask:
        return lowest_bit(block.x_mask)
    for wid in sorted(block.members_s - {vid}):
        others = sorted(state.extra_vertices[wid].incident_blocks - {bid})
        for cid in others:
            if wid in state.blocks[cid].directions:
                return state.blocks[cid].directions[wid]
    raise InternalInvariantError(
        f"block {bid} has no labelled vertex and no other extra vertex to borrow a direction from"
    )


def _attach(state: DecompositionState, vid: int, bid: int) -> None:
    state.blocks[bid].members_s.add(vid)
    state.extra_vertices[vid].incident_blocks.add(bid)


def _detach(state: DecompositionState, vid: int, bid: int) -> int | None:
    block = state.blocks[bid]
    block.members_s.discard(vid)
    state.extra_vertices[vid].incident_blocks.discard(bid)
    return block.directions.pop(vid, None)


def add_extra_vertex(state: DecompositionState, vid: int, bid: int) -> int:
    """Put extra vertex ``vid`` on block ``bid`` and record its direction element."""
    block = state.blocks[bid]
    if vid in block.members_s:
        raise PreconditionError(f"extra vertex {vid} is already on block {bid}")
    _attach(state, vid, bid)
    x = direction_element(state, vid, bid)
    block.directions[vid] = x
    return x


def merge_incompatible_blocks(state: DecompositionState, c: BlockRecord, incomp: Iterable[int]) -> None:
    """Absorb the listed blocks into ``c``.

    ``c.x_mask`` becomes the union of the absorbed label sets. Extra vertices
    left with ``c`` as their only block stop being cut vertices and are
    deleted.
    """
    incomp = sorted(incomp)
    if not incomp:
        raise PreconditionError("nothing to merge")
    x_mask = 0
    for bid in incomp:
        block = state.blocks.pop(bid)
        x_mask |= block.x_mask
        c.parts |= block.parts
        for vid in sorted(block.members_s):
            v = state.extra_vertices[vid]
            v.incident_blocks.discard(bid)
            v.incident_blocks.add(c.id)
            c.members_s.add(vid)
            c.directions.setdefault(vid, block.directions[vid])
    c.x_mask = x_mask
    for vid in sorted(c.members_s):
        if state.extra_vertices[vid].incident_blocks == {c.id}:
            c.members_s.discard(vid)
            c.directions.pop(vid, None)
            del state.extra_vertices[vid]


def _locate_hub(state: DecompositionState, compat: Mapping[int, BlockCompatibility]) -> int:
    # The extra vertex whose coordinates on every incident block match the
    # covering parts of those block's partitions against the new partition.
    for vid in sorted(state.extra_vertices):
        incident = state.extra_vertices[vid].incident_blocks
        ok = True
        for bid in incident:
            other = min(incident - {bid})
            x = state.blocks[other].directions[vid]
            if not (compat[bid].c_restriction >> x) & 1:
                ok = False
                break
        if ok:
            return vid
    raise InternalInvariantError("no extra vertex matches the new partition's attachment point")


def _split_hub(
    state: DecompositionState, vid: int, c: BlockRecord, compat: Mapping[int, BlockCompatibility]
) -> None:
    kept = sorted(state.extra_vertices[vid].incident_blocks - {c.id})
    groups: dict[int, list[int]] = defaultdict(list)
    for bid in kept:
        groups[compat[bid].attach_part].append(bid)
    ordered = sorted(groups.values(), key=min)
    c_dir = c.directions.get(vid)
    if vid not in c.members_s:
        _attach(state, vid, c.id)
    for group in ordered[1:]:
        w = state.new_extra_vertex()
        for bid in group:
            x = _detach(state, vid, bid)
            _attach(state, w.id, bid)
            state.blocks[bid].directions[w.id] = x
        _attach(state, w.id, c.id)
        if c_dir is not None:
            c.directions[w.id] = c_dir


def add_partition(state: DecompositionState, p: Partition) -> DecompositionState:
    """Update ``state`` in place to include ``p`` and return it."""
    if p.n != state.ground.n:
        raise StructuralError(f"partition is over {p.n} elements, ground set has {state.ground.n}")
    if p in state.partitions.values():
        raise DuplicatePartitionError("partition has already been added")
    pid = p.id if p.id is not None and p.id not in state.partitions else max(state.partitions, default=-1) + 1
    p = p.with_id(pid)

    # pass 1: classify every block
    incomp: list[int] = []
    compat: dict[int, BlockCompatibility] = {}
    x_c = state.ground.full_mask
    for bid in sorted(state.blocks):
        res = is_compatible(p, state.blocks[bid], state.partitions)
        if res.compatible:
            compat[bid] = res
            x_c &= res.c_restriction
        else:
            incomp.append(bid)
    old_x = {bid: state.blocks[bid].x_mask for bid in compat}

    if incomp:
        hubs = sorted(
            vid for vid, v in state.extra_vertices.items() if v.incident_blocks.intersection(incomp)
        )
    elif x_c == 0 and state.blocks:
        hubs = [_locate_hub(state, compat)]
    else:
        hubs = []

    # pass 2: rebuild
    state.partitions[pid] = p
    c = state.new_block([pid], x_c)
    if incomp:
        merge_incompatible_blocks(state, c, incomp)
        if c.x_mask != x_c:
            raise InternalInvariantError("merged label set disagrees with the compatible blocks' restriction")
    for bid, res in compat.items():
        state.blocks[bid].x_mask &= res.attach_part

    for vid in hubs:
        if vid in state.extra_vertices:
            _split_hub(state, vid, c, compat)

    attach_groups: dict[tuple[int, int], list[int]] = defaultdict(list)
    for bid in sorted(compat):
        touch = old_x[bid] & x_c
        if touch and not state.blocks[bid].x_mask & x_c:
            attach_groups[(lowest_bit(touch), compat[bid].attach_part)].append(bid)
    for key in sorted(attach_groups, key=lambda k: min(attach_groups[k])):
        w = state.new_extra_vertex()
        for bid in attach_groups[key]:
            add_extra_vertex(state, w.id, bid)
        _attach(state, w.id, c.id)

    for vid in sorted(c.members_s):
        if vid not in c.directions:
            c.directions[vid] = direction_element(state, vid, c.id)
    return state


def decompose(system: PartitionSystem, order: Iterable[int] | None = None) -> DecompositionState:
    """Fold :func:`add_partition` over the system (in id order unless ``order`` is given)."""
    state = DecompositionState(system.ground)
    for pid in (range(system.m) if order is None else order):
        add_partition(state, system.partitions[pid])
    return state


def induced_partitions(state: DecompositionState, block: BlockRecord) -> InducedSystem:
    """Restrict each partition of ``block`` to its labels and extra vertices.

    An extra vertex joins the part holding its direction element towards
    one of its other blocks.
    """
    tokens = [("x", i) for i in iter_bits(block.x_mask)]
    tokens += [("e", vid) for vid in sorted(block.members_s)]
    proxies = []
    for vid in sorted(block.members_s):
        other = min(state.extra_vertices[vid].incident_blocks - {block.id})
        proxies.append(state.blocks[other].directions[vid])
    sources = [i for _, i in tokens[: len(tokens) - len(proxies)]] + proxies
    names = [state.ground.elements[i] if kind == "x" else f"e{i}" for kind, i in tokens]
    induced = []
    for pid in sorted(block.parts):
        p = state.partitions[pid]
        labels = [p.part_index(x) for x in sources]
        try:
            induced.append(Partition.from_labels(labels, id=pid))
        except StructuralError as exc:
            raise InternalInvariantError(f"induced partition {pid} on block {block.id}: {exc}") from exc
    return InducedSystem(block.id, GroundSet(tuple(names)), tuple(tokens), induced)


def check_invariants(state: DecompositionState) -> None:
    """Raise :class:`InternalInvariantError` if the bookkeeping is inconsistent."""
    n = state.ground.n
    seen: set[int] = set()
    for block in state.blocks.values():
        if not block.parts:
            raise InternalInvariantError(f"block {block.id} has no partitions")
        if seen & block.parts:
            raise InternalInvariantError("a partition lies in two blocks")
        seen |= block.parts
        if not block.x_mask and not block.members_s:
            raise InternalInvariantError(f"block {block.id} has no labels and no extra vertices")
        if set(block.directions) != block.members_s:
            raise InternalInvariantError(f"block {block.id} directions do not match its extra vertices")
        for vid in block.members_s:
            if block.id not in state.extra_vertices[vid].incident_blocks:
                raise InternalInvariantError("extra vertex incidence is out of sync")
    if seen != set(state.partitions):
        raise InternalInvariantError("block partitions do not cover the processed partitions")
    for v in state.extra_vertices.values():
        if len(v.incident_blocks) < 2:
            raise InternalInvariantError(f"extra vertex {v.id} lies in fewer than two blocks")
        for bid in v.incident_blocks:
            if v.id not in state.blocks[bid].members_s:
                raise InternalInvariantError("extra vertex incidence is out of sync")
    if n >= 2 and state.blocks:
        if len(state.blocks) > 3 * n - 5 or len(state.extra_vertices) > 3 * n - 6:
            raise InternalInvariantError("block or extra vertex count exceeds its bound")
