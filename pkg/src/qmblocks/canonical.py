"""Name-free forms of a block decomposition, for comparing two of them.

Blocks are keyed by their sorted partition ids. An extra vertex lies in at
least two blocks and two blocks share at most one vertex, so an extra vertex
is keyed by the sorted smallest-partition-ids of its blocks.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Any

from .decomposition import DecompositionState, induced_partitions
from .oracle import ReferenceDecomposition
from .partitions import iter_bits

Token = str


@dataclass(frozen=True)
class CanonicalBlock:
    parts: tuple[int, ...]
    members_x: tuple[int, ...]
    members_s: tuple[Token, ...]
    induced: tuple[tuple[int, tuple[tuple[Token, ...], ...]], ...]


def _vertex_key(block_parts: list[frozenset[int] | set[int]]) -> Token:
    return "e[" + ",".join(str(k) for k in sorted(min(p) for p in block_parts)) + "]"


def _x_token(x: int) -> Token:
    return f"x{x}"


def _canon_parts(parts) -> tuple[tuple[Token, ...], ...]:
    return tuple(sorted(tuple(sorted(p)) for p in parts))


def canonical_state(state: DecompositionState) -> tuple[CanonicalBlock, ...]:
    keys = {
        vid: _vertex_key([state.blocks[b].parts for b in v.incident_blocks])
        for vid, v in state.extra_vertices.items()
    }
    out = []
    for block in state.blocks.values():
        ind = induced_partitions(state, block)
        token = [_x_token(i) if kind == "x" else keys[i] for kind, i in ind.tokens]
        induced = tuple(
            (p.id, _canon_parts([[token[i] for i in iter_bits(mask)] for mask in p.parts]))
            for p in ind.partitions
        )
        out.append(
            CanonicalBlock(
                tuple(sorted(block.parts)),
                tuple(sorted(block.members_x)),
                tuple(sorted(keys[v] for v in block.members_s)),
                induced,
            )
        )
    return tuple(sorted(out, key=lambda b: b.parts))


def canonical_reference(ref: ReferenceDecomposition) -> tuple[CanonicalBlock, ...]:
    block_parts = {b.id: b.parts for b in ref.blocks}
    labels = ref.graph.labels
    keys = {v: _vertex_key([block_parts[b] for b in bs]) for v, bs in ref.incidence.items()}
    out = []
    for block in ref.blocks:
        induced = []
        for pid, comps in ref.induced(block).items():
            named = []
            for comp in comps:
                toks = []
                for v in comp:
                    if v in labels:
                        toks.extend(_x_token(x) for x in labels[v])
                    else:
                        toks.append(keys[v])
                named.append(toks)
            induced.append((pid, _canon_parts(named)))
        out.append(
            CanonicalBlock(
                tuple(sorted(block.parts)),
                tuple(sorted(block.members_x)),
                tuple(sorted(keys[v] for v in block.members_s)),
                tuple(induced),
            )
        )
    return tuple(sorted(out, key=lambda b: b.parts))


def diff(fast: tuple[CanonicalBlock, ...], ref: tuple[CanonicalBlock, ...]) -> list[str]:
    """Human-readable differences between two canonical decompositions."""
    lines = []
    fa = {b.parts: b for b in fast}
    rb = {b.parts: b for b in ref}
    for key in sorted(set(fa) | set(rb)):
        if key not in fa:
            lines.append(f"block {list(key)}: only in reference")
        elif key not in rb:
            lines.append(f"block {list(key)}: only in fast decomposition")
        else:
            for name in ("members_x", "members_s", "induced"):
                a, b = getattr(fa[key], name), getattr(rb[key], name)
                if a != b:
                    lines.append(f"block {list(key)} {name}: fast={_show(a)} reference={_show(b)}")
    return lines


def _show(value: Any) -> str:
    return repr(value)
