"""Explicit quasi-median graphs for small systems.

Everything here builds the whole graph, so it is only usable on desk-sized
inputs. It serves as ground truth for the incremental decomposition.

A vertex (a "P-map") is a tuple holding, for each partition of the system
in id order, the index of the chosen part.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx
import numpy as np

from .exceptions import BudgetExceededError, PreconditionError
from .partitions import PartitionSystem, strongly_compatible

PMap = tuple[int, ...]

DEFAULT_BUDGET = 200_000
_CHUNK = 4_000_000


def pi(system: PartitionSystem, x: int) -> PMap:
    """The P-map sending every partition to the part containing ``x``."""
    return tuple(p.part_index(x) for p in system.partitions)


def quasi_median(v1: PMap, v2: PMap, v3: PMap) -> PMap:
    return tuple(b if b == c else a for a, b, c in zip(v1, v2, v3))


def hull(seed: Iterable[PMap], budget: int = DEFAULT_BUDGET) -> set[PMap]:
    """Close ``seed`` under quasi-medians of ordered triples.

    Works through a queue of newly found maps; for each one, every triple
    using it together with two already known maps is evaluated. With the
    newcomer ``v`` in the middle or last slot the result is the same
    (``q(a, v, b) == q(a, b, v)``), so two placements suffice.
    """
    seed = list(dict.fromkeys(tuple(s) for s in seed))
    if not seed:
        raise PreconditionError("hull of an empty set")
    if len(seed[0]) == 0:
        return {()}
    if len(seed) > budget:
        raise BudgetExceededError(f"quasi-median hull exceeds {budget} vertices")
    m = len(seed[0])
    width = max(max(v) for v in seed) + 1
    if width ** m >= 2**62:
        return _hull_tuples(seed, budget)
    radix = width ** np.arange(m, dtype=np.int64)
    known = np.array(seed, dtype=np.int64)
    known_codes = np.sort(known @ radix)
    pos = 0
    while pos < len(known):
        v = known[pos]
        pos += 1
        b = known[None, :, :]
        step = max(1, _CHUNK // (len(known) * m))
        for start in range(0, len(known), step):
            a = known[start:start + step, None, :]
            # v first: the last two where they agree, else v; v later: v where
            # it agrees with the other later slot, else the first
            cand = np.concatenate(
                [np.where(a == b, a, v).reshape(-1, m), np.where(b == v, v, a).reshape(-1, m)]
            )
            codes, idx = np.unique(cand @ radix, return_index=True)
            new = ~np.isin(codes, known_codes, assume_unique=True)
            if new.any():
                known = np.vstack([known, cand[idx[new]]])
                if len(known) > budget:
                    raise BudgetExceededError(f"quasi-median hull exceeds {budget} vertices")
                known_codes = np.sort(np.concatenate([known_codes, codes[new]]))
    return {tuple(int(z) for z in row) for row in known}


def _hull_tuples(seed: list[PMap], budget: int) -> set[PMap]:
    seen = set(seed)
    queue = list(seed)
    pos = 0
    while pos < len(queue):
        v = queue[pos]
        pos += 1
        snapshot = list(queue)
        for a in snapshot:
            for b in snapshot:
                for t in (quasi_median(v, a, b), quasi_median(a, v, b)):
                    if t not in seen:
                        seen.add(t)
                        queue.append(t)
                        if len(seen) > budget:
                            raise BudgetExceededError(f"quasi-median hull exceeds {budget} vertices")
    return seen


def characterized_vertices(system: PartitionSystem, budget: int = DEFAULT_BUDGET) -> set[PMap]:
    """All P-maps passing the pairwise strong-compatibility vertex test."""
    sizes = [len(p) for p in system.partitions]
    if math.prod(sizes) > budget:
        raise BudgetExceededError(f"{math.prod(sizes)} candidate maps exceed budget {budget}")
    parts = system.partitions
    rules = []
    for i, j in itertools.combinations(range(len(parts)), 2):
        res = strongly_compatible(parts[i], parts[j])
        if res.compatible:
            rules.append((i, parts[i].index_of_part(res.b_pq), j, parts[j].index_of_part(res.b_qp)))
    out = set()
    for phi in itertools.product(*(range(k) for k in sizes)):
        if all(phi[i] == bi or phi[j] == bj for i, bi, j, bj in rules):
            out.add(phi)
    return out


@dataclass
class QuasiMedianGraph:
    """Vertices are P-maps; each edge carries the one partition its ends differ on."""

    system: PartitionSystem
    vertices: list[PMap]
    edges: list[tuple[int, int, int]]
    labels: dict[int, list[int]] = field(default_factory=dict)
    _nx: nx.Graph | None = field(default=None, repr=False)

    @property
    def index(self) -> dict[PMap, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    def vertex_of(self, x: int) -> int:
        return self.index[pi(self.system, x)]

    def to_networkx(self) -> nx.Graph:
        if self._nx is None:
            g = nx.Graph()
            g.add_nodes_from(range(len(self.vertices)))
            for a, b, lab in self.edges:
                g.add_edge(a, b, label=lab)
            self._nx = g
        return self._nx

    def part(self, v: int, pid: int) -> int:
        """Mask of the part vertex ``v`` assigns to partition ``pid``."""
        return self.system.partitions[pid].parts[self.vertices[v][pid]]


def build_graph(vertices: Iterable[PMap], system: PartitionSystem) -> QuasiMedianGraph:
    verts = sorted(set(vertices))
    m = system.m
    edges = []
    for j in range(m):
        buckets: dict[PMap, list[int]] = {}
        for i, v in enumerate(verts):
            buckets.setdefault(v[:j] + v[j + 1:], []).append(i)
        for members in buckets.values():
            for a, b in itertools.combinations(members, 2):
                edges.append((a, b, j))
    edges.sort()
    index = {v: i for i, v in enumerate(verts)}
    labels: dict[int, list[int]] = {}
    for x in range(system.n):
        v = index.get(pi(system, x))
        if v is not None:
            labels.setdefault(v, []).append(x)
    return QuasiMedianGraph(system, verts, edges, labels)


def quasi_median_graph(system: PartitionSystem, budget: int = DEFAULT_BUDGET) -> QuasiMedianGraph:
    seed = [pi(system, x) for x in range(system.n)]
    return build_graph(hull(seed, budget), system)


@dataclass
class ReferenceBlock:
    id: int
    parts: frozenset[int]
    vertices: frozenset[int]
    members_x: frozenset[int]
    members_s: frozenset[int]
    directions: dict[int, int]
    edges: list[tuple[int, int, int]]


@dataclass
class ReferenceDecomposition:
    graph: QuasiMedianGraph
    blocks: list[ReferenceBlock]
    cut_vertices: frozenset[int]
    incidence: dict[int, frozenset[int]]

    def induced(self, block: ReferenceBlock) -> dict[int, list[frozenset[int]]]:
        """Per partition of the block: vertex sets left connected once its edges are cut,
        restricted to labelled and extra vertices."""
        keep = {v for v in block.vertices if v in self.graph.labels or v in block.members_s}
        out = {}
        for pid in sorted(block.parts):
            g = nx.Graph()
            g.add_nodes_from(block.vertices)
            g.add_edges_from((a, b) for a, b, lab in block.edges if lab != pid)
            out[pid] = [frozenset(c & keep) for c in nx.connected_components(g)]
        return out


def blocks_and_cut_vertices(g: QuasiMedianGraph) -> ReferenceDecomposition:
    """Biconnected components and articulation points of the explicit graph."""
    G = g.to_networkx()
    cuts = frozenset(nx.articulation_points(G))
    raw = sorted(
        (sorted(tuple(sorted(e)) for e in comp) for comp in nx.biconnected_component_edges(G)),
        key=lambda es: min(G.edges[e]["label"] for e in es),
    )
    blocks = []
    incidence: dict[int, set[int]] = {}
    for bid, comp in enumerate(raw):
        verts = frozenset(itertools.chain.from_iterable(comp))
        parts = frozenset(G.edges[e]["label"] for e in comp)
        xs = frozenset(x for v in verts for x in g.labels.get(v, ()))
        extras = frozenset(v for v in verts if v in cuts and v not in g.labels)
        for v in verts & cuts:
            incidence.setdefault(v, set()).add(bid)
        blocks.append(
            ReferenceBlock(bid, parts, verts, xs, extras, {}, [(a, b, G.edges[a, b]["label"]) for a, b in comp])
        )
    for block in blocks:
        for v in sorted(block.members_s):
            rest = G.subgraph(n for n in G.nodes if n != v)
            anchor = next(iter(block.vertices - {v}))
            side = nx.node_connected_component(rest, anchor)
            xs = [x for u in side for x in g.labels.get(u, ())]
            block.directions[v] = min(xs)
    return ReferenceDecomposition(g, blocks, cuts, {v: frozenset(b) for v, b in incidence.items()})


def gv_cut_test(g: QuasiMedianGraph, v: PMap | int, system: PartitionSystem | None = None) -> bool:
    """Cut-vertex test through the auxiliary graph on partitions.

    Partitions P != Q are joined when the parts chosen by ``v`` fail to
    cover the ground set together; ``v`` is a cut vertex exactly when the
    auxiliary graph is disconnected.
    """
    system = system or g.system
    if system.m == 0:
        raise PreconditionError("no partitions")
    vmap = g.vertices[v] if isinstance(v, int) else tuple(v)
    full = system.ground.full_mask
    chosen = [p.parts[k] for p, k in zip(system.partitions, vmap)]
    aux = nx.Graph()
    aux.add_nodes_from(range(system.m))
    for i, j in itertools.combinations(range(system.m), 2):
        if chosen[i] | chosen[j] != full:
            aux.add_edge(i, j)
    return not nx.is_connected(aux)


def uses_block_on_every_path(g: QuasiMedianGraph, block: ReferenceBlock, x: int, v: int) -> bool:
    """True when every path from the vertex of ``x`` to ``v`` crosses an edge of ``block``.

    Equivalent to ``x``'s vertex and ``v`` being disconnected once the
    block's edges are removed.
    """
    G = g.to_networkx().copy()
    G.remove_edges_from((a, b) for a, b, _ in block.edges)
    return not nx.has_path(G, g.vertex_of(x), v)


def product_size(system: PartitionSystem) -> int:
    return math.prod(len(p) for p in system.partitions)
