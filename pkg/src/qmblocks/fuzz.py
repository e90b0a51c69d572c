"""Seeded random partition systems for oracle comparisons.

Purely random columns over a few letters are almost always pairwise
incompatible and give a single block, so most columns here come from
mutations on a random tree, which yields many small blocks and cut vertices.
"""
from __future__ import annotations

import random

from .alignment import Alignment
from .partitions import GroundSet, Partition, PartitionSystem


def _random_tree(rng: random.Random, n: int) -> list[list[int]]:
    # Leaves 0..n-1 hang off internal nodes; returns for every tree edge the
    # leaves below it.
    children: dict[int, list[int]] = {n: []}
    parent = {}
    nodes = [n]
    next_id = n + 1
    for leaf in range(n):
        if rng.random() < 0.5 or len(nodes) == 1:
            host = rng.choice(nodes)
        else:
            host = next_id
            next_id += 1
            above = rng.choice(nodes)
            children[host] = []
            children[above].append(host)
            parent[host] = above
            nodes.append(host)
        children[host].append(leaf)
        parent[leaf] = host

    def below(v: int) -> list[int]:
        if v < n:
            return [v]
        out = []
        for c in children[v]:
            out.extend(below(c))
        return out

    return [below(v) for v in parent]


def random_columns(
    rng: random.Random, n: int, length: int, max_letters: int = 3, noise: float = 0.2
) -> list[list[int]]:
    clades = _random_tree(rng, n)
    cols = []
    for _ in range(length):
        letters = rng.randint(2, max_letters)
        if rng.random() < noise:
            cols.append([rng.randrange(letters) for _ in range(n)])
            continue
        col = [0] * n
        for letter in range(1, letters):
            for x in rng.choice(clades):
                col[x] = letter
        cols.append(col)
    return cols


def random_system(
    seed: int, n_max: int = 7, m_max: int = 6, k_max: int = 3, n_min: int = 2
) -> PartitionSystem:
    """A system with ``n_min <= n <= n_max`` elements and at most ``m_max`` partitions
    of at most ``k_max`` parts each (possibly empty if every column was constant)."""
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)
    m = rng.randint(1, m_max)
    ground = GroundSet(tuple(f"s{i + 1}" for i in range(n)))
    parts = []
    for col in random_columns(rng, n, m, k_max, noise=rng.choice([0.0, 0.2, 0.5])):
        if len(set(col)) >= 2:
            parts.append(Partition.from_labels(col))
    return PartitionSystem.from_partitions(ground, parts)


def pairwise_incompatible_system(seed: int, n: int = 6, m: int = 3, k_max: int = 3) -> PartitionSystem:
    """Rejection-sample partitions until no two are strongly compatible."""
    from .partitions import strongly_compatible

    rng = random.Random(seed)
    ground = GroundSet(tuple(f"s{i + 1}" for i in range(n)))
    chosen: list[Partition] = []
    misses = 0
    while len(chosen) < m:
        if misses > 1000:
            # an early pick can rule out every continuation; start over
            chosen, misses = [], 0
        labels = [rng.randrange(rng.randint(2, k_max)) for _ in range(n)]
        if len(set(labels)) < 2:
            continue
        p = Partition.from_labels(labels)
        if p in chosen or any(strongly_compatible(p, q).compatible for q in chosen):
            misses += 1
            continue
        chosen.append(p)
    return PartitionSystem.from_partitions(ground, chosen)


def pairwise_compatible_system(seed: int, n: int = 7, m: int = 5, k_max: int = 3) -> PartitionSystem:
    """Rejection-sample partitions until every pair is strongly compatible."""
    from .partitions import strongly_compatible

    rng = random.Random(seed)
    ground = GroundSet(tuple(f"s{i + 1}" for i in range(n)))
    chosen: list[Partition] = []
    attempts = 0
    while len(chosen) < m and attempts < 10_000:
        attempts += 1
        col = random_columns(rng, n, 1, k_max, noise=0.0)[0]
        if len(set(col)) < 2:
            continue
        p = Partition.from_labels(col)
        if p in chosen or not all(strongly_compatible(p, q).compatible for q in chosen):
            continue
        chosen.append(p)
    return PartitionSystem.from_partitions(ground, chosen)


def random_alignment(seed: int, n: int, length: int, alphabet: str = "ACGT") -> Alignment:
    rng = random.Random(seed)
    rows = ["".join(rng.choice(alphabet) for _ in range(length)) for _ in range(n)]
    return Alignment(tuple(f"s{i + 1}" for i in range(n)), tuple(rows))
