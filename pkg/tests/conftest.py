import sys
from pathlib import Path

import pytest
from hypothesis import strategies as st

from qmblocks.alignment import alignment_to_partition_system, read_alignment
from qmblocks.partitions import GroundSet, Partition, PartitionSystem

DATA = Path(__file__).parent / "data"
GOLDEN = DATA / "golden.fasta"


def names(ground, mask):
    return set(ground.names(mask))


@pytest.fixture(scope="session")
def golden():
    system, _ = alignment_to_partition_system(read_alignment(str(GOLDEN)))
    return system


def part_sets(system, pid):
    return {frozenset(system.ground.names(m)) for m in system.partitions[pid].parts}


@st.composite
def systems(draw, n_min=2, n_max=7, m_max=6, k_max=3):
    """Arbitrary (not tree-like) partition systems, duplicates merged."""
    n = draw(st.integers(n_min, n_max))
    cols = draw(
        st.lists(st.lists(st.integers(0, k_max - 1), min_size=n, max_size=n), min_size=0, max_size=m_max)
    )
    parts = [Partition.from_labels(c) for c in cols if len(set(c)) >= 2]
    return PartitionSystem.from_partitions(GroundSet(tuple(f"s{i + 1}" for i in range(n))), parts)


from hypothesis import HealthCheck, settings  # noqa: E402

settings.register_profile(
    "default", deadline=None, max_examples=60, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    acceptance = sys.modules.get("test_acceptance")
    if acceptance is not None and acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in acceptance.RESULTS.values():
            terminalreporter.write_line(line)
