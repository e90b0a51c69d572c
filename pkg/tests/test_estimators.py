import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from qmblocks import AlignmentRecoder, BlockDecomposition, QuasiMedianOracle
from qmblocks.alignment import read_alignment
from qmblocks.canonical import canonical_reference, canonical_state
from qmblocks.partitions import Partition

from conftest import GOLDEN


def test_get_params_and_clone():
    est = BlockDecomposition(gap_policy="drop-column")
    assert est.get_params() == {"gap_policy": "drop-column", "gap_chars": "-.?", "order": None}
    assert clone(est).get_params() == est.get_params()
    assert QuasiMedianOracle(budget=50).get_params()["budget"] == 50


def test_recoder_fit_transform():
    a = read_alignment(str(GOLDEN))
    rec = AlignmentRecoder()
    system = rec.fit_transform(a)
    assert system.m == 12 and rec.report_.kept_columns == list(range(12))
    with pytest.raises(NotFittedError):
        AlignmentRecoder().transform(a)
    with pytest.raises(ValueError):
        AlignmentRecoder(gap_policy="skip").fit(a)


def test_block_decomposition_on_rows(golden):
    rows = list(read_alignment(str(GOLDEN)).rows)
    est = BlockDecomposition().fit(rows)
    assert est.n_blocks_ == 8
    assert len(est.transform()) == 8
    assert [sorted(b.parts) for b in est.blocks_][0] == [0, 1, 2, 7]
    assert canonical_state(est.state_) == canonical_state(BlockDecomposition().fit(golden).state_)


def test_partial_fit_matches_fit(golden):
    est = BlockDecomposition()
    for p in golden.partitions:
        est.partial_fit(p, ground=golden.ground)
    assert canonical_state(est.state_) == canonical_state(BlockDecomposition().fit(golden).state_)
    est2 = BlockDecomposition().fit(golden.subsystem(range(11)))
    est2.partial_fit(list(golden.partitions[11].labels))
    assert canonical_state(est2.state_) == canonical_state(est.state_)


def test_partial_fit_needs_ground():
    with pytest.raises(NotFittedError):
        BlockDecomposition().partial_fit(Partition.from_labels("AB"))


def test_oracle_estimator(golden):
    est = QuasiMedianOracle().fit(golden)
    flags = est.predict()
    assert sum(flags) == len(est.reference_.cut_vertices)
    fast = BlockDecomposition().fit(golden)
    assert canonical_state(fast.state_) == canonical_reference(est.reference_)
    with pytest.raises(ValueError):
        QuasiMedianOracle(budget=0).fit(golden)
