import numpy as np

from app.services.sampling import partition, tally, uniform_block

BOX = [(-1.0, 1.0), (0.0, 2.0)]


def test_blocks_are_addressable_by_index():
    whole = uniform_block(7, 0, 300, BOX)
    assert np.array_equal(uniform_block(7, 100, 50, BOX), whole[100:150])


def test_samples_stay_in_box():
    pts = uniform_block(3, 0, 10_000, BOX)
    assert pts.shape == (10_000, 2)
    assert np.all(pts[:, 0] >= -1.0) and np.all(pts[:, 0] < 1.0)
    assert np.all(pts[:, 1] >= 0.0) and np.all(pts[:, 1] < 2.0)


def test_seeds_give_different_streams():
    assert not np.array_equal(uniform_block(1, 0, 10, BOX), uniform_block(2, 0, 10, BOX))


def test_partition_covers_range():
    blocks = partition(10, 4)
    assert blocks == [(0, 4), (4, 4), (8, 2)]


def test_tally_independent_of_batching_and_workers():
    def count(pts):
        return np.array([(pts[:, 0] > 0).sum(), (pts[:, 1] > 1.5).sum()])

    reference = tally(count, BOX, 50_000, seed=11, batch_size=50_000, workers=1)
    for batch_size, workers in ((1_000, 1), (7_777, 4), (4_096, 8)):
        assert np.array_equal(tally(count, BOX, 50_000, seed=11, batch_size=batch_size, workers=workers), reference)
