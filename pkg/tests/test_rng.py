import numpy as np
import pytest

from segproc.rng import RngStream, map_blocks, worker_count


def test_same_key_same_draws():
    a = RngStream(42, 3).uniform(100)
    b = RngStream(42, 3).uniform(100)
    assert np.array_equal(a, b)


def test_distinct_streams_differ():
    a = RngStream(42, 3).uniform(1000)
    b = RngStream(42, 4).uniform(1000)
    assert not np.array_equal(a, b)
    assert abs(np.corrcoef(a, b)[0, 1]) < 0.15


def test_spawn_ignores_parent_consumption():
    parent = RngStream(1)
    child = parent.spawn(5).uniform(10)
    parent.uniform(1000)
    assert np.array_equal(child, parent.spawn(5).uniform(10))


def test_signs_are_pm_one():
    s = RngStream(0).sign(10_000)
    assert set(np.unique(s)) == {-1.0, 1.0}
    assert abs(s.mean()) < 0.05


@pytest.mark.parametrize("seed", [-1, 1 << 64])
def test_seed_range(seed):
    with pytest.raises(ValueError):
        RngStream(seed)


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("SEGPROC_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("SEGPROC_THREADS", "0")
    assert worker_count() >= 1
    monkeypatch.setenv("SEGPROC_THREADS", "lots")
    with pytest.raises(ValueError):
        worker_count()


@pytest.mark.parametrize("threads", ["1", "2", "5"])
def test_map_blocks_thread_invariant(monkeypatch, threads):
    monkeypatch.setenv("SEGPROC_THREADS", "1")
    ref = np.concatenate(map_blocks(lambda n, s: s.uniform(n), 10_000, RngStream(9), block_size=999))
    monkeypatch.setenv("SEGPROC_THREADS", threads)
    got = np.concatenate(map_blocks(lambda n, s: s.uniform(n), 10_000, RngStream(9), block_size=999))
    assert got.size == 10_000
    assert np.array_equal(ref, got)
