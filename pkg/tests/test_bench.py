import pytest

from bench import FAMILIES, bench_table, complete_bipartite, instance_for, random_uniform
from dictionary import compute_stats
from entity.bench import BenchCase
from entity.pattern import Regime


def test_complete_bipartite_shape():
    patterns = complete_bipartite(2, 3, "0,4", copies=2)
    stats = compute_stats(patterns)
    assert stats.d == 12
    assert stats.regime == Regime.UNIFORM
    with pytest.raises(ValueError):
        complete_bipartite(27, 1, "*")


def test_random_uniform_is_seeded():
    assert random_uniform(10, seed=4) == random_uniform(10, seed=4)
    assert compute_stats(random_uniform(10, seed=4)[0]).regime == Regime.UNIFORM


def test_every_family_builds():
    for family, (_, sizes) in FAMILIES.items():
        patterns, text = instance_for(BenchCase(family=family, size=sizes[0]))
        assert patterns and text


def test_bench_table_columns():
    frame = bench_table(["orientation-delta"], timing=False, workers=1)
    assert "throughput" not in frame.columns
    assert list(frame["size"]) == [1, 1, 2, 2, 4, 4, 8, 8]
    assert list(frame["engine"][:2]) == ["orientation", "threshold"]
    assert (frame["characters"] > 0).all()


def test_bench_table_timing_column():
    frame = bench_table(["random-uniform"], timing=True, workers=2)
    assert frame["throughput"].notna().all()


def test_unknown_family():
    with pytest.raises(ValueError):
        bench_table(["nope"])
