"""
Benchmark families and the work-counter table behind `cli bench`.

* orientation-delta: K_{delta,delta} over single-byte subpatterns, unbounded gaps.
* threshold-dense: four parallel copies of K_{s,s}, one uniform gap, d = 4 s^2.
* random-uniform: seeded random dictionaries over {a, b, c} with one gap.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

import settings
from dictionary import compute_stats, parse_dictionary
from dmog_engine import DmogEngine, OrientationEngine
from entity.bench import BenchCase, BenchRow
from entity.occurrence import EngineConfig, EngineKind
from entity.pattern import GappedPattern
from threshold_engine import ThresholdEngine, ceil_sqrt

logger = logging.getLogger(__name__)

LEFT_SYMBOLS = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
RIGHT_SYMBOLS = "abcdefghijklmnopqrstuvwxyz"

Instance = Tuple[List[GappedPattern], bytes]


def complete_bipartite(left: int, right: int, gap: str, copies: int = 1) -> List[GappedPattern]:
    if left > len(LEFT_SYMBOLS) or right > len(RIGHT_SYMBOLS):
        raise ValueError("complete bipartite families are limited to 26 vertices per side")
    lines = [
        f"{LEFT_SYMBOLS[a]}{{{gap}}}{RIGHT_SYMBOLS[b]}"
        for _ in range(copies)
        for a in range(left)
        for b in range(right)
    ]
    return parse_dictionary(lines)


def block_text(left: int, right: int, blocks: int) -> bytes:
    """`blocks` repetitions of every L symbol followed by every R symbol."""
    return ((LEFT_SYMBOLS[:left] + RIGHT_SYMBOLS[:right]) * blocks).encode("ascii")


def orientation_delta(delta: int, blocks: int = 8) -> Instance:
    return complete_bipartite(delta, delta, "*"), block_text(delta, delta, blocks)


def threshold_dense(s: int, blocks: int = 8) -> Instance:
    return complete_bipartite(s, s, f"0,{2 * s - 2}", copies=4), block_text(s, s, blocks)


def random_uniform(size: int, seed: int = 0, text_length: int = 500) -> Instance:
    rng = random.Random(seed)
    alpha = rng.randint(0, 4)
    beta = alpha + rng.randint(0, 6)

    def word() -> str:
        return "".join(rng.choice("abc") for _ in range(rng.randint(1, 4)))

    lines = [f"{word()}{{{alpha},{beta}}}{word()}" for _ in range(size)]
    text = "".join(rng.choice("abc") for _ in range(text_length)).encode("ascii")
    return parse_dictionary(lines), text


FAMILIES: Dict[str, Tuple[Callable[..., Instance], Sequence[int]]] = {
    "orientation-delta": (orientation_delta, (1, 2, 4, 8)),
    "threshold-dense": (threshold_dense, (2, 4, 8)),
    "random-uniform": (random_uniform, (10, 25, 50)),
}


def instance_for(case: BenchCase) -> Instance:
    make, _ = FAMILIES[case.family]
    if case.family == "random-uniform":
        return make(case.size, seed=case.seed)
    return make(case.size)


def per_step_bound(engine: DmogEngine) -> int:
    """lsc * delta for the orientation engine, lsc + sqrt(lsc * d) for the threshold engine."""
    lsc = max(1, engine.stats.lsc)
    if isinstance(engine, ThresholdEngine):
        return lsc + ceil_sqrt(lsc * engine.graph.d)
    return lsc * max(1, engine.degeneracy)


def run_case(case: BenchCase, engine: EngineKind, timing: bool = True) -> BenchRow:
    patterns, text = instance_for(case)
    stats = compute_stats(patterns)
    config = EngineConfig.for_stats(stats, engine=engine, max_window_span=settings.MAX_WINDOW_SPAN)
    dmog = (ThresholdEngine if engine == EngineKind.THRESHOLD else OrientationEngine)(patterns, config=config)
    started = time.perf_counter()
    for _ in dmog.run(text):
        pass
    elapsed = time.perf_counter() - started
    dmog.finish()
    summary = dmog.counter.summary()
    return BenchRow(
        family=case.family,
        size=case.size,
        engine=engine.value,
        d=stats.d,
        degeneracy=dmog.degeneracy,
        lsc=stats.lsc,
        characters=summary["characters"],
        work_p50=summary["work_p50"],
        work_p99=summary["work_p99"],
        work_max=summary["work_max"],
        max_ratio=round(dmog.counter.max_ratio(per_step_bound(dmog)), 6),
        throughput=(len(text) / elapsed if elapsed > 0 else None) if timing else None,
    )


def bench_table(
    families: Sequence[str],
    seed: int = 0,
    timing: bool = True,
    workers: Optional[int] = None,
) -> pd.DataFrame:
    """
    Runs every member of the requested families under both engines.

    Returns:
        A DataFrame with one BenchRow per (member, engine), in family / size / engine order.
    """
    unknown = [f for f in families if f not in FAMILIES]
    if unknown:
        raise ValueError(f"unknown bench families: {', '.join(unknown)}")
    jobs = [
        (BenchCase(family=f, size=size, seed=seed), engine)
        for f in families
        for size in FAMILIES[f][1]
        for engine in (EngineKind.ORIENTATION, EngineKind.THRESHOLD)
    ]
    with ThreadPoolExecutor(max_workers=workers or settings.BENCH_WORKERS) as pool:
        rows = list(pool.map(lambda job: run_case(job[0], job[1], timing), jobs))
    logger.info("Bench finished: %d rows", len(rows))
    columns = list(BenchRow.model_fields)
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=columns)
    if not timing:
        frame = frame.drop(columns=["throughput"])
    return frame
