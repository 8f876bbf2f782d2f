import random

import pytest
from hypothesis import HealthCheck, given, settings

from conftest import dictionaries, random_dictionary, random_text, texts
from dictionary import compute_stats, parse_dictionary
from dmog_engine import OrientationEngine, dmog_run, dmog_step, match_all
from entity.occurrence import EngineConfig, Occurrence, ReportMode
from entity.pattern import Regime
from errors import EngineConfigError, StreamClosedError
from oracle import oracle_dmog
from threshold_engine import ThresholdEngine


def _occ(pattern_id, end_pos, witness_j=None):
    return Occurrence(pattern_id=pattern_id, end_pos=end_pos, witness_j=witness_j)


def _match(lines, text, mode=ReportMode.WITNESS):
    return match_all(OrientationEngine(parse_dictionary(lines), mode=mode), text)


def test_zero_gap_match():
    assert _match(["ab{0,2}cd"], "abcd") == [_occ(0, 4, 2)]
    assert _match(["ab{0,2}cd"], "abcd", ReportMode.DEDUP) == [_occ(0, 4)]


def test_gap_below_lower_bound():
    assert _match(["ab{1,2}cd"], "abcd") == []
    assert _match(["ab{1,2}cd"], "abxcd") == [_occ(0, 5, 2)]


def test_subpatterns_do_not_overlap():
    assert _match(["a{0,1}ba"], "aba") == [_occ(0, 3, 1)]


def test_unbounded_witnesses():
    assert _match(["a{*}a"], "aaa") == [_occ(0, 2, 1), _occ(0, 3, 1), _occ(0, 3, 2)]
    assert _match(["a{*}a"], "aaa", ReportMode.DEDUP) == [_occ(0, 2), _occ(0, 3)]


def test_gapless_patterns_reported_without_witness():
    assert _match(["ab", "b{*}b"], "abab") == [_occ(0, 2), _occ(0, 4), _occ(1, 4, 2)]


def test_empty_and_short_texts():
    assert _match(["ab{0,2}cd"], "") == []
    assert _match(["ab{0,2}cdef"], "abc") == []


def test_empty_dictionary():
    assert _match([], "abc") == []


def test_step_accepts_single_byte():
    engine = OrientationEngine(parse_dictionary(["a{0,0}b"]))
    assert dmog_step(engine, b"a") == []
    assert dmog_step(engine, ord("b")) == [_occ(0, 2)]
    with pytest.raises(ValueError):
        dmog_step(engine, b"ab")


def test_step_after_finish():
    engine = OrientationEngine(parse_dictionary(["a{0,0}b"]))
    match_all(engine, "ab")
    with pytest.raises(StreamClosedError):
        engine.step(ord("a"))


def test_run_reports_before_reading_ahead():
    engine = OrientationEngine(parse_dictionary(["a{0,1}b", "b"]))
    log = []

    def source():
        for ch in b"abxab":
            log.append(("read", ch))
            yield ch

    def on_position(i, occurrences):
        log.append(("emit", i, [o.pattern_id for o in occurrences]))

    for _ in dmog_run(engine, source(), on_position):
        pass
    assert log == [
        ("read", ord("a")), ("emit", 1, []),
        ("read", ord("b")), ("emit", 2, [0, 1]),
        ("read", ord("x")), ("emit", 3, []),
        ("read", ord("a")), ("emit", 4, []),
        ("read", ord("b")), ("emit", 5, [0, 1]),
    ]


def test_uniform_config_must_match_gaps():
    patterns = parse_dictionary(["a{0,1}b", "c{0,2}d"])
    config = EngineConfig(regime=Regime.UNIFORM, alpha=0, beta=1)
    with pytest.raises(EngineConfigError):
        OrientationEngine(patterns, config=config)


def test_any_dictionary_runs_non_uniform():
    patterns = parse_dictionary(["ab{1,2}cd", "b{1,2}c"])
    stats = compute_stats(patterns)
    config = EngineConfig.for_stats(stats).model_copy(update={"regime": Regime.NON_UNIFORM})
    text = "abxcdbxxc"
    assert match_all(OrientationEngine(patterns, config=config), text) == oracle_dmog(patterns, text)


def test_summary_fields():
    engine = OrientationEngine(parse_dictionary(["ab{*}cd", "ab{*}ef"]))
    summary = engine.summary()
    assert summary.regime == Regime.UNBOUNDED
    assert (summary.left_vertices, summary.right_vertices, summary.edges) == (1, 2, 2)
    assert summary.degeneracy == 1
    assert summary.theta is None


@pytest.mark.parametrize("regime", list(Regime))
def test_random_instances_against_oracle(regime):
    rng = random.Random(list(Regime).index(regime))
    for _ in range(500):
        patterns = random_dictionary(rng, regime)
        text = random_text(rng)
        for mode in ReportMode:
            expected = oracle_dmog(patterns, text, mode)
            assert match_all(OrientationEngine(patterns, mode=mode), text) == expected
            assert match_all(ThresholdEngine(patterns, mode=mode), text) == expected


@settings(max_examples=200, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow])
@given(dictionaries(), texts)
def test_generated_instances_against_oracle(patterns, text):
    for mode in ReportMode:
        expected = oracle_dmog(patterns, text, mode)
        assert match_all(OrientationEngine(patterns, mode=mode), text) == expected
        assert match_all(ThresholdEngine(patterns, mode=mode), text) == expected


def test_witnesses_satisfy_gap_bounds():
    rng = random.Random(21)
    for _ in range(100):
        patterns = random_dictionary(rng, Regime.NON_UNIFORM)
        by_id = {p.id: p for p in patterns}
        text = random_text(rng)
        for o in match_all(OrientationEngine(patterns, mode=ReportMode.WITNESS), text):
            p = by_id[o.pattern_id]
            if p.gapless:
                assert o.witness_j is None
                continue
            assert text[o.end_pos - len(p.p2):o.end_pos] == p.p2
            assert text[o.witness_j - len(p.p1):o.witness_j] == p.p1
            assert p.gap.admits(o.end_pos - len(p.p2) - o.witness_j)
