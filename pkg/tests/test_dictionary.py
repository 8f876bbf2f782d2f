import pytest
from hypothesis import given, settings
from pydantic import ValidationError

from conftest import dictionaries
from dictionary import compute_stats, longest_suffix_chain, parse_dictionary, parse_line, render
from entity.pattern import UNBOUNDED_GAP, Gap, GappedPattern, Regime
from errors import DictionaryParseError


def test_bounded_gap_line():
    p = parse_line("ab{1,3}cd", 1, 0)
    assert p.p1 == b"ab"
    assert p.p2 == b"cd"
    assert p.gap == Gap(alpha=1, beta=3)


def test_unbounded_gap_line():
    p = parse_line("ab{*}cd", 1, 0)
    assert p.gap == UNBOUNDED_GAP
    assert p.gap.unbounded


def test_open_ended_gap_keeps_lower_bound():
    p = parse_line("ab{2,*}cd", 1, 0)
    assert p.gap.alpha == 2
    assert p.gap.beta is None


def test_reversed_bounds_rejected():
    with pytest.raises(DictionaryParseError) as info:
        parse_line("ab{3,1}cd", 7, 0)
    assert info.value.line_no == 7


@pytest.mark.parametrize("line", ["{1,2}cd", "ab{1,2}", "ab{1,2", "ab}cd", "ab{x}cd", "ab{1,2}c{3,4}d", "ab\\q"])
def test_malformed_lines(line):
    with pytest.raises(DictionaryParseError):
        parse_line(line, 1, 0)


def test_gapless_line():
    p = parse_line("abc", 1, 4)
    assert p.gapless
    assert p.gap is None
    assert p.id == 4


def test_comments_blanks_and_escapes():
    patterns = parse_dictionary("# header\n\n  a\\{b{0,1}\\x41  # trailing\nx\\#y\n")
    assert [p.id for p in patterns] == [0, 1]
    assert patterns[0].p1 == b"a{b"
    assert patterns[0].p2 == b"A"
    assert patterns[1].p1 == b"x#y"


def test_pattern_model_validation():
    with pytest.raises(ValidationError):
        GappedPattern(id=0, p1=b"", p2=b"x")
    with pytest.raises(ValidationError):
        Gap(alpha=4, beta=2)


def test_suffix_chain():
    assert longest_suffix_chain([b"a", b"ba", b"cba"]) == 3
    assert longest_suffix_chain([b"ab", b"cd", b"ef"]) == 1
    assert longest_suffix_chain([]) == 0


def test_single_pattern_stats():
    stats = compute_stats(parse_dictionary(["ab{1,3}cd"]))
    assert stats.d == 1
    assert stats.M == 2
    assert (stats.alpha_star, stats.beta_star) == (1, 3)
    assert stats.regime == Regime.UNIFORM
    assert stats.lsc == 1
    assert stats.total_len == 4


def test_regimes():
    assert compute_stats(parse_dictionary(["a{*}b", "c{2,*}d"])).regime == Regime.UNBOUNDED
    assert compute_stats(parse_dictionary(["a{0,1}b", "c{0,2}d"])).regime == Regime.NON_UNIFORM
    assert compute_stats(parse_dictionary(["a{0,1}b", "c{*}d"])).regime == Regime.NON_UNIFORM


def test_window_bounds_ignore_unbounded_patterns():
    stats = compute_stats(parse_dictionary(["a{5,*}b", "c{1,2}d", "e{0,4}f"]))
    assert (stats.alpha_star, stats.beta_star) == (0, 4)
    assert stats.has_unbounded


def test_empty_and_gapless_dictionaries():
    empty = compute_stats([])
    assert (empty.d, empty.lsc, empty.M, empty.total_len) == (0, 0, 0, 0)
    gapless = compute_stats(parse_dictionary(["ab", "b"]))
    assert gapless.d == 0
    assert gapless.gapless == 2
    assert gapless.lsc == 2


@settings(max_examples=100, deadline=None)
@given(dictionaries())
def test_render_parses_back(patterns):
    for p in patterns:
        assert parse_line(render(p), 1, p.id) == p


def test_render_escapes_bytes():
    p = GappedPattern(id=0, p1=b" {\x00", p2=b"#\\ ", gap=Gap(alpha=2, beta=None))
    assert parse_line(render(p), 1, 0) == p
