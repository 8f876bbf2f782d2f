"""
Dictionary of one-gap patterns: parsing, canonical rendering and structural statistics.

Grammar, one pattern per line:

    pattern := subpat [ gap subpat ]
    gap     := '{' INT ',' INT '}' | '{' INT ',' '*' '}' | '{*}'

Inside subpatterns `\\{`, `\\}`, `\\\\`, `\\#` escape literals and `\\xHH` is any byte.
An unescaped `#` starts a comment. Surrounding whitespace is trimmed.
"""
import logging
import re
from pathlib import Path
from typing import Dict, Iterable, List, Optional, Tuple, Union

from pydantic import ValidationError

from entity.pattern import UNBOUNDED_GAP, DictionaryStats, Gap, GappedPattern, Regime
from errors import DictionaryParseError

logger = logging.getLogger(__name__)

_GAP_BODY = re.compile(r"^\s*(\d+)\s*,\s*(\d+|\*)\s*$")
_HEX = re.compile(r"^[0-9A-Fa-f]{2}$")
_ESCAPABLE = "{}\\#"


def _strip_comment(line: str) -> str:
    i = 0
    while i < len(line):
        if line[i] == "\\":
            i += 2
            continue
        if line[i] == "#":
            return line[:i]
        i += 1
    return line


def _parse_gap(body: str, line_no: int, line: str) -> Gap:
    if body.strip() == "*":
        return UNBOUNDED_GAP
    match = _GAP_BODY.match(body)
    if not match:
        raise DictionaryParseError(line_no, line, f"malformed gap '{{{body}}}'")
    alpha = int(match.group(1))
    if match.group(2) == "*":
        return Gap(alpha=alpha, beta=None)
    beta = int(match.group(2))
    if beta < alpha:
        raise DictionaryParseError(line_no, line, f"gap upper bound {beta} is below lower bound {alpha}")
    return Gap(alpha=alpha, beta=beta)


def parse_line(line: str, line_no: int, pattern_id: int) -> Optional[GappedPattern]:
    """Parses one dictionary line; returns None for blank and comment-only lines."""
    text = _strip_comment(line.rstrip("\r\n")).strip()
    if not text:
        return None

    parts: List[bytearray] = [bytearray()]
    gap: Optional[Gap] = None
    i = 0
    while i < len(text):
        c = text[i]
        if c == "\\":
            if i + 1 >= len(text):
                raise DictionaryParseError(line_no, line, "dangling escape at end of line")
            nxt = text[i + 1]
            if nxt in _ESCAPABLE:
                parts[-1].append(ord(nxt))
                i += 2
            elif nxt == "x" and _HEX.match(text[i + 2:i + 4]):
                parts[-1].append(int(text[i + 2:i + 4], 16))
                i += 4
            else:
                raise DictionaryParseError(line_no, line, f"unknown escape '\\{nxt}'")
        elif c == "{":
            if gap is not None:
                raise DictionaryParseError(line_no, line, "more than one gap")
            close = text.find("}", i)
            if close < 0:
                raise DictionaryParseError(line_no, line, "unclosed gap brace")
            gap = _parse_gap(text[i + 1:close], line_no, line)
            parts.append(bytearray())
            i = close + 1
        elif c == "}":
            raise DictionaryParseError(line_no, line, "unmatched '}'")
        else:
            parts[-1].extend(c.encode("utf-8"))
            i += 1

    if not parts[0]:
        raise DictionaryParseError(line_no, line, "empty first subpattern")
    if gap is not None and not parts[1]:
        raise DictionaryParseError(line_no, line, "gap without a second subpattern")

    try:
        return GappedPattern(
            id=pattern_id,
            p1=bytes(parts[0]),
            p2=bytes(parts[1]) if gap is not None else b"",
            gap=gap,
        )
    except ValidationError as e:
        raise DictionaryParseError(line_no, line, str(e)) from e


def parse_dictionary(source: Union[str, Iterable[str]]) -> List[GappedPattern]:
    """Parses dictionary text (a string or an iterable of lines); ids follow line order."""
    lines = source.splitlines() if isinstance(source, str) else source
    patterns: List[GappedPattern] = []
    for line_no, line in enumerate(lines, 1):
        pattern = parse_line(line, line_no, len(patterns))
        if pattern is not None:
            patterns.append(pattern)
    return patterns


def read_dictionary(path: Union[str, Path]) -> List[GappedPattern]:
    with open(path, encoding="utf-8") as f:
        patterns = parse_dictionary(f)
    logger.info("Parsed %d patterns from %s", len(patterns), path)
    return patterns


def _render_subpattern(sub: bytes, first: bool, last: bool) -> str:
    out = []
    for k, b in enumerate(sub):
        ch = chr(b)
        if ch in _ESCAPABLE:
            out.append("\\" + ch)
        elif ch == " " and ((first and k == 0) or (last and k == len(sub) - 1)):
            out.append("\\x20")
        elif 0x20 <= b < 0x7F:
            out.append(ch)
        else:
            out.append(f"\\x{b:02x}")
    return "".join(out)


def render(pattern: GappedPattern) -> str:
    """Canonical dictionary line for a pattern; parse_line(render(p)) gives p back."""
    if pattern.gapless:
        return _render_subpattern(pattern.p1, True, True)
    gap = pattern.gap
    if gap.unbounded:
        body = "*" if gap.alpha == 0 else f"{gap.alpha},*"
    else:
        body = f"{gap.alpha},{gap.beta}"
    return (
        _render_subpattern(pattern.p1, True, False)
        + "{" + body + "}"
        + _render_subpattern(pattern.p2, False, True)
    )


def gapped(patterns: Iterable[GappedPattern]) -> List[GappedPattern]:
    return [p for p in patterns if not p.gapless]


def vertex_labels(patterns: Iterable[GappedPattern]) -> Tuple[Dict[bytes, int], Dict[bytes, int]]:
    """L and R vertex ids of G_D: distinct first / second subpatterns in first-seen order."""
    left: Dict[bytes, int] = {}
    right: Dict[bytes, int] = {}
    for p in gapped(patterns):
        left.setdefault(p.p1, len(left))
        right.setdefault(p.p2, len(right))
    return left, right


def longest_suffix_chain(subpatterns: Iterable[bytes]) -> int:
    """Largest number of distinct subpatterns that are suffixes of one of them."""
    subs = set(subpatterns)
    best = 0
    for s in subs:
        chain = sum(1 for k in range(1, len(s) + 1) if s[-k:] in subs)
        best = max(best, chain)
    return best


def classify_regime(patterns: Iterable[GappedPattern]) -> Regime:
    gaps = [p.gap for p in gapped(patterns)]
    if all(g.unbounded for g in gaps):
        return Regime.UNBOUNDED
    if any(g.unbounded for g in gaps):
        return Regime.NON_UNIFORM
    first = gaps[0]
    if all(g.alpha == first.alpha and g.beta == first.beta for g in gaps):
        return Regime.UNIFORM
    return Regime.NON_UNIFORM


def compute_stats(patterns: List[GappedPattern]) -> DictionaryStats:
    edges = gapped(patterns)
    subpatterns = [p.p1 for p in patterns] + [p.p2 for p in edges]
    bounded = [p.gap for p in edges if not p.gap.unbounded]
    return DictionaryStats(
        d=len(edges),
        total_len=sum(len(p.p1) + len(p.p2) for p in patterns),
        lsc=longest_suffix_chain(subpatterns),
        M=max((len(p.p2) for p in edges), default=0),
        alpha_star=min((g.alpha for g in bounded), default=0),
        beta_star=max((g.beta for g in bounded), default=0),
        regime=classify_regime(patterns),
        gapless=len(patterns) - len(edges),
        has_unbounded=any(p.gap.unbounded for p in edges),
    )
