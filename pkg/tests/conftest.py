import random
from typing import List, Optional

import pytest
from hypothesis import strategies as st

from dictionary import parse_dictionary
from entity.pattern import GappedPattern, Regime

ALPHABET = "abc"

subpatterns = st.text(alphabet=ALPHABET, min_size=1, max_size=8)
texts = st.text(alphabet=ALPHABET, max_size=500)


def _gap_body(rng_or_draw, regime: Regime, uniform: Optional[str]) -> str:
    if regime == Regime.UNIFORM:
        return uniform
    if regime == Regime.UNBOUNDED:
        return rng_or_draw(["*", "1,*", "0,*", "*"])
    return rng_or_draw(["0,0", "0,2", "1,3", "2,2", "0,5", "3,6", "*", "2,*"])


@st.composite
def dictionaries(draw, regime: Optional[Regime] = None, max_patterns: int = 50) -> List[GappedPattern]:
    """Random dictionaries over {a, b, c} whose gaps fit `regime`; some patterns are gapless."""
    regime = regime or draw(st.sampled_from(list(Regime)))
    alpha = draw(st.integers(0, 3))
    uniform = f"{alpha},{alpha + draw(st.integers(0, 4))}"
    lines = []
    for _ in range(draw(st.integers(1, max_patterns))):
        p1 = draw(subpatterns)
        if draw(st.integers(0, 7)) == 0:
            lines.append(p1)
            continue
        body = _gap_body(lambda options: draw(st.sampled_from(options)), regime, uniform)
        lines.append(f"{p1}{{{body}}}{draw(subpatterns)}")
    return parse_dictionary(lines)


def random_dictionary(rng: random.Random, regime: Regime, max_patterns: int = 50) -> List[GappedPattern]:
    """Same shape as the `dictionaries` strategy, drawn from a seeded Random."""
    alpha = rng.randint(0, 3)
    uniform = f"{alpha},{alpha + rng.randint(0, 4)}"

    def word() -> str:
        return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(1, 8)))

    lines = []
    for _ in range(rng.randint(1, max_patterns)):
        if rng.randint(0, 7) == 0:
            lines.append(word())
            continue
        lines.append(f"{word()}{{{_gap_body(rng.choice, regime, uniform)}}}{word()}")
    return parse_dictionary(lines)


def random_text(rng: random.Random, max_length: int = 500) -> bytes:
    return "".join(rng.choice(ALPHABET) for _ in range(rng.randint(0, max_length))).encode("ascii")


@pytest.fixture
def write_file(tmp_path):
    def write(name: str, content: str):
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)

    return write
