from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, Field

from entity.occurrence import EngineKind, EngineSummary, Occurrence
from entity.pattern import Regime


class StatsRequest(BaseModel):
    """Dictionary text in the pattern-per-line format."""
    dictionary: str


class StatsResponse(BaseModel):
    """
    Structural statistics of a dictionary plus the graph figures the engines are
    sized by, and the engine the numbers suggest.
    """
    d: int
    total_len: int
    lsc: int
    M: int
    alpha_star: int
    beta_star: int
    regime: Regime
    gapless: int
    left_vertices: int
    right_vertices: int
    degeneracy: int
    theta: int
    heavy_left: int
    heavy_right: int
    automaton_states: int
    dense_goto: bool
    suggested_engine: EngineKind

    class Config:
        use_enum_values = True


class MatchRequest(BaseModel):
    dictionary: str
    text: str
    engine: EngineKind = EngineKind.ORIENTATION
    witnesses: bool = False


class MatchResponse(BaseModel):
    occurrences: List[Occurrence]
    summary: EngineSummary
    counters: Dict[str, Optional[float]] = Field(default_factory=dict)


class TrianglesRequest(BaseModel):
    """Undirected edge list on 0-based ids; either one query vertex or `all`."""
    edges: List[Tuple[int, int]]
    vertex: Optional[int] = Field(None, ge=0)
    all: bool = False
    bounded: bool = False
    alpha: int = Field(0, ge=0)


class TrianglesResponse(BaseModel):
    triangles: List[Tuple[int, int, int]]
