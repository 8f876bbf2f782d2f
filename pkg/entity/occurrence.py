from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator

from entity.pattern import DictionaryStats, Regime


class ReportMode(str, Enum):
    DEDUP = "dedup"
    WITNESS = "witness"


class EngineKind(str, Enum):
    ORIENTATION = "orientation"
    THRESHOLD = "threshold"


class Occurrence(BaseModel):
    """
    A pattern occurrence ending at `end_pos` (1-based). `witness_j` is the end position
    of the p1 occurrence in witness mode, None in dedup mode and for gapless patterns.
    """
    pattern_id: int = Field(..., ge=0)
    end_pos: int = Field(..., ge=1)
    witness_j: Optional[int] = Field(None, ge=1)

    class Config:
        frozen = True

    def sort_key(self):
        return (self.end_pos, self.pattern_id, self.witness_j or 0)

    def line(self) -> str:
        if self.witness_j is None:
            return f"{self.end_pos}\t{self.pattern_id}"
        return f"{self.end_pos}\t{self.pattern_id}\t{self.witness_j}"


class EngineConfig(BaseModel):
    """Engine selection plus the dictionary parameters the engines size their windows with."""
    regime: Regime
    engine: EngineKind = EngineKind.ORIENTATION
    mode: ReportMode = ReportMode.DEDUP
    M: int = Field(0, ge=0)
    alpha: Optional[int] = Field(None, ge=0)
    beta: Optional[int] = Field(None, ge=0)
    alpha_star: int = Field(0, ge=0)
    beta_star: int = Field(0, ge=0)
    max_window_span: int = Field(4096, ge=0)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_regime(self):
        if self.regime == Regime.UNIFORM and (self.alpha is None or self.beta is None):
            raise ValueError("a uniform regime needs both alpha and beta")
        if self.alpha is not None and self.beta is not None and self.alpha > self.beta:
            raise ValueError("alpha must not exceed beta")
        return self

    @classmethod
    def for_stats(
        cls,
        stats: DictionaryStats,
        engine: EngineKind = EngineKind.ORIENTATION,
        mode: ReportMode = ReportMode.DEDUP,
        max_window_span: int = 4096,
    ) -> "EngineConfig":
        uniform = stats.regime == Regime.UNIFORM
        return cls(
            regime=stats.regime,
            engine=engine,
            mode=mode,
            M=stats.M,
            alpha=stats.alpha_star if uniform else None,
            beta=stats.beta_star if uniform else None,
            alpha_star=stats.alpha_star,
            beta_star=stats.beta_star,
            max_window_span=max_window_span,
        )


class EngineSummary(BaseModel):
    engine: EngineKind
    regime: Regime
    mode: ReportMode
    states: int
    dense_goto: bool
    left_vertices: int
    right_vertices: int
    edges: int
    degeneracy: int
    theta: Optional[int] = None
    heavy_left: int = 0
    heavy_right: int = 0
    heavy_heavy_edges: int = 0
    specials: int = 0
    window_cap_bound: bool = False
