from enum import Enum
from typing import Optional

from pydantic import BaseModel, Field, model_validator


class Regime(str, Enum):
    UNBOUNDED = "unbounded"
    UNIFORM = "uniform"
    NON_UNIFORM = "non-uniform"


class Gap(BaseModel):
    """
    Gap bounds between the two subpatterns. `beta=None` is the unbounded gap
    (any length >= alpha, alpha is 0 for dictionary `{*}` gaps).
    """
    alpha: int = Field(0, ge=0)
    beta: Optional[int] = Field(None, ge=0)

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_order(self):
        if self.beta is not None and self.beta < self.alpha:
            raise ValueError(f"gap upper bound {self.beta} is below lower bound {self.alpha}")
        return self

    @property
    def unbounded(self) -> bool:
        return self.beta is None

    def admits(self, g: int) -> bool:
        return g >= self.alpha and (self.beta is None or g <= self.beta)


UNBOUNDED_GAP = Gap()


class GappedPattern(BaseModel):
    """
    One dictionary entry: p1, an optional gap and p2. A pattern with an empty p2 is
    gapless and matches wherever p1 ends; its gap is dropped.
    """
    id: int = Field(..., ge=0)
    p1: bytes = Field(..., min_length=1)
    p2: bytes = b""
    gap: Optional[Gap] = None

    class Config:
        frozen = True

    @model_validator(mode="before")
    @classmethod
    def _normalize_gap(cls, data):
        if isinstance(data, dict):
            data = dict(data)
            if not data.get("p2"):
                data["gap"] = None
            elif data.get("gap") is None:
                data["gap"] = UNBOUNDED_GAP
        return data

    @property
    def gapless(self) -> bool:
        return not self.p2


class DictionaryStats(BaseModel):
    """Structural statistics of a dictionary (sizes, suffix chains, gap regime)."""
    d: int = Field(..., ge=0, description="Number of gapped patterns (edges of G_D).")
    total_len: int = Field(..., ge=0, description="|D|, the sum of all subpattern lengths.")
    lsc: int = Field(..., ge=0, description="Longest suffix chain, counted in subpatterns.")
    M: int = Field(..., ge=0, description="Longest second subpattern.")
    alpha_star: int = Field(0, ge=0)
    beta_star: int = Field(0, ge=0)
    regime: Regime
    gapless: int = Field(0, ge=0, description="Number of gapless patterns.")
    has_unbounded: bool = False

    class Config:
        frozen = True

    @model_validator(mode="after")
    def _check_window(self):
        if self.alpha_star > self.beta_star:
            raise ValueError("alpha_star must not exceed beta_star")
        return self
