from typing import Optional

from pydantic import BaseModel, Field


class BenchCase(BaseModel):
    """One generated benchmark instance: a family member and the seed it was drawn with."""
    family: str
    size: int = Field(..., ge=0)
    seed: int = 0

    class Config:
        frozen = True


class BenchRow(BaseModel):
    """One CSV row of `bench`. Throughput is None when timing is disabled."""
    family: str
    size: int
    engine: str
    d: int
    degeneracy: int
    lsc: int
    characters: int
    work_p50: float
    work_p99: float
    work_max: float
    max_ratio: float
    throughput: Optional[float] = None
