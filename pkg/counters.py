"""Work and space instrumentation for the streaming engines.

One work unit is one elementary step of a mechanism: an assigned-neighbor scan, a
reporting-list entry touched, a registration into a list, an interval or bucket
operation, an array slot built or read, or an emitted occurrence. Automaton stepping is
not charged; it is the same for every engine.
"""
from typing import Dict, List, Optional

import pandas as pd


class WorkCounter:
    """Per-step work units, per-step outputs and the peak live-space gauge."""

    def __init__(self):
        self._current = 0
        self.work: List[int] = []
        self.outputs: List[int] = []
        self.space = 0
        self.peak_space = 0
        self.transient_arrays = 0
        self.resident_arrays = 0

    def charge(self, units: int = 1) -> None:
        self._current += units

    def close_step(self, outputs: int) -> None:
        self.work.append(self._current)
        self.outputs.append(outputs)
        self._current = 0

    def observe_space(self, units: int) -> None:
        self.space = units
        if units > self.peak_space:
            self.peak_space = units

    @property
    def steps(self) -> int:
        return len(self.work)

    def frame(self) -> pd.DataFrame:
        return pd.DataFrame({"work": self.work, "outputs": self.outputs})

    def max_ratio(self, per_step_bound: float) -> float:
        """Largest work / (per_step_bound + outputs) over the recorded steps."""
        if not self.work:
            return 0.0
        df = self.frame()
        return float((df["work"] / (per_step_bound + df["outputs"])).max())

    def summary(self) -> Dict[str, Optional[float]]:
        df = self.frame()
        if df.empty:
            quantiles = {"work_p50": 0.0, "work_p90": 0.0, "work_p99": 0.0, "work_max": 0.0}
        else:
            q = df["work"].quantile([0.5, 0.9, 0.99])
            quantiles = {
                "work_p50": float(q.loc[0.5]),
                "work_p90": float(q.loc[0.9]),
                "work_p99": float(q.loc[0.99]),
                "work_max": float(df["work"].max()),
            }
        return {
            "characters": self.steps,
            "total_work": int(df["work"].sum()) if not df.empty else 0,
            "total_outputs": int(df["outputs"].sum()) if not df.empty else 0,
            **quantiles,
            "peak_space": self.peak_space,
            "transient_arrays": self.transient_arrays,
            "resident_arrays": self.resident_arrays,
        }
