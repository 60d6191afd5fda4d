"""Per-iteration records shared by the ideal and realistic protocols."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np


@dataclass(frozen=True)
class StepRecord:
    """State and figures of merit after one protocol round."""

    step: int
    rho: np.ndarray
    success_probability: float
    cumulative_probability: float
    linear_entropy: float
    negativity: float
    fidelity: float
    outcome: str = "P"


@dataclass
class ProtocolTrace:
    """Ordered per-step records of a protocol run."""

    steps: list[StepRecord] = field(default_factory=list)

    def append(self, record: StepRecord) -> None:
        self.steps.append(record)

    def __len__(self) -> int:
        return len(self.steps)

    def __iter__(self):
        return iter(self.steps)

    @property
    def linear_entropies(self) -> list[float]:
        return [r.linear_entropy for r in self.steps]

    @property
    def negativities(self) -> list[float]:
        return [r.negativity for r in self.steps]

    @property
    def fidelities(self) -> list[float]:
        return [r.fidelity for r in self.steps]

    @property
    def cumulative_probability(self) -> float:
        return self.steps[-1].cumulative_probability if self.steps else 1.0
