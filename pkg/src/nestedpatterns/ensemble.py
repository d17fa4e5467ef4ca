"""Static topology of a nested ensemble.

Patterns form a single chain of containment. Level 1 is the outermost
pattern and level ``levels`` the innermost. Neuron ids are 1-based and
contiguous, outermost first, so ids ``1..pattern_size`` sit on level 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import InvalidLevels, InvalidPatternSize, InvalidWeights, UnknownNeuron


@dataclass(frozen=True)
class SignalWeights:
    excitatory_unit: float = 1.0  # signal per same-pattern sender per step
    delta: float = 0.5  # inhibitory weight relative to one excitatory unit
    external_drive: float = 1.0  # energy supply per firing neuron per step
    leak: float = 0.0  # fraction lost per step by non-firing neurons

    def __post_init__(self):
        for name in ("excitatory_unit", "delta", "external_drive", "leak"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float)) or math.isnan(value):
                raise InvalidWeights(f"{name} must be a number, got {value!r}")
        if not self.excitatory_unit > 0:
            raise InvalidWeights(f"excitatory_unit must be > 0, got {self.excitatory_unit}")
        if self.delta < 0:
            raise InvalidWeights(f"delta must be >= 0, got {self.delta}")
        if self.external_drive < 0:
            raise InvalidWeights(f"external_drive must be >= 0, got {self.external_drive}")
        if not 0 <= self.leak <= 1:
            raise InvalidWeights(f"leak must lie in [0, 1], got {self.leak}")


@dataclass(frozen=True)
class EnsembleConfig:
    levels: int
    pattern_size: int
    steps: int = 0
    weights: SignalWeights = field(default_factory=SignalWeights)

    def __post_init__(self):
        if not _is_count(self.levels) or self.levels < 1:
            raise InvalidLevels(f"levels must be an integer >= 1, got {self.levels!r}")
        if not _is_count(self.pattern_size) or self.pattern_size < 1:
            raise InvalidPatternSize(f"pattern_size must be an integer >= 1, got {self.pattern_size!r}")
        if not _is_count(self.steps) or self.steps < 0:
            raise ValueError(f"steps must be an integer >= 0, got {self.steps!r}")
        if not isinstance(self.weights, SignalWeights):
            raise InvalidWeights(f"weights must be SignalWeights, got {type(self.weights).__name__}")

    @property
    def n_neurons(self) -> int:
        return self.levels * self.pattern_size

    def neuron_ids(self, level: int) -> range:
        """Ids belonging to ``level``, in ascending order."""
        if not 1 <= level <= self.levels:
            raise InvalidLevels(f"level {level} outside 1..{self.levels}")
        start = (level - 1) * self.pattern_size + 1
        return range(start, start + self.pattern_size)

    def neurons(self) -> list[NeuronRef]:
        return [NeuronRef(i, level_of(self, i)) for i in range(1, self.n_neurons + 1)]


@dataclass(frozen=True)
class NeuronRef:
    id: int
    level: int


def _is_count(value) -> bool:
    return isinstance(value, int) and not isinstance(value, bool)


def build_ensemble(levels: int, pattern_size: int, weights: SignalWeights | None = None,
                   steps: int = 0) -> EnsembleConfig:
    """Validated config with ``levels`` nested patterns of ``pattern_size`` neurons each."""
    return EnsembleConfig(levels=levels, pattern_size=pattern_size, steps=steps,
                          weights=weights if weights is not None else SignalWeights())


def level_of(config: EnsembleConfig, neuron_id: int) -> int:
    if not _is_count(neuron_id) or not 1 <= neuron_id <= config.n_neurons:
        raise UnknownNeuron(f"neuron {neuron_id!r} outside 1..{config.n_neurons}")
    return (neuron_id - 1) // config.pattern_size + 1
