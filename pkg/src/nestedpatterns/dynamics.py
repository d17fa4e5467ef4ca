"""Synchronous step engine for nested firing patterns.

Each firing neuron accumulates, per step, the external drive plus one
excitatory unit from every other firing neuron of its own pattern, minus
``delta`` units for every firing neuron in a deeper (nested) pattern.
Values are clamped at zero. Silent neurons are untouched apart from leak.

Firing follows the drive chain: level 1 fires while the external drive is
on, level k > 1 fires only if level k - 1 fired on the previous step. A
level that ends a firing step at value <= 0 is extinguished for good, so
switching off the outer pattern starves the inner ones one step at a time.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

from .ensemble import EnsembleConfig, level_of
from .errors import InconsistentState, InvalidRamp


@dataclass(frozen=True)
class SimState:
    step: int
    values: tuple[float, ...]  # index i holds neuron i + 1
    fired_last: frozenset[int] = frozenset()
    extinguished: frozenset[int] = frozenset()
    driven_streak: tuple[int, ...] = ()
    drive_on: bool = True

    def value(self, neuron_id: int) -> float:
        return self.values[neuron_id - 1]

    def firing_levels(self, config: EnsembleConfig) -> set[int]:
        return {level_of(config, i) for i in self.fired_last}

    @property
    def quiet(self) -> bool:
        return not self.fired_last


@dataclass(frozen=True)
class TraceRow:
    step: int
    neuron_id: int
    level: int
    value: float
    fired: bool


@dataclass(frozen=True)
class Trace:
    config: EnsembleConfig
    rows: tuple[TraceRow, ...] = ()
    mode: str = "base"
    ramp: int | None = None

    @property
    def steps(self) -> list[int]:
        return sorted({r.step for r in self.rows})

    def at(self, step: int) -> list[TraceRow]:
        return [r for r in self.rows if r.step == step]

    def value(self, step: int, neuron_id: int) -> float:
        for r in self.rows:
            if r.step == step and r.neuron_id == neuron_id:
                return r.value
        raise KeyError((step, neuron_id))

    def fired_ids(self, step: int) -> set[int]:
        return {r.neuron_id for r in self.rows if r.step == step and r.fired}

    def last_firing_step(self, level: int) -> int | None:
        steps = [r.step for r in self.rows if r.level == level and r.fired]
        return max(steps) if steps else None

    def first_firing_step(self, level: int) -> int | None:
        steps = [r.step for r in self.rows if r.level == level and r.fired]
        return min(steps) if steps else None


def initial_state(config: EnsembleConfig, drive_on: bool = True) -> SimState:
    return SimState(step=0, values=(0.0,) * config.n_neurons,
                    driven_streak=(0,) * config.levels, drive_on=drive_on)


def excitatory_input(state: SimState, neuron_id: int, config: EnsembleConfig) -> float:
    """Pattern signal reaching ``neuron_id`` in the step whose firing set is ``state.fired_last``."""
    level = level_of(config, neuron_id)
    if neuron_id not in state.fired_last:
        return 0.0
    w = config.weights
    peers = sum(1 for j in config.neuron_ids(level) if j != neuron_id and j in state.fired_last)
    return w.external_drive + peers * w.excitatory_unit


def inhibitory_input(state: SimState, neuron_id: int, config: EnsembleConfig) -> float:
    """Negative feedback from firing neurons nested deeper than ``neuron_id``.

    Only firing neurons are inhibited.
    """
    level = level_of(config, neuron_id)
    if neuron_id not in state.fired_last:
        return 0.0
    w = config.weights
    deeper = sum(1 for j in state.fired_last if level_of(config, j) > level)
    return w.delta * w.excitatory_unit * deeper


def _check_consistent(state: SimState, config: EnsembleConfig, graded: bool) -> None:
    if len(state.values) != config.n_neurons:
        raise InconsistentState(f"state holds {len(state.values)} values for {config.n_neurons} neurons")
    if state.driven_streak and len(state.driven_streak) != config.levels:
        raise InconsistentState("driven_streak length does not match level count")
    if any(v < 0 for v in state.values):
        raise InconsistentState("negative value in state")
    if graded:
        return
    # partial recruitment breaks symmetry legitimately, so only base mode is checked
    for level in range(1, config.levels + 1):
        ids = config.neuron_ids(level)
        first = state.values[ids[0] - 1]
        if any(state.values[i - 1] != first for i in ids):
            raise InconsistentState(f"level {level} members carry unequal values")


def _recruited(streak: int, pattern_size: int, ramp: int) -> int:
    fraction = min(1.0, streak / ramp)
    return max(1, int(fraction * pattern_size))


def step(state: SimState, config: EnsembleConfig, ramp: int | None = None) -> SimState:
    """Advance one synchronous step. ``ramp`` switches on graded recruitment."""
    if ramp is not None and ramp < 1:
        raise InvalidRamp(f"ramp must be >= 1, got {ramp}")
    _check_consistent(state, config, graded=ramp is not None)

    previous_levels = state.firing_levels(config)
    firing_levels = set()
    for level in range(1, config.levels + 1):
        if level in state.extinguished:
            continue
        driven = state.drive_on if level == 1 else (level - 1) in previous_levels
        if driven:
            firing_levels.add(level)

    old_streak = state.driven_streak or (0,) * config.levels
    streak = tuple(s + 1 if lvl in firing_levels else 0
                   for lvl, s in zip(range(1, config.levels + 1), old_streak))

    firing = set()
    for level in firing_levels:
        ids = config.neuron_ids(level)
        if ramp is not None:
            ids = ids[:_recruited(streak[level - 1], config.pattern_size, ramp)]
        firing.update(ids)
    firing = frozenset(firing)

    pending = replace(state, fired_last=firing)
    keep = 1.0 - config.weights.leak
    values = []
    for i in range(1, config.n_neurons + 1):
        old = state.values[i - 1]
        if i in firing:
            net = excitatory_input(pending, i, config) - inhibitory_input(pending, i, config)
            values.append(max(0.0, old + net))
        else:
            values.append(old * keep)

    extinguished = set(state.extinguished)
    for level in firing_levels:
        if max(values[i - 1] for i in config.neuron_ids(level) if i in firing) <= 0:
            extinguished.add(level)

    return SimState(step=state.step + 1, values=tuple(values), fired_last=firing,
                    extinguished=frozenset(extinguished), driven_streak=streak,
                    drive_on=state.drive_on)


def _rows(state: SimState, config: EnsembleConfig) -> list[TraceRow]:
    return [TraceRow(state.step, i, level_of(config, i), state.values[i - 1], i in state.fired_last)
            for i in range(1, config.n_neurons + 1)]


def iterate(config: EnsembleConfig, ramp: int | None = None,
            state: SimState | None = None) -> Iterator[SimState]:
    """Yield the start state and then every stepped state, without end."""
    state = state if state is not None else initial_state(config)
    yield state
    while True:
        state = step(state, config, ramp)
        yield state


def _collect(config: EnsembleConfig, ramp: int | None) -> list[TraceRow]:
    rows: list[TraceRow] = []
    for state in iterate(config, ramp):
        rows.extend(_rows(state, config))
        if state.step >= config.steps:
            break
    return rows


def run(config: EnsembleConfig) -> Trace:
    """Run ``config.steps`` steps from all-zero values with the drive on."""
    return Trace(config, tuple(_collect(config, None)))


def run_graded(config: EnsembleConfig, ramp: int) -> Trace:
    """Like :func:`run`, but a driven level recruits its neurons gradually.

    After ``s`` consecutive driven steps a level fires its lowest
    ``max(1, floor(min(1, s / ramp) * pattern_size))`` ids.
    """
    if isinstance(ramp, bool) or not isinstance(ramp, int) or ramp < 1:
        raise InvalidRamp(f"ramp must be an integer >= 1, got {ramp!r}")
    return Trace(config, tuple(_collect(config, ramp)), mode="graded", ramp=ramp)
