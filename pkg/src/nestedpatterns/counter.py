"""Timer / counter built from a nested group between an on- and an off-switch.

An external pulse latches the on-switch. While it fires, it drives the
outermost level of the nested group, and activation works its way inwards one
level per step. Each level emits one tick on its first firing. The
innermost level's first firing arms the off-switch, which fires one step
later and extinguishes the on-switch on the step after that. With its
supply gone, the group shuts down through the drive chain.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterator

from .dynamics import SimState, initial_state, step
from .ensemble import EnsembleConfig, SignalWeights, build_ensemble
from .errors import CounterTimeout


@dataclass(frozen=True)
class CounterNetwork:
    on_switch: EnsembleConfig
    off_switch: EnsembleConfig
    group: EnsembleConfig
    weights: SignalWeights

    @property
    def n_neurons(self) -> int:
        return self.on_switch.n_neurons + self.group.n_neurons + self.off_switch.n_neurons


@dataclass(frozen=True)
class TickEvent:
    level: int
    step: int


@dataclass(frozen=True)
class TickLog:
    ticks: tuple[TickEvent, ...]
    off_step: int | None
    quiescent_step: int | None
    timed_out: bool = False

    @property
    def count(self) -> int:
        return len(self.ticks)

    def as_dict(self) -> dict:
        return {
            "ticks": [{"level": t.level, "step": t.step} for t in self.ticks],
            "count": self.count,
            "off_step": self.off_step,
            "quiescent_step": self.quiescent_step,
            "timed_out": self.timed_out,
        }


@dataclass(frozen=True)
class CounterState:
    step: int
    on: SimState
    group: SimState
    off: SimState
    latched: bool = False  # on-switch holds its pulse until inhibited

    @property
    def active(self) -> bool:
        return bool(self.on.fired_last or self.group.fired_last or self.off.fired_last)


def build_counter(levels: int, pattern_size: int, weights: SignalWeights | None = None) -> CounterNetwork:
    weights = weights if weights is not None else SignalWeights()
    group = build_ensemble(levels, pattern_size, weights)
    switch = build_ensemble(1, pattern_size, weights)
    return CounterNetwork(on_switch=switch, off_switch=switch, group=group, weights=weights)


def counter_states(network: CounterNetwork) -> Iterator[CounterState]:
    """Yield the counter's joint state from step 0 onwards, without end."""
    group_cfg = network.group
    innermost = group_cfg.levels
    state = CounterState(
        step=0,
        on=initial_state(network.on_switch, drive_on=False),
        group=initial_state(group_cfg, drive_on=False),
        off=initial_state(network.off_switch, drive_on=False),
    )
    innermost_started = False
    yield state
    while True:
        t = state.step + 1
        latched = state.latched or t == 1
        on = replace(state.on, drive_on=latched)
        if state.off.fired_last:
            on = replace(on, extinguished=on.extinguished | {1})
            latched = False
        group = replace(state.group, drive_on=bool(state.on.fired_last))
        innermost_fired = innermost in state.group.firing_levels(group_cfg)
        arm_off = innermost_fired and not innermost_started
        innermost_started = innermost_started or innermost_fired
        off = replace(state.off, drive_on=arm_off)

        state = CounterState(
            step=t,
            on=step(on, network.on_switch),
            group=step(group, group_cfg),
            off=step(off, network.off_switch),
            latched=latched,
        )
        yield state


def run_counter(network: CounterNetwork, max_steps: int) -> TickLog:
    """Run until quiescence; raise :class:`CounterTimeout` past ``max_steps``."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    ticks: list[TickEvent] = []
    seen: set[int] = set()
    off_step = None
    for state in counter_states(network):
        if state.step == 0:
            continue
        for level in sorted(state.group.firing_levels(network.group) - seen):
            seen.add(level)
            ticks.append(TickEvent(level, state.step))
        if off_step is None and state.off.fired_last:
            off_step = state.step
        if not state.active:
            return TickLog(tuple(ticks), off_step, state.step)
        if state.step >= max_steps:
            raise CounterTimeout(TickLog(tuple(ticks), off_step, None, timed_out=True), max_steps)
    raise AssertionError("unreachable")
