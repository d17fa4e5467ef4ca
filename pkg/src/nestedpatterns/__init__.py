"""Deterministic simulator of nested firing-pattern ensembles."""

from .counter import CounterNetwork, TickEvent, TickLog, build_counter, run_counter
from .dynamics import (
    SimState,
    Trace,
    TraceRow,
    excitatory_input,
    inhibitory_input,
    initial_state,
    run,
    run_graded,
    step,
)
from .economy import CostReport, Layout, build_layout, wiring_cost
from .ensemble import EnsembleConfig, NeuronRef, SignalWeights, build_ensemble, level_of

__all__ = [
    "CostReport", "CounterNetwork", "EnsembleConfig", "Layout", "NeuronRef", "SignalWeights",
    "SimState", "TickEvent", "TickLog", "Trace", "TraceRow",
    "build_counter", "build_ensemble", "build_layout", "excitatory_input", "inhibitory_input",
    "initial_state", "level_of", "run", "run_counter", "run_graded", "step", "wiring_cost",
]
