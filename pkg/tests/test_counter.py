import itertools

import pytest

from nestedpatterns.counter import TickEvent, build_counter, counter_states, run_counter
from nestedpatterns.ensemble import SignalWeights
from nestedpatterns.errors import CounterTimeout, InvalidLevels, InvalidPatternSize


def reference_timeline(n):
    """Hand replay of the switch wiring for a group that never self-extinguishes.

    on fires 1..n+2 (off fires at n+2, on is silent from n+3); level k fires
    from k+1 through n+2+k; quiescence follows the innermost level's last step.
    """
    ticks = [(k, k + 1) for k in range(1, n + 1)]
    off = n + 2
    quiescent = 2 * n + 3
    return ticks, off, quiescent


def test_build_three_level_counter():
    net = build_counter(3, 5)
    assert net.group.levels == 3
    assert net.on_switch.n_neurons == 5 and net.off_switch.n_neurons == 5
    assert net.n_neurons == 25


def test_build_minimal_counter():
    net = build_counter(1, 1)
    assert net.n_neurons == 3


@pytest.mark.parametrize("levels, size, exc", [(0, 5, InvalidLevels), (3, 0, InvalidPatternSize)])
def test_build_rejects(levels, size, exc):
    with pytest.raises(exc):
        build_counter(levels, size)


def test_three_level_timeline():
    log = run_counter(build_counter(3, 5), max_steps=32)
    ticks, off, quiescent = reference_timeline(3)
    assert [(t.level, t.step) for t in log.ticks] == ticks
    assert log.off_step == off
    assert log.quiescent_step == quiescent
    assert log.quiescent_step <= 2 * 3 + 4
    assert not log.timed_out


def test_single_level_ticks_once():
    log = run_counter(build_counter(1, 5), max_steps=32)
    assert log.ticks == (TickEvent(1, 2),)


def test_timeout_keeps_partial_log():
    with pytest.raises(CounterTimeout) as info:
        run_counter(build_counter(3, 5), max_steps=2)
    assert info.value.log.timed_out
    assert info.value.log.ticks == (TickEvent(1, 2),)
    assert info.value.log.off_step is None


def test_max_steps_must_be_positive():
    with pytest.raises(ValueError):
        run_counter(build_counter(2, 2), max_steps=0)


@pytest.mark.parametrize("n, size", list(itertools.product(range(1, 9), (1, 3, 5))))
def test_counts_nesting_depth(n, size):
    log = run_counter(build_counter(n, size), max_steps=64)
    steps = [t.step for t in log.ticks]
    assert [t.level for t in log.ticks] == list(range(1, n + 1))
    assert all(a < b for a, b in zip(steps, steps[1:]))
    assert log.off_step > steps[-1]
    assert log.off_step <= log.quiescent_step <= 2 * n + 4


@pytest.mark.parametrize("n, size", [(2, 1), (5, 3), (8, 5)])
def test_silence_is_idempotent(n, size):
    net = build_counter(n, size)
    log = run_counter(net, max_steps=64)
    quiet = None
    for state in counter_states(net):
        if state.step == log.quiescent_step:
            quiet = state
        elif quiet is not None:
            assert not state.active
            assert state.group.values == quiet.group.values
            assert state.on.values == quiet.on.values
            assert state.off.values == quiet.off.values
        if state.step > log.quiescent_step + 10:
            break


@pytest.mark.parametrize("delta", [0.0, 1.0, 3.0])
def test_tick_count_independent_of_delta(delta):
    log = run_counter(build_counter(6, 3, SignalWeights(delta=delta)), max_steps=64)
    assert log.count == 6
