import json
import re
import xml.etree.ElementTree as ET

import pytest
from hypothesis import given, strategies as st

from nestedpatterns.dynamics import Trace, run, run_graded
from nestedpatterns.ensemble import EnsembleConfig, SignalWeights, build_ensemble
from nestedpatterns.errors import EmptyTrace, ParseError, ValidationError
from nestedpatterns.io import (
    RunSpec,
    emit_trace_csv,
    format_config,
    format_value,
    parse_config,
    read_trace_csv,
    render_strength_plot,
    trace_to_json,
)

TABLE1_TEXT = "levels = 5\npattern_size = 5\ndelta = 0.5\nsteps = 5"
SVG_NS = "{http://www.w3.org/2000/svg}"


def test_parse_table1_config():
    spec = parse_config(TABLE1_TEXT)
    assert spec.config == build_ensemble(5, 5, SignalWeights(delta=0.5), steps=5)
    assert spec.mode == "base" and spec.ramp is None


def test_parse_defaults_and_comments():
    spec = parse_config("# header\nlevels = 2  # trailing\n\npattern_size=3\nsteps = 4\n")
    w = spec.config.weights
    assert (w.delta, w.excitatory_unit, w.external_drive, w.leak) == (0.5, 1.0, 1.0, 0.0)


def test_empty_config_rejected():
    with pytest.raises(ValidationError, match="levels"):
        parse_config("")


def test_parse_error_line_number():
    with pytest.raises(ParseError) as info:
        parse_config("levels = x")
    assert info.value.line == 1 and info.value.token == "x"


@pytest.mark.parametrize("text, line", [
    ("levels = 5\ncolour = red", 2),
    ("levels = 5\nlevels = 6", 2),
    ("levels = 2.5", 1),
    ("levels 5", 1),
    ("levels = 5\nmode = fancy", 2),
    ("levels =", 1),
])
def test_parse_errors(text, line):
    with pytest.raises(ParseError) as info:
        parse_config(text)
    assert info.value.line == line


@pytest.mark.parametrize("extra", [
    "mode = graded",
    "mode = graded\nramp = 0",
    "delta = -1",
    "leak = 2",
    "levels_ = 1",
])
def test_validation_errors(extra):
    text = "pattern_size = 5\nsteps = 5\n" + extra
    if not extra.startswith("levels"):
        text = "levels = 5\n" + text
    with pytest.raises((ValidationError, ParseError)):
        parse_config(text)


def test_zero_levels_is_validation_error():
    with pytest.raises(ValidationError):
        parse_config("levels = 0\npattern_size = 5\nsteps = 1")


def test_graded_spec_runs_graded():
    spec = parse_config(TABLE1_TEXT + "\nmode = graded\nramp = 3")
    assert spec.run() == run_graded(spec.config, 3)


specs = st.builds(
    lambda lv, ps, steps, d, u, e, lk, ramp: RunSpec(
        EnsembleConfig(lv, ps, steps, SignalWeights(u, d, e, lk)),
        "graded" if ramp else "base", ramp),
    st.integers(1, 20), st.integers(1, 20), st.integers(0, 100),
    st.floats(0, 10), st.floats(1e-3, 10), st.floats(0, 10), st.floats(0, 1),
    st.one_of(st.none(), st.integers(1, 50)),
)


@given(specs)
def test_config_round_trip(spec):
    assert parse_config(format_config(spec)) == spec


def test_format_value():
    assert [format_value(v) for v in (7.5, 5.0, 0.0, 15)] == ["7.5", "5.0", "0.0", "15.0"]
    assert format_value(1 / 3) == "0.3333333333333333"


def test_csv_table1_row():
    csv_text = emit_trace_csv(run(build_ensemble(5, 5, steps=5)))
    lines = csv_text.splitlines()
    assert lines[0] == "step,neuron_id,level,value,fired"
    assert "4,11,3,7.5,true" in lines
    assert "5,1,1,0.0,true" in lines
    assert "0,25,5,0.0,false" in lines


def test_csv_zero_delta_row():
    csv_text = emit_trace_csv(run(build_ensemble(5, 5, SignalWeights(delta=0.0), steps=3)))
    assert "3,1,1,15.0,true" in csv_text.splitlines()


def test_csv_empty_trace():
    assert emit_trace_csv(Trace(build_ensemble(1, 1))) == "step,neuron_id,level,value,fired\n"


def test_csv_round_trip():
    trace = run(build_ensemble(4, 3, SignalWeights(delta=0.3), steps=9))
    back = read_trace_csv(emit_trace_csv(trace))
    assert back.rows == trace.rows
    assert (back.config.levels, back.config.pattern_size) == (4, 3)


@pytest.mark.parametrize("text", ["", "a,b\n", "step,neuron_id,level,value,fired\n1,2,3\n",
                                  "step,neuron_id,level,value,fired\n1,1,1,x,true\n"])
def test_csv_read_errors(text):
    with pytest.raises((ParseError, EmptyTrace)):
        read_trace_csv(text)


def test_json_trace():
    trace = run(build_ensemble(2, 2, steps=2))
    doc = json.loads(trace_to_json(trace))
    assert doc["config"]["levels"] == 2
    assert doc["config"]["weights"]["delta"] == 0.5
    assert len(doc["rows"]) == 3 * 4
    assert doc["rows"][-1] == {"step": 2, "neuron_id": 4, "level": 2, "value": 2.0, "fired": True}


def _polylines(svg):
    root = ET.fromstring(svg)
    return {int(el.get("data-level")): el for el in root.iter(f"{SVG_NS}polyline")}


def test_table1_plot():
    trace = run(build_ensemble(5, 5, steps=5))
    svg = render_strength_plot(trace)
    lines = _polylines(svg)
    assert sorted(lines) == [1, 2, 3, 4, 5]
    root = ET.fromstring(svg)
    x_axis = next(el for el in root.iter(f"{SVG_NS}line"))
    baseline = float(x_axis.get("y1"))
    last_x, last_y = lines[1].get("points").split()[-1].split(",")
    assert float(last_y) == baseline
    assert float(last_x) == float(x_axis.get("x2"))
    texts = [el.text for el in root.iter(f"{SVG_NS}text")]
    assert "step" in texts and "mean level value" in texts


def test_single_step_plot_uses_markers():
    svg = render_strength_plot(run(build_ensemble(3, 2, steps=0)))
    root = ET.fromstring(svg)
    assert not list(root.iter(f"{SVG_NS}polyline"))
    assert len(list(root.iter(f"{SVG_NS}circle"))) == 3


def test_plot_empty_trace():
    with pytest.raises(EmptyTrace):
        render_strength_plot(Trace(build_ensemble(1, 1)))


def test_plot_deterministic():
    cfg = build_ensemble(5, 5, steps=12)
    assert render_strength_plot(run(cfg)) == render_strength_plot(run(cfg))


def test_plot_values_recoverable():
    trace = run(build_ensemble(5, 5, steps=5))
    svg = render_strength_plot(trace)
    vmax = float(re.search(r'data-vmax="([^"]+)"', svg).group(1))
    assert vmax == 7.5
