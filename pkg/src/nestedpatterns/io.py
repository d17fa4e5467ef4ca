"""Config text, trace serialization (CSV / JSON) and SVG strength plots."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from xml.sax.saxutils import escape

from .dynamics import Trace, TraceRow, run, run_graded
from .ensemble import EnsembleConfig, SignalWeights
from .errors import EmptyTrace, NestedPatternError, ParseError, ValidationError

CSV_HEADER = ("step", "neuron_id", "level", "value", "fired")

_INT_KEYS = ("levels", "pattern_size", "steps", "ramp")
_FLOAT_KEYS = ("delta", "excitatory_unit", "external_drive", "leak")
_KNOWN_KEYS = _INT_KEYS + _FLOAT_KEYS + ("mode",)
_REQUIRED = ("levels", "pattern_size", "steps")
_MODES = ("base", "graded")


@dataclass(frozen=True)
class RunSpec:
    """A parsed config file: topology and weights plus the run mode."""

    config: EnsembleConfig
    mode: str = "base"
    ramp: int | None = None

    def run(self) -> Trace:
        if self.mode == "graded":
            return run_graded(self.config, self.ramp)
        return run(self.config)


def parse_config(text: str) -> RunSpec:
    """Parse ``key = value`` lines (``#`` starts a comment).

    Topology keys and ``steps`` are required. Weights default to
    delta=0.5, excitatory_unit=1.0, external_drive=1.0, leak=0.0, and mode to base.
    """
    found: dict[str, object] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError(lineno, line, "expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _KNOWN_KEYS:
            raise ParseError(lineno, key, "unknown key")
        if key in found:
            raise ParseError(lineno, key, "duplicate key")
        if not value:
            raise ParseError(lineno, raw.strip(), "missing value")
        found[key] = _parse_value(key, value, lineno)

    missing = [k for k in _REQUIRED if k not in found]
    if missing:
        raise ValidationError(f"missing required key(s): {', '.join(missing)}")
    mode = found.get("mode", "base")
    ramp = found.get("ramp")
    if mode == "graded" and (ramp is None or ramp < 1):
        raise ValidationError("mode = graded requires ramp >= 1")
    if ramp is not None and ramp < 1:
        raise ValidationError(f"ramp must be >= 1, got {ramp}")
    try:
        weights = SignalWeights(**{k: found[k] for k in _FLOAT_KEYS if k in found})
        config = EnsembleConfig(levels=found["levels"], pattern_size=found["pattern_size"],
                                steps=found["steps"], weights=weights)
    except (NestedPatternError, ValueError) as exc:
        raise ValidationError(str(exc)) from exc
    return RunSpec(config, mode, ramp)


def _parse_value(key: str, value: str, lineno: int):
    if key == "mode":
        if value not in _MODES:
            raise ParseError(lineno, value, "mode must be base or graded")
        return value
    try:
        return int(value) if key in _INT_KEYS else float(value)
    except ValueError:
        raise ParseError(lineno, value) from None


def format_config(spec: RunSpec | EnsembleConfig) -> str:
    """Inverse of :func:`parse_config`."""
    if isinstance(spec, EnsembleConfig):
        spec = RunSpec(spec)
    c, w = spec.config, spec.config.weights
    lines = [
        f"levels = {c.levels}",
        f"pattern_size = {c.pattern_size}",
        f"steps = {c.steps}",
        f"delta = {float(w.delta)!r}",
        f"excitatory_unit = {float(w.excitatory_unit)!r}",
        f"external_drive = {float(w.external_drive)!r}",
        f"leak = {float(w.leak)!r}",
        f"mode = {spec.mode}",
    ]
    if spec.ramp is not None:
        lines.append(f"ramp = {spec.ramp}")
    return "\n".join(lines) + "\n"


def format_value(value: float) -> str:
    # repr is the shortest string that round-trips: 7.5, 5.0, 0.1 + 0.2 -> 0.30000000000000004
    return repr(float(value))


def emit_trace_csv(trace: Trace) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in sorted(trace.rows, key=lambda r: (r.step, r.neuron_id)):
        writer.writerow((r.step, r.neuron_id, r.level, format_value(r.value),
                         "true" if r.fired else "false"))
    return buf.getvalue()


def read_trace_csv(text: str) -> Trace:
    """Parse CSV written by :func:`emit_trace_csv`.

    The file does not carry weights, so the returned trace's config has the
    right topology but default weights and ``steps`` set to the last step.
    """
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or tuple(h.strip() for h in header) != CSV_HEADER:
        raise ParseError(1, ",".join(header or []), "bad CSV header")
    rows = []
    for lineno, fields in enumerate(reader, start=2):
        if not fields:
            continue
        if len(fields) != len(CSV_HEADER):
            raise ParseError(lineno, ",".join(fields), "expected 5 columns")
        step, nid, level, value, fired = (f.strip() for f in fields)
        if fired not in ("true", "false"):
            raise ParseError(lineno, fired, "fired must be true or false")
        try:
            rows.append(TraceRow(int(step), int(nid), int(level), float(value), fired == "true"))
        except ValueError as exc:
            raise ParseError(lineno, ",".join(fields), str(exc)) from None
    if not rows:
        raise EmptyTrace("CSV holds no trace rows")
    levels = max(r.level for r in rows)
    first_step = rows[0].step
    size = sum(1 for r in rows if r.step == first_step and r.level == 1)
    config = EnsembleConfig(levels=levels, pattern_size=max(size, 1), steps=max(r.step for r in rows))
    return Trace(config, tuple(rows))


def trace_to_json(trace: Trace) -> str:
    c, w = trace.config, trace.config.weights
    doc = {
        "config": {
            "levels": c.levels,
            "pattern_size": c.pattern_size,
            "steps": c.steps,
            "weights": {"excitatory_unit": w.excitatory_unit, "delta": w.delta,
                        "external_drive": w.external_drive, "leak": w.leak},
            "mode": trace.mode,
            "ramp": trace.ramp,
        },
        "rows": [{"step": r.step, "neuron_id": r.neuron_id, "level": r.level,
                  "value": r.value, "fired": r.fired} for r in trace.rows],
    }
    return json.dumps(doc, indent=1) + "\n"


# --- SVG --------------------------------------------------------------------

_PALETTE = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
            "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf")
_W, _H = 640, 400
_LEFT, _RIGHT, _TOP, _BOTTOM = 60, 120, 30, 50


def level_means(trace: Trace) -> dict[int, list[tuple[int, float]]]:
    """Mean member value per level per step, ordered by step."""
    sums: dict[tuple[int, int], list[float]] = {}
    for r in trace.rows:
        sums.setdefault((r.level, r.step), []).append(r.value)
    series: dict[int, list[tuple[int, float]]] = {}
    for (level, t), vals in sorted(sums.items()):
        series.setdefault(level, []).append((t, sum(vals) / len(vals)))
    return series


def _fmt(x: float) -> str:
    return f"{x:.2f}"


def render_strength_plot(trace: Trace, title: str = "Pattern strength by level") -> str:
    """SVG line chart of mean level value against step."""
    if not trace.rows:
        raise EmptyTrace("cannot plot an empty trace")
    series = level_means(trace)
    steps = sorted({r.step for r in trace.rows})
    t0, t1 = steps[0], steps[-1]
    vmax = max(v for pts in series.values() for _, v in pts)
    vmax = vmax if vmax > 0 else 1.0
    pw, ph = _W - _LEFT - _RIGHT, _H - _TOP - _BOTTOM

    def x(t):
        return _LEFT + (pw / 2 if t1 == t0 else (t - t0) / (t1 - t0) * pw)

    def y(v):
        return _TOP + ph - v / vmax * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_W}" height="{_H}" '
        f'viewBox="0 0 {_W} {_H}" data-vmax="{vmax!r}">',
        f'<rect width="{_W}" height="{_H}" fill="white"/>',
        f'<text x="{_W / 2}" y="18" text-anchor="middle" font-size="14">{escape(title)}</text>',
        f'<line class="axis" x1="{_LEFT}" y1="{_TOP + ph}" x2="{_LEFT + pw}" y2="{_TOP + ph}" stroke="black"/>',
        f'<line class="axis" x1="{_LEFT}" y1="{_TOP}" x2="{_LEFT}" y2="{_TOP + ph}" stroke="black"/>',
        f'<text x="{_LEFT + pw / 2}" y="{_H - 10}" text-anchor="middle" font-size="12">step</text>',
        f'<text x="15" y="{_TOP + ph / 2}" text-anchor="middle" font-size="12" '
        f'transform="rotate(-90 15 {_TOP + ph / 2})">mean level value</text>',
    ]
    tick_every = max(1, -(-len(steps) // 12))
    for t in steps[::tick_every]:
        out.append(f'<text x="{_fmt(x(t))}" y="{_TOP + ph + 18}" text-anchor="middle" font-size="10">{t}</text>')
    for k in range(5):
        v = vmax * k / 4
        out.append(f'<text x="{_LEFT - 6}" y="{_fmt(y(v) + 3)}" text-anchor="end" font-size="10">{v:g}</text>')

    for level, pts in series.items():
        color = _PALETTE[(level - 1) % len(_PALETTE)]
        if len(pts) == 1:
            t, v = pts[0]
            out.append(f'<circle class="level" data-level="{level}" cx="{_fmt(x(t))}" cy="{_fmt(y(v))}" '
                       f'r="4" fill="{color}"/>')
        else:
            coords = " ".join(f"{_fmt(x(t))},{_fmt(y(v))}" for t, v in pts)
            out.append(f'<polyline class="level" data-level="{level}" points="{coords}" '
                       f'fill="none" stroke="{color}" stroke-width="2"/>')
        ly = _TOP + 14 * level
        out.append(f'<text x="{_W - _RIGHT + 12}" y="{ly}" font-size="11" fill="{color}">level {level}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
