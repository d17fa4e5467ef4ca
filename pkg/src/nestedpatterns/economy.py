"""Wiring cost of inward- versus outward-converging search groups.

Two groups of concentric rings sit side by side, centred at
``(-separation/2, 0)`` (group a) and ``(+separation/2, 0)`` (group b). Every
ring carries ``nodes_per_ring`` uniformly spaced nodes. A search through a
group ends at its terminal: the group centre when the search runs inwards, or
the point of the outermost ring farthest from the other group when it runs
outwards. Cost is the summed Euclidean wiring from every node to its
group's terminal, plus the link that joins the two terminals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import InvalidLayout, InvalidRadii, InvalidSeparation

Point = tuple[float, float]


class Mode(str, Enum):
    INWARD = "inward"
    OUTWARD = "outward"


@dataclass(frozen=True)
class Layout:
    radii: tuple[float, ...]
    nodes_per_ring: int
    separation: float
    mode: Mode

    @property
    def centers(self) -> tuple[Point, Point]:
        half = self.separation / 2
        return (-half, 0.0), (half, 0.0)

    @property
    def terminals(self) -> tuple[Point, Point]:
        (ax, ay), (bx, by) = self.centers
        if self.mode is Mode.INWARD:
            return (ax, ay), (bx, by)
        outer = self.radii[0]
        return (ax - outer, ay), (bx + outer, by)

    def nodes(self, group: str) -> list[Point]:
        """Ring nodes of group ``"a"`` or ``"b"``; a is the mirror image of b."""
        if group not in ("a", "b"):
            raise ValueError(f"group must be 'a' or 'b', got {group!r}")
        cx, cy = self.centers[0 if group == "a" else 1]
        sign = -1.0 if group == "a" else 1.0
        n = self.nodes_per_ring
        points = []
        for r in self.radii:
            for j in range(n):
                theta = 2 * math.pi * j / n
                points.append((cx + sign * r * math.cos(theta), cy + r * math.sin(theta)))
        return points


@dataclass(frozen=True)
class CostReport:
    intra_a: float
    intra_b: float
    inter: float

    @property
    def total(self) -> float:
        return self.intra_a + self.intra_b + self.inter

    def as_dict(self) -> dict:
        return {"intra_a": self.intra_a, "intra_b": self.intra_b,
                "inter": self.inter, "total": self.total}


def build_layout(radii, nodes_per_ring: int, separation: float, mode) -> Layout:
    radii = tuple(float(r) for r in radii)
    if not radii:
        raise InvalidRadii("at least one ring radius is required")
    if any(not r > 0 or math.isinf(r) for r in radii):
        raise InvalidRadii(f"radii must be finite and positive, got {radii}")
    if any(a <= b for a, b in zip(radii, radii[1:])):
        raise InvalidRadii(f"radii must be strictly decreasing, got {radii}")
    if isinstance(nodes_per_ring, bool) or not isinstance(nodes_per_ring, int) or nodes_per_ring < 1:
        raise InvalidLayout(f"nodes_per_ring must be an integer >= 1, got {nodes_per_ring!r}")
    separation = float(separation)
    if not separation >= 0 or math.isinf(separation):
        raise InvalidSeparation(f"separation must be finite and >= 0, got {separation}")
    try:
        mode = Mode(mode)
    except ValueError:
        raise InvalidLayout(f"mode must be 'inward' or 'outward', got {mode!r}") from None
    return Layout(radii, nodes_per_ring, separation, mode)


def wiring_cost(layout: Layout) -> CostReport:
    term_a, term_b = layout.terminals
    intra_a = math.fsum(math.dist(p, term_a) for p in layout.nodes("a"))
    intra_b = math.fsum(math.dist(p, term_b) for p in layout.nodes("b"))
    return CostReport(intra_a, intra_b, math.dist(term_a, term_b))


def compare(radii, nodes_per_ring: int, separation: float) -> dict[str, CostReport]:
    """Cost of both modes on otherwise identical geometry."""
    return {m.value: wiring_cost(build_layout(radii, nodes_per_ring, separation, m)) for m in Mode}
