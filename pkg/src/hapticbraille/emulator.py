"""Virtual forearm band: geometry, motor timeline, and placement checks.

Six motor nodes sit in three rows along the forearm (one row per braille
cell row) with two columns around it. Node spacing has to respect the
two-point discrimination threshold of forearm skin (40 mm) or neighbouring
vibrations blur into one; the default layout keeps 45-50 mm between nodes.

Motors are modelled as binary on/off with 1 ms resolution; spin-up and
spin-down transients are ignored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .link import ActuationCommand, SelectChannel, TriggerPulse

TPDT_FOREARM_MM = 40.0

# Default layout: rows 50 mm apart along the arm, columns 45 mm around it.
ROW_SPACING_MM = 50.0
COLUMN_SPACING_MM = 45.0

NODE_COUNT = 6
_ROWS = 3


class MalformedCommandStream(ValueError):
    """Command log violates the select-then-pulse contract."""


@dataclass(frozen=True)
class MotorNode:
    dot: int  # braille dot index 1..6
    row: int  # band row 1..3 (down the forearm)
    column: str  # "left" | "right"
    along_mm: float  # position along the forearm
    around_mm: float  # position around the forearm


def _distance(a: MotorNode, b: MotorNode) -> float:
    return math.hypot(a.along_mm - b.along_mm, a.around_mm - b.around_mm)


@dataclass(frozen=True)
class PlacementViolation:
    pair: tuple[int, int]  # dot indices, lower first
    distance_mm: float


class BandGeometry:
    """Placement of the six nodes; construction enforces the skin threshold.

    Pass enforce_tpdt=False to build deliberately invalid layouts for
    validation tests.
    """

    def __init__(
        self,
        nodes: Sequence[MotorNode],
        tpdt_mm: float = TPDT_FOREARM_MM,
        enforce_tpdt: bool = True,
    ):
        nodes = tuple(nodes)
        if len(nodes) != NODE_COUNT:
            raise ValueError(f"expected {NODE_COUNT} nodes, got {len(nodes)}")
        if sorted(n.dot for n in nodes) != list(range(1, NODE_COUNT + 1)):
            raise ValueError("nodes must cover dots 1..6 exactly once")
        placements = {(n.row, n.column) for n in nodes}
        if len(placements) != NODE_COUNT:
            raise ValueError("dot-to-(row,column) assignment must be a bijection")
        self.nodes = tuple(sorted(nodes, key=lambda n: n.dot))
        self.tpdt_mm = tpdt_mm
        if enforce_tpdt:
            violations = validate_geometry(self, tpdt_mm)
            if violations:
                worst = min(violations, key=lambda v: v.distance_mm)
                raise ValueError(
                    f"nodes {worst.pair} are {worst.distance_mm:.1f} mm apart, "
                    f"below the {tpdt_mm:.0f} mm two-point threshold"
                )

    @classmethod
    def default(cls) -> "BandGeometry":
        nodes = []
        for dot in range(1, NODE_COUNT + 1):
            row = (dot - 1) % _ROWS + 1
            column = "left" if dot <= _ROWS else "right"
            nodes.append(
                MotorNode(
                    dot=dot,
                    row=row,
                    column=column,
                    along_mm=(row - 1) * ROW_SPACING_MM,
                    around_mm=0.0 if column == "left" else COLUMN_SPACING_MM,
                )
            )
        return cls(nodes)

    def scaled(self, factor: float) -> "BandGeometry":
        """Same layout with all positions scaled; skips the threshold check."""
        nodes = [
            MotorNode(n.dot, n.row, n.column, n.along_mm * factor, n.around_mm * factor)
            for n in self.nodes
        ]
        return BandGeometry(nodes, tpdt_mm=self.tpdt_mm, enforce_tpdt=False)


def min_spacing(geometry: BandGeometry) -> float:
    """Smallest distance between any two nodes."""
    nodes = geometry.nodes
    return min(
        _distance(nodes[i], nodes[j])
        for i in range(len(nodes))
        for j in range(i + 1, len(nodes))
    )


def validate_geometry(
    geometry: BandGeometry, tpdt_mm: float = TPDT_FOREARM_MM
) -> list[PlacementViolation]:
    """All node pairs closer than the threshold; empty list means ok."""
    violations = []
    nodes = geometry.nodes
    for i in range(len(nodes)):
        for j in range(i + 1, len(nodes)):
            d = _distance(nodes[i], nodes[j])
            if d < tpdt_mm:
                violations.append(
                    PlacementViolation(pair=(nodes[i].dot, nodes[j].dot), distance_mm=d)
                )
    return violations


@dataclass(frozen=True)
class MotorTimeline:
    """Per-node on/off intervals plus the overall transmission span.

    span_ms is supplied by whatever drove the commands (normally the
    schedule's total duration, which includes the trailing gap); it defaults
    to the last pulse's end.
    """

    intervals: dict[int, tuple[tuple[int, int], ...]]
    span_ms: int


@dataclass(frozen=True)
class TimelineSummary:
    pulse_counts: dict[int, int]
    total_vibration_ms: int
    makespan_ms: int


def apply_commands(
    commands: Sequence[ActuationCommand], span_ms: int | None = None
) -> MotorTimeline:
    """Replay a command log into per-node vibration intervals.

    Every pulse must be immediately preceded by a channel select with the
    same timestamp, the channel must map to a node, and the serial-actuation
    model forbids overlapping intervals anywhere on the band.
    """
    per_node: dict[int, list[tuple[int, int]]] = {d: [] for d in range(1, NODE_COUNT + 1)}
    selected: SelectChannel | None = None
    last_end = 0
    for cmd in commands:
        if isinstance(cmd, SelectChannel):
            if selected is not None:
                raise MalformedCommandStream("channel select never pulsed")
            if not 0 <= cmd.channel <= 7:
                raise MalformedCommandStream(f"channel {cmd.channel} outside 0..7")
            selected = cmd
        elif isinstance(cmd, TriggerPulse):
            if selected is None or selected.at != cmd.at:
                raise MalformedCommandStream("pulse without a same-timestamp select")
            node = selected.channel + 1
            if node > NODE_COUNT:
                raise MalformedCommandStream(f"pulse on unused channel {selected.channel}")
            if cmd.at < last_end:
                raise MalformedCommandStream(
                    f"overlapping pulses: {cmd.at} ms starts before {last_end} ms"
                )
            per_node[node].append((cmd.at, cmd.at + cmd.duration))
            last_end = cmd.at + cmd.duration
            selected = None
        else:
            raise MalformedCommandStream(f"unknown command {cmd!r}")
    if selected is not None:
        raise MalformedCommandStream("trailing channel select never pulsed")
    intervals = {node: tuple(spans) for node, spans in per_node.items()}
    return MotorTimeline(intervals=intervals, span_ms=span_ms if span_ms is not None else last_end)


def timeline_summary(timeline: MotorTimeline) -> TimelineSummary:
    counts = {node: len(spans) for node, spans in timeline.intervals.items()}
    vibration = sum(off - on for spans in timeline.intervals.values() for on, off in spans)
    return TimelineSummary(
        pulse_counts=counts, total_vibration_ms=vibration, makespan_ms=timeline.span_ms
    )


def timeline_to_dict(timeline: MotorTimeline) -> dict:
    """Structured export for playback clients."""
    return {
        "intervals": {
            str(node): [[on, off] for on, off in spans]
            for node, spans in timeline.intervals.items()
        },
        "span_ms": timeline.span_ms,
    }


def timeline_events(timeline: MotorTimeline) -> list[dict]:
    """Flat, time-ordered event list equivalent to the intervals."""
    events = [
        {"node": node, "start": on, "duration": off - on}
        for node, spans in timeline.intervals.items()
        for on, off in spans
    ]
    events.sort(key=lambda e: (e["start"], e["node"]))
    return events
