"""Vibration schedules and character-transfer-rate arithmetic.

Dots inside a cell are actuated one at a time, ascending: each dot vibrates
for dot_on ms and is followed by dot_off ms of silence, so a d-dot character
occupies d*(dot_on + dot_off) ms of actuation plus the configured gap before
the next character may start. Under the 300/300 defaults one dot cycle is
600 ms, which pins the transfer-rate numbers: 1/(0.6 + 1.0) = 0.625 chars/s
for the one-dot best case and 1/(0.6*5 + 1.0) = 0.25 for the five-dot worst
case at a 1000 ms character gap.

All schedule arithmetic is integer milliseconds so logs are bit-exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .braille import BrailleCell, CellToken, Token, WORD_BREAK


class EmptyCell(ValueError):
    """Raised when asked to schedule a cell with no raised dots."""


@dataclass(frozen=True)
class TimingConfig:
    """Durations in ms. word_gap defaults to twice char_gap."""

    dot_on: int = 300
    dot_off: int = 300
    char_gap: int = 1000
    word_gap: int | None = None

    def __post_init__(self):
        if self.word_gap is None:
            object.__setattr__(self, "word_gap", 2 * self.char_gap)
        for name in ("dot_on", "dot_off", "char_gap", "word_gap"):
            value = getattr(self, name)
            if not isinstance(value, int):
                raise TypeError(f"{name} must be an integer ms value, got {value!r}")
        if self.dot_on <= 0 or self.dot_off <= 0:
            raise ValueError("dot_on and dot_off must be strictly positive")
        if self.char_gap < 0:
            raise ValueError("char_gap must be >= 0")
        if self.word_gap < self.char_gap:
            raise ValueError("word_gap must be >= char_gap")

    @property
    def dot_pitch(self) -> int:
        """ms from one dot's start to the next dot's start within a cell."""
        return self.dot_on + self.dot_off

    @property
    def dot_cycle_s(self) -> float:
        return self.dot_pitch / 1000.0


DEFAULT_TIMING = TimingConfig()

# Dot counts anchoring the transfer-rate range: 'a' is the lightest cell,
# 'q' the heaviest among letters actually swept in reading tests.
BEST_CASE_DOTS = 1
WORST_CASE_DOTS = 5


@dataclass(frozen=True)
class VibrationEvent:
    node: int  # braille dot index 1..6
    start: int  # ms from schedule origin
    duration: int  # ms, equals the generating config's dot_on


@dataclass(frozen=True)
class CharBoundary:
    """Window occupied by one scheduled character.

    end is the earliest instant the next character may start; it includes
    the trailing gap (char_gap, or the word gaps that follow the character).
    """

    label: str
    start: int
    end: int


@dataclass(frozen=True)
class Schedule:
    events: tuple[VibrationEvent, ...]
    char_boundaries: tuple[CharBoundary, ...]
    total_duration: int


def _cell_events(cell: BrailleCell, cfg: TimingConfig, origin: int) -> list[VibrationEvent]:
    return [
        VibrationEvent(node=dot, start=origin + i * cfg.dot_pitch, duration=cfg.dot_on)
        for i, dot in enumerate(cell.sorted_dots)
    ]


def schedule_char(
    cell: BrailleCell, cfg: TimingConfig = DEFAULT_TIMING, origin: int = 0, label: str = "?"
) -> Schedule:
    """Schedule a single cell starting at origin.

    Dot at 0-based position p starts at origin + p*dot_pitch; the character
    window ends at origin + dot_count*dot_pitch + char_gap.
    """
    if cell.dot_count == 0:
        raise EmptyCell("cannot schedule a blank cell")
    events = _cell_events(cell, cfg, origin)
    end = origin + cell.dot_count * cfg.dot_pitch + cfg.char_gap
    boundary = CharBoundary(label=label, start=origin, end=end)
    return Schedule(events=tuple(events), char_boundaries=(boundary,), total_duration=end)


def schedule_text(tokens: Sequence[Token], cfg: TimingConfig = DEFAULT_TIMING) -> Schedule:
    """Concatenate cell schedules; word breaks widen the preceding gap.

    A character followed by k >= 1 word breaks gets k*word_gap of trailing
    silence instead of char_gap, so the net inter-word silence is word_gap
    per break. The schedule starts at time 0.
    """
    events: list[VibrationEvent] = []
    boundaries: list[CharBoundary] = []
    cursor = 0
    for i, token in enumerate(tokens):
        if token is WORD_BREAK:
            cursor += cfg.word_gap
            if boundaries and boundaries[-1].end == cursor - cfg.word_gap:
                # absorb the break into the previous character's window
                last = boundaries[-1]
                boundaries[-1] = CharBoundary(last.label, last.start, cursor)
            continue
        assert isinstance(token, CellToken)
        if token.cell.dot_count == 0:
            raise EmptyCell("cannot schedule a blank cell")
        start = cursor
        events.extend(_cell_events(token.cell, cfg, start))
        cursor = start + token.cell.dot_count * cfg.dot_pitch
        next_is_break = i + 1 < len(tokens) and tokens[i + 1] is WORD_BREAK
        if not next_is_break:
            cursor += cfg.char_gap
        boundaries.append(CharBoundary(label=token.source, start=start, end=cursor))
    return Schedule(
        events=tuple(events), char_boundaries=tuple(boundaries), total_duration=cursor
    )


def ctr_char(dots: int, char_gap_s: float, cfg: TimingConfig = DEFAULT_TIMING) -> float:
    """Characters per second for a d-dot character at the given gap (seconds).

    1 / (dot_cycle * d + gap); 0.6 s per dot under the defaults.
    """
    if not 1 <= dots <= 6:
        raise ValueError(f"dot count must be in 1..6, got {dots}")
    if char_gap_s < 0:
        raise ValueError("character gap must be >= 0")
    return 1.0 / (cfg.dot_cycle_s * dots + char_gap_s)


def ctr_range(char_gap_s: float, cfg: TimingConfig = DEFAULT_TIMING) -> tuple[float, float]:
    """(maximum, minimum) transfer rate: one-dot vs five-dot characters."""
    return (
        ctr_char(BEST_CASE_DOTS, char_gap_s, cfg),
        ctr_char(WORST_CASE_DOTS, char_gap_s, cfg),
    )


def ctr_average(char_gap_s: float, cfg: TimingConfig = DEFAULT_TIMING) -> float:
    """Midpoint of the best-case and worst-case transfer rates."""
    best, worst = ctr_range(char_gap_s, cfg)
    return (best + worst) / 2.0


def schedule_to_lines(schedule: Schedule) -> list[str]:
    """Line-oriented export: one line per event, then boundaries and total."""
    lines = [
        f"event node={e.node} start={e.start} dur={e.duration}" for e in schedule.events
    ]
    lines.extend(
        f"char {b.label!r} start={b.start} end={b.end}" for b in schedule.char_boundaries
    )
    lines.append(f"total {schedule.total_duration}")
    return lines


def schedule_to_dict(schedule: Schedule) -> dict:
    """Structured export for files and service payloads."""
    return {
        "events": [
            {"node": e.node, "start": e.start, "duration": e.duration}
            for e in schedule.events
        ],
        "chars": [
            {"label": b.label, "start": b.start, "end": b.end}
            for b in schedule.char_boundaries
        ],
        "total_ms": schedule.total_duration,
    }
