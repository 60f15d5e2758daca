"""Host-to-band byte link: paced transmitter and receiver state machine.

The link is an ordered, reliable byte pipe (the real device hangs off a
serial Bluetooth module, which behaves the same way). Data bytes are plain
ASCII letters, digits and spaces; the host is the sole source of gaps and
delays each send until the previous character's actuation window elapses.

A 4-byte escape-framed side channel reconfigures the receiver's timing:

    0x1B, param id, value high byte, value low byte   (value is 16-bit BE)

    0x01  dot_on ms
    0x02  dot_off ms
    0x03  minimum enforced inter-character gap ms

The receiver expands each data byte into select/pulse command pairs for the
motor multiplexer: channels 0..5 drive braille dots 1..6 (6..7 are unused).
Digits expand to the number-indicator cell plus the digit's cell; the
receiver tracks digit runs so the indicator fires once per run, and spaces
end a run. Because those two cells come from a single byte the host cannot
pace between them, which is what the min-gap parameter is for: the host
syncs it to its character gap before sending any digits.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .braille import (
    DIGIT_TABLE,
    LETTER_TABLE,
    NUMBER_INDICATOR,
    NUMBER_SIGN,
    BrailleCell,
    CellToken,
    WORD_BREAK,
    encode_text,
)
from .timing import DEFAULT_TIMING, TimingConfig, VibrationEvent

logger = logging.getLogger(__name__)

ESCAPE = 0x1B
PARAM_DOT_ON = 0x01
PARAM_DOT_OFF = 0x02
PARAM_MIN_CHAR_GAP = 0x03
PARAM_NAMES = {
    PARAM_DOT_ON: "dot_on",
    PARAM_DOT_OFF: "dot_off",
    PARAM_MIN_CHAR_GAP: "min_char_gap",
}

SPACE_BYTE = 0x20
MAX_PARAM_VALUE = 0xFFFF


class UnknownByte(ValueError):
    """A data byte with no cell; the receiver logs and drops these."""


def encode_config_frame(param: int, value: int) -> bytes:
    if param not in PARAM_NAMES:
        raise ValueError(f"unknown config parameter 0x{param:02x}")
    if not 0 <= value <= MAX_PARAM_VALUE:
        raise ValueError(f"config value {value} outside 0..{MAX_PARAM_VALUE}")
    return bytes((ESCAPE, param, value >> 8, value & 0xFF))


@dataclass(frozen=True)
class TimedByte:
    """One byte on the wire and the ms at which the host emits it."""

    at: int
    value: int

    @property
    def char(self) -> str | None:
        return chr(self.value) if 0x20 <= self.value < 0x7F else None


@dataclass(frozen=True)
class SelectChannel:
    channel: int  # multiplexer channel 0..7
    at: int


@dataclass(frozen=True)
class TriggerPulse:
    duration: int  # ms
    at: int


ActuationCommand = Union[SelectChannel, TriggerPulse]


class VirtualClock:
    """Explicit simulation time; advances only when told to."""

    def __init__(self, start: int = 0):
        self._now = start

    def now(self) -> int:
        return self._now

    def advance_to(self, t: int) -> None:
        if t < self._now:
            raise ValueError(f"clock cannot go backwards ({self._now} -> {t})")
        self._now = t


def host_transmit(
    text: str, cfg: TimingConfig = DEFAULT_TIMING, clock: VirtualClock | None = None
) -> list[TimedByte]:
    """Timed byte emission log for text, validated before anything is sent.

    Each character byte goes out the moment the previous one's actuation
    window (dots plus character gap) elapses; a space byte goes out when the
    preceding character's dots end and occupies word_gap. Config frames for
    any receiver parameter that must differ from its power-on defaults
    (dot_on/dot_off 300 ms, min gap 0) are emitted up front at t=0.
    """
    tokens = encode_text(text)  # raises UnsupportedCharacter before emission
    clock = clock or VirtualClock()
    origin = clock.now()

    emission: list[TimedByte] = []

    def emit_frame(frame: bytes, at: int) -> None:
        emission.extend(TimedByte(at=at, value=b) for b in frame)

    if cfg.dot_on != BandReceiver.DEFAULT_DOT_ON:
        emit_frame(encode_config_frame(PARAM_DOT_ON, cfg.dot_on), origin)
    if cfg.dot_off != BandReceiver.DEFAULT_DOT_OFF:
        emit_frame(encode_config_frame(PARAM_DOT_OFF, cfg.dot_off), origin)
    has_digits = any(
        isinstance(t, CellToken) and t.source in DIGIT_TABLE for t in tokens
    )
    if has_digits and cfg.char_gap != BandReceiver.DEFAULT_MIN_CHAR_GAP:
        # digit bytes expand to two cells on the device; it must know the gap
        emit_frame(encode_config_frame(PARAM_MIN_CHAR_GAP, cfg.char_gap), origin)

    cursor = origin
    i = 0
    while i < len(tokens):
        token = tokens[i]
        if token is WORD_BREAK:
            emission.append(TimedByte(at=cursor, value=SPACE_BYTE))
            cursor += cfg.word_gap
            i += 1
            continue
        assert isinstance(token, CellToken)
        cells = [token]
        if token.source == NUMBER_SIGN:
            # indicator rides in the following digit's byte
            i += 1
            cells.append(tokens[i])
        byte_char = cells[-1].source
        emission.append(TimedByte(at=cursor, value=ord(byte_char)))
        for j, cell_token in enumerate(cells):
            cursor += cell_token.cell.dot_count * cfg.dot_pitch
            is_last_cell = j == len(cells) - 1
            next_is_break = is_last_cell and i + 1 < len(tokens) and tokens[i + 1] is WORD_BREAK
            if not next_is_break:
                cursor += cfg.char_gap
        i += 1

    clock.advance_to(cursor)
    return emission


class BandReceiver:
    """Microcontroller-side state machine: bytes in, actuation commands out.

    Commands are produced eagerly with future timestamps; a byte arriving
    while the motors are still owed time is scheduled from busy_until, so
    characters queue in FIFO order and pulses never overlap.
    """

    DEFAULT_DOT_ON = 300
    DEFAULT_DOT_OFF = 300
    DEFAULT_MIN_CHAR_GAP = 0

    _IDLE, _AWAIT_PARAM, _AWAIT_HI, _AWAIT_LO = range(4)

    def __init__(self):
        self.dot_on = self.DEFAULT_DOT_ON
        self.dot_off = self.DEFAULT_DOT_OFF
        self.min_char_gap = self.DEFAULT_MIN_CHAR_GAP
        self.busy_until = 0
        self.dropped: list[tuple[int, int]] = []  # (byte, at)
        self._mode = self._IDLE
        self._param_id = 0
        self._value_hi = 0
        self._in_digit_run = False

    def feed(self, byte: int, now: int) -> list[ActuationCommand]:
        """Consume one byte at virtual time now; return any commands."""
        if self._mode == self._AWAIT_PARAM:
            self._param_id = byte
            self._mode = self._AWAIT_HI
            return []
        if self._mode == self._AWAIT_HI:
            self._value_hi = byte
            self._mode = self._AWAIT_LO
            return []
        if self._mode == self._AWAIT_LO:
            value = (self._value_hi << 8) | byte
            self._mode = self._IDLE
            name = PARAM_NAMES.get(self._param_id)
            if name is None:
                logger.debug("dropping config frame with unknown id 0x%02x", self._param_id)
                self.dropped.append((self._param_id, now))
            else:
                setattr(self, name, value)
            return []
        if byte == ESCAPE:
            self._mode = self._AWAIT_PARAM
            return []
        return self._feed_data(byte, now)

    def feed_bytes(self, data: Iterable[TimedByte]) -> list[ActuationCommand]:
        commands: list[ActuationCommand] = []
        for tb in data:
            commands.extend(self.feed(tb.value, tb.at))
        return commands

    def feed_chunk(self, chunk: bytes, now: int) -> list[ActuationCommand]:
        """Bytes arriving back to back; identical to feeding them one by one."""
        commands: list[ActuationCommand] = []
        for byte in chunk:
            commands.extend(self.feed(byte, now))
        return commands

    def _feed_data(self, byte: int, now: int) -> list[ActuationCommand]:
        if byte == SPACE_BYTE:
            self._in_digit_run = False  # spaces end digit runs, nothing else
            return []
        char = chr(byte) if 0x20 < byte < 0x7F else None
        cells: list[BrailleCell] = []
        if char in LETTER_TABLE:
            self._in_digit_run = False
            cells.append(LETTER_TABLE[char])
        elif char in DIGIT_TABLE:
            if not self._in_digit_run:
                cells.append(NUMBER_INDICATOR)
                self._in_digit_run = True
            cells.append(DIGIT_TABLE[char])
        else:
            logger.debug("dropping unmapped byte 0x%02x at %d ms", byte, now)
            self.dropped.append((byte, now))
            return []

        commands: list[ActuationCommand] = []
        start = max(now, self.busy_until)
        pitch = self.dot_on + self.dot_off
        for cell in cells:
            for p, dot in enumerate(cell.sorted_dots):
                at = start + p * pitch
                commands.append(SelectChannel(channel=dot - 1, at=at))
                commands.append(TriggerPulse(duration=self.dot_on, at=at))
            start += cell.dot_count * pitch + self.min_char_gap
        self.busy_until = start
        return commands


def pulse_events(commands: Sequence[ActuationCommand]) -> list[VibrationEvent]:
    """Collapse select/pulse pairs into dot vibration events."""
    events: list[VibrationEvent] = []
    selected: SelectChannel | None = None
    for cmd in commands:
        if isinstance(cmd, SelectChannel):
            selected = cmd
        else:
            if selected is None or selected.at != cmd.at:
                raise ValueError("pulse without a matching channel select")
            events.append(
                VibrationEvent(node=selected.channel + 1, start=cmd.at, duration=cmd.duration)
            )
            selected = None
    return events


def link_roundtrip(
    text: str, cfg: TimingConfig = DEFAULT_TIMING
) -> list[ActuationCommand]:
    """Transmit text through a fresh receiver; return its command log.

    The pulse timings in the log replicate schedule_text over the same text
    and config (the select/pulse encoding aside).
    """
    receiver = BandReceiver()
    return receiver.feed_bytes(host_transmit(text, cfg))
