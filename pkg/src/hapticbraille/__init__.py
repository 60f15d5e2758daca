"""Haptic braille band toolkit.

Encode text to six-dot braille, schedule the band's vibrations, run the
host/device byte link against an emulated band, and reproduce the
reading-speed statistics pipeline (one-way ANOVA plus Bonferroni/Holm
post-hoc tests). A trainer service and CLI drive human reading experiments.
"""

from .braille import (
    BrailleCell,
    CellToken,
    NUMBER_INDICATOR,
    UnknownCell,
    UnsupportedCharacter,
    WORD_BREAK,
    decode_cell,
    encode_char,
    encode_text,
    table_dump,
)
from .emulator import (
    BandGeometry,
    MalformedCommandStream,
    MotorTimeline,
    apply_commands,
    timeline_summary,
    validate_geometry,
)
from .link import (
    BandReceiver,
    SelectChannel,
    TimedByte,
    TriggerPulse,
    VirtualClock,
    host_transmit,
    link_roundtrip,
    pulse_events,
)
from .stats import (
    AnovaResult,
    DegenerateData,
    PairwiseResult,
    SampleSummary,
    anova_from_raw,
    anova_from_summary,
    pairwise_vs_reference,
    t_sf,
    usability_mean,
)
from .timing import (
    EmptyCell,
    Schedule,
    TimingConfig,
    VibrationEvent,
    ctr_average,
    ctr_char,
    ctr_range,
    schedule_char,
    schedule_text,
)

__version__ = "0.1.0"

__all__ = [
    "BandGeometry",
    "BandReceiver",
    "AnovaResult",
    "BrailleCell",
    "CellToken",
    "DegenerateData",
    "EmptyCell",
    "MalformedCommandStream",
    "MotorTimeline",
    "NUMBER_INDICATOR",
    "PairwiseResult",
    "SampleSummary",
    "Schedule",
    "SelectChannel",
    "TimedByte",
    "TimingConfig",
    "TriggerPulse",
    "UnknownCell",
    "UnsupportedCharacter",
    "VibrationEvent",
    "VirtualClock",
    "WORD_BREAK",
    "anova_from_raw",
    "anova_from_summary",
    "apply_commands",
    "ctr_average",
    "ctr_char",
    "ctr_range",
    "decode_cell",
    "encode_char",
    "encode_text",
    "host_transmit",
    "link_roundtrip",
    "pairwise_vs_reference",
    "pulse_events",
    "schedule_char",
    "schedule_text",
    "t_sf",
    "table_dump",
    "timeline_summary",
    "usability_mean",
    "validate_geometry",
]
