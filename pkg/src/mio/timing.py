"""Compile text, key feedback, cues, and touch recordings into vibration timelines.

A timeline is an alternating ON/OFF segment list in milliseconds, starting and
ending with ON. All functions here are pure; the default unit is 200 ms.
"""

from dataclasses import dataclass
from enum import Enum

from . import codec
from .codec import Token, TokenKind
from .errors import EmptyRecording, InvalidCueIndex

# Touch recordings snap to a 10 ms grid; shorter contacts are finger jitter.
RECORDING_QUANTUM_MS = 10
MIN_PRESS_MS = 30

MAIN_SCREEN_TEXT = "MIO"


@dataclass(frozen=True)
class TimingConfig:
    """Unit length and the fixed feedback/cue durations.

    Dots, dashes and gaps scale with unit_ms; square feedback, the reset cue,
    and activity-entry pulses are fixed millisecond values.
    """

    unit_ms: int = 200
    dot_units: int = 1
    dash_units: int = 3
    intra_letter_gap_units: int = 1
    inter_letter_gap_units: int = 3
    word_gap_units: int = 7
    square_feedback_ms: int = 100
    reset_cue_ms: int = 1200
    cue_pulse_ms: int = 100
    cue_pulse_gap_ms: int = 200

    def __post_init__(self):
        if not 50 <= self.unit_ms <= 1000:
            raise ValueError(f"unit_ms must be within [50, 1000], got {self.unit_ms}")
        for name in (
            "dot_units",
            "dash_units",
            "intra_letter_gap_units",
            "inter_letter_gap_units",
            "word_gap_units",
            "square_feedback_ms",
            "reset_cue_ms",
            "cue_pulse_ms",
            "cue_pulse_gap_ms",
        ):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.dash_units <= self.dot_units:
            raise ValueError("dash_units must exceed dot_units")

    @property
    def dot_ms(self) -> int:
        return self.dot_units * self.unit_ms

    @property
    def dash_ms(self) -> int:
        return self.dash_units * self.unit_ms

    @property
    def intra_letter_gap_ms(self) -> int:
        return self.intra_letter_gap_units * self.unit_ms

    @property
    def inter_letter_gap_ms(self) -> int:
        return self.inter_letter_gap_units * self.unit_ms

    @property
    def word_gap_ms(self) -> int:
        return self.word_gap_units * self.unit_ms


DEFAULT_CONFIG = TimingConfig()


@dataclass(frozen=True)
class Segment:
    on: bool
    ms: int


@dataclass(frozen=True)
class VibrationTimeline:
    """Alternating ON/OFF segments; never starts or ends with silence."""

    segments: tuple[Segment, ...] = ()

    def __post_init__(self):
        for i, seg in enumerate(self.segments):
            if seg.ms <= 0:
                raise ValueError(f"segment {i} has non-positive duration {seg.ms}")
            if i > 0 and seg.on == self.segments[i - 1].on:
                raise ValueError(f"segments {i - 1} and {i} do not alternate")
        if self.segments:
            if not self.segments[0].on:
                raise ValueError("timeline must start with an ON segment")
            if not self.segments[-1].on:
                raise ValueError("timeline must end with an ON segment")

    def __len__(self) -> int:
        return len(self.segments)

    def __bool__(self) -> bool:
        return bool(self.segments)

    @property
    def total_ms(self) -> int:
        return sum(seg.ms for seg in self.segments)

    @property
    def on_count(self) -> int:
        return sum(1 for seg in self.segments if seg.on)

    def to_json(self) -> list[dict]:
        return [{"on": seg.on, "ms": seg.ms} for seg in self.segments]

    @classmethod
    def from_json(cls, data: list[dict]) -> "VibrationTimeline":
        return cls(tuple(Segment(bool(d["on"]), int(d["ms"])) for d in data))


class TimelineBuilder:
    """Accumulates ON/OFF spans, merging runs and dropping leading/trailing silence."""

    def __init__(self):
        self._spans: list[list] = []  # [on, ms] pairs

    def add(self, on: bool, ms: int) -> "TimelineBuilder":
        if ms <= 0:
            return self
        if not self._spans and not on:
            return self  # leading silence is meaningless
        if self._spans and self._spans[-1][0] == on:
            self._spans[-1][1] += ms
        else:
            self._spans.append([on, ms])
        return self

    def on(self, ms: int) -> "TimelineBuilder":
        return self.add(True, ms)

    def off(self, ms: int) -> "TimelineBuilder":
        return self.add(False, ms)

    def build(self) -> VibrationTimeline:
        spans = list(self._spans)
        if spans and not spans[-1][0]:
            spans.pop()  # trailing silence is meaningless to a motor
        return VibrationTimeline(tuple(Segment(on, ms) for on, ms in spans))


def _add_letter(builder: TimelineBuilder, code: codec.MorseCode, cfg: TimingConfig):
    for i, sym in enumerate(code):
        if i > 0:
            builder.off(cfg.intra_letter_gap_ms)
        builder.on(cfg.dot_ms if sym is codec.MorseSymbol.DOT else cfg.dash_ms)


def compile_tokens(tokens: list[Token], cfg: TimingConfig = DEFAULT_CONFIG) -> VibrationTimeline:
    """Expand tokens into a timeline under the gap rules.

    Letters are separated by a 3-unit gap; any run of spaces/newlines replaces
    it with a single 7-unit word gap. Leading/trailing whitespace is dropped.
    """
    builder = TimelineBuilder()
    word_break = False
    seen_letter = False
    for token in tokens:
        if token.is_whitespace:
            word_break = True
            continue
        if seen_letter:
            builder.off(cfg.word_gap_ms if word_break else cfg.inter_letter_gap_ms)
        _add_letter(builder, token.code, cfg)
        seen_letter = True
        word_break = False
    return builder.build()


def compile_text(s: str, cfg: TimingConfig = DEFAULT_CONFIG) -> VibrationTimeline:
    """Compile text straight to a timeline. See compile_tokens for gap rules."""
    return compile_tokens(codec.encode_text(s), cfg)


class FeedbackKey(Enum):
    DOT = "DOT"
    DASH = "DASH"
    SQUARE = "SQUARE"


def key_feedback(key: FeedbackKey, cfg: TimingConfig = DEFAULT_CONFIG) -> VibrationTimeline:
    """The single-pulse haptic acknowledgement for one keypad press."""
    ms = {
        FeedbackKey.DOT: cfg.dot_ms,
        FeedbackKey.DASH: cfg.dash_ms,
        FeedbackKey.SQUARE: cfg.square_feedback_ms,
    }[key]
    return VibrationTimeline((Segment(True, ms),))


class CueKind(Enum):
    RESET = "RESET"
    ACTIVITY_ENTRY = "ACTIVITY_ENTRY"
    MAIN_SCREEN = "MAIN_SCREEN"


def cue(
    kind: CueKind, cfg: TimingConfig = DEFAULT_CONFIG, n: int | None = None
) -> VibrationTimeline:
    """Navigation/feedback cues: the long reset buzz, n entry pulses, or 'MIO'."""
    if kind is CueKind.RESET:
        return VibrationTimeline((Segment(True, cfg.reset_cue_ms),))
    if kind is CueKind.ACTIVITY_ENTRY:
        if n is None or not 1 <= n <= 4:
            raise InvalidCueIndex(f"activity entry cue index must be 1..4, got {n}")
        builder = TimelineBuilder()
        for i in range(n):
            if i > 0:
                builder.off(cfg.cue_pulse_gap_ms)
            builder.on(cfg.cue_pulse_ms)
        return builder.build()
    return compile_text(MAIN_SCREEN_TEXT, cfg)


@dataclass(frozen=True)
class TouchRecording:
    """Raw press intervals (start_ms, end_ms), sorted and non-overlapping."""

    presses: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev_end = None
        for i, (start, end) in enumerate(self.presses):
            if end <= start:
                raise ValueError(f"press {i} must end after it starts")
            if prev_end is not None and start < prev_end:
                raise ValueError(f"press {i} overlaps the previous press")
            prev_end = end


def _quantize(ms: int) -> int:
    # round half up to the 10 ms grid
    return ((ms + RECORDING_QUANTUM_MS // 2) // RECORDING_QUANTUM_MS) * RECORDING_QUANTUM_MS


def compile_recording(rec: TouchRecording) -> VibrationTimeline:
    """Transcribe presses to ON segments and inter-press gaps to OFF segments.

    Durations land on the 10 ms grid (round half up); presses under 30 ms are
    dropped as contact jitter, and gaps that quantize to zero merge the
    neighbouring presses.
    """
    presses = [(s, e) for s, e in rec.presses if e - s >= MIN_PRESS_MS]
    if not presses:
        raise EmptyRecording("recording contains no press of at least 30 ms")
    builder = TimelineBuilder()
    prev_end = None
    for start, end in presses:
        if prev_end is not None:
            builder.off(_quantize(start - prev_end))
        builder.on(_quantize(end - start))
        prev_end = end
    return builder.build()


def timeline_to_presses(tl: VibrationTimeline, start_ms: int = 0) -> TouchRecording:
    """Replay a timeline as the press list that would reproduce it."""
    presses = []
    t = start_ms
    for seg in tl.segments:
        if seg.on:
            presses.append((t, t + seg.ms))
        t += seg.ms
    return TouchRecording(tuple(presses))
