"""Parse timed keypad event streams into committed text.

Three keys carry meaning: dot and dash build up the current letter, and the
square key commits it. A run of consecutive squares escalates: the first
commits the buffered letter, the second appends a space, the third swaps that
space for a newline, and any further squares in the run do nothing. Swiping
right-to-left wipes only the uncommitted buffer. Timestamps are recorded for
analytics; they never influence decoding.
"""

import json
from dataclasses import dataclass, replace
from enum import Enum
from pathlib import Path

from . import codec, timing
from .codec import MorseSymbol
from .errors import MalformedStream, UnknownCode, UnsupportedCharacter, UntypeableText
from .timing import CueKind, FeedbackKey, TimingConfig, VibrationTimeline


class Key(Enum):
    DOT = "DOT"
    DASH = "DASH"
    SQUARE = "SQUARE"
    SWIPE_RESET = "SWIPE_RESET"
    TAP_PROMPT = "TAP_PROMPT"
    FINALIZE = "FINALIZE"


@dataclass(frozen=True)
class KeyEvent:
    key: Key
    t: int = 0  # milliseconds, non-decreasing within a stream

    def to_json(self) -> dict:
        return {"t": self.t, "key": self.key.value}

    @classmethod
    def from_json(cls, data: dict) -> "KeyEvent":
        return cls(Key(data["key"]), int(data["t"]))


@dataclass(frozen=True)
class InputState:
    """Decoder state: uncommitted symbol buffer, committed text, square run."""

    buffer: tuple[MorseSymbol, ...] = ()
    committed: str = ""
    square_run: int = 0  # consecutive squares since the last non-square event
    finalized: bool = False


class EffectKind(Enum):
    APPENDED_SYMBOL = "APPENDED_SYMBOL"
    COMMITTED_CHAR = "COMMITTED_CHAR"
    COMMITTED_SPACE = "COMMITTED_SPACE"
    COMMITTED_NEWLINE = "COMMITTED_NEWLINE"
    RESET = "RESET"
    REJECTED = "REJECTED"
    NOOP = "NOOP"


@dataclass(frozen=True)
class DecodeEffect:
    """What one event did, plus the haptic cue that accompanies it."""

    kind: EffectKind
    char: str | None = None
    cue: VibrationTimeline | None = None

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "char": self.char,
            "cue": self.cue.to_json() if self.cue is not None else None,
        }


_FEEDBACK = {Key.DOT: FeedbackKey.DOT, Key.DASH: FeedbackKey.DASH, Key.SQUARE: FeedbackKey.SQUARE}
_SYMBOL = {Key.DOT: MorseSymbol.DOT, Key.DASH: MorseSymbol.DASH}


def _commit_buffer(
    state: InputState, cfg: TimingConfig, square_run: int
) -> tuple[InputState, DecodeEffect]:
    """Commit the buffered letter; reject undecodable buffers with the reset cue."""
    try:
        char = codec.decode_code(state.buffer)
    except UnknownCode:
        rejected = replace(state, buffer=(), square_run=square_run)
        return rejected, DecodeEffect(EffectKind.REJECTED, cue=timing.cue(CueKind.RESET, cfg))
    committed = replace(state, buffer=(), committed=state.committed + char, square_run=square_run)
    cue = timing.key_feedback(FeedbackKey.SQUARE, cfg) if square_run else None
    return committed, DecodeEffect(EffectKind.COMMITTED_CHAR, char=char, cue=cue)


def step(
    state: InputState, ev: KeyEvent, cfg: TimingConfig = timing.DEFAULT_CONFIG
) -> tuple[InputState, DecodeEffect]:
    """Apply one event, returning the new state and exactly one effect."""
    if state.finalized:
        raise MalformedStream(f"event {ev.key.value} after FINALIZE")

    if ev.key in _SYMBOL:
        new = replace(state, buffer=state.buffer + (_SYMBOL[ev.key],), square_run=0)
        cue = timing.key_feedback(_FEEDBACK[ev.key], cfg)
        return new, DecodeEffect(EffectKind.APPENDED_SYMBOL, cue=cue)

    if ev.key is Key.SQUARE:
        square_cue = timing.key_feedback(FeedbackKey.SQUARE, cfg)
        if state.square_run == 0:
            if not state.buffer:
                # nothing buffered: a silent no-op that still advances the run
                return replace(state, square_run=1), DecodeEffect(EffectKind.NOOP, cue=square_cue)
            return _commit_buffer(state, cfg, square_run=1)
        if state.square_run == 1:
            new = replace(state, committed=state.committed + " ", square_run=2)
            return new, DecodeEffect(EffectKind.COMMITTED_SPACE, char=" ", cue=square_cue)
        if state.square_run == 2:
            # the third square retracts the space just entered
            new = replace(state, committed=state.committed[:-1] + "\n", square_run=3)
            return new, DecodeEffect(EffectKind.COMMITTED_NEWLINE, char="\n", cue=square_cue)
        return state, DecodeEffect(EffectKind.NOOP, cue=square_cue)

    if ev.key is Key.SWIPE_RESET:
        new = replace(state, buffer=(), square_run=0)
        return new, DecodeEffect(EffectKind.RESET, cue=timing.cue(CueKind.RESET, cfg))

    if ev.key is Key.TAP_PROMPT:
        # playback is the trainer's concern; here it just breaks a square run
        return replace(state, square_run=0), DecodeEffect(EffectKind.NOOP)

    # FINALIZE: commit any pending letter, then close the stream
    if state.buffer:
        new, effect = _commit_buffer(state, cfg, square_run=0)
        return replace(new, finalized=True), effect
    return replace(state, finalized=True), DecodeEffect(EffectKind.NOOP)


def decode_stream(
    events: list[KeyEvent], cfg: TimingConfig = timing.DEFAULT_CONFIG
) -> tuple[str, list[DecodeEffect]]:
    """Left-fold step over events from the empty state."""
    state = InputState()
    effects = []
    last_t = None
    for ev in events:
        if last_t is not None and ev.t < last_t:
            raise MalformedStream(f"timestamp {ev.t} before {last_t}")
        last_t = ev.t
        state, effect = step(state, ev, cfg)
        effects.append(effect)
    return state.committed, effects


def _feedback_ms(key: Key, cfg: TimingConfig) -> int:
    if key is Key.FINALIZE:
        return 0
    return timing.key_feedback(_FEEDBACK[key], cfg).total_ms


def canonical_trace(s: str, cfg: TimingConfig = timing.DEFAULT_CONFIG) -> list[KeyEvent]:
    """The minimal key sequence that types `s`, ending in FINALIZE.

    Each event is stamped at the completion of its feedback vibration, so a
    trace's final timestamp equals the summed feedback durations. Adjacent
    whitespace is untypeable (a square run yields at most one space or one
    newline) and is rejected up front.
    """
    keys: list[Key] = []
    pending_letter = False
    prev_ws = False
    for i, ch in enumerate(s):
        if ch in (" ", "\n"):
            if prev_ws:
                raise UntypeableText(f"adjacent whitespace at position {i}")
            keys.append(Key.SQUARE)  # commits the pending letter (or opens a run)
            keys.append(Key.SQUARE)  # second in the run: space
            if ch == "\n":
                keys.append(Key.SQUARE)  # third: replace the space
            pending_letter = False
            prev_ws = True
            continue
        folded = ch.upper()
        if folded not in codec.MORSE_TABLE:
            raise UnsupportedCharacter(ch, position=i)
        if pending_letter:
            keys.append(Key.SQUARE)
        for sym in codec.MORSE_TABLE[folded]:
            keys.append(Key.DOT if sym is MorseSymbol.DOT else Key.DASH)
        pending_letter = True
        prev_ws = False
    keys.append(Key.FINALIZE)

    events = []
    t = 0
    for key in keys:
        t += _feedback_ms(key, cfg)
        events.append(KeyEvent(key, t))
    return events


def write_trace(path: str | Path, events: list[KeyEvent]) -> None:
    """Write events as JSON lines: {"t": <ms>, "key": "<KEY>"}."""
    with open(path, "w", encoding="utf-8") as fh:
        for ev in events:
            fh.write(json.dumps(ev.to_json()) + "\n")


def read_trace(path: str | Path) -> list[KeyEvent]:
    """Read a JSON-lines event trace; blank lines are skipped."""
    events = []
    with open(path, encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                data = json.loads(line)
                events.append(KeyEvent.from_json(data))
            except (ValueError, KeyError) as exc:
                raise MalformedStream(f"bad trace line {lineno}: {exc}") from exc
    return events
