"""Vibrotactile Morse text engine.

Compiles text to millisecond vibration timelines, decodes timed three-key
input streams, runs the practice activities, and analyzes session logs.
"""

from .codec import MorseSymbol, decode_code, encode_char, encode_text
from .decoder import InputState, Key, KeyEvent, canonical_trace, decode_stream, step
from .timing import (
    DEFAULT_CONFIG,
    CueKind,
    FeedbackKey,
    Segment,
    TimingConfig,
    TouchRecording,
    VibrationTimeline,
    compile_recording,
    compile_text,
    cue,
    key_feedback,
)
from .trainer import ActivityKind, Curriculum, PracticeSession, enter_activity

__version__ = "0.1.0"

__all__ = [
    "ActivityKind",
    "CueKind",
    "Curriculum",
    "DEFAULT_CONFIG",
    "FeedbackKey",
    "InputState",
    "Key",
    "KeyEvent",
    "MorseSymbol",
    "PracticeSession",
    "Segment",
    "TimingConfig",
    "TouchRecording",
    "VibrationTimeline",
    "canonical_trace",
    "compile_recording",
    "compile_text",
    "cue",
    "decode_code",
    "decode_stream",
    "encode_char",
    "encode_text",
    "enter_activity",
    "key_feedback",
    "step",
    "__version__",
]
