"""The four practice activities: prompts, playback, checking, progression.

Words Practice, ABC Practice and Exercise all present a prompt, let the user
tap the top half to feel it, and check every committed character against the
prompt. A wrong commit wipes the input and buzzes for 1200 ms; a completed
prompt advances. Playback just walks a prompt list, emitting each one.
"""

import json
import random
import string
import uuid
from dataclasses import dataclass, field
from enum import Enum
from importlib import resources
from pathlib import Path

from . import decoder, timing
from .analytics import AttemptRecord
from .codec import encode_text
from .decoder import DecodeEffect, EffectKind, InputState, Key, KeyEvent
from .errors import EmptyList, InvalidPrompt, MioError, UnsupportedCharacter
from .timing import CueKind, FeedbackKey, TimingConfig, VibrationTimeline

EXERCISE_FINAL_PROMPT = "THE CAT EATS THE CAKE"

# One letter at a time, then the words, then the growing sentence.
EXERCISE_PROMPTS = (
    "T", "H", "E", "C", "A", "S", "K",
    "THE", "CAT", "EATS", "CAKE",
    "THE CAT", "THE CAT EATS", EXERCISE_FINAL_PROMPT,
)

ALPHABET_PROMPTS = tuple(string.ascii_uppercase)

DEFAULT_WORD_COUNT = 20


class ActivityKind(Enum):
    WORDS_PRACTICE = "WORDS_PRACTICE"
    ABC_PRACTICE = "ABC_PRACTICE"
    EXERCISE = "EXERCISE"
    PLAYBACK = "PLAYBACK"

    @property
    def entry_cue_count(self) -> int:
        return _ENTRY_CUES[self]

    @property
    def is_practice(self) -> bool:
        return self is not ActivityKind.PLAYBACK


_ENTRY_CUES = {
    ActivityKind.WORDS_PRACTICE: 1,
    ActivityKind.EXERCISE: 2,
    ActivityKind.ABC_PRACTICE: 3,
    ActivityKind.PLAYBACK: 4,
}


class CurriculumSource(Enum):
    BUILTIN_ABC = "BUILTIN_ABC"
    BUILTIN_EXERCISE = "BUILTIN_EXERCISE"
    WORD_LIST = "WORD_LIST"
    CUSTOM = "CUSTOM"


@dataclass(frozen=True)
class Curriculum:
    """An ordered, validated prompt sequence and where it came from."""

    prompts: tuple[str, ...]
    source: CurriculumSource = CurriculumSource.CUSTOM
    path: str | None = None

    def __post_init__(self):
        if not self.prompts:
            raise EmptyList("curriculum has no prompts")
        for prompt in self.prompts:
            encode_text(prompt)  # raises UnsupportedCharacter on bad input

    def to_json(self) -> str:
        return json.dumps(list(self.prompts))


def abc_curriculum() -> Curriculum:
    return Curriculum(ALPHABET_PROMPTS, CurriculumSource.BUILTIN_ABC)


def exercise_curriculum() -> Curriculum:
    return Curriculum(EXERCISE_PROMPTS, CurriculumSource.BUILTIN_EXERCISE)


def basic_english_words() -> tuple[str, ...]:
    """The bundled default word list."""
    text = resources.files("mio").joinpath("data/basic_english.txt").read_text("utf-8")
    return tuple(line.strip() for line in text.splitlines() if line.strip())


def load_word_list(path: str | Path) -> Curriculum:
    """Read a UTF-8 word-list or playback-text file, one prompt per line.

    Blank lines are skipped; prompts are upper-cased and must stay inside the
    A-Z/0-9/space alphabet, else InvalidPrompt carries the line number.
    """
    prompts = []
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            try:
                encode_text(line.upper())
            except UnsupportedCharacter as exc:
                raise InvalidPrompt(lineno, line) from exc
            prompts.append(line.upper())
    if not prompts:
        raise EmptyList(f"no prompts in {path}")
    return Curriculum(tuple(prompts), CurriculumSource.WORD_LIST, path=str(path))


def sample_words(
    words: tuple[str, ...], count: int = DEFAULT_WORD_COUNT, seed: int | None = None
) -> tuple[str, ...]:
    """Uniform random draw (with replacement); seed it for reproducible sessions."""
    rng = random.Random(seed)
    return tuple(rng.choice(words) for _ in range(count))


class SubmitOutcome(Enum):
    CONTINUE = "CONTINUE"
    WRONG_RESET = "WRONG_RESET"
    PROMPT_COMPLETE = "PROMPT_COMPLETE"
    SESSION_COMPLETE = "SESSION_COMPLETE"


@dataclass(frozen=True)
class SubmitResult:
    outcome: SubmitOutcome
    effect: DecodeEffect
    cue: VibrationTimeline | None = None
    record: AttemptRecord | None = None


@dataclass
class PracticeSession:
    """Progress through one activity's curriculum."""

    activity: ActivityKind
    curriculum: Curriculum
    config: TimingConfig = timing.DEFAULT_CONFIG
    suffix_mode: bool = True
    session_id: str = field(default_factory=lambda: uuid.uuid4().hex)
    index: int = 0
    state: InputState = field(default_factory=InputState)
    playback_count_current: int = 0
    reset_count_current: int = 0
    prompt_started_at_ms: int = 0
    completed: bool = False

    @property
    def prompt(self) -> str:
        return self.curriculum.prompts[self.index]

    @property
    def committed(self) -> str:
        return self.state.committed

    def play_prompt(self) -> VibrationTimeline:
        """Vibrate the prompt; with suffix mode on, only its untyped remainder."""
        self.playback_count_current += 1
        text = self.prompt
        if self.suffix_mode:
            text = text[len(self.committed):]
        return timing.compile_text(text, self.config)

    def playback_advance(self) -> VibrationTimeline:
        """Move to the next prompt (wrapping) and return its timeline."""
        if self.activity is not ActivityKind.PLAYBACK:
            raise MioError("playback_advance is only valid in the Playback activity")
        self.index = (self.index + 1) % len(self.curriculum.prompts)
        self.playback_count_current = 0
        return timing.compile_text(self.prompt, self.config)

    def submit_event(self, ev: KeyEvent) -> SubmitResult:
        """Feed one key event through the decoder and check progress."""
        if self.completed:
            return SubmitResult(SubmitOutcome.SESSION_COMPLETE, DecodeEffect(EffectKind.NOOP))
        if self.activity is ActivityKind.PLAYBACK:
            return self._playback_event(ev)
        if ev.key is Key.TAP_PROMPT:
            self.state, effect = decoder.step(self.state, ev, self.config)
            return SubmitResult(SubmitOutcome.CONTINUE, effect, cue=self.play_prompt())

        self.state, effect = decoder.step(self.state, ev, self.config)
        if effect.kind is EffectKind.REJECTED:
            return self._wrong_reset(effect)
        if effect.kind in (
            EffectKind.COMMITTED_CHAR,
            EffectKind.COMMITTED_SPACE,
            EffectKind.COMMITTED_NEWLINE,
        ):
            if self.committed == self.prompt:
                return self._complete_prompt(ev, effect)
            if not self.prompt.startswith(self.committed):
                return self._wrong_reset(effect)
        return SubmitResult(SubmitOutcome.CONTINUE, effect, cue=effect.cue)

    def abandon(self, ended_at_ms: int) -> AttemptRecord | None:
        """Close out the current prompt unfinished (activity exit)."""
        if self.completed:
            return None
        return AttemptRecord(
            session_id=self.session_id,
            activity=self.activity.value,
            prompt=self.prompt,
            prompt_index=self.index + 1,
            started_at_ms=self.prompt_started_at_ms,
            ended_at_ms=max(ended_at_ms, self.prompt_started_at_ms),
            success=False,
            playback_count=self.playback_count_current,
            reset_count=self.reset_count_current,
        )

    def _playback_event(self, ev: KeyEvent) -> SubmitResult:
        if ev.key is Key.TAP_PROMPT:
            return SubmitResult(
                SubmitOutcome.CONTINUE, DecodeEffect(EffectKind.NOOP), cue=self.playback_advance()
            )
        if ev.key is Key.SWIPE_RESET:
            effect = DecodeEffect(EffectKind.RESET, cue=timing.cue(CueKind.RESET, self.config))
            return SubmitResult(SubmitOutcome.CONTINUE, effect, cue=effect.cue)
        if ev.key in (Key.DOT, Key.DASH, Key.SQUARE):
            # keys still acknowledge haptically, but nothing is being typed
            cue = timing.key_feedback(FeedbackKey(ev.key.value), self.config)
            return SubmitResult(SubmitOutcome.CONTINUE, DecodeEffect(EffectKind.NOOP, cue=cue), cue=cue)
        return SubmitResult(SubmitOutcome.CONTINUE, DecodeEffect(EffectKind.NOOP))

    def _wrong_reset(self, effect: DecodeEffect) -> SubmitResult:
        self.state = InputState()
        self.reset_count_current += 1
        cue = timing.cue(CueKind.RESET, self.config)
        return SubmitResult(SubmitOutcome.WRONG_RESET, effect, cue=cue)

    def _complete_prompt(self, ev: KeyEvent, effect: DecodeEffect) -> SubmitResult:
        record = AttemptRecord(
            session_id=self.session_id,
            activity=self.activity.value,
            prompt=self.prompt,
            prompt_index=self.index + 1,
            started_at_ms=self.prompt_started_at_ms,
            ended_at_ms=max(ev.t, self.prompt_started_at_ms),
            success=True,
            playback_count=self.playback_count_current,
            reset_count=self.reset_count_current,
        )
        self.state = InputState()
        self.playback_count_current = 0
        self.reset_count_current = 0
        self.prompt_started_at_ms = record.ended_at_ms
        if self.index + 1 >= len(self.curriculum.prompts):
            self.completed = True
            outcome = SubmitOutcome.SESSION_COMPLETE
        else:
            self.index += 1
            outcome = SubmitOutcome.PROMPT_COMPLETE
        return SubmitResult(outcome, effect, cue=effect.cue, record=record)


def enter_activity(
    kind: ActivityKind,
    cfg: TimingConfig = timing.DEFAULT_CONFIG,
    *,
    curriculum: Curriculum | None = None,
    word_count: int = DEFAULT_WORD_COUNT,
    seed: int | None = None,
    suffix_mode: bool = True,
    session_id: str | None = None,
    started_at_ms: int = 0,
) -> tuple[PracticeSession, VibrationTimeline]:
    """Start a fresh session and return it with the activity's entry cue.

    Words Practice samples `word_count` prompts from `curriculum` (default:
    the bundled Basic English list); Playback uses `curriculum` or the
    alphabet; ABC and Exercise always use their built-in sequences.
    """
    if kind is ActivityKind.ABC_PRACTICE:
        chosen = abc_curriculum()
    elif kind is ActivityKind.EXERCISE:
        chosen = exercise_curriculum()
    elif kind is ActivityKind.WORDS_PRACTICE:
        base = curriculum or Curriculum(basic_english_words(), CurriculumSource.WORD_LIST)
        chosen = Curriculum(sample_words(base.prompts, word_count, seed), base.source, base.path)
    else:
        chosen = curriculum or Curriculum(ALPHABET_PROMPTS, CurriculumSource.BUILTIN_ABC)

    session = PracticeSession(
        activity=kind,
        curriculum=chosen,
        config=cfg,
        suffix_mode=suffix_mode,
        prompt_started_at_ms=started_at_ms,
    )
    if session_id is not None:
        session.session_id = session_id
    entry_cue = timing.cue(CueKind.ACTIVITY_ENTRY, cfg, n=kind.entry_cue_count)
    return session, entry_cue


def main_screen_cue(cfg: TimingConfig = timing.DEFAULT_CONFIG) -> VibrationTimeline:
    """Navigating back to the main screen spells the app name in Morse."""
    return timing.cue(CueKind.MAIN_SCREEN, cfg)
