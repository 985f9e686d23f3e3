"""Session state, journaling, and deterministic replay.

Every session appends what happened to a JSON-lines journal (creation,
activity entries, key events). Restarting the service replays the journals,
which reconstructs identical decoder and trainer state: all transitions are
pure functions of the journal, including Words Practice sampling, whose seed
is recorded at entry time.
"""

import json
import random
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path

from . import decoder, trainer
from .analytics import AttemptLog
from .decoder import InputState, KeyEvent
from .errors import MioError
from .settings import Settings
from .timing import TimingConfig, VibrationTimeline
from .trainer import ActivityKind, Curriculum, PracticeSession, SubmitOutcome, SubmitResult


class UnknownSession(MioError):
    """No session with the requested id."""


class OutOfOrderEvent(MioError):
    """An event older than the session's newest event."""


@dataclass
class Session:
    """One user connection: free-text decoding or an active practice session."""

    id: str
    created_at: float
    config: TimingConfig
    suffix_mode: bool = True
    state: InputState = field(default_factory=InputState)  # free-text decoder
    practice: PracticeSession | None = None
    events: list[KeyEvent] = field(default_factory=list)
    last_t: int = 0

    @property
    def committed(self) -> str:
        if self.practice is not None:
            return self.practice.committed
        return self.state.committed

    def snapshot(self) -> dict:
        info = {
            "id": self.id,
            "created_at": self.created_at,
            "unit_ms": self.config.unit_ms,
            "suffix_mode": self.suffix_mode,
            "committed": self.committed,
            "activity": None,
            "prompt": None,
            "prompt_index": None,
            "completed": None,
            "event_count": len(self.events),
        }
        if self.practice is not None:
            p = self.practice
            info.update(
                activity=p.activity.value,
                prompt=None if p.completed else p.prompt,
                prompt_index=p.index + 1,
                completed=p.completed,
            )
        return info


class SessionManager:
    """Creates, journals, replays, and drives sessions."""

    def __init__(self, data_dir: str | Path, settings: Settings | None = None):
        self.data_dir = Path(data_dir)
        self.settings = settings or Settings()
        self.sessions_dir = self.data_dir / "sessions"
        self.sessions_dir.mkdir(parents=True, exist_ok=True)
        log_path = Path(self.settings.log_path)
        if not log_path.is_absolute():
            log_path = self.data_dir / log_path
        self.attempt_log = AttemptLog(log_path)
        self.sessions: dict[str, Session] = {}
        self._replay_all()

    # -- lifecycle ---------------------------------------------------------

    def create(self, unit_ms: int | None = None) -> Session:
        sid = uuid.uuid4().hex
        entry = {
            "type": "created",
            "at": time.time(),
            "unit_ms": unit_ms or self.settings.unit_ms,
            "suffix_mode": self.settings.suffix_mode,
        }
        session = self._apply_created(sid, entry)
        self._journal(sid, entry)
        return session

    def get(self, sid: str) -> Session:
        session = self.sessions.get(sid)
        if session is None:
            raise UnknownSession(sid)
        return session

    def ids(self) -> list[str]:
        return sorted(self.sessions)

    # -- transitions -------------------------------------------------------

    def enter_activity(
        self,
        sid: str,
        kind: ActivityKind,
        *,
        seed: int | None = None,
        word_count: int | None = None,
    ) -> tuple[Session, VibrationTimeline]:
        session = self.get(sid)
        entry = {
            "type": "activity",
            "kind": kind.value,
            "seed": random.randrange(2**32) if seed is None else seed,
            "word_count": word_count or trainer.DEFAULT_WORD_COUNT,
            "at_ms": session.last_t,
        }
        cue = self._apply_activity(session, entry)
        self._journal(sid, entry)
        return session, cue

    def apply_event(self, sid: str, ev: KeyEvent, record_attempts: bool = True) -> dict:
        session = self.get(sid)
        if ev.t < session.last_t:
            raise OutOfOrderEvent(f"event at {ev.t} ms is older than {session.last_t} ms")
        result = self._apply_key(session, ev, record_attempts=record_attempts)
        self._journal(sid, {"type": "key", "t": ev.t, "key": ev.key.value})
        return result

    # -- internals ---------------------------------------------------------

    def _journal_path(self, sid: str) -> Path:
        return self.sessions_dir / f"{sid}.jsonl"

    def _journal(self, sid: str, entry: dict) -> None:
        with open(self._journal_path(sid), "a", encoding="utf-8") as fh:
            fh.write(json.dumps(entry) + "\n")

    def _apply_created(self, sid: str, entry: dict) -> Session:
        session = Session(
            id=sid,
            created_at=float(entry["at"]),
            config=TimingConfig(unit_ms=int(entry["unit_ms"])),
            suffix_mode=bool(entry.get("suffix_mode", True)),
        )
        self.sessions[sid] = session
        return session

    def _activity_curriculum(self, kind: ActivityKind) -> Curriculum | None:
        if kind is ActivityKind.WORDS_PRACTICE and self.settings.word_list_path:
            return trainer.load_word_list(self.settings.word_list_path)
        if kind is ActivityKind.PLAYBACK and self.settings.playback_text_path:
            return trainer.load_word_list(self.settings.playback_text_path)
        return None

    def _apply_activity(self, session: Session, entry: dict) -> VibrationTimeline:
        kind = ActivityKind(entry["kind"])
        practice, cue = trainer.enter_activity(
            kind,
            session.config,
            curriculum=self._activity_curriculum(kind),
            word_count=int(entry["word_count"]),
            seed=int(entry["seed"]),
            suffix_mode=session.suffix_mode,
            session_id=session.id,
            started_at_ms=int(entry.get("at_ms", 0)),
        )
        session.practice = practice
        session.state = InputState()
        return cue

    def _apply_key(self, session: Session, ev: KeyEvent, record_attempts: bool) -> dict:
        if session.practice is not None:
            result = session.practice.submit_event(ev)
            payload = self._result_payload(session, result)
            if result.record is not None and record_attempts:
                self.attempt_log.append(result.record)
        else:
            session.state, effect = decoder.step(session.state, ev, session.config)
            payload = {
                "effect": effect.to_json(),
                "outcome": None,
                "cue": effect.cue.to_json() if effect.cue else None,
                "committed": session.committed,
            }
        session.events.append(ev)
        session.last_t = max(session.last_t, ev.t)
        return payload

    @staticmethod
    def _result_payload(session: Session, result: SubmitResult) -> dict:
        payload = {
            "effect": result.effect.to_json(),
            "outcome": result.outcome.value,
            "cue": result.cue.to_json() if result.cue else None,
            "committed": session.committed,
        }
        if result.outcome in (SubmitOutcome.PROMPT_COMPLETE, SubmitOutcome.SESSION_COMPLETE):
            practice = session.practice
            payload["prompt"] = None if practice.completed else practice.prompt
            payload["completed"] = practice.completed
        return payload

    def _replay_all(self) -> None:
        for path in sorted(self.sessions_dir.glob("*.jsonl")):
            self._replay_journal(path.stem, path)

    def _replay_journal(self, sid: str, path: Path) -> None:
        session = None
        with open(path, encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                entry = json.loads(line)
                if entry["type"] == "created":
                    session = self._apply_created(sid, entry)
                elif entry["type"] == "activity":
                    self._apply_activity(session, entry)
                elif entry["type"] == "key":
                    ev = KeyEvent(decoder.Key(entry["key"]), int(entry["t"]))
                    self._apply_key(session, ev, record_attempts=False)
                else:
                    raise MioError(f"unknown journal entry type {entry['type']!r} in {path}")
