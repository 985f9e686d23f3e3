"""Attempt logging, learning-curve regression, SUS scoring, and throughput.

Logs are JSON lines, one attempt per line, in append order. The regression is
ordinary least squares with an exact two-sided t-test on the slope.
"""

import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from scipy import stats

from . import timing
from .errors import (
    DegeneratePredictor,
    InsufficientData,
    IoFailure,
    MalformedRecord,
    OutOfRangeItem,
)
from .timing import TimingConfig

# Relative letter frequencies in English running text, used to weight the
# throughput estimate toward realistic input.
LETTER_FREQUENCIES = {
    "E": 12.70, "T": 9.06, "A": 8.17, "O": 7.51, "I": 6.97, "N": 6.75,
    "S": 6.33, "H": 6.09, "R": 5.99, "D": 4.25, "L": 4.03, "C": 2.78,
    "U": 2.76, "M": 2.41, "W": 2.36, "F": 2.23, "G": 2.02, "Y": 1.97,
    "P": 1.93, "B": 1.49, "V": 0.98, "K": 0.77, "J": 0.15, "X": 0.15,
    "Q": 0.10, "Z": 0.07,
}


@dataclass(frozen=True)
class AttemptRecord:
    """One prompt attempt: timing, outcome, and interaction counters."""

    session_id: str
    activity: str
    prompt: str
    prompt_index: int  # 1-based, strictly increasing within a session
    started_at_ms: int
    ended_at_ms: int
    success: bool
    playback_count: int = 0
    reset_count: int = 0

    def __post_init__(self):
        if self.ended_at_ms < self.started_at_ms:
            raise ValueError("attempt cannot end before it starts")
        if self.prompt_index < 1:
            raise ValueError("prompt_index is 1-based")

    def to_json(self) -> dict:
        return {
            "session_id": self.session_id,
            "activity": self.activity,
            "prompt": self.prompt,
            "prompt_index": self.prompt_index,
            "started_at_ms": self.started_at_ms,
            "ended_at_ms": self.ended_at_ms,
            "success": self.success,
            "playback_count": self.playback_count,
            "reset_count": self.reset_count,
        }

    @classmethod
    def from_json(cls, data: dict) -> "AttemptRecord":
        return cls(
            session_id=str(data["session_id"]),
            activity=str(data["activity"]),
            prompt=str(data["prompt"]),
            prompt_index=int(data["prompt_index"]),
            started_at_ms=int(data["started_at_ms"]),
            ended_at_ms=int(data["ended_at_ms"]),
            success=bool(data["success"]),
            playback_count=int(data.get("playback_count", 0)),
            reset_count=int(data.get("reset_count", 0)),
        )


def time_to_enter(rec: AttemptRecord) -> float:
    """Seconds spent on the attempt."""
    return (rec.ended_at_ms - rec.started_at_ms) / 1000.0


class AttemptLog:
    """Append-only JSON-lines store of attempt records."""

    def __init__(self, path: str | Path):
        self.path = Path(path)

    def append(self, rec: AttemptRecord) -> None:
        try:
            self.path.parent.mkdir(parents=True, exist_ok=True)
            with open(self.path, "a", encoding="utf-8") as fh:
                fh.write(json.dumps(rec.to_json()) + "\n")
        except OSError as exc:
            raise IoFailure(f"cannot append to {self.path}: {exc}") from exc

    def read(self) -> tuple[list[AttemptRecord], list[MalformedRecord]]:
        """All parseable records in append order, plus per-line parse failures."""
        if not self.path.exists():
            return [], []
        records: list[AttemptRecord] = []
        malformed: list[MalformedRecord] = []
        try:
            with open(self.path, encoding="utf-8") as fh:
                lines = fh.readlines()
        except OSError as exc:
            raise IoFailure(f"cannot read {self.path}: {exc}") from exc
        for lineno, line in enumerate(lines, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                records.append(AttemptRecord.from_json(json.loads(line)))
            except (ValueError, KeyError, TypeError) as exc:
                malformed.append(MalformedRecord(lineno, str(exc)))
        return records, malformed


def append_log(store: AttemptLog, rec: AttemptRecord) -> None:
    store.append(rec)


def read_log(store: AttemptLog) -> tuple[list[AttemptRecord], list[MalformedRecord]]:
    return store.read()


@dataclass(frozen=True)
class RegressionResult:
    slope: float
    intercept: float
    r_squared: float
    p_value: float
    n: int
    perfect_fit: bool = False


def ols_regression(points: list[tuple[float, float]]) -> RegressionResult:
    """Ordinary least squares y = a + b*x with an exact slope t-test.

    The two-sided p-value uses the t distribution with n-2 degrees of freedom.
    When the points sit exactly on one line the t statistic degenerates: a
    sloped perfect fit clamps the p-value to the smallest positive float, a
    flat one keeps p=1 (the data cannot contradict a zero slope); both are
    flagged as perfect fits.
    """
    n = len(points)
    if n < 3:
        raise InsufficientData(f"need at least 3 points, got {n}")
    xs = [float(x) for x, _ in points]
    ys = [float(y) for _, y in points]
    x_mean = sum(xs) / n
    if all(x == x_mean for x in xs):
        raise DegeneratePredictor("predictor values are constant")

    fit = stats.linregress(xs, ys)
    slope, intercept = float(fit.slope), float(fit.intercept)

    y_mean = sum(ys) / n
    total_ss = sum((y - y_mean) ** 2 for y in ys)
    residual_ss = sum((y - (intercept + slope * x)) ** 2 for x, y in zip(xs, ys))
    if total_ss == 0.0:
        return RegressionResult(slope, intercept, 1.0, 1.0, n, perfect_fit=True)
    if residual_ss <= total_ss * 1e-12:
        p_clamped = sys.float_info.min if slope != 0.0 else 1.0
        return RegressionResult(slope, intercept, 1.0, p_clamped, n, perfect_fit=True)

    r_squared = min(1.0, max(0.0, 1.0 - residual_ss / total_ss))
    p_value = min(1.0, max(float(fit.pvalue), sys.float_info.min))
    return RegressionResult(slope, intercept, r_squared, p_value, n)


def regression_points(records: list[AttemptRecord]) -> list[tuple[float, float]]:
    """(prompt index, seconds) pairs for successful attempts only."""
    return [
        (float(rec.prompt_index), time_to_enter(rec))
        for rec in records
        if rec.success
    ]


def learning_curve(records: list[AttemptRecord]) -> RegressionResult:
    """Regress time-to-enter on prompt index across successful attempts."""
    return ols_regression(regression_points(records))


def sus_score(items: list[int]) -> float:
    """Standard SUS: odd items score (item-1), even items (5-item), sum x 2.5."""
    if len(items) != 10:
        raise OutOfRangeItem(f"SUS needs exactly 10 items, got {len(items)}")
    total = 0
    for i, item in enumerate(items, start=1):
        if not isinstance(item, int) or not 1 <= item <= 5:
            raise OutOfRangeItem(f"item {i} must be an integer in 1..5, got {item!r}")
        total += (item - 1) if i % 2 == 1 else (5 - item)
    return total * 2.5


def throughput_cpm(s: str, cfg: TimingConfig = timing.DEFAULT_CONFIG) -> float:
    """Characters per minute for emitting `s` as vibrations.

    Cost per text is its timeline duration plus one trailing inter-letter gap,
    so each character amortizes the gap that follows it; every character of
    `s` (whitespace included) counts toward the numerator.
    """
    if not s:
        raise ValueError("text must be non-empty")
    total_ms = timing.compile_text(s, cfg).total_ms + cfg.inter_letter_gap_ms
    return len(s) / (total_ms / 60_000.0)


def frequency_weighted_text(length: int = 1000) -> str:
    """Deterministic letters-only text with English letter proportions.

    Letter counts are frequencies scaled to roughly `length` characters
    (every letter appears at least once), most frequent first.
    """
    parts = []
    for char, freq in sorted(LETTER_FREQUENCIES.items(), key=lambda kv: -kv[1]):
        parts.append(char * max(1, round(freq * length / 100)))
    return "".join(parts)


def attempt_times_csv(records: list[AttemptRecord]) -> str:
    """Per-attempt CSV (session, prompt index, seconds) for external plotting."""
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["session_id", "prompt_index", "seconds"])
    for rec in records:
        if rec.success:
            writer.writerow([rec.session_id, rec.prompt_index, f"{time_to_enter(rec):.3f}"])
    return buf.getvalue()
