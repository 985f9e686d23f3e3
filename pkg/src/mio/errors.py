"""Exception types shared across the engine."""


class MioError(Exception):
    """Base class for all engine errors."""


class UnsupportedCharacter(MioError):
    """A character outside the A-Z / 0-9 / space / newline alphabet."""

    def __init__(self, char: str, position: int | None = None):
        self.char = char
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unsupported character {char!r}{where}")


class UnknownCode(MioError):
    """A dot/dash sequence that matches no table entry."""

    def __init__(self, notation: str):
        self.notation = notation
        super().__init__(f"no character has code {notation!r}")


class InvalidCueIndex(MioError):
    """Activity-entry cue index outside 1..4."""


class EmptyRecording(MioError):
    """A touch recording with no usable presses."""


class MalformedStream(MioError):
    """An event stream that violates ordering or finalization rules."""


class UntypeableText(MioError):
    """Text that no key sequence can produce (adjacent whitespace)."""


class InvalidPrompt(MioError):
    """A word-list line containing characters outside the alphabet."""

    def __init__(self, line_number: int, line: str):
        self.line_number = line_number
        self.line = line
        super().__init__(f"invalid prompt on line {line_number}: {line!r}")


class EmptyList(MioError):
    """A word-list file with no usable prompts."""


class InsufficientData(MioError):
    """Fewer than three points supplied to the regression."""


class DegeneratePredictor(MioError):
    """Regression predictor with zero variance."""


class OutOfRangeItem(MioError):
    """A questionnaire item outside the 1..5 Likert range."""


class IoFailure(MioError):
    """Underlying I/O error while reading or writing a store."""


class MalformedRecord(MioError):
    """A log line that does not parse as an attempt record."""

    def __init__(self, line_number: int, reason: str):
        self.line_number = line_number
        self.reason = reason
        super().__init__(f"malformed record on line {line_number}: {reason}")
