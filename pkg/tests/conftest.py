import string

from hypothesis import strategies as st

from mio import decoder
from mio.decoder import Key, KeyEvent
from mio.timing import DEFAULT_CONFIG, VibrationTimeline

LETTERS = string.ascii_uppercase + string.digits

letter_words = st.text(alphabet=LETTERS, min_size=1, max_size=6)


@st.composite
def typeable_texts(draw, max_words: int = 5) -> str:
    """Texts the keypad can actually produce: no adjacent whitespace."""
    words = draw(st.lists(letter_words, min_size=1, max_size=max_words))
    seps = [draw(st.sampled_from([" ", "\n"])) for _ in range(len(words) - 1)]
    out = words[0]
    for sep, word in zip(seps, words[1:]):
        out += sep + word
    if draw(st.booleans()):
        out = draw(st.sampled_from([" ", "\n"])) + out
    if draw(st.booleans()):
        out = out + draw(st.sampled_from([" ", "\n"]))
    return out


def segs(tl: VibrationTimeline) -> list[tuple[bool, int]]:
    return [(seg.on, seg.ms) for seg in tl.segments]


def on_off(*durations: int) -> list[tuple[bool, int]]:
    """Alternating expected segments starting with ON."""
    return [(i % 2 == 0, ms) for i, ms in enumerate(durations)]


def practice_trace(text: str, start_ms: int = 0, cfg=DEFAULT_CONFIG) -> list[KeyEvent]:
    """Key events that type `text` in a practice activity.

    Unlike a free-text trace, the final letter is committed by an explicit
    square. Timestamps accumulate the per-key feedback durations on top of
    `start_ms`, mirroring a user who types as soon as each buzz ends.
    """
    feedback = {Key.DOT: cfg.dot_ms, Key.DASH: cfg.dash_ms, Key.SQUARE: cfg.square_feedback_ms}
    keys = [ev.key for ev in decoder.canonical_trace(text, cfg)[:-1]]
    keys.append(Key.SQUARE)
    events = []
    t = start_ms
    for key in keys:
        t += feedback[key]
        events.append(KeyEvent(key, t))
    return events
