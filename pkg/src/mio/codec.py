"""Bidirectional mapping between characters and ITU Morse dot/dash sequences.

The table covers A-Z and 0-9 only. Lowercase input is case-folded; anything
else (punctuation included) raises UnsupportedCharacter.
"""

from dataclasses import dataclass
from enum import Enum

from .errors import UnknownCode, UnsupportedCharacter

DOT_CHAR = "."
DASH_CHAR = "-"


class MorseSymbol(Enum):
    DOT = DOT_CHAR
    DASH = DASH_CHAR


MorseCode = tuple[MorseSymbol, ...]

_NOTATION = {
    "A": ".-",
    "B": "-...",
    "C": "-.-.",
    "D": "-..",
    "E": ".",
    "F": "..-.",
    "G": "--.",
    "H": "....",
    "I": "..",
    "J": ".---",
    "K": "-.-",
    "L": ".-..",
    "M": "--",
    "N": "-.",
    "O": "---",
    "P": ".--.",
    "Q": "--.-",
    "R": ".-.",
    "S": "...",
    "T": "-",
    "U": "..-",
    "V": "...-",
    "W": ".--",
    "X": "-..-",
    "Y": "-.--",
    "Z": "--..",
    "0": "-----",
    "1": ".----",
    "2": "..---",
    "3": "...--",
    "4": "....-",
    "5": ".....",
    "6": "-....",
    "7": "--...",
    "8": "---..",
    "9": "----.",
}


def code_from_notation(notation: str) -> MorseCode:
    """Parse a '.-' style string into a symbol tuple."""
    return tuple(MorseSymbol(ch) for ch in notation)


def notation(code: MorseCode) -> str:
    """Render a symbol tuple as a '.-' style string."""
    return "".join(sym.value for sym in code)


MORSE_TABLE: dict[str, MorseCode] = {
    char: code_from_notation(chars) for char, chars in _NOTATION.items()
}
REVERSE_TABLE: dict[MorseCode, str] = {code: char for char, code in MORSE_TABLE.items()}

ALPHABET = frozenset(MORSE_TABLE)
TEXT_ALPHABET = ALPHABET | {" ", "\n"}


def encode_char(c: str) -> MorseCode:
    """Return the ITU code for a single character (case-folded)."""
    folded = c.upper()
    code = MORSE_TABLE.get(folded)
    if code is None:
        raise UnsupportedCharacter(c)
    return code


def decode_code(code: MorseCode) -> str:
    """Return the unique character whose table entry equals `code`."""
    char = REVERSE_TABLE.get(tuple(code))
    if char is None:
        raise UnknownCode(notation(code))
    return char


class TokenKind(Enum):
    LETTER = "letter"
    SPACE = "space"
    NEWLINE = "newline"


@dataclass(frozen=True)
class Token:
    """One input character, classified and (for letters) encoded."""

    kind: TokenKind
    char: str
    code: MorseCode | None = None

    @property
    def is_whitespace(self) -> bool:
        return self.kind is not TokenKind.LETTER


def encode_text(s: str) -> list[Token]:
    """Tokenize text into letter/space/newline tokens, one per character.

    Raises UnsupportedCharacter with the offending position for anything
    outside A-Z, a-z, 0-9, space, or newline.
    """
    tokens: list[Token] = []
    for i, ch in enumerate(s):
        if ch == " ":
            tokens.append(Token(TokenKind.SPACE, ch))
        elif ch == "\n":
            tokens.append(Token(TokenKind.NEWLINE, ch))
        else:
            folded = ch.upper()
            code = MORSE_TABLE.get(folded)
            if code is None:
                raise UnsupportedCharacter(ch, position=i)
            tokens.append(Token(TokenKind.LETTER, folded, code))
    return tokens


def table_export_text() -> str:
    """The table as machine-readable text: one `<char><TAB><code>` line each."""
    return "".join(f"{char}\t{chars}\n" for char, chars in sorted(_NOTATION.items()))
