"""Six-dot braille code for the vibrotactile band.

The band renders one braille cell at a time: dots 1-2-3 run down the left
column, dots 4-5-6 down the right. Letters a-z map to the standard
uncontracted alphabet; digits reuse the a-j patterns behind a number
indicator cell (dots 3,4,5,6) that is emitted once per run of digits.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

VALID_DOTS = frozenset((1, 2, 3, 4, 5, 6))


class UnsupportedCharacter(ValueError):
    """Raised for input characters the band has no cell for."""

    def __init__(self, char: str, position: int | None = None):
        self.char = char
        self.position = position
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unsupported character {char!r}{where}")


class UnknownCell(ValueError):
    """Raised when a dot pattern has no entry in the requested table."""


@dataclass(frozen=True)
class BrailleCell:
    """An immutable set of raised dots, each in 1..6.

    The empty set is the explicit blank cell; it is never produced by the
    text encoder (spaces become word breaks instead).
    """

    dots: frozenset[int]

    def __init__(self, dots: Iterable[int] = ()):
        object.__setattr__(self, "dots", frozenset(dots))
        if not self.dots <= VALID_DOTS:
            bad = sorted(self.dots - VALID_DOTS)
            raise ValueError(f"dot numbers must be in 1..6, got {bad}")

    @property
    def dot_count(self) -> int:
        return len(self.dots)

    @property
    def sorted_dots(self) -> tuple[int, ...]:
        """Dots in ascending order; this is also the actuation order."""
        return tuple(sorted(self.dots))

    def __str__(self) -> str:
        return ",".join(str(d) for d in self.sorted_dots) if self.dots else "blank"


# Standard uncontracted six-dot alphabet.
_LETTER_DOTS: dict[str, tuple[int, ...]] = {
    "a": (1,),
    "b": (1, 2),
    "c": (1, 4),
    "d": (1, 4, 5),
    "e": (1, 5),
    "f": (1, 2, 4),
    "g": (1, 2, 4, 5),
    "h": (1, 2, 5),
    "i": (2, 4),
    "j": (2, 4, 5),
    "k": (1, 3),
    "l": (1, 2, 3),
    "m": (1, 3, 4),
    "n": (1, 3, 4, 5),
    "o": (1, 3, 5),
    "p": (1, 2, 3, 4),
    "q": (1, 2, 3, 4, 5),
    "r": (1, 2, 3, 5),
    "s": (2, 3, 4),
    "t": (2, 3, 4, 5),
    "u": (1, 3, 6),
    "v": (1, 2, 3, 6),
    "w": (2, 4, 5, 6),
    "x": (1, 3, 4, 6),
    "y": (1, 3, 4, 5, 6),
    "z": (1, 3, 5, 6),
}

LETTER_TABLE: dict[str, BrailleCell] = {
    ch: BrailleCell(dots) for ch, dots in _LETTER_DOTS.items()
}

# Digits 1..9,0 borrow the cells of a..j.
_DIGIT_LETTER = {str(i): ch for i, ch in zip(range(1, 10), "abcdefghi")} | {"0": "j"}
DIGIT_TABLE: dict[str, BrailleCell] = {
    digit: LETTER_TABLE[letter] for digit, letter in _DIGIT_LETTER.items()
}

NUMBER_INDICATOR = BrailleCell((3, 4, 5, 6))

# Label used for the number indicator in schedules and dumps.
NUMBER_SIGN = "#"

_CELL_TO_LETTER = {cell.sorted_dots: ch for ch, cell in LETTER_TABLE.items()}
_CELL_TO_DIGIT = {cell.sorted_dots: ch for ch, cell in DIGIT_TABLE.items()}


def encode_char(c: str) -> BrailleCell:
    """Cell for a single lowercase letter or digit.

    Digits return their paired letter's cell; the caller is responsible for
    the number indicator. Space is not a cell: see :func:`encode_text`.
    """
    if len(c) != 1:
        raise UnsupportedCharacter(c)
    if c in LETTER_TABLE:
        return LETTER_TABLE[c]
    if c in DIGIT_TABLE:
        return DIGIT_TABLE[c]
    raise UnsupportedCharacter(c)


def decode_cell(cell: BrailleCell, mode: str = "letter") -> str:
    """Inverse of :func:`encode_char` under the given table.

    mode is "letter" or "digit"; decode_cell(encode_char(c), mode) == c for
    every supported c of that mode.
    """
    if mode == "letter":
        table = _CELL_TO_LETTER
    elif mode == "digit":
        table = _CELL_TO_DIGIT
    else:
        raise ValueError(f"mode must be 'letter' or 'digit', got {mode!r}")
    try:
        return table[cell.sorted_dots]
    except KeyError:
        raise UnknownCell(f"no {mode} has dots {cell}") from None


@dataclass(frozen=True)
class CellToken:
    """One cell to actuate, tagged with the text character it came from.

    The number indicator carries source == NUMBER_SIGN.
    """

    cell: BrailleCell
    source: str


class _WordBreak:
    """Sentinel token separating words; scheduled as a longer silence."""

    def __repr__(self) -> str:
        return "WORD_BREAK"


WORD_BREAK = _WordBreak()

Token = Union[CellToken, _WordBreak]


def encode_text(s: str, on_error: str = "raise") -> list[Token]:
    """Tokenize text into cells and word breaks.

    Input is lowercased first. Each space contributes exactly one word-break
    token (runs of spaces are preserved, not collapsed). A maximal run of
    digits is prefixed with a single number-indicator cell; letters and
    spaces end a run.

    on_error: "raise" (default) fails on the first unsupported character
    with its position; "skip" silently drops it without breaking a
    surrounding digit run.
    """
    if on_error not in ("raise", "skip"):
        raise ValueError(f"on_error must be 'raise' or 'skip', got {on_error!r}")
    tokens: list[Token] = []
    in_digit_run = False
    for pos, ch in enumerate(s.lower()):
        if ch == " ":
            tokens.append(WORD_BREAK)
            in_digit_run = False
        elif ch in LETTER_TABLE:
            tokens.append(CellToken(LETTER_TABLE[ch], ch))
            in_digit_run = False
        elif ch in DIGIT_TABLE:
            if not in_digit_run:
                tokens.append(CellToken(NUMBER_INDICATOR, NUMBER_SIGN))
                in_digit_run = True
            tokens.append(CellToken(DIGIT_TABLE[ch], ch))
        elif on_error == "raise":
            raise UnsupportedCharacter(ch, position=pos)
        # "skip": dropped characters leave digit runs intact
    return tokens


def table_dump() -> str:
    """Human-readable table, one line per character (`a 1`, `q 1,2,3,4,5`)."""
    lines = [f"{ch} {cell}" for ch, cell in LETTER_TABLE.items()]
    lines.append(f"{NUMBER_SIGN} {NUMBER_INDICATOR}")
    lines.extend(f"{digit} {cell}" for digit, cell in DIGIT_TABLE.items())
    return "\n".join(lines)
