import pytest
from hypothesis import given, strategies as st

from hapticbraille.braille import (
    BrailleCell,
    CellToken,
    DIGIT_TABLE,
    LETTER_TABLE,
    NUMBER_INDICATOR,
    NUMBER_SIGN,
    UnknownCell,
    UnsupportedCharacter,
    WORD_BREAK,
    decode_cell,
    encode_char,
    encode_text,
    table_dump,
)

LETTERS = "abcdefghijklmnopqrstuvwxyz"
DIGITS = "0123456789"


def dots(token):
    return set(token.cell.dots)


class TestCell:
    def test_valid_dots_only(self):
        with pytest.raises(ValueError):
            BrailleCell({0, 1})
        with pytest.raises(ValueError):
            BrailleCell({7})

    def test_blank_cell_allowed(self):
        assert BrailleCell().dot_count == 0
        assert str(BrailleCell()) == "blank"

    def test_sorted_and_str(self):
        cell = BrailleCell({4, 1, 2})
        assert cell.sorted_dots == (1, 2, 4)
        assert str(cell) == "1,2,4"


class TestEncodeChar:
    def test_anchors(self):
        assert encode_char("a").dots == frozenset({1})
        assert encode_char("q").dots == frozenset({1, 2, 3, 4, 5})
        assert encode_char("w").dots == frozenset({2, 4, 5, 6})

    def test_dot_count_anchors(self):
        # these two pin the transfer-rate derivation
        assert encode_char("a").dot_count == 1
        assert encode_char("q").dot_count == 5

    def test_digits_reuse_letter_cells(self):
        for digit, letter in zip("1234567890", "abcdefghij"):
            assert encode_char(digit) == encode_char(letter)

    def test_unsupported(self):
        for bad in ("!", " ", "é", "ab", ""):
            with pytest.raises(UnsupportedCharacter):
                encode_char(bad)

    def test_injective_letters(self):
        cells = {encode_char(c).sorted_dots for c in LETTERS}
        assert len(cells) == 26


class TestDecodeCell:
    @pytest.mark.parametrize("char", list(LETTERS))
    def test_letter_round_trip(self, char):
        assert decode_cell(encode_char(char), "letter") == char

    @pytest.mark.parametrize("digit", list(DIGITS))
    def test_digit_round_trip(self, digit):
        assert decode_cell(encode_char(digit), "digit") == digit

    def test_examples(self):
        assert decode_cell(BrailleCell({1}), "letter") == "a"
        assert decode_cell(BrailleCell({2, 4, 5}), "digit") == "0"

    def test_full_cell_is_no_letter(self):
        with pytest.raises(UnknownCell):
            decode_cell(BrailleCell({1, 2, 3, 4, 5, 6}), "letter")

    def test_bad_mode(self):
        with pytest.raises(ValueError):
            decode_cell(BrailleCell({1}), "words")


class TestEncodeText:
    def test_cat(self):
        tokens = encode_text("cat")
        assert [dots(t) for t in tokens] == [{1, 4}, {1}, {2, 3, 4, 5}]
        assert [t.source for t in tokens] == ["c", "a", "t"]

    def test_empty(self):
        assert encode_text("") == []

    def test_mixed_with_digit_run(self):
        tokens = encode_text("a 12")
        assert tokens[0] == CellToken(BrailleCell({1}), "a")
        assert tokens[1] is WORD_BREAK
        assert tokens[2] == CellToken(NUMBER_INDICATOR, NUMBER_SIGN)
        assert dots(tokens[3]) == {1}
        assert dots(tokens[4]) == {1, 2}
        assert len(tokens) == 5

    def test_one_indicator_per_run(self):
        tokens = encode_text("12a3")
        sources = [getattr(t, "source", " ") for t in tokens]
        assert sources == [NUMBER_SIGN, "1", "2", "a", NUMBER_SIGN, "3"]

    def test_space_breaks_digit_run(self):
        sources = [getattr(t, "source", " ") for t in encode_text("1 2")]
        assert sources == [NUMBER_SIGN, "1", " ", NUMBER_SIGN, "2"]

    def test_uppercase_normalized(self):
        assert encode_text("CAT") == encode_text("cat")

    def test_spaces_not_collapsed(self):
        tokens = encode_text("a  b")
        assert tokens[1] is WORD_BREAK and tokens[2] is WORD_BREAK
        assert len(tokens) == 4

    def test_strict_error_carries_position(self):
        with pytest.raises(UnsupportedCharacter) as excinfo:
            encode_text("ab!cd")
        assert excinfo.value.position == 2
        assert excinfo.value.char == "!"

    def test_skip_policy_drops_and_keeps_run(self):
        sources = [getattr(t, "source", " ") for t in encode_text("1!2", on_error="skip")]
        assert sources == [NUMBER_SIGN, "1", "2"]

    def test_bad_policy(self):
        with pytest.raises(ValueError):
            encode_text("a", on_error="ignore")

    @given(st.text(alphabet=LETTERS + DIGITS + " ", max_size=40))
    def test_word_breaks_match_spaces(self, text):
        tokens = encode_text(text)
        assert sum(1 for t in tokens if t is WORD_BREAK) == text.count(" ")

    @given(st.text(alphabet=LETTERS + DIGITS, min_size=1, max_size=40))
    def test_no_breaks_without_spaces(self, text):
        tokens = encode_text(text)
        assert all(isinstance(t, CellToken) for t in tokens)
        # cells decode back to the input, indicator cells aside
        chars = [t.source for t in tokens if t.source != NUMBER_SIGN]
        assert "".join(chars) == text


class TestTableDump:
    def test_examples_present(self):
        dump = table_dump().splitlines()
        assert "a 1" in dump
        assert "q 1,2,3,4,5" in dump
        assert f"{NUMBER_SIGN} 3,4,5,6" in dump

    def test_one_line_per_character(self):
        assert len(table_dump().splitlines()) == len(LETTER_TABLE) + 1 + len(DIGIT_TABLE)
