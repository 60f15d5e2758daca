"""Shared fixtures for trainer-level tests."""

from __future__ import annotations

from hapticbraille import trainer


def shifted(ch: str) -> str:
    """A letter guaranteed to differ from ch (cyclic next letter)."""
    return chr((ord(ch) - ord("a") + 1) % 26 + ord("a"))


def guess_with_correct(word: str, correct: int) -> str:
    """A guess matching word in exactly `correct` leading positions."""
    assert 0 <= correct <= len(word)
    return word[:correct] + "".join(shifted(c) for c in word[correct:])


def run_engineered_session(
    store: trainer.SessionStore,
    subject: str,
    char_gap: int,
    correct_chars: int,
    words: int = 100,
    word: str = "cat",
) -> trainer.Session:
    """Session whose accuracy is exactly correct_chars / (3 * words).

    Transmits the same word repeatedly and guesses so that the per-character
    correct count lands exactly on target.
    """
    total = words * len(word)
    assert 0 <= correct_chars <= total
    config = trainer.TrialConfig(word_length=len(word), words_per_block=words)
    session = trainer.start_session(store, subject, char_gap, seed=1, config=config)
    full, rem = divmod(correct_chars, len(word))
    for i in range(words):
        record = trainer.transmit_word(store, session.session_id, word)
        if i < full:
            guess = word
        elif i == full and rem:
            guess = guess_with_correct(word, rem)
        else:
            guess = guess_with_correct(word, 0)
        trainer.record_guess(store, session.session_id, record.record_id, guess)
    return session
