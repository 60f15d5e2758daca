"""Human-in-the-loop reading trainer: sessions, scoring, persistence, reports.

A session fixes one subject and one character gap. The operator transmits
three-letter words through the link and band emulator; the subject types
back what they felt; scoring is per-character positional match. Session
accuracy is correct characters over scored characters, in percent, which is
what the reading-speed statistics consume (one accuracy value per session).

Sessions persist as append-only JSON-lines files, one per session, so a
store can be reloaded and replayed byte-for-byte.
"""

from __future__ import annotations

import json
import random
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path

from .braille import encode_text
from .emulator import apply_commands, timeline_to_dict
from .link import link_roundtrip
from .stats import (
    AnovaResult,
    PairwiseResult,
    SampleSummary,
    anova_from_summary,
    pairwise_vs_reference,
    pick_reference,
    summarize,
    usability_mean,
)
from .timing import TimingConfig, schedule_text, schedule_to_dict


class SessionClosed(RuntimeError):
    pass


class UnknownSession(KeyError):
    pass


class UnknownRecord(KeyError):
    pass


class LengthMismatch(ValueError):
    pass


class AlreadyScored(RuntimeError):
    pass


class InsufficientData(ValueError):
    pass


DEFAULT_GAP_SCHEDULE = (2000, 1500, 1200, 1000, 800, 500, 400)

# Common three-letter words; lowercase letters only so every word encodes.
WORD_CORPUS = (
    "ace act add age ago aid aim air all and ant any ape apt arc are arm art "
    "ash ask ate axe bad bag ban bar bat bay bed bee beg bet bid big bin bit "
    "bog bow box boy bud bug bun bus but buy cab can cap car cat cow cry cub "
    "cup cut dad dam day den dew did dig dim dip dog dot dry dug ear eat egg "
    "ego elf elk elm end era eve eye fan far fat fee few fig fin fit fix flu "
    "fly fog for fox fun fur gap gas gem get got gum gut guy gym had ham has "
    "hat hay hen her hid him hip his hit hog hop hot how hub hue hug hut ice "
    "ill ink inn ion its ivy jam jar jaw jet jig job jog joy jug keg key kid "
    "kin kit lab lad lag lap law lay leg let lid lie lip lit log lot low mad "
    "man map mat may men met mix mob mop mud mug nap net new nod not now nut "
    "oak odd off oil old one orb our out owl own pad pan paw pea pen pet pie "
    "pig pin pit pod pot pub pun pup put rag ram ran rat raw ray red rib rid "
    "rim rip rob rod rot row rub rug run rut sad sat saw say sea see set she "
    "shy sip sir sit six ski sky sly sob son sow soy spa spy sum sun tab tag "
    "tan tap tar tax tea ten the tie tin tip toe ton top toy try tub tug two "
    "use van vat vet vow wag war was wax way web wed wet who why wig win wit "
    "won yak yam yes yet you zoo"
).split()


@dataclass(frozen=True)
class TrialConfig:
    word_length: int = 3
    words_per_block: int = 10
    gap_schedule: tuple[int, ...] = DEFAULT_GAP_SCHEDULE
    familiarization_minutes: int = 15  # informational; subjects get no training

    def __post_init__(self):
        if self.word_length < 1 or self.words_per_block < 1:
            raise ValueError("word_length and words_per_block must be >= 1")
        if any(g <= 0 for g in self.gap_schedule):
            raise ValueError("gaps must be positive")
        if len(set(self.gap_schedule)) != len(self.gap_schedule):
            raise ValueError("gaps must be distinct")


@dataclass
class WordRecord:
    record_id: str
    word: str
    schedule: dict
    timeline: dict
    sent_at: float
    guess: str | None = None
    per_char_correct: list[bool] | None = None
    guessed_at: float | None = None

    @property
    def scored(self) -> bool:
        return self.guess is not None

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "word": self.word,
            "schedule": self.schedule,
            "timeline": self.timeline,
            "sent_at": self.sent_at,
            "guess": self.guess,
            "per_char_correct": self.per_char_correct,
            "guessed_at": self.guessed_at,
        }


@dataclass
class Session:
    session_id: str
    subject: str
    char_gap: int
    seed: int
    word_plan: list[str]
    config: TrialConfig = field(default_factory=TrialConfig)
    records: list[WordRecord] = field(default_factory=list)
    rating: float | None = None
    status: str = "active"

    @property
    def accuracy_pct(self) -> float | None:
        """Correct characters over scored characters, or None before scoring."""
        scored = [r for r in self.records if r.scored]
        if not scored:
            return None
        total = sum(len(r.word) for r in scored)
        correct = sum(sum(r.per_char_correct) for r in scored)
        return 100.0 * correct / total

    def record(self, record_id: str) -> WordRecord:
        for r in self.records:
            if r.record_id == record_id:
                return r
        raise UnknownRecord(record_id)

    def to_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "subject": self.subject,
            "char_gap": self.char_gap,
            "seed": self.seed,
            "status": self.status,
            "rating": self.rating,
            "accuracy_pct": self.accuracy_pct,
            "records": [r.to_dict() for r in self.records],
            "config": {
                "word_length": self.config.word_length,
                "words_per_block": self.config.words_per_block,
                "gap_schedule": list(self.config.gap_schedule),
            },
        }


class SessionStore:
    """Session registry, optionally persisted as one JSONL file per session.

    With root=None everything stays in memory. Mutations on a persisted
    session append one event line; loading replays the events. Per-session
    locks serialize mutation (the concurrency contract for the service).
    """

    def __init__(self, root: str | Path | None = None):
        self.root = Path(root) if root is not None else None
        if self.root is not None:
            self.root.mkdir(parents=True, exist_ok=True)
        self._sessions: dict[str, Session] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()
        if self.root is not None:
            for path in sorted(self.root.glob("*.jsonl")):
                session = _replay_events(path)
                self._sessions[session.session_id] = session

    def lock(self, session_id: str) -> threading.Lock:
        with self._registry_lock:
            return self._locks.setdefault(session_id, threading.Lock())

    def next_id(self) -> str:
        with self._registry_lock:
            return f"s{len(self._sessions) + 1:04d}"

    def add(self, session: Session) -> None:
        self._sessions[session.session_id] = session

    def get(self, session_id: str) -> Session:
        try:
            return self._sessions[session_id]
        except KeyError:
            raise UnknownSession(session_id) from None

    def sessions(self) -> list[Session]:
        return list(self._sessions.values())

    def append_event(self, session_id: str, event: dict) -> None:
        if self.root is None:
            return
        with open(self.root / f"{session_id}.jsonl", "a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, sort_keys=True) + "\n")


def _replay_events(path: Path) -> Session:
    session: Session | None = None
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            event = json.loads(line)
            kind = event["event"]
            if kind == "start":
                session = Session(
                    session_id=event["session_id"],
                    subject=event["subject"],
                    char_gap=event["char_gap"],
                    seed=event["seed"],
                    word_plan=event["word_plan"],
                    config=TrialConfig(
                        word_length=event["word_length"],
                        words_per_block=event["words_per_block"],
                        gap_schedule=tuple(event["gap_schedule"]),
                    ),
                )
            elif session is None:
                raise ValueError(f"{path}: event before session start")
            elif kind == "transmit":
                session.records.append(
                    WordRecord(
                        record_id=event["record_id"],
                        word=event["word"],
                        schedule=event["schedule"],
                        timeline=event["timeline"],
                        sent_at=event["sent_at"],
                    )
                )
            elif kind == "guess":
                record = session.record(event["record_id"])
                record.guess = event["guess"]
                record.per_char_correct = event["per_char_correct"]
                record.guessed_at = event["guessed_at"]
            elif kind == "rating":
                session.rating = event["rating"]
            elif kind == "close":
                session.status = "closed"
            else:
                raise ValueError(f"{path}: unknown event {kind!r}")
    if session is None:
        raise ValueError(f"{path}: empty session file")
    return session


def start_session(
    store: SessionStore,
    subject: str,
    char_gap: int,
    seed: int | None = None,
    config: TrialConfig | None = None,
) -> Session:
    """Create and persist a session with a seeded word plan."""
    if char_gap <= 0:
        raise ValueError("char_gap must be positive")
    config = config or TrialConfig()
    if seed is None:
        seed = random.randrange(2**31)
    rng = random.Random(seed)
    corpus = [w for w in WORD_CORPUS if len(w) == config.word_length]
    # lengths outside the corpus leave the plan empty; every transmit then
    # needs an explicit word
    word_plan = [rng.choice(corpus) for _ in range(config.words_per_block)] if corpus else []
    session = Session(
        session_id=store.next_id(),
        subject=subject,
        char_gap=char_gap,
        seed=seed,
        word_plan=word_plan,
        config=config,
    )
    store.add(session)
    store.append_event(
        session.session_id,
        {
            "event": "start",
            "session_id": session.session_id,
            "subject": subject,
            "char_gap": char_gap,
            "seed": seed,
            "word_plan": word_plan,
            "word_length": config.word_length,
            "words_per_block": config.words_per_block,
            "gap_schedule": list(config.gap_schedule),
        },
    )
    return session


def transmit_word(store: SessionStore, session_id: str, word: str | None = None) -> WordRecord:
    """Drive one word through link and emulator; store its pulse timeline.

    word=None takes the next word from the session's seeded plan.
    """
    session = store.get(session_id)
    if session.status != "active":
        raise SessionClosed(session_id)
    if word is None:
        index = len(session.records)
        if index >= len(session.word_plan):
            raise ValueError("word plan exhausted; pass an explicit word")
        word = session.word_plan[index]
    word = word.lower()
    if len(word) != session.config.word_length:
        raise LengthMismatch(
            f"word {word!r} does not have length {session.config.word_length}"
        )
    cfg = TimingConfig(char_gap=session.char_gap)
    schedule = schedule_text(encode_text(word), cfg)
    timeline = apply_commands(link_roundtrip(word, cfg), span_ms=schedule.total_duration)
    record = WordRecord(
        record_id=f"r{len(session.records) + 1:03d}",
        word=word,
        schedule=schedule_to_dict(schedule),
        timeline=timeline_to_dict(timeline),
        sent_at=time.time(),
    )
    session.records.append(record)
    store.append_event(
        session_id,
        {"event": "transmit", "sent_at": record.sent_at, **{
            "record_id": record.record_id,
            "word": record.word,
            "schedule": record.schedule,
            "timeline": record.timeline,
        }},
    )
    return record


def record_guess(store: SessionStore, session_id: str, record_id: str, guess: str) -> WordRecord:
    """Score a guess positionally against the transmitted word."""
    session = store.get(session_id)
    if session.status != "active":
        raise SessionClosed(session_id)
    record = session.record(record_id)
    if record.scored:
        raise AlreadyScored(record_id)
    guess = guess.lower()
    if len(guess) != len(record.word):
        raise LengthMismatch(
            f"guess {guess!r} has length {len(guess)}, word has {len(record.word)}"
        )
    # per_char_correct first: report snapshots treat a set guess as scored
    record.per_char_correct = [g == w for g, w in zip(guess, record.word)]
    record.guessed_at = time.time()
    record.guess = guess
    store.append_event(
        session_id,
        {
            "event": "guess",
            "record_id": record_id,
            "guess": guess,
            "per_char_correct": record.per_char_correct,
            "guessed_at": record.guessed_at,
        },
    )
    return record


def set_rating(store: SessionStore, session_id: str, rating: float) -> Session:
    session = store.get(session_id)
    if not 0.0 <= rating <= 10.0:
        raise ValueError(f"rating {rating} outside 0..10")
    session.rating = rating
    store.append_event(session_id, {"event": "rating", "rating": rating})
    return session


def close_session(store: SessionStore, session_id: str) -> Session:
    session = store.get(session_id)
    session.status = "closed"
    store.append_event(session_id, {"event": "close"})
    return session


@dataclass(frozen=True)
class GapStats:
    gap_ms: int
    n: int
    mean: float
    sd: float | None  # None with a single session


@dataclass(frozen=True)
class Report:
    gap_stats: list[GapStats]
    summaries: list[SampleSummary]
    anova: AnovaResult | None
    anova_note: str | None
    reference: int | None
    pairwise: list[PairwiseResult]
    usability: float | None

    def to_dict(self) -> dict:
        return {
            "gaps": [
                {"gap_ms": g.gap_ms, "n": g.n, "mean": g.mean, "sd": g.sd}
                for g in self.gap_stats
            ],
            "anova": None
            if self.anova is None
            else {
                "ss_treatment": self.anova.ss_treatment,
                "ss_error": self.anova.ss_error,
                "ss_total": self.anova.ss_total,
                "df_treatment": self.anova.df_treatment,
                "df_error": self.anova.df_error,
                "ms_treatment": self.anova.ms_treatment,
                "ms_error": self.anova.ms_error,
                "f_stat": self.anova.f_stat,
                "p_value": self.anova.p_value,
            },
            "anova_note": self.anova_note,
            "reference": self.reference,
            "pairwise": [
                {
                    "pair": list(r.pair),
                    "t_stat": r.t_stat,
                    "raw_p": r.raw_p,
                    "bonferroni": r.bonferroni,
                    "holm": r.holm,
                    "family_size": r.family_size,
                }
                for r in self.pairwise
            ],
            "usability": self.usability,
        }


def session_report(store: SessionStore, gaps: list[int] | None = None) -> Report:
    """Aggregate scored sessions by gap and run the statistics pipeline.

    One accuracy value per session feeds the ANOVA; the pairwise tests
    compare every gap against the best-performing one.
    """
    by_gap: dict[int, list[float]] = {}
    ratings: list[float] = []
    for session in store.sessions():
        if gaps is not None and session.char_gap not in gaps:
            continue
        if session.rating is not None:
            ratings.append(session.rating)
        accuracy = session.accuracy_pct
        if accuracy is not None:
            by_gap.setdefault(session.char_gap, []).append(accuracy)
    if not by_gap:
        raise InsufficientData("no scored sessions to report on")

    gap_stats = []
    summaries = []
    for gap in sorted(by_gap, reverse=True):
        values = by_gap[gap]
        if len(values) >= 2:
            summary = summarize(gap, values)
            summaries.append(summary)
            gap_stats.append(GapStats(gap, summary.n, summary.mean, summary.sd))
        else:
            gap_stats.append(GapStats(gap, 1, values[0], None))

    anova = None
    anova_note = None
    reference = None
    pairwise: list[PairwiseResult] = []
    if len(summaries) >= 2:
        anova = anova_from_summary(summaries)
        reference = pick_reference(summaries)
        pairwise = pairwise_vs_reference(summaries, reference)
    else:
        anova_note = "ANOVA unavailable: need at least two gaps with two or more scored sessions"

    usability = usability_mean(ratings) if ratings else None
    return Report(
        gap_stats=gap_stats,
        summaries=summaries,
        anova=anova,
        anova_note=anova_note,
        reference=reference,
        pairwise=pairwise,
        usability=usability,
    )
