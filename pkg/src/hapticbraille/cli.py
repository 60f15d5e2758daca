"""Command-line entry points for every capability.

    encode TEXT            cells for each character
    schedule TEXT          timed vibration events
    transmit TEXT          the host's paced byte emission log
    emulate TEXT           motor timeline after the full link round trip
    ctr                    character transfer rates for a gap
    stats                  accuracy summaries, ANOVA and pairwise tests
    session ...            headless mirror of the trainer endpoints
    report                 statistics over a session store
    serve                  run the trainer HTTP service

Exit codes: 0 success, 1 data errors, 2 usage errors. All numeric output is
fixed-precision and locale-independent; --format structured prints JSON.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import datasets, emulator, link, service, stats, timing, trainer
from .braille import (
    CellToken,
    UnknownCell,
    UnsupportedCharacter,
    WORD_BREAK,
    encode_text,
    table_dump,
)

_DATA_ERRORS = (
    UnsupportedCharacter,
    UnknownCell,
    timing.EmptyCell,
    emulator.MalformedCommandStream,
    stats.DegenerateData,
    stats.UnknownReference,
    stats.EmptyRatings,
    datasets.DatasetFormatError,
    trainer.UnknownSession,
    trainer.UnknownRecord,
    trainer.SessionClosed,
    trainer.AlreadyScored,
    trainer.LengthMismatch,
    trainer.InsufficientData,
    FileNotFoundError,
    ValueError,
)


def _num(value: float) -> str:
    return f"{value:.6g}"


def _print_json(payload) -> None:
    print(json.dumps(payload, indent=2, sort_keys=True))


def _timing_config(args) -> timing.TimingConfig:
    return timing.TimingConfig(
        dot_on=args.dot_on,
        dot_off=args.dot_off,
        char_gap=args.gap,
        word_gap=args.word_gap,
    )


def _add_timing_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gap", type=int, default=1000, help="character gap in ms")
    parser.add_argument("--word-gap", type=int, default=None, help="word gap in ms (default 2x gap)")
    parser.add_argument("--dot-on", type=int, default=300, help="dot vibration ms")
    parser.add_argument("--dot-off", type=int, default=300, help="silence between dots ms")


def _add_format_flag(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "structured"), default="text", help="output format"
    )


# --- subcommands -------------------------------------------------------------


def _cmd_encode(args) -> int:
    if args.table:
        print(table_dump())
        return 0
    if args.text is None:
        raise ValueError("TEXT is required unless --table is given")
    tokens = encode_text(args.text)
    if args.format == "structured":
        payload = [
            {"word_break": True}
            if token is WORD_BREAK
            else {"char": token.source, "dots": list(token.cell.sorted_dots)}
            for token in tokens
        ]
        _print_json(payload)
    else:
        for token in tokens:
            if token is WORD_BREAK:
                print("(word break)")
            else:
                print(f"{token.source}: {token.cell}")
    return 0


def _cmd_schedule(args) -> int:
    schedule = timing.schedule_text(encode_text(args.text), _timing_config(args))
    if args.format == "structured":
        _print_json(timing.schedule_to_dict(schedule))
    else:
        print("\n".join(timing.schedule_to_lines(schedule)))
    return 0


def _cmd_transmit(args) -> int:
    emission = link.host_transmit(args.text, _timing_config(args))
    if args.format == "structured":
        _print_json([{"at": tb.at, "byte": tb.value, "char": tb.char} for tb in emission])
    else:
        for tb in emission:
            shown = tb.char if tb.char is not None else "."
            print(f"t={tb.at} byte=0x{tb.value:02x} {shown}")
    return 0


def _cmd_emulate(args) -> int:
    cfg = _timing_config(args)
    schedule = timing.schedule_text(encode_text(args.text), cfg)
    timeline = emulator.apply_commands(
        link.link_roundtrip(args.text, cfg), span_ms=schedule.total_duration
    )
    geometry = emulator.BandGeometry.default()
    violations = emulator.validate_geometry(geometry, args.tpdt)
    summary = emulator.timeline_summary(timeline)
    if args.format == "structured":
        _print_json(
            {
                "geometry_ok": not violations,
                "tpdt_mm": args.tpdt,
                "min_spacing_mm": emulator.min_spacing(geometry),
                "events": emulator.timeline_events(timeline),
                "timeline": emulator.timeline_to_dict(timeline),
                "summary": {
                    "pulse_counts": summary.pulse_counts,
                    "total_vibration_ms": summary.total_vibration_ms,
                    "makespan_ms": summary.makespan_ms,
                },
            }
        )
        return 0
    spacing = emulator.min_spacing(geometry)
    if violations:
        print(f"geometry VIOLATED: {len(violations)} pair(s) under {_num(args.tpdt)} mm")
    else:
        print(f"geometry ok (min spacing {_num(spacing)} mm >= tpdt {_num(args.tpdt)} mm)")
    for event in emulator.timeline_events(timeline):
        print(f"event node={event['node']} start={event['start']} dur={event['duration']}")
    for node, spans in sorted(timeline.intervals.items()):
        rendered = " ".join(f"({on},{off})" for on, off in spans)
        print(f"node {node}: {rendered}" if spans else f"node {node}:")
    print(
        f"summary pulses={sum(summary.pulse_counts.values())} "
        f"vibration_ms={summary.total_vibration_ms} makespan_ms={summary.makespan_ms}"
    )
    return 0


def _cmd_ctr(args) -> int:
    best, worst = timing.ctr_range(args.gap)
    average = timing.ctr_average(args.gap)
    if args.format == "structured":
        _print_json({"gap_s": args.gap, "max": best, "min": worst, "avg": average})
    else:
        print(f"max {_num(best)} min {_num(worst)} avg {_num(average)}")
    return 0


def _run_stats_pipeline(groups, reference, alpha, family):
    anova = stats.anova_from_summary(groups)
    ref = reference if reference is not None else stats.pick_reference(groups)
    pairwise = stats.pairwise_vs_reference(groups, ref, alpha=alpha, family=family)
    return anova, ref, pairwise


def _cmd_stats(args) -> int:
    if args.raw is not None:
        data = datasets.load_raw(args.raw)
        groups = [stats.summarize(gap, values) for gap, values in data.items()]
    else:
        groups = datasets.load_summary(args.summary)
    anova, ref, pairwise = _run_stats_pipeline(groups, args.reference, args.alpha, args.family)
    if args.format == "structured":
        _print_json(
            {
                "groups": [
                    {"gap_ms": g.treatment, "mean": g.mean, "sd": g.sd, "n": g.n}
                    for g in groups
                ],
                "anova": {
                    "ss_treatment": anova.ss_treatment,
                    "ss_error": anova.ss_error,
                    "ss_total": anova.ss_total,
                    "df_treatment": anova.df_treatment,
                    "df_error": anova.df_error,
                    "ms_treatment": anova.ms_treatment,
                    "ms_error": anova.ms_error,
                    "f_stat": anova.f_stat,
                    "p_value": anova.p_value,
                },
                "reference": ref,
                "pairwise": [
                    {
                        "pair": list(r.pair),
                        "t_stat": r.t_stat,
                        "raw_p": r.raw_p,
                        "bonferroni": r.bonferroni,
                        "holm": r.holm,
                        "family_size": r.family_size,
                    }
                    for r in pairwise
                ],
            }
        )
        return 0
    print(stats.summary_table(groups))
    print()
    print(stats.anova_table(anova))
    print()
    print(f"pairwise vs reference {ref} ms (family of {pairwise[0].family_size}):")
    print(stats.pairwise_table(pairwise))
    return 0


def _cmd_report(args) -> int:
    store = trainer.SessionStore(args.store)
    gaps = [int(g) for g in args.gaps.split(",")] if args.gaps else None
    report = trainer.session_report(store, gaps=gaps)
    if args.format == "structured":
        _print_json(report.to_dict())
        return 0
    print("gap_ms  n  mean_accuracy_pct  sd")
    for g in report.gap_stats:
        sd = f"{g.sd:.2f}" if g.sd is not None else "-"
        print(f"{g.gap_ms:<7} {g.n:<2} {g.mean:<18.1f} {sd}")
    print()
    if report.anova is not None:
        print(stats.anova_table(report.anova))
        print()
        print(f"pairwise vs reference {report.reference} ms:")
        print(stats.pairwise_table(report.pairwise))
    else:
        print(report.anova_note)
    if report.usability is not None:
        print(f"\nusability mean: {_num(report.usability)}")
    return 0


def _cmd_session(args) -> int:
    store = trainer.SessionStore(args.store)
    if args.session_command == "new":
        config = trainer.TrialConfig(
            word_length=args.word_length, words_per_block=args.words
        )
        session = trainer.start_session(
            store, subject=args.subject, char_gap=args.gap, seed=args.seed, config=config
        )
        _print_json(session.to_dict())
    elif args.session_command == "transmit":
        record = trainer.transmit_word(store, args.id, args.word)
        _print_json(record.to_dict())
    elif args.session_command == "guess":
        record = trainer.record_guess(store, args.id, args.record, args.guess)
        session = store.get(args.id)
        _print_json(
            {"session_accuracy_pct": session.accuracy_pct, **record.to_dict()}
        )
    elif args.session_command == "rating":
        session = trainer.set_rating(store, args.id, args.rating)
        _print_json(session.to_dict())
    elif args.session_command == "timeline":
        record = store.get(args.id).record(args.record)
        _print_json({"record_id": record.record_id, "timeline": record.timeline})
    elif args.session_command == "close":
        session = trainer.close_session(store, args.id)
        _print_json(session.to_dict())
    else:  # pragma: no cover - argparse enforces choices
        raise ValueError(f"unknown session command {args.session_command!r}")
    return 0


def _cmd_serve(args) -> int:
    store = trainer.SessionStore(args.store) if args.store else trainer.SessionStore()
    server = service.serve(args.port, store=store, ui_dir=args.ui)
    host, port = server.server_address
    print(f"trainer service on http://{host}:{port}/ (Ctrl-C to stop)", flush=True)
    try:
        server.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        server.server_close()
    return 0


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hapticbraille",
        description="Haptic braille band tools: encoding, scheduling, emulation, statistics, training.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("encode", help="braille cells for text")
    p.add_argument("text", nargs="?", default=None, metavar="TEXT")
    p.add_argument("--table", action="store_true", help="dump the character table")
    _add_format_flag(p)
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("schedule", help="timed vibration events for text")
    p.add_argument("text", metavar="TEXT")
    _add_timing_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=_cmd_schedule)

    p = sub.add_parser("transmit", help="host-paced byte emission log")
    p.add_argument("text", metavar="TEXT")
    _add_timing_flags(p)
    _add_format_flag(p)
    p.set_defaults(func=_cmd_transmit)

    p = sub.add_parser("emulate", help="motor timeline after the link round trip")
    p.add_argument("text", metavar="TEXT")
    _add_timing_flags(p)
    p.add_argument("--tpdt", type=float, default=emulator.TPDT_FOREARM_MM,
                   help="two-point threshold for the geometry check, mm")
    _add_format_flag(p)
    p.set_defaults(func=_cmd_emulate)

    p = sub.add_parser("ctr", help="character transfer rates for a gap")
    p.add_argument("--gap", type=float, default=1.0, help="character gap in seconds")
    _add_format_flag(p)
    p.set_defaults(func=_cmd_ctr)

    p = sub.add_parser("stats", help="accuracy summaries, ANOVA, pairwise tests")
    p.add_argument("--summary", default=None, help="summary CSV (gap_ms,mean,sd,n); bundled data if omitted")
    p.add_argument("--raw", default=None, help="raw CSV (subject,gap_ms,accuracy_pct)")
    p.add_argument("--reference", type=int, default=None, help="reference gap ms (default: best mean)")
    p.add_argument("--alpha", type=float, default=0.05)
    p.add_argument("--family", choices=(stats.FAMILY_ALL_PAIRS, stats.FAMILY_SELECTED_PAIRS),
                   default=stats.FAMILY_ALL_PAIRS, help="multiple-comparison family")
    _add_format_flag(p)
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("report", help="statistics over a session store")
    p.add_argument("--store", required=True, help="session store directory")
    p.add_argument("--gaps", default=None, help="comma-separated gap filter")
    _add_format_flag(p)
    p.set_defaults(func=_cmd_report)

    p = sub.add_parser("session", help="headless trainer session operations")
    p.add_argument("--store", required=True, help="session store directory")
    session_sub = p.add_subparsers(dest="session_command", required=True)
    sp = session_sub.add_parser("new")
    sp.add_argument("--subject", required=True)
    sp.add_argument("--gap", type=int, required=True, help="character gap ms")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--words", type=int, default=10, help="words in the block")
    sp.add_argument("--word-length", type=int, default=3)
    sp = session_sub.add_parser("transmit")
    sp.add_argument("--id", required=True)
    sp.add_argument("--word", default=None, help="next planned word if omitted")
    sp = session_sub.add_parser("guess")
    sp.add_argument("--id", required=True)
    sp.add_argument("--record", required=True)
    sp.add_argument("--guess", required=True)
    sp = session_sub.add_parser("rating")
    sp.add_argument("--id", required=True)
    sp.add_argument("--rating", type=float, required=True)
    sp = session_sub.add_parser("timeline")
    sp.add_argument("--id", required=True)
    sp.add_argument("--record", required=True)
    sp = session_sub.add_parser("close")
    sp.add_argument("--id", required=True)
    p.set_defaults(func=_cmd_session)

    p = sub.add_parser("serve", help="run the trainer HTTP service")
    p.add_argument("--port", type=int, default=8585)
    p.add_argument("--store", default=None, help="session store directory (in-memory if omitted)")
    p.add_argument("--ui", default=None, help="directory of web UI files to serve")
    p.set_defaults(func=_cmd_serve)

    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _DATA_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:  # console entry point
    sys.exit(run())


if __name__ == "__main__":
    main()
