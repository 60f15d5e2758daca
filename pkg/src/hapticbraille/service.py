"""HTTP interface to the trainer, plus static file serving for the web UI.

Endpoints (JSON request and response bodies):

    POST /sessions                          {subject, char_gap, seed?,
                                             word_length?, words_per_block?}
    POST /sessions/{id}/transmit            {word?}        word from the plan if omitted
    POST /sessions/{id}/guess               {record_id, guess}
    GET  /sessions/{id}/timeline/{record}
    POST /sessions/{id}/rating              {rating}
    GET  /report?gaps=2000,1500             gaps filter optional

Guess responses carry the updated session accuracy so clients never score
locally. Mutations on a session are serialized by a per-session lock; the
server itself is threaded.
"""

from __future__ import annotations

import json
import re
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .braille import UnsupportedCharacter
from . import trainer
from .trainer import (
    AlreadyScored,
    InsufficientData,
    LengthMismatch,
    SessionClosed,
    SessionStore,
    TrialConfig,
    UnknownRecord,
    UnknownSession,
)

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".map": "application/json",
    ".png": "image/png",
    ".ico": "image/x-icon",
}

_SESSION_ROUTE = re.compile(r"^/sessions/([^/]+)/(transmit|guess|rating)$")
_TIMELINE_ROUTE = re.compile(r"^/sessions/([^/]+)/timeline/([^/]+)$")


class TrainerServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address, store: SessionStore, ui_dir: str | Path | None = None):
        self.store = store
        self.ui_dir = Path(ui_dir).resolve() if ui_dir is not None else None
        super().__init__(address, TrainerHandler)


class TrainerHandler(BaseHTTPRequestHandler):
    server_version = "hapticbraille"
    protocol_version = "HTTP/1.1"

    # --- plumbing ---------------------------------------------------------

    def log_message(self, fmt, *args):  # quiet by default; tests read stdout
        pass

    def _send_json(self, payload: dict, status: int = 200) -> None:
        body = json.dumps(payload, sort_keys=True).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, message: str) -> None:
        self._send_json({"error": message}, status=status)

    def _read_json(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            payload = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ValueError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(payload, dict):
            raise ValueError("request body must be a JSON object")
        return payload

    @property
    def store(self) -> SessionStore:
        return self.server.store

    # --- routes -----------------------------------------------------------

    def do_POST(self) -> None:
        try:
            if self.path == "/sessions":
                self._create_session()
                return
            match = _SESSION_ROUTE.match(self.path)
            if match:
                session_id, action = match.groups()
                with self.store.lock(session_id):
                    if action == "transmit":
                        self._transmit(session_id)
                    elif action == "guess":
                        self._guess(session_id)
                    else:
                        self._rate(session_id)
                return
            self._send_error_json(404, f"no such route: POST {self.path}")
        except (UnknownSession, UnknownRecord) as exc:
            self._send_error_json(404, str(exc))
        except (SessionClosed, AlreadyScored) as exc:
            self._send_error_json(409, str(exc))
        except (LengthMismatch, UnsupportedCharacter, ValueError, TypeError) as exc:
            self._send_error_json(400, str(exc))

    def do_GET(self) -> None:
        try:
            path, _, query = self.path.partition("?")
            match = _TIMELINE_ROUTE.match(path)
            if match:
                session_id, record_id = match.groups()
                record = self.store.get(session_id).record(record_id)
                self._send_json(
                    {
                        "record_id": record.record_id,
                        "timeline": record.timeline,
                        "schedule": record.schedule,
                    }
                )
                return
            if path == "/report":
                gaps = None
                for part in query.split("&"):
                    if part.startswith("gaps="):
                        gaps = [int(g) for g in part[len("gaps="):].split(",") if g]
                report = trainer.session_report(self.store, gaps=gaps)
                self._send_json(report.to_dict())
                return
            if self.server.ui_dir is not None:
                self._serve_static(path)
                return
            self._send_error_json(404, f"no such route: GET {path}")
        except (UnknownSession, UnknownRecord) as exc:
            self._send_error_json(404, str(exc))
        except InsufficientData as exc:
            self._send_error_json(400, str(exc))
        except ValueError as exc:
            self._send_error_json(400, str(exc))

    # --- handlers ----------------------------------------------------------

    def _create_session(self) -> None:
        payload = self._read_json()
        if "subject" not in payload or "char_gap" not in payload:
            raise ValueError("subject and char_gap are required")
        config = TrialConfig(
            word_length=int(payload.get("word_length", 3)),
            words_per_block=int(payload.get("words_per_block", 10)),
        )
        seed = payload.get("seed")
        session = trainer.start_session(
            self.store,
            subject=str(payload["subject"]),
            char_gap=int(payload["char_gap"]),
            seed=None if seed is None else int(seed),
            config=config,
        )
        self._send_json(session.to_dict(), status=201)

    def _transmit(self, session_id: str) -> None:
        payload = self._read_json()
        record = trainer.transmit_word(self.store, session_id, payload.get("word"))
        self._send_json({"session_id": session_id, **record.to_dict()}, status=201)

    def _guess(self, session_id: str) -> None:
        payload = self._read_json()
        if "record_id" not in payload or "guess" not in payload:
            raise ValueError("record_id and guess are required")
        record = trainer.record_guess(
            self.store, session_id, str(payload["record_id"]), str(payload["guess"])
        )
        session = self.store.get(session_id)
        self._send_json(
            {
                "session_id": session_id,
                "session_accuracy_pct": session.accuracy_pct,
                **record.to_dict(),
            }
        )

    def _rate(self, session_id: str) -> None:
        payload = self._read_json()
        if "rating" not in payload:
            raise ValueError("rating is required")
        session = trainer.set_rating(self.store, session_id, float(payload["rating"]))
        self._send_json(session.to_dict())

    def _serve_static(self, path: str) -> None:
        if path == "/":
            path = "/index.html"
        target = (self.server.ui_dir / path.lstrip("/")).resolve()
        if not target.is_relative_to(self.server.ui_dir) or not target.is_file():
            self._send_error_json(404, f"not found: {path}")
            return
        body = target.read_bytes()
        self.send_response(200)
        content_type = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)


def serve(
    port: int, store: SessionStore | None = None, ui_dir: str | Path | None = None
) -> TrainerServer:
    """Bind a trainer server; the caller drives serve_forever / shutdown."""
    server = TrainerServer(("127.0.0.1", port), store or SessionStore(), ui_dir=ui_dir)
    return server
