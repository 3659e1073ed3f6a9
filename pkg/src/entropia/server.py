"""HTTP+JSON service for the 20-questions game.

Endpoints:
    POST /sessions                  -> {id}
    GET  /sessions/{id}             -> session view
    GET  /sessions/{id}/question    -> pending split view
    POST /sessions/{id}/answer      -> updated session view, body {"bit": 0|1}
    GET  /alphabet                  -> {size, entropy_bits, expected_questions}
    GET  /...                       -> static UI files when ui_dir is set

Errors come back as {"error": code, "message": ...} with a matching
status.  CORS is wide open so a separately-served UI can talk to us.
"""

from __future__ import annotations

import json
import re
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from .errors import DomainError, StateError
from .game import GameSession, LoadedAlphabet, answer, current_question, start_session

SESSION_TTL_SECONDS = 30 * 60

_CONTENT_TYPES = {
    ".html": "text/html; charset=utf-8",
    ".js": "text/javascript; charset=utf-8",
    ".css": "text/css; charset=utf-8",
    ".map": "application/json",
    ".json": "application/json",
    ".svg": "image/svg+xml",
    ".ico": "image/x-icon",
}

_SAMPLE_LABELS = 6


class NotFound(Exception):
    pass


class GameService:
    """Session store with per-session locking and TTL eviction."""

    def __init__(self, deck: LoadedAlphabet, ttl_seconds: float = SESSION_TTL_SECONDS, clock=time.monotonic):
        self.deck = deck
        self.ttl = ttl_seconds
        self.clock = clock
        self._lock = threading.Lock()
        self._sessions: dict[str, GameSession] = {}
        self._touched: dict[str, float] = {}
        self._session_locks: dict[str, threading.Lock] = {}

    def _evict_expired(self) -> None:
        now = self.clock()
        dead = [sid for sid, t in self._touched.items() if now - t > self.ttl]
        for sid in dead:
            self._sessions.pop(sid, None)
            self._touched.pop(sid, None)
            self._session_locks.pop(sid, None)

    def create_session(self) -> dict:
        session = start_session(self.deck)
        with self._lock:
            self._evict_expired()
            self._sessions[session.id] = session
            self._touched[session.id] = self.clock()
            self._session_locks[session.id] = threading.Lock()
        return {"id": session.id}

    def _get(self, sid: str) -> GameSession:
        with self._lock:
            self._evict_expired()
            session = self._sessions.get(sid)
            if session is None:
                raise NotFound(sid)
            self._touched[sid] = self.clock()
            return session

    def session_view(self, sid: str) -> dict:
        return _session_view(self._get(sid))

    def question_view(self, sid: str) -> dict:
        view = current_question(self._get(sid))
        return {
            "no_labels_sample": list(view.no_labels[:_SAMPLE_LABELS]),
            "yes_labels_sample": list(view.yes_labels[:_SAMPLE_LABELS]),
            "no_count": len(view.no_labels),
            "yes_count": len(view.yes_labels),
            "p_no": view.p_no,
            "p_yes": view.p_yes,
            "pending_bits": view.pending_bits,
        }

    def answer(self, sid: str, bit) -> dict:
        with self._lock:
            lock = self._session_locks.get(sid)
        if lock is None:
            raise NotFound(sid)
        with lock:
            session = self._get(sid)
            updated = answer(session, bit)
            with self._lock:
                self._sessions[sid] = updated
                self._touched[sid] = self.clock()
            return _session_view(updated)

    def alphabet_view(self) -> dict:
        return {
            "size": len(self.deck.dist.labels),
            "entropy_bits": self.deck.entropy_bits,
            "expected_questions": self.deck.expected_questions,
        }


def _session_view(session: GameSession) -> dict:
    view = {
        "id": session.id,
        "asked": session.asked,
        "finished": session.finished,
        "transcript": list(session.transcript),
    }
    if session.finished:
        view["answer_label"] = session.answer_label
    return view


class _Handler(BaseHTTPRequestHandler):
    service: GameService = None
    ui_dir: Path | None = None
    quiet = True

    protocol_version = "HTTP/1.1"

    def log_message(self, fmt, *args):  # noqa: A003 - BaseHTTPRequestHandler API
        if not self.quiet:
            super().log_message(fmt, *args)

    # -- plumbing ----------------------------------------------------------

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(body)

    def _send_error_json(self, status: int, code: str, message: str) -> None:
        self._send_json(status, {"error": code, "message": message})

    def _send_cors(self) -> None:
        self.send_header("Access-Control-Allow-Origin", "*")
        self.send_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS")
        self.send_header("Access-Control-Allow-Headers", "Content-Type")

    def _read_json_body(self) -> dict:
        length = int(self.headers.get("Content-Length") or 0)
        raw = self.rfile.read(length) if length else b""
        if not raw:
            return {}
        try:
            parsed = json.loads(raw.decode("utf-8"))
        except (ValueError, UnicodeDecodeError) as exc:
            raise DomainError(f"request body is not valid JSON: {exc}") from exc
        if not isinstance(parsed, dict):
            raise DomainError("request body must be a JSON object")
        return parsed

    # -- routing -----------------------------------------------------------

    def do_OPTIONS(self):  # noqa: N802 - BaseHTTPRequestHandler API
        self.send_response(204)
        self._send_cors()
        self.send_header("Content-Length", "0")
        self.end_headers()

    def do_GET(self):  # noqa: N802
        try:
            path = self.path.split("?", 1)[0]
            if path == "/alphabet":
                self._send_json(200, self.service.alphabet_view())
            elif m := re.fullmatch(r"/sessions/([0-9a-f]+)", path):
                self._send_json(200, self.service.session_view(m.group(1)))
            elif m := re.fullmatch(r"/sessions/([0-9a-f]+)/question", path):
                self._send_json(200, self.service.question_view(m.group(1)))
            else:
                self._serve_static(path)
        except Exception as exc:  # noqa: BLE001 - map to HTTP at the boundary
            self._handle_exception(exc)

    def do_POST(self):  # noqa: N802
        try:
            path = self.path.split("?", 1)[0]
            if path == "/sessions":
                self._send_json(201, self.service.create_session())
            elif m := re.fullmatch(r"/sessions/([0-9a-f]+)/answer", path):
                body = self._read_json_body()
                if "bit" not in body:
                    raise DomainError("missing 'bit' field")
                self._send_json(200, self.service.answer(m.group(1), body["bit"]))
            else:
                self._send_error_json(404, "not_found", f"no such endpoint: {path}")
        except Exception as exc:  # noqa: BLE001
            self._handle_exception(exc)

    def _handle_exception(self, exc: Exception) -> None:
        if isinstance(exc, NotFound):
            self._send_error_json(404, "unknown_session", f"no session {exc}")
        elif isinstance(exc, StateError):
            self._send_error_json(409, "finished", str(exc))
        elif isinstance(exc, DomainError):
            self._send_error_json(400, "bad_request", str(exc))
        else:
            self._send_error_json(500, "internal", f"{type(exc).__name__}: {exc}")

    # -- static UI ---------------------------------------------------------

    def _serve_static(self, path: str) -> None:
        if self.ui_dir is None:
            self._send_error_json(404, "not_found", f"no such endpoint: {path}")
            return
        rel = path.lstrip("/") or "index.html"
        target = (self.ui_dir / rel).resolve()
        root = self.ui_dir.resolve()
        if root not in target.parents and target != root:
            self._send_error_json(404, "not_found", "path escapes UI root")
            return
        if target.is_dir():
            target = target / "index.html"
        if not target.is_file():
            self._send_error_json(404, "not_found", f"no such file: {path}")
            return
        body = target.read_bytes()
        self.send_response(200)
        ctype = _CONTENT_TYPES.get(target.suffix, "application/octet-stream")
        self.send_header("Content-Type", ctype)
        self.send_header("Content-Length", str(len(body)))
        self._send_cors()
        self.end_headers()
        self.wfile.write(body)


def make_server(
    deck: LoadedAlphabet,
    port: int = 0,
    ui_dir=None,
    ttl_seconds: float = SESSION_TTL_SECONDS,
    quiet: bool = True,
) -> ThreadingHTTPServer:
    """Bind a threading HTTP server; port 0 picks an ephemeral port."""
    service = GameService(deck, ttl_seconds=ttl_seconds)
    handler = type(
        "BoundHandler",
        (_Handler,),
        {
            "service": service,
            "ui_dir": Path(ui_dir) if ui_dir else None,
            "quiet": quiet,
        },
    )
    server = ThreadingHTTPServer(("127.0.0.1", port), handler)
    server.game_service = service
    return server


def serve_forever_in_thread(server: ThreadingHTTPServer) -> threading.Thread:
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    return thread
