"""Shared test doubles, scan utilities, and fixture builders."""

from __future__ import annotations

import datetime as dt
import http.server
import json
import re
import threading
import time
from typing import Optional

from ucds.errors import ResolutionFailed
from ucds.extractor import DailyCount, ExtractedChat, MessageMeta, PerUserStats
from ucds.payload import validate_chat
from ucds.urlpipe import RedirectResolver, UrlRecord

from corpus import SyntheticExport


class MappingResolver(RedirectResolver):
    """In-process resolver backed by a url -> target dict; counts calls."""

    def __init__(self, mapping: dict[str, str] | None = None):
        self.mapping = dict(mapping or {})
        self.calls = 0

    def resolve(self, url: str) -> Optional[str]:
        self.calls += 1
        return self.mapping.get(url)


class FailingResolver(RedirectResolver):
    def __init__(self):
        self.calls = 0

    def resolve(self, url: str) -> Optional[str]:
        self.calls += 1
        raise ResolutionFailed("synthetic network failure")


class IdentityResolver(RedirectResolver):
    """Never redirects; makes the pipeline fully deterministic."""

    def __init__(self):
        self.calls = 0

    def resolve(self, url: str) -> Optional[str]:
        self.calls += 1
        return None


# -- privacy scanning ---------------------------------------------------

TIME_OF_DAY_RE = re.compile(r"\d{1,2}:\d{2}")
_DIGIT_RUN_RE = re.compile(r"[+\d][\d\s\-().]*\d")
_ISO_DATE_RE = re.compile(r"^\d{4}-\d{2}-\d{2}$")


def phone_like_matches(text: str) -> list[str]:
    """Digit runs of 7+ (separators allowed) that are not ISO dates."""
    hits = []
    for match in _DIGIT_RUN_RE.finditer(text):
        token = match.group(0)
        if _ISO_DATE_RE.match(token):
            continue
        if sum(ch.isdigit() for ch in token) >= 7:
            hits.append(token)
    return hits


def privacy_violations(payload_text: str, export: SyntheticExport) -> list[str]:
    """Everything in a serialized payload that leaks from the source chat."""
    violations = []
    lowered = payload_text.lower()
    for name in export.sender_names:
        if name in payload_text:
            violations.append(f"sender name leaked: {name!r}")
        for token in name.split():
            if len(token) >= 3 and token.isalpha() and token.lower() in lowered:
                violations.append(f"name token leaked: {token!r}")
    for message in export.messages:
        if message.body and message.body in payload_text:
            violations.append(f"body leaked: {message.body!r}")
        for truth_url in message.urls:
            if truth_url.url in payload_text:
                violations.append(f"raw url leaked: {truth_url.url!r}")
    for word in export.body_words:
        if word in lowered:
            violations.append(f"body word leaked: {word!r}")
    if TIME_OF_DAY_RE.search(payload_text):
        violations.append("time-of-day pattern present")
    violations.extend(
        f"phone-like digits: {hit!r}" for hit in phone_like_matches(payload_text)
    )
    return violations


# -- fixture construction -------------------------------------------------


def build_chat(
    label: str,
    messages: list[tuple[str, int, str]],
    urls: list[tuple[int, str, Optional[str], bool]] = (),
    chat_id: Optional[str] = None,
    edited: bool = False,
) -> ExtractedChat:
    """Assemble a consistent ExtractedChat from terse specs.

    messages: (iso date, alias, kind); urls: (message index, domain,
    cc_tld, was_shortened). Tallies, daily counts, and date bounds are
    derived; the result is invariant-checked.
    """
    metas = [
        MessageMeta(seq=i, date=dt.date.fromisoformat(d), alias=alias, kind=kind)
        for i, (d, alias, kind) in enumerate(messages)
    ]
    aliases = sorted({m.alias for m in metas})
    per_user = []
    for alias in aliases:
        mine = [m for m in metas if m.alias == alias]
        url_count = sum(1 for m in mine if m.kind == "url")
        per_user.append(
            PerUserStats(
                alias=alias,
                total_messages=len(mine),
                url_messages=url_count,
                text_messages=len(mine) - url_count,
            )
        )
    daily: dict[tuple[dt.date, int], int] = {}
    for meta in metas:
        daily[(meta.date, meta.alias)] = daily.get((meta.date, meta.alias), 0) + 1
    records = [
        UrlRecord(
            domain=domain,
            cc_tld=cc,
            was_shortened=shortened,
            message_seq=metas[index].seq,
            alias=metas[index].alias,
            date=metas[index].date,
        )
        for index, domain, cc, shortened in urls
    ]
    chat = ExtractedChat(
        chat_id=chat_id or f"chat{label.lower()}0abc",
        chat_label=label,
        edited=edited,
        start_date=min(m.date for m in metas),
        end_date=max(m.date for m in metas),
        num_users=len(aliases),
        per_user=per_user,
        daily_counts=[
            DailyCount(date=key[0], alias=key[1], count=count)
            for key, count in sorted(daily.items())
        ],
        messages=metas,
        urls=records,
    )
    validate_chat(chat)
    return chat


# -- in-process HTTP servers ---------------------------------------------


class _RedirectHandler(http.server.BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def _respond(self, status: int, location: str | None = None):
        self.send_response(status)
        if location:
            self.send_header("Location", location)
        self.send_header("Content-Length", "0")
        self.end_headers()

    def _handle(self):
        self.server.requests.append(self.path)
        if self.path.startswith("/chain/"):
            n = int(self.path.rsplit("/", 1)[1])
            if n <= 0:
                self._respond(200)
            else:
                self._respond(302, f"/chain/{n - 1}")
        elif self.path == "/loop/a":
            self._respond(302, "/loop/b")
        elif self.path == "/loop/b":
            self._respond(302, "/loop/a")
        elif self.path == "/slow":
            time.sleep(1.5)
            self._respond(200)
        elif self.path == "/out":
            self._respond(302, "http://destination.test/landing")
        else:
            self._respond(200)

    do_HEAD = _handle
    do_GET = _handle


class _ReceiverHandler(http.server.BaseHTTPRequestHandler):
    def log_message(self, *args):
        pass

    def do_POST(self):
        length = int(self.headers.get("Content-Length", 0))
        body = self.rfile.read(length)
        if self.path == "/fail":
            status = 500
        else:
            self.server.received.append((self.path, body))
            status = 200
        payload = json.dumps({"ok": status == 200}).encode()
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)


class LocalServer:
    """Loopback HTTP server running on an ephemeral port."""

    def __init__(self, handler):
        self.httpd = http.server.ThreadingHTTPServer(("127.0.0.1", 0), handler)
        self.httpd.daemon_threads = True
        self.httpd.requests = []
        self.httpd.received = []
        self._thread = threading.Thread(target=self.httpd.serve_forever, daemon=True)

    @property
    def host(self) -> str:
        return self.httpd.server_address[0]

    @property
    def base_url(self) -> str:
        return f"http://{self.host}:{self.httpd.server_address[1]}"

    @property
    def requests(self) -> list[str]:
        return self.httpd.requests

    @property
    def received(self) -> list[tuple[str, bytes]]:
        return self.httpd.received

    def __enter__(self) -> "LocalServer":
        self._thread.start()
        return self

    def __exit__(self, *exc) -> None:
        self.httpd.shutdown()
        self.httpd.server_close()


def redirect_server() -> LocalServer:
    return LocalServer(_RedirectHandler)


def receiver_server() -> LocalServer:
    return LocalServer(_ReceiverHandler)
