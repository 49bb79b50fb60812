"""Canonical payload serialization.

One ExtractedChat serializes to one JSON document. The byte encoding is
deterministic so a previewed payload is byte-identical to the submitted
one. Parsing validates structure and the bundle's counting invariants.
"""

from __future__ import annotations

import json
from datetime import date
from typing import Any

from .errors import PayloadError
from .extractor import (
    KIND_TEXT,
    KIND_URL,
    DailyCount,
    ExtractedChat,
    MessageMeta,
    PerUserStats,
)
from .urlpipe import UrlRecord

SCHEMA_VERSION = 1


def to_payload(chat: ExtractedChat) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "chat_id": chat.chat_id,
        "chat_label": chat.chat_label,
        "edited": chat.edited,
        "start_date": chat.start_date.isoformat(),
        "end_date": chat.end_date.isoformat(),
        "num_users": chat.num_users,
        "per_user": [
            {
                "alias": stats.alias,
                "total_messages": stats.total_messages,
                "url_messages": stats.url_messages,
                "text_messages": stats.text_messages,
            }
            for stats in chat.per_user
        ],
        "daily_counts": [
            {"date": entry.date.isoformat(), "alias": entry.alias, "count": entry.count}
            for entry in chat.daily_counts
        ],
        "messages": [
            {
                "seq": message.seq,
                "date": message.date.isoformat(),
                "alias": message.alias,
                "kind": message.kind,
            }
            for message in chat.messages
        ],
        "urls": [
            {
                "seq": record.message_seq,
                "domain": record.domain,
                "cc_tld": record.cc_tld,
                "was_shortened": record.was_shortened,
                "alias": record.alias,
                "date": record.date.isoformat(),
            }
            for record in chat.urls
        ],
    }


def payload_bytes(chat: ExtractedChat) -> bytes:
    """The canonical byte encoding: what the participant previews is
    what gets submitted."""
    return (json.dumps(to_payload(chat), indent=2, ensure_ascii=False) + "\n").encode(
        "utf-8"
    )


def _require(mapping: dict, key: str, kinds: type | tuple) -> Any:
    if key not in mapping:
        raise PayloadError(f"missing field {key!r}")
    value = mapping[key]
    if not isinstance(value, kinds) or isinstance(value, bool) and kinds is int:
        raise PayloadError(f"field {key!r} has wrong type")
    return value


def _parse_date(value: Any, key: str) -> date:
    if not isinstance(value, str):
        raise PayloadError(f"field {key!r} must be a YYYY-MM-DD string")
    try:
        return date.fromisoformat(value)
    except ValueError as exc:
        raise PayloadError(f"field {key!r} is not a valid date") from exc


def validate_chat(chat: ExtractedChat) -> None:
    """Enforce the bundle's counting invariants."""
    if chat.num_users != len(chat.per_user):
        raise PayloadError("num_users does not match per_user")
    totals = 0
    for stats in chat.per_user:
        if stats.url_messages + stats.text_messages != stats.total_messages:
            raise PayloadError(f"alias {stats.alias}: url+text != total")
        totals += stats.total_messages
    if totals != len(chat.messages):
        raise PayloadError("per-user totals do not sum to message count")
    if sum(entry.count for entry in chat.daily_counts) != len(chat.messages):
        raise PayloadError("daily counts do not sum to message count")
    if chat.messages:
        dates = [message.date for message in chat.messages]
        if chat.start_date != min(dates) or chat.end_date != max(dates):
            raise PayloadError("start/end dates do not bound message dates")
    url_seqs = {m.seq for m in chat.messages if m.kind == KIND_URL}
    for record in chat.urls:
        if record.message_seq not in url_seqs:
            raise PayloadError(f"url record seq {record.message_seq} is not a url message")


def from_payload(data: dict[str, Any] | bytes | str, validate: bool = True) -> ExtractedChat:
    """Parse a serialized payload back into an ExtractedChat."""
    if isinstance(data, (bytes, str)):
        try:
            data = json.loads(data)
        except json.JSONDecodeError as exc:
            raise PayloadError(f"payload is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PayloadError("payload must be a JSON object")
    version = _require(data, "schema_version", int)
    if version != SCHEMA_VERSION:
        raise PayloadError(f"unsupported schema_version {version}")

    per_user = []
    for entry in _require(data, "per_user", list):
        per_user.append(
            PerUserStats(
                alias=_require(entry, "alias", int),
                total_messages=_require(entry, "total_messages", int),
                url_messages=_require(entry, "url_messages", int),
                text_messages=_require(entry, "text_messages", int),
            )
        )
    daily_counts = []
    for entry in _require(data, "daily_counts", list):
        daily_counts.append(
            DailyCount(
                date=_parse_date(entry.get("date"), "daily_counts.date"),
                alias=_require(entry, "alias", int),
                count=_require(entry, "count", int),
            )
        )
    messages = []
    for entry in _require(data, "messages", list):
        kind = _require(entry, "kind", str)
        if kind not in (KIND_URL, KIND_TEXT):
            raise PayloadError(f"unknown message kind {kind!r}")
        messages.append(
            MessageMeta(
                seq=_require(entry, "seq", int),
                date=_parse_date(entry.get("date"), "messages.date"),
                alias=_require(entry, "alias", int),
                kind=kind,
            )
        )
    urls = []
    for entry in _require(data, "urls", list):
        cc_tld = entry.get("cc_tld")
        if cc_tld is not None and not isinstance(cc_tld, str):
            raise PayloadError("field 'cc_tld' has wrong type")
        urls.append(
            UrlRecord(
                domain=_require(entry, "domain", str),
                cc_tld=cc_tld,
                was_shortened=_require(entry, "was_shortened", bool),
                message_seq=_require(entry, "seq", int),
                alias=_require(entry, "alias", int),
                date=_parse_date(entry.get("date"), "urls.date"),
            )
        )

    chat = ExtractedChat(
        chat_id=_require(data, "chat_id", str),
        chat_label=_require(data, "chat_label", str),
        edited=_require(data, "edited", bool),
        start_date=_parse_date(data.get("start_date"), "start_date"),
        end_date=_parse_date(data.get("end_date"), "end_date"),
        num_users=_require(data, "num_users", int),
        per_user=per_user,
        daily_counts=daily_counts,
        messages=messages,
        urls=urls,
    )
    if validate:
        validate_chat(chat)
    return chat
