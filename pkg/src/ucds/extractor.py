"""Assembly of the constrained metadata bundle from an anonymized log.

The bundle carries dates, counts, aliases, message kinds, and reduced
domains only. Bodies are discarded immediately after URL extraction and
times of day never reach this layer.
"""

from __future__ import annotations

import re
import uuid
from dataclasses import dataclass, replace
from datetime import date

from .anonymizer import AnonChatLog
from .errors import NoUserMessages
from .urlpipe import UrlPipeline, UrlRecord, find_urls

KIND_URL = "url"
KIND_TEXT = "text"

DAYS_PER_MONTH = 30.44


@dataclass
class PerUserStats:
    alias: int
    total_messages: int
    url_messages: int
    text_messages: int


@dataclass
class DailyCount:
    date: date
    alias: int
    count: int


@dataclass
class MessageMeta:
    seq: int
    date: date
    alias: int
    kind: str


@dataclass
class ExtractedChat:
    chat_id: str
    chat_label: str
    edited: bool
    start_date: date
    end_date: date
    num_users: int
    per_user: list[PerUserStats]
    daily_counts: list[DailyCount]
    messages: list[MessageMeta]
    urls: list[UrlRecord]

    def clone(self) -> "ExtractedChat":
        return replace(
            self,
            per_user=[replace(u) for u in self.per_user],
            daily_counts=[replace(d) for d in self.daily_counts],
            messages=[replace(m) for m in self.messages],
            urls=[replace(u) for u in self.urls],
        )


@dataclass
class ChatDuration:
    months: float

    def display(self) -> float:
        return round(self.months, 1)


def new_chat_id() -> str:
    """Random opaque chat identifier.

    Rejects hex strings containing 7+ consecutive digits so identifiers
    can never trip phone-number privacy scans.
    """
    while True:
        chat_id = uuid.uuid4().hex
        if not re.search(r"\d{7}", chat_id):
            return chat_id


def extract(
    log: AnonChatLog,
    pipeline: UrlPipeline,
    chat_label: str = "A",
    chat_id: str | None = None,
) -> ExtractedChat:
    """Build the exportable metadata bundle.

    A message is kind=url iff its body contains at least one URL; each
    URL occurrence yields one record (unreducible ones are dropped and
    tallied by the pipeline). Bodies are not retained.
    """
    if not log.messages:
        raise NoUserMessages("anonymized log is empty")

    found: list[list[str]] = [find_urls(message.body) for message in log.messages]
    flat: list[tuple[int, str]] = []
    for index, urls in enumerate(found):
        for url in urls:
            flat.append((index, url))
    processed = pipeline.process_many([url for _, url in flat])

    url_records: list[UrlRecord] = []
    for (index, _), result in zip(flat, processed):
        if result is None:
            continue
        message = log.messages[index]
        url_records.append(
            UrlRecord(
                domain=result.domain,
                cc_tld=result.cc_tld,
                was_shortened=result.was_shortened,
                message_seq=message.seq,
                alias=message.alias,
                date=message.date,
            )
        )

    messages: list[MessageMeta] = []
    per_user = [PerUserStats(alias, 0, 0, 0) for alias in range(log.user_count)]
    daily: dict[tuple[date, int], int] = {}
    for message, urls in zip(log.messages, found):
        kind = KIND_URL if urls else KIND_TEXT
        messages.append(
            MessageMeta(seq=message.seq, date=message.date, alias=message.alias, kind=kind)
        )
        stats = per_user[message.alias]
        stats.total_messages += 1
        if kind == KIND_URL:
            stats.url_messages += 1
        else:
            stats.text_messages += 1
        daily[(message.date, message.alias)] = daily.get((message.date, message.alias), 0) + 1

    daily_counts = [
        DailyCount(date=key[0], alias=key[1], count=count)
        for key, count in sorted(daily.items())
    ]
    dates = [message.date for message in messages]
    return ExtractedChat(
        chat_id=chat_id or new_chat_id(),
        chat_label=chat_label,
        edited=False,
        start_date=min(dates),
        end_date=max(dates),
        num_users=log.user_count,
        per_user=per_user,
        daily_counts=daily_counts,
        messages=messages,
        urls=url_records,
    )


def chat_duration(chat: ExtractedChat) -> ChatDuration:
    """Chat lifetime in months (day span / 30.44)."""
    days = (chat.end_date - chat.start_date).days
    return ChatDuration(months=days / DAYS_PER_MONTH)
