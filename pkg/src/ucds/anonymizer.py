"""Replacement of sender names with dense ordinal aliases.

Aliases are assigned in order of each sender's first message within a
single chat (User0, User1, ...). The name-to-alias table stays in memory
for the session only and is never serialized into any payload.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from datetime import date

from .errors import NoUserMessages
from .export_parser import KIND_USER, ChatLog

_ALPHABET = "ABCDEFGHIJKLMNOPQRSTUVWXYZ"


@dataclass
class AliasTable:
    """Ordered sender-name -> alias-index mapping. Local-only."""

    by_name: dict[str, int] = field(default_factory=dict)

    def assign(self, sender_name: str) -> int:
        if sender_name not in self.by_name:
            self.by_name[sender_name] = len(self.by_name)
        return self.by_name[sender_name]

    def names(self) -> list[str]:
        return list(self.by_name)

    def __len__(self) -> int:
        return len(self.by_name)


@dataclass
class AnonMessage:
    seq: int
    date: date
    alias: int
    body: str


@dataclass
class AnonChatLog:
    messages: list[AnonMessage]
    user_count: int


def anonymize(log: ChatLog) -> tuple[AnonChatLog, AliasTable]:
    """Replace sender names with first-appearance aliases.

    System messages are dropped; bodies pass through untouched (URL
    scrubbing happens downstream).
    """
    table = AliasTable()
    messages: list[AnonMessage] = []
    for message in log.messages:
        if message.kind != KIND_USER:
            continue
        alias = table.assign(message.sender_name)
        messages.append(
            AnonMessage(seq=message.seq, date=message.date, alias=alias, body=message.body)
        )
    if not messages:
        raise NoUserMessages("chat log has no user messages")
    return AnonChatLog(messages=messages, user_count=len(table)), table


def user_label(index: int) -> str:
    """Display label for a user alias: 0 -> "User0"."""
    if index < 0:
        raise ValueError("alias index must be >= 0")
    return f"User{index}"


def chat_label(index: int) -> str:
    """Display label for a chat: 0 -> "A", 25 -> "Z", 26 -> "AA"."""
    if index < 0:
        raise ValueError("chat index must be >= 0")
    label = ""
    index += 1
    while index:
        index, rem = divmod(index - 1, 26)
        label = _ALPHABET[rem] + label
    return label
