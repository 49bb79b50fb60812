"""Aggregate statistics over a directory of submitted payloads.

Participants are uneven (different chat counts, different chat sizes),
so headline aggregates are medians of per-participant medians. Flat
whole-dataset counterparts are reported alongside, labeled as such.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Optional

from .errors import AnalysisError, EmptyInput, NoUrls
from .extractor import KIND_TEXT, KIND_URL, ExtractedChat, chat_duration
from .payload import from_payload


@dataclass
class Participant:
    participant_id: str
    chats: list[ExtractedChat]


@dataclass
class Dataset:
    participants: list[Participant]

    def all_chats(self) -> list[ExtractedChat]:
        return [chat for participant in self.participants for chat in participant.chats]


def _label_key(label: str) -> tuple[int, str]:
    return (len(label), label)


def load_dataset(directory: str | Path) -> Dataset:
    """Load payload files grouped one subdirectory per participant.

    A flat directory of payload files (no subdirectories) is treated as
    a single participant named after the directory.
    """
    root = Path(directory)
    if not root.is_dir():
        raise AnalysisError(f"{root} is not a directory")
    participants: list[Participant] = []
    subdirs = sorted(p for p in root.iterdir() if p.is_dir())
    if subdirs:
        groups = [(p.name, p) for p in subdirs]
    else:
        groups = [(root.name, root)]
    for participant_id, group_dir in groups:
        chats = [
            from_payload(path.read_text(encoding="utf-8"))
            for path in sorted(group_dir.glob("*.json"))
        ]
        chats.sort(key=lambda c: (_label_key(c.chat_label), c.chat_id))
        if chats:
            participants.append(Participant(participant_id=participant_id, chats=chats))
    return Dataset(participants=participants)


# -- aggregation primitives -------------------------------------------


def median(values: list) -> float:
    """Middle element, or the mean of the two middle elements."""
    if not values:
        raise EmptyInput("median of empty list")
    ordered = sorted(values)
    mid = len(ordered) // 2
    if len(ordered) % 2:
        return ordered[mid]
    return (ordered[mid - 1] + ordered[mid]) / 2


def median_of_medians(
    dataset: Dataset, per_chat_metric: Callable[[ExtractedChat], Optional[float]]
) -> float:
    """Median across participants of each participant's median metric.

    Chats where the metric returns None are excluded; participants with
    no valid chats drop out of the outer median.
    """
    inner: list[float] = []
    for participant in dataset.participants:
        values = [
            value
            for value in (per_chat_metric(chat) for chat in participant.chats)
            if value is not None
        ]
        if values:
            inner.append(median(values))
    if not inner:
        raise EmptyInput("no participant has a chat with a defined metric")
    return median(inner)


# -- per-chat metrics --------------------------------------------------


def pct_url_messages(chat: ExtractedChat) -> float:
    if not chat.messages:
        raise EmptyInput("chat has no messages")
    url_count = sum(1 for message in chat.messages if message.kind == KIND_URL)
    return 100.0 * url_count / len(chat.messages)


def top_sharer_share(chat: ExtractedChat) -> float:
    """Largest per-alias share of the chat's shared links."""
    if not chat.urls:
        raise NoUrls("chat has no shared urls")
    counts = Counter(record.alias for record in chat.urls)
    return max(counts.values()) / len(chat.urls)


def domain_repeat_median(chat: ExtractedChat) -> float:
    """Median number of times each distinct domain was shared over the
    chat's lifetime."""
    if not chat.urls:
        raise NoUrls("chat has no shared urls")
    counts = Counter(record.domain for record in chat.urls)
    return median(list(counts.values()))


# -- dataset-level tables ----------------------------------------------


def _share_table(counts: Counter) -> list[tuple[str, float]]:
    total = sum(counts.values())
    rows = [(key, 100.0 * count / total) for key, count in counts.items()]
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows


def domain_frequency(dataset: Dataset) -> list[tuple[str, float]]:
    """Each domain's percentage of all shared URL records."""
    counts = Counter(record.domain for chat in dataset.all_chats() for record in chat.urls)
    if not counts:
        raise NoUrls("dataset has no shared urls")
    return _share_table(counts)


def tld_frequency(dataset: Dataset) -> list[tuple[str, float]]:
    """Each top-level domain's percentage of all shared URL records."""
    counts = Counter(
        "." + record.domain.rsplit(".", 1)[-1]
        for chat in dataset.all_chats()
        for record in chat.urls
    )
    if not counts:
        raise NoUrls("dataset has no shared urls")
    return _share_table(counts)


def cctld_presence(dataset: Dataset) -> tuple[list[str], float]:
    """Distinct ccTLDs in the dataset and the percentage of chats
    containing at least one ccTLD link."""
    chats = dataset.all_chats()
    if not any(chat.urls for chat in chats):
        raise NoUrls("dataset has no shared urls")
    present = sorted(
        {record.cc_tld for chat in chats for record in chat.urls if record.cc_tld}
    )
    with_cc = sum(
        1 for chat in chats if any(record.cc_tld for record in chat.urls)
    )
    return present, 100.0 * with_cc / len(chats)


def members_distribution(dataset: Dataset) -> tuple[list[tuple[str, str, int]], float]:
    """Per-chat member counts and their median."""
    rows = [
        (participant.participant_id, chat.chat_label, chat.num_users)
        for participant in dataset.participants
        for chat in participant.chats
    ]
    if not rows:
        raise EmptyInput("dataset has no chats")
    rows.sort(key=lambda row: (row[0], _label_key(row[1])))
    return rows, median([row[2] for row in rows])


# -- report -------------------------------------------------------------


@dataclass
class ParticipantRow:
    participant_id: str
    chat_count: int
    url_records: int
    median_chat_months: float


@dataclass
class DatasetReport:
    participant_rows: list[ParticipantRow] = field(default_factory=list)
    median_chats: Optional[float] = None
    median_urls: Optional[float] = None
    median_months: Optional[float] = None
    url_message_total: int = 0
    text_message_total: int = 0
    message_total: int = 0
    url_record_total: int = 0
    url_share_flat_pct: Optional[float] = None
    url_share_median_pct: Optional[float] = None
    top_sharer_mean: Optional[float] = None
    top_sharer_median: Optional[float] = None
    domain_repeat_median: Optional[float] = None
    domain_table: list[tuple[str, float]] = field(default_factory=list)
    tld_table: list[tuple[str, float]] = field(default_factory=list)
    cctlds: list[str] = field(default_factory=list)
    cctld_chat_pct: Optional[float] = None
    member_rows: list[tuple[str, str, int]] = field(default_factory=list)
    member_median: Optional[float] = None


def build_report(dataset: Dataset) -> DatasetReport:
    report = DatasetReport()
    chats = dataset.all_chats()
    if not chats:
        return report

    for participant in dataset.participants:
        months = [chat_duration(chat).display() for chat in participant.chats]
        report.participant_rows.append(
            ParticipantRow(
                participant_id=participant.participant_id,
                chat_count=len(participant.chats),
                url_records=sum(len(chat.urls) for chat in participant.chats),
                median_chat_months=round(median(months), 1),
            )
        )
    report.median_chats = median([row.chat_count for row in report.participant_rows])
    report.median_urls = median([row.url_records for row in report.participant_rows])
    report.median_months = median(
        [row.median_chat_months for row in report.participant_rows]
    )

    all_messages = [message for chat in chats for message in chat.messages]
    report.url_message_total = sum(1 for m in all_messages if m.kind == KIND_URL)
    report.text_message_total = sum(1 for m in all_messages if m.kind == KIND_TEXT)
    report.message_total = len(all_messages)
    report.url_record_total = sum(len(chat.urls) for chat in chats)

    if report.message_total:
        report.url_share_flat_pct = (
            100.0 * report.url_message_total / report.message_total
        )
        report.url_share_median_pct = median_of_medians(dataset, pct_url_messages)

    url_chats = [chat for chat in chats if chat.urls]
    if url_chats:
        report.top_sharer_mean = sum(
            top_sharer_share(chat) for chat in url_chats
        ) / len(url_chats)
        report.top_sharer_median = median_of_medians(
            dataset, lambda chat: top_sharer_share(chat) if chat.urls else None
        )
        report.domain_repeat_median = median_of_medians(
            dataset, lambda chat: domain_repeat_median(chat) if chat.urls else None
        )
        report.domain_table = domain_frequency(dataset)
        report.tld_table = tld_frequency(dataset)
        report.cctlds, report.cctld_chat_pct = cctld_presence(dataset)

    report.member_rows, report.member_median = members_distribution(dataset)
    return report


def _fmt_num(value: Optional[float]) -> str:
    if value is None:
        return "n/a"
    if float(value) == int(value):
        return str(int(value))
    return f"{value:.2f}".rstrip("0").rstrip(".")


def _fmt_pct(value: Optional[float], decimals: int = 1) -> str:
    if value is None:
        return "n/a"
    return f"{value:.{decimals}f}%"


def _table(rows: list[list[str]]) -> list[str]:
    if not rows:
        return []
    widths = [max(len(row[col]) for row in rows) for col in range(len(rows[0]))]
    return [
        "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
        for row in rows
    ]


def render_text(report: DatasetReport) -> str:
    lines: list[str] = ["UCDS dataset report", "=" * 19, ""]

    lines.append("[participants]")
    if report.participant_rows:
        rows = [["participant", "chats", "urls", "median_chat_months"]]
        for row in report.participant_rows:
            rows.append(
                [
                    row.participant_id,
                    str(row.chat_count),
                    str(row.url_records),
                    _fmt_num(row.median_chat_months),
                ]
            )
        rows.append(
            [
                "median",
                _fmt_num(report.median_chats),
                _fmt_num(report.median_urls),
                _fmt_num(report.median_months),
            ]
        )
        lines.extend(_table(rows))
    else:
        lines.append("n/a")
    lines.append("")

    lines.append("[message totals]")
    if report.message_total:
        lines.extend(
            _table(
                [
                    ["url messages", str(report.url_message_total)],
                    ["text messages", str(report.text_message_total)],
                    ["total", str(report.message_total)],
                    ["shared url records", str(report.url_record_total)],
                ]
            )
        )
    else:
        lines.append("n/a")
    lines.append("")

    lines.append("[url share of messages]")
    lines.extend(
        _table(
            [
                ["flat (all messages pooled)", _fmt_pct(report.url_share_flat_pct, 2)],
                [
                    "median of participant medians",
                    _fmt_pct(report.url_share_median_pct, 2),
                ],
            ]
        )
    )
    lines.append("")

    lines.append("[top sharer share of chat urls]")
    mean_pct = None if report.top_sharer_mean is None else 100 * report.top_sharer_mean
    median_pct = (
        None if report.top_sharer_median is None else 100 * report.top_sharer_median
    )
    lines.extend(
        _table(
            [
                ["mean across chats", _fmt_pct(mean_pct)],
                ["median of participant medians", _fmt_pct(median_pct)],
            ]
        )
    )
    lines.append("")

    lines.append("[times a domain repeats within a chat]")
    lines.append(
        f"median of participant medians  {_fmt_num(report.domain_repeat_median)}"
    )
    lines.append("")

    lines.append("[domain shares]")
    if report.domain_table:
        lines.extend(
            _table([[domain, _fmt_pct(pct)] for domain, pct in report.domain_table])
        )
    else:
        lines.append("n/a")
    lines.append("")

    lines.append("[tld shares]")
    if report.tld_table:
        lines.extend(
            _table([[tld, _fmt_pct(pct)] for tld, pct in report.tld_table])
        )
    else:
        lines.append("n/a")
    lines.append("")

    lines.append("[cctlds]")
    if report.cctld_chat_pct is not None:
        lines.append(f"present: {', '.join(report.cctlds) if report.cctlds else '(none)'}")
        lines.append(f"chats containing any cctld: {_fmt_pct(report.cctld_chat_pct)}")
    else:
        lines.append("n/a")
    lines.append("")

    lines.append("[members per chat]")
    if report.member_rows:
        rows = [["participant", "chat", "members"]]
        rows.extend(
            [participant, label, str(count)]
            for participant, label, count in report.member_rows
        )
        lines.extend(_table(rows))
        lines.append(f"median members: {_fmt_num(report.member_median)}")
    else:
        lines.append("n/a")
    lines.append("")

    return "\n".join(lines)


def render_json(report: DatasetReport) -> dict:
    return {
        "participants": [
            {
                "participant_id": row.participant_id,
                "chats": row.chat_count,
                "url_records": row.url_records,
                "median_chat_months": row.median_chat_months,
            }
            for row in report.participant_rows
        ],
        "medians": {
            "chats": report.median_chats,
            "url_records": report.median_urls,
            "chat_months": report.median_months,
        },
        "totals": {
            "url_messages": report.url_message_total,
            "text_messages": report.text_message_total,
            "messages": report.message_total,
            "url_records": report.url_record_total,
        },
        "url_share_pct": {
            "flat": report.url_share_flat_pct,
            "median_of_medians": report.url_share_median_pct,
        },
        "top_sharer_share": {
            "mean": report.top_sharer_mean,
            "median_of_medians": report.top_sharer_median,
        },
        "domain_repeat_median": report.domain_repeat_median,
        "domains": [
            {"domain": domain, "pct": pct} for domain, pct in report.domain_table
        ],
        "tlds": [{"tld": tld, "pct": pct} for tld, pct in report.tld_table],
        "cctlds": {"present": report.cctlds, "chat_pct": report.cctld_chat_pct},
        "members": {
            "rows": [
                {"participant_id": participant, "chat_label": label, "members": count}
                for participant, label, count in report.member_rows
            ],
            "median": report.member_median,
        },
    }


def render_json_text(report: DatasetReport) -> str:
    return json.dumps(render_json(report), indent=2) + "\n"
