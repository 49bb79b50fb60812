"""Local-first toolkit for privacy-constrained chat metadata sharing.

Pipeline: parse an exported chat text file, replace sender names with
ordinal aliases, reduce shared links to registrable domains, bundle the
constrained metadata, let the participant review and edit it, and only
then submit. A separate analysis layer aggregates submitted payloads.
"""

from .anonymizer import AliasTable, AnonChatLog, anonymize, chat_label, user_label
from .export_parser import (
    ChatLog,
    ParsedMessage,
    RawExport,
    detect_format,
    load_export,
    parse_export,
)
from .extractor import ChatDuration, ExtractedChat, chat_duration, extract
from .payload import from_payload, payload_bytes, to_payload
from .session import FileTarget, HttpTarget, ReviewSession
from .urlpipe import (
    HttpResolver,
    PipelineConfig,
    RedirectResolver,
    UrlPipeline,
    UrlRecord,
    classify_cctld,
    find_urls,
    reduce_to_domain,
    resolve_shortener,
)

__version__ = "0.1.0"

__all__ = [
    "AliasTable",
    "AnonChatLog",
    "ChatDuration",
    "ChatLog",
    "ExtractedChat",
    "FileTarget",
    "HttpResolver",
    "HttpTarget",
    "ParsedMessage",
    "PipelineConfig",
    "RawExport",
    "RedirectResolver",
    "ReviewSession",
    "UrlPipeline",
    "UrlRecord",
    "anonymize",
    "chat_duration",
    "chat_label",
    "classify_cctld",
    "detect_format",
    "extract",
    "find_urls",
    "from_payload",
    "load_export",
    "parse_export",
    "payload_bytes",
    "reduce_to_domain",
    "resolve_shortener",
    "to_payload",
    "user_label",
]
