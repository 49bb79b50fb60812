"""Exception types shared across the toolkit."""


class UcdsError(Exception):
    """Base class for all toolkit errors."""

    code = "error"


class ParserError(UcdsError):
    code = "parser_error"


class EmptyExport(ParserError):
    """The export file contains no usable lines."""

    code = "empty_export"


class UnrecognizedFormat(ParserError):
    """No known export dialect matches the input."""

    code = "unrecognized_format"


class NoUserMessages(ParserError):
    """The export contains only system messages."""

    code = "no_user_messages"


class OversizedExport(UcdsError):
    """The export file exceeds the configured size limit."""

    code = "oversized_export"


class UrlError(UcdsError):
    code = "url_error"


class UnparseableUrl(UrlError):
    """The URL has no host a registrable domain can be derived from."""

    code = "unparseable_url"


class RedirectLoop(UrlError):
    """A shortener redirect chain revisited a URL."""

    code = "redirect_loop"


class ResolutionFailed(UrlError):
    """A redirect lookup failed (timeout or network error)."""

    code = "resolution_failed"


class SessionError(UcdsError):
    code = "session_error"


class UnknownChat(SessionError):
    code = "unknown_chat"


class IndexOutOfRange(SessionError):
    code = "index_out_of_range"


class AlreadySubmitted(SessionError):
    code = "already_submitted"


class NoSubmissionTarget(SessionError):
    """Submit was requested without any file or HTTP target."""

    code = "no_submission_target"


class TargetUnreachable(SessionError):
    """A submission target could not be reached; the chat stays retryable."""

    code = "target_unreachable"


class PayloadError(UcdsError):
    """A serialized payload does not conform to the schema."""

    code = "payload_error"


class AnalysisError(UcdsError):
    code = "analysis_error"


class EmptyInput(AnalysisError):
    code = "empty_input"


class NoUrls(AnalysisError):
    code = "no_urls"
