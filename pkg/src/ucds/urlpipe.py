"""URL discovery, shortener resolution, and domain reduction.

Message bodies are scanned for links; links on the shortener allowlist
are resolved through their redirect chain; every link is then reduced to
its registrable domain with an optional country-code annotation. Full
URLs never survive past this stage.
"""

from __future__ import annotations

import re
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from datetime import date
from typing import Optional
from urllib.parse import urljoin, urlsplit

import httpx

from .errors import RedirectLoop, ResolutionFailed, UnparseableUrl
from .suffixes import SuffixRules, default_rules, registrable_domain

DEFAULT_SHORTENERS = (
    "bit.ly",
    "t.co",
    "tinyurl.com",
    "goo.gl",
    "ow.ly",
    "is.gd",
    "buff.ly",
    "youtu.be",
    "wa.me",
)

# Country codes commonly registered for brand appeal rather than
# geography; never annotated as ccTLDs.
DEFAULT_CCTLD_EXCLUSIONS = (".tv", ".io", ".me", ".ly", ".fm", ".co")

# Shorteners whose destination is a fixed domain; mapped without network.
STATIC_SHORTENER_ALIASES = {"youtu.be": "youtube.com"}

_URL_RE = re.compile(r"(?:\bhttps?://|\bwww\.)[^\s<>\"']+", re.IGNORECASE)
_TRAILING_PUNCTUATION = ".,)!?"


@dataclass
class UrlRecord:
    """A shared link reduced to its registrable domain."""

    domain: str
    cc_tld: Optional[str]
    was_shortened: bool
    message_seq: int
    alias: int
    date: date


def find_urls(body: str) -> list[str]:
    """Return URL substrings in order of appearance, trailing sentence
    punctuation stripped."""
    found = []
    for match in _URL_RE.finditer(body):
        candidate = match.group(0).rstrip(_TRAILING_PUNCTUATION)
        if candidate:
            found.append(candidate)
    return found


def _host_of(url: str) -> Optional[str]:
    target = url if "://" in url else "//" + url
    try:
        host = urlsplit(target).hostname
    except ValueError:
        return None
    return host or None


def _strip_www(host: str) -> str:
    return host[4:] if host.startswith("www.") and len(host) > 4 else host


def classify_cctld(
    domain: str, exclusions: tuple[str, ...] = DEFAULT_CCTLD_EXCLUSIONS
) -> Optional[str]:
    """Country-code suffix of a reduced domain, or None for generic TLDs
    and codes on the aesthetic-use exclusion list."""
    final = domain.rsplit(".", 1)[-1]
    if len(final) != 2 or not final.isalpha() or not final.isascii():
        return None
    cc = f".{final}"
    return None if cc in exclusions else cc


def reduce_to_domain(
    url: str,
    suffix_rules: SuffixRules | None = None,
    exclusions: tuple[str, ...] = DEFAULT_CCTLD_EXCLUSIONS,
) -> tuple[str, Optional[str]]:
    """Reduce a URL to (registrable domain, optional ccTLD).

    The domain carries no scheme, path, query, fragment, port,
    credentials, or "www." prefix. Raises UnparseableUrl when no
    registrable domain can be derived (malformed hosts, bare suffixes,
    IP addresses).
    """
    host = _host_of(url)
    if host is None:
        raise UnparseableUrl(f"no host in {url!r}")
    domain = registrable_domain(_strip_www(host), suffix_rules or default_rules())
    if domain is None:
        raise UnparseableUrl(f"no registrable domain in {url!r}")
    return domain, classify_cctld(domain, exclusions)


class RedirectResolver:
    """Resolves one redirect hop: the target URL, or None when the
    response is not a redirect. Implementations enforce a per-request
    timeout, never execute response bodies, and raise ResolutionFailed
    on network errors."""

    def resolve(self, url: str) -> Optional[str]:
        raise NotImplementedError


class HttpResolver(RedirectResolver):
    """Follows Location headers via HEAD (GET fallback), one hop at a
    time, bodies discarded. Safe for concurrent use."""

    _REDIRECT_CODES = (301, 302, 303, 307, 308)

    def __init__(self, timeout: float = 5.0):
        self._client = httpx.Client(follow_redirects=False, timeout=timeout)

    def resolve(self, url: str) -> Optional[str]:
        try:
            response = self._client.head(url)
            if response.status_code in (405, 501):
                request = self._client.build_request("GET", url)
                response = self._client.send(request, stream=True)
                response.close()
        except httpx.HTTPError as exc:
            raise ResolutionFailed(str(exc)) from exc
        if response.status_code in self._REDIRECT_CODES:
            location = response.headers.get("location")
            if location:
                return urljoin(url, location)
        return None

    def close(self) -> None:
        self._client.close()

    def __enter__(self) -> "HttpResolver":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def _degraded(url: str) -> str:
    """Fallback result for a failed resolution: the shortener's own
    domain."""
    try:
        return reduce_to_domain(url)[0]
    except UnparseableUrl:
        return _host_of(url) or url


def resolve_shortener(
    url: str,
    resolver: RedirectResolver,
    max_depth: int = 5,
    allowlist: tuple[str, ...] = DEFAULT_SHORTENERS,
) -> str:
    """Follow shortener redirects until a non-allowlisted host or the
    depth limit; return the final URL.

    Non-allowlisted inputs return unchanged with zero resolver calls.
    Redirect loops and network failures degrade to the shortener's own
    domain rather than aborting.
    """
    host = _host_of(url)
    if host is None:
        return url
    host = _strip_www(host)
    if host not in allowlist:
        return url
    if host in STATIC_SHORTENER_ALIASES:
        return f"https://{STATIC_SHORTENER_ALIASES[host]}"
    current = url
    seen = {url}
    try:
        for _ in range(max_depth):
            target = resolver.resolve(current)
            if target is None:
                return current
            if target in seen:
                raise RedirectLoop(f"revisited {target!r}")
            seen.add(target)
            current = target
            next_host = _host_of(current)
            if next_host is None or _strip_www(next_host) not in allowlist:
                return current
        return current
    except (RedirectLoop, ResolutionFailed):
        return _degraded(url)


@dataclass
class PipelineConfig:
    shortener_allowlist: tuple[str, ...] = DEFAULT_SHORTENERS
    cctld_exclusions: tuple[str, ...] = DEFAULT_CCTLD_EXCLUSIONS
    max_depth: int = 5
    timeout: float = 5.0
    offline: bool = False
    max_in_flight: int = 4


@dataclass
class ProcessedUrl:
    domain: str
    cc_tld: Optional[str]
    was_shortened: bool


class UrlPipeline:
    """find -> resolve -> reduce, with a diagnostics tally of dropped
    (unreducible) URLs.

    In offline mode no network is touched and every non-alias shortener
    degrades to its own domain. With a resolver present, batches resolve
    concurrently under a bounded in-flight limit; output order always
    matches input order.
    """

    def __init__(
        self,
        config: PipelineConfig | None = None,
        resolver: RedirectResolver | None = None,
        suffix_rules: SuffixRules | None = None,
    ):
        self.config = config or PipelineConfig()
        self.rules = suffix_rules or default_rules()
        if self.config.offline:
            self._resolver = None
        else:
            self._resolver = resolver
        self._owns_resolver = False
        self.dropped_urls = 0
        self._lock = threading.Lock()

    @classmethod
    def with_http_resolver(cls, config: PipelineConfig | None = None) -> "UrlPipeline":
        config = config or PipelineConfig()
        resolver = None if config.offline else HttpResolver(timeout=config.timeout)
        pipeline = cls(config=config, resolver=resolver)
        pipeline._owns_resolver = resolver is not None
        return pipeline

    def close(self) -> None:
        if self._owns_resolver and isinstance(self._resolver, HttpResolver):
            self._resolver.close()

    def _drop(self) -> None:
        with self._lock:
            self.dropped_urls += 1

    def process_url(self, url: str) -> Optional[ProcessedUrl]:
        host = _host_of(url)
        if host is None:
            self._drop()
            return None
        host = _strip_www(host)
        shortened = host in self.config.shortener_allowlist
        if not shortened:
            final = url
        elif host in STATIC_SHORTENER_ALIASES:
            final = f"https://{STATIC_SHORTENER_ALIASES[host]}"
        elif self._resolver is None:
            final = _degraded(url)
        else:
            final = resolve_shortener(
                url,
                self._resolver,
                max_depth=self.config.max_depth,
                allowlist=self.config.shortener_allowlist,
            )
        try:
            domain, cc_tld = reduce_to_domain(
                final, self.rules, self.config.cctld_exclusions
            )
        except UnparseableUrl:
            self._drop()
            return None
        return ProcessedUrl(domain=domain, cc_tld=cc_tld, was_shortened=shortened)

    def process_many(self, urls: list[str]) -> list[Optional[ProcessedUrl]]:
        if self._resolver is None or len(urls) <= 1:
            return [self.process_url(url) for url in urls]
        with ThreadPoolExecutor(max_workers=self.config.max_in_flight) as pool:
            return list(pool.map(self.process_url, urls))
