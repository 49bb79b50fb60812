"""Registrable-domain derivation against a bundled public-suffix snapshot.

Implements the standard public-suffix matching algorithm: the prevailing
rule is the matching exception rule (minus its leftmost label) if any,
otherwise the matching rule with the most labels, otherwise the bare
top-level label. The registrable domain is the public suffix plus one
preceding label.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Optional

_SNAPSHOT_RESOURCE = "public_suffix_snapshot.dat"

_LABEL_RE = re.compile(r"^[a-z0-9]([a-z0-9-]*[a-z0-9])?$")


@dataclass(frozen=True)
class SuffixRules:
    exact: frozenset[tuple[str, ...]]
    wildcard: frozenset[tuple[str, ...]]
    exception: frozenset[tuple[str, ...]]

    @classmethod
    def parse(cls, text: str) -> "SuffixRules":
        exact, wildcard, exception = set(), set(), set()
        for raw in text.splitlines():
            line = raw.strip().lower()
            if not line or line.startswith("//"):
                continue
            if line.startswith("!"):
                exception.add(tuple(line[1:].split(".")))
            elif line.startswith("*."):
                wildcard.add(tuple(line.split(".")))
            else:
                exact.add(tuple(line.split(".")))
        return cls(frozenset(exact), frozenset(wildcard), frozenset(exception))

    @classmethod
    def from_file(cls, path: str | Path) -> "SuffixRules":
        return cls.parse(Path(path).read_text(encoding="utf-8"))


@lru_cache(maxsize=1)
def default_rules() -> SuffixRules:
    text = (
        resources.files("ucds")
        .joinpath("data")
        .joinpath(_SNAPSHOT_RESOURCE)
        .read_text(encoding="utf-8")
    )
    return SuffixRules.parse(text)


def _matches(rule: tuple[str, ...], labels: tuple[str, ...]) -> bool:
    if len(rule) > len(labels):
        return False
    return all(
        r == "*" or r == l for r, l in zip(reversed(rule), reversed(labels))
    )


def _suffix_length(labels: tuple[str, ...], rules: SuffixRules) -> int:
    for rule in rules.exception:
        if _matches(rule, labels):
            return len(rule) - 1
    best = 1
    for rule_set in (rules.exact, rules.wildcard):
        for rule in rule_set:
            if len(rule) > best and _matches(rule, labels):
                best = len(rule)
    return best


def normalize_host(host: str) -> Optional[tuple[str, ...]]:
    """Lowercase a hostname and split into labels; None when malformed."""
    host = host.strip().lower().rstrip(".")
    if not host:
        return None
    labels = tuple(host.split("."))
    if any(not _LABEL_RE.match(label) for label in labels):
        return None
    return labels


def registrable_domain(host: str, rules: SuffixRules | None = None) -> Optional[str]:
    """Public suffix plus one label, or None when the host is malformed,
    is itself a public suffix, or has no dot-separated structure to
    reduce (IP addresses are rejected)."""
    rules = rules or default_rules()
    labels = normalize_host(host)
    if labels is None:
        return None
    if all(label.isdigit() for label in labels):
        return None
    n = _suffix_length(labels, rules)
    if len(labels) <= n:
        return None
    return ".".join(labels[-(n + 1):])
