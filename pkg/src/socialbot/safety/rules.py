"""Rule-based unsafe-phrase matcher.

Entries are phrases or single words, matched word-boundary aware on
normalized text: a listed word never fires inside a longer word.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from socialbot.core.text import normalize_phrase


@dataclass(frozen=True)
class RuleList:
    entries: tuple[str, ...]
    normalized: tuple[str, ...]

    @classmethod
    def from_entries(cls, entries: list[str]) -> "RuleList":
        cleaned = [e.strip() for e in entries if e.strip()]
        normalized = []
        for entry in cleaned:
            norm = normalize_phrase(entry)
            if not norm:
                raise ValueError(f"rule entry normalises to nothing: {entry!r}")
            normalized.append(norm)
        return cls(entries=tuple(cleaned), normalized=tuple(normalized))

    @classmethod
    def from_file(cls, path: str | Path) -> "RuleList":
        lines = Path(path).read_text(encoding="utf-8").splitlines()
        return cls.from_entries([ln for ln in lines if not ln.lstrip().startswith("#")])

    def __len__(self) -> int:
        return len(self.entries)


def rule_match(text: str, rules: RuleList) -> bool:
    padded = f" {normalize_phrase(text)} "
    return any(f" {entry} " in padded for entry in rules.normalized)
