"""Session state and persistence.

A session is a snapshot (context, profile, engine state, loop state, UI
state) plus an append-only event log of per-turn debug traces. The storage
contract is small so the in-memory store and the file store are
interchangeable; both support restore-and-continue.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Protocol, runtime_checkable

from socialbot.core.types import (
    ConversationContext,
    FactEntry,
    Speaker,
    UserProfile,
    Utterance,
)
from socialbot.dialogue.engine import EngineState
from socialbot.gateway.ui import (
    Background,
    KaraokeSegment,
    Template,
    TemplateHint,
    UiState,
)
from socialbot.llmloop import LoopState


@dataclass
class SessionRecord:
    session_id: str
    context: ConversationContext
    profile: UserProfile
    engine_state: EngineState = field(default_factory=EngineState)
    loop_state: LoopState | None = None
    ui_state: UiState = field(default_factory=UiState)
    turn_count: int = 0

    def as_dict(self) -> dict:
        return {
            "session_id": self.session_id,
            "context": {
                "max_window": self.context.max_window,
                "turns": [
                    {
                        "speaker": t.speaker.value,
                        "text": t.text,
                        "punctuated_text": t.punctuated_text,
                        "timestamp": t.timestamp,
                    }
                    for t in self.context.turns
                ],
            },
            "profile": self.profile.as_dict(),
            "engine_state": self.engine_state.as_dict(),
            "loop_state": self.loop_state.as_dict() if self.loop_state else None,
            "ui_state": self.ui_state.as_dict(),
            "turn_count": self.turn_count,
        }

    @classmethod
    def from_dict(cls, data: dict, vocabulary: frozenset[str]) -> "SessionRecord":
        turns = tuple(
            Utterance(
                speaker=Speaker(t["speaker"]),
                text=t["text"],
                punctuated_text=t.get("punctuated_text"),
                timestamp=int(t["timestamp"]),
            )
            for t in data["context"]["turns"]
        )
        profile = UserProfile(vocabulary=vocabulary)
        for key, entry in data.get("profile", {}).items():
            profile.entries[key] = FactEntry(
                value=entry["value"],
                source_turn=int(entry["source_turn"]),
                confidence=float(entry["confidence"]),
            )
        ui_raw = data.get("ui_state", {})
        active_raw = ui_raw.get("active", {})
        active = TemplateHint(
            template=Template[active_raw.get("template", "KARAOKE_CHAT")],
            background=Background[active_raw.get("background", "IDLE")],
            preserve=bool(active_raw.get("preserve", False)),
            karaoke_segments=tuple(
                KaraokeSegment(text=s["text"], duration_ms=int(s["duration_ms"]))
                for s in active_raw.get("karaoke_segments", [])
            ),
        )
        loop_raw = data.get("loop_state")
        return cls(
            session_id=data["session_id"],
            context=ConversationContext(
                session_id=data["session_id"],
                turns=turns,
                max_window=int(data["context"].get("max_window", 6)),
            ),
            profile=profile,
            engine_state=EngineState.from_dict(data.get("engine_state", {})),
            loop_state=LoopState.from_dict(loop_raw) if loop_raw else None,
            ui_state=UiState(active=active, preserved=bool(ui_raw.get("preserved", False))),
            turn_count=int(data.get("turn_count", 0)),
        )


@runtime_checkable
class SessionStore(Protocol):
    def load(self, session_id: str) -> dict | None: ...

    def save(self, session_id: str, snapshot: dict) -> None: ...

    def append_event(self, session_id: str, event: dict) -> None: ...

    def events(self, session_id: str) -> list[dict]: ...

    def session_ids(self) -> list[str]: ...


class MemorySessionStore:
    def __init__(self) -> None:
        self._snapshots: dict[str, dict] = {}
        self._events: dict[str, list[dict]] = {}
        self._lock = threading.Lock()

    def load(self, session_id: str) -> dict | None:
        with self._lock:
            snapshot = self._snapshots.get(session_id)
            return json.loads(json.dumps(snapshot)) if snapshot is not None else None

    def save(self, session_id: str, snapshot: dict) -> None:
        with self._lock:
            self._snapshots[session_id] = json.loads(json.dumps(snapshot))

    def append_event(self, session_id: str, event: dict) -> None:
        with self._lock:
            self._events.setdefault(session_id, []).append(json.loads(json.dumps(event)))

    def events(self, session_id: str) -> list[dict]:
        with self._lock:
            return list(self._events.get(session_id, []))

    def session_ids(self) -> list[str]:
        with self._lock:
            return list(self._snapshots)


class FileSessionStore:
    """One ``<id>.json`` snapshot plus an ``<id>.events.jsonl`` log per session."""

    def __init__(self, directory: str | Path) -> None:
        self.directory = Path(directory)
        self.directory.mkdir(parents=True, exist_ok=True)
        self._lock = threading.Lock()

    def _snapshot_path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.json"

    def _events_path(self, session_id: str) -> Path:
        return self.directory / f"{session_id}.events.jsonl"

    def load(self, session_id: str) -> dict | None:
        path = self._snapshot_path(session_id)
        if not path.exists():
            return None
        return json.loads(path.read_text(encoding="utf-8"))

    def save(self, session_id: str, snapshot: dict) -> None:
        with self._lock:
            tmp = self._snapshot_path(session_id).with_suffix(".tmp")
            tmp.write_text(json.dumps(snapshot), encoding="utf-8")
            tmp.replace(self._snapshot_path(session_id))

    def append_event(self, session_id: str, event: dict) -> None:
        with self._lock:
            with open(self._events_path(session_id), "a", encoding="utf-8") as fh:
                fh.write(json.dumps(event) + "\n")

    def events(self, session_id: str) -> list[dict]:
        path = self._events_path(session_id)
        if not path.exists():
            return []
        return [json.loads(line) for line in path.read_text(encoding="utf-8").splitlines() if line]

    def session_ids(self) -> list[str]:
        return sorted(p.stem for p in self.directory.glob("*.json"))


def new_session_id() -> str:
    return uuid.uuid4().hex[:12]
