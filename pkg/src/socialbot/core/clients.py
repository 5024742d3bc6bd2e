"""Pluggable client contracts for generators, classifiers, and their results.

Real model servers implement these over HTTP; the bundled implementations are
deterministic mocks and heuristics so the whole control plane runs and tests
without any neural model.
"""

from __future__ import annotations

import enum
import time
from concurrent.futures import ThreadPoolExecutor, TimeoutError as FutureTimeout
from dataclasses import dataclass
from typing import Protocol, runtime_checkable

import httpx

from socialbot.core.types import ConversationContext


class ControlTag(enum.Enum):
    STATEMENT = "statement"
    QUESTION = "question"
    NONE = "none"


class KnowledgeSource(enum.Enum):
    """The four upstream knowledge services, ordered by usefulness."""

    EVI = "evi"
    WEB = "web"
    WIKI = "wiki"
    NEWS = "news"


@dataclass(frozen=True, slots=True)
class QueryKnowledgePair:
    query: str
    knowledge: str
    source: KnowledgeSource

    def __post_init__(self) -> None:
        if not self.query.strip():
            raise ValueError("query must be non-empty")
        if not self.knowledge.strip():
            raise ValueError("knowledge must be non-empty")


@dataclass(frozen=True, slots=True)
class GenerationRequest:
    context: ConversationContext
    knowledge: QueryKnowledgePair | None = None
    control_tag: ControlTag = ControlTag.NONE
    persona_prompt: str = ""


@dataclass(frozen=True, slots=True)
class GenerationResult:
    generator: str
    text: str | None = None
    error: str | None = None
    elapsed_ms: float = 0.0

    @property
    def ok(self) -> bool:
        return self.error is None and bool(self.text and self.text.strip())


@dataclass(frozen=True, slots=True)
class Classification:
    label: str
    probability: float

    def __post_init__(self) -> None:
        if not 0.0 <= self.probability <= 1.0:
            raise ValueError("probability must be in [0, 1]")


@runtime_checkable
class GeneratorClient(Protocol):
    """A response generator. Must return (or report failure) within the deadline."""

    name: str

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult: ...


@runtime_checkable
class ClassifierClient(Protocol):
    name: str

    def classify(self, text: str) -> Classification: ...


def call_with_deadline(client: GeneratorClient, request: GenerationRequest, deadline: float,
                       executor: ThreadPoolExecutor | None = None) -> GenerationResult:
    """Run ``client.generate`` with a hard wall-clock bound.

    A client that overruns the deadline yields a timeout result; the stray
    worker thread is abandoned (daemonised executors make this safe).
    """
    started = time.monotonic()
    own_executor = executor is None
    pool = executor or ThreadPoolExecutor(max_workers=1)
    try:
        future = pool.submit(client.generate, request, deadline)
        try:
            result = future.result(timeout=deadline)
        except FutureTimeout:
            return GenerationResult(
                generator=client.name,
                error="timeout",
                elapsed_ms=(time.monotonic() - started) * 1000.0,
            )
        except Exception as exc:  # client bugs surface as failed results
            return GenerationResult(
                generator=client.name,
                error=f"{type(exc).__name__}: {exc}",
                elapsed_ms=(time.monotonic() - started) * 1000.0,
            )
        return result
    finally:
        if own_executor:
            pool.shutdown(wait=False)


class HttpGeneratorClient:
    """Generator speaking the small HTTP contract: ``POST /generate``.

    Request body: ``{"turns": [...], "knowledge": {...}|null,
    "control_tag": str, "persona_prompt": str}``; response: ``{"text": str}``.
    """

    def __init__(self, name: str, base_url: str, client: httpx.Client | None = None):
        self.name = name
        self.base_url = base_url.rstrip("/")
        self._client = client or httpx.Client()

    def generate(self, request: GenerationRequest, deadline: float) -> GenerationResult:
        started = time.monotonic()
        payload = {
            "turns": [
                {"speaker": t.speaker.value, "text": t.display_text}
                for t in request.context.turns
            ],
            "knowledge": (
                {
                    "query": request.knowledge.query,
                    "knowledge": request.knowledge.knowledge,
                    "source": request.knowledge.source.value,
                }
                if request.knowledge
                else None
            ),
            "control_tag": request.control_tag.value,
            "persona_prompt": request.persona_prompt,
        }
        try:
            response = self._client.post(
                f"{self.base_url}/generate", json=payload, timeout=deadline
            )
            response.raise_for_status()
            text = response.json()["text"]
        except Exception as exc:
            return GenerationResult(
                generator=self.name,
                error=f"{type(exc).__name__}: {exc}",
                elapsed_ms=(time.monotonic() - started) * 1000.0,
            )
        return GenerationResult(
            generator=self.name,
            text=text,
            elapsed_ms=(time.monotonic() - started) * 1000.0,
        )


class HttpClassifierClient:
    """Classifier speaking ``POST /classify`` -> ``{"label": str, "probability": float}``."""

    def __init__(self, name: str, base_url: str, timeout: float = 2.0,
                 client: httpx.Client | None = None):
        self.name = name
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout
        self._client = client or httpx.Client()

    def classify(self, text: str) -> Classification:
        response = self._client.post(
            f"{self.base_url}/classify", json={"text": text}, timeout=self.timeout
        )
        response.raise_for_status()
        body = response.json()
        return Classification(label=body["label"], probability=float(body["probability"]))
