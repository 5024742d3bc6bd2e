"""End-to-end response generation.

One ``respond`` call runs: search-need classification and query generation in
parallel; knowledge retrieval and span extraction when a search is warranted;
both generators in parallel, each a two-instance chain (primary retried once
on a backup); the output-decision rules; and, only if both chains died, the
final-backup generator. Per-stage wall times are recorded on the result.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from socialbot.apihub.hub import ApiHub
from socialbot.apihub.keywords import EmptyKeywordsError, keywordize
from socialbot.core.clients import (
    Classification,
    ControlTag,
    GenerationRequest,
    GenerationResult,
    GeneratorClient,
    KnowledgeSource,
    QueryKnowledgePair,
    call_with_deadline,
)
from socialbot.core.config import PipelineConfig
from socialbot.core.types import ConversationContext, window
from socialbot.pipeline.decide import Chosen, GeneratorVerdict, RuleFired, decide_output
from socialbot.pipeline.dosearch import DO_SEARCH, DoSearchClassifier
from socialbot.pipeline.extract import NoSpanError, extract_knowledge
from socialbot.pipeline.querygen import EmptyQueryError, generate_query

DEFAULT_PERSONA = "A friendly, curious conversation partner who keeps things positive."


class PipelineExhausted(RuntimeError):
    """Primary generators, their backups, and the final backup all failed."""


@dataclass(frozen=True)
class PipelineResponse:
    text: str
    verdict: GeneratorVerdict
    timings: dict[str, float]
    do_search: Classification
    search_probability: float
    query: str | None = None
    keyword_query: str | None = None

    def as_dict(self) -> dict:
        return {
            "text": self.text,
            "verdict": self.verdict.as_dict(),
            "timings": {k: round(v, 3) for k, v in self.timings.items()},
            "do_search": {
                "label": self.do_search.label,
                "probability": round(self.do_search.probability, 6),
            },
            "search_probability": round(self.search_probability, 6),
            "query": self.query,
            "keyword_query": self.keyword_query,
        }


@dataclass
class PipelineMetrics:
    """Cumulative counters; guarded by a lock, read by the metrics endpoint."""

    calls: int = 0
    rule_counts: dict[str, int] = field(default_factory=dict)
    chosen_counts: dict[str, int] = field(default_factory=dict)
    latency_total_ms: float = 0.0
    exhausted: int = 0

    def record(self, verdict: GeneratorVerdict, total_ms: float) -> None:
        self.calls += 1
        self.rule_counts[verdict.rule_fired.value] = (
            self.rule_counts.get(verdict.rule_fired.value, 0) + 1
        )
        self.chosen_counts[verdict.chosen.value] = (
            self.chosen_counts.get(verdict.chosen.value, 0) + 1
        )
        self.latency_total_ms += total_ms

    def as_dict(self) -> dict:
        mean = self.latency_total_ms / self.calls if self.calls else 0.0
        return {
            "calls": self.calls,
            "rule_counts": dict(self.rule_counts),
            "chosen_counts": dict(self.chosen_counts),
            "mean_latency_ms": round(mean, 3),
            "exhausted": self.exhausted,
        }


class ResponsePipeline:
    def __init__(
        self,
        main_chain: list[GeneratorClient],
        aux_chain: list[GeneratorClient],
        final_backup: GeneratorClient,
        hub: ApiHub | None,
        cfg: PipelineConfig,
        do_search_classifier: DoSearchClassifier | None = None,
        persona_prompt: str = DEFAULT_PERSONA,
    ) -> None:
        if not main_chain or not aux_chain:
            raise ValueError("both generator chains need at least one instance")
        self.main_chain = list(main_chain)
        self.aux_chain = list(aux_chain)
        self.final_backup = final_backup
        self.hub = hub
        self.cfg = cfg
        self.do_search_classifier = do_search_classifier or DoSearchClassifier()
        self.persona_prompt = persona_prompt
        self.metrics = PipelineMetrics()
        self._metrics_lock = threading.Lock()

    # -- stages -------------------------------------------------------------

    def _classify(self, text: str) -> Classification:
        return self.do_search_classifier.classify(text)

    def _make_query(self, context: ConversationContext) -> str | None:
        try:
            return generate_query(context)
        except EmptyQueryError:
            return None

    def _retrieve(self, query: str, timings: dict[str, float]) -> tuple[QueryKnowledgePair | None, str | None]:
        if self.hub is None:
            return None, None
        try:
            keyword_query = keywordize(query)
        except EmptyKeywordsError:
            keyword_query = ""
        started = time.monotonic()
        results = self.hub.search(query, keyword_query, self.cfg)
        timings["search_ms"] = (time.monotonic() - started) * 1000.0

        answer = results.qa_answer()
        if answer:
            # Short QA answers skip span extraction entirely.
            return (
                QueryKnowledgePair(query=query, knowledge=answer, source=KnowledgeSource.EVI),
                keyword_query or None,
            )
        pooled = results.pooled_documents()
        if not pooled:
            return None, keyword_query or None
        started = time.monotonic()
        try:
            span = extract_knowledge([d.content for d in pooled], query, k=len(pooled))
        except NoSpanError:
            return None, keyword_query or None
        finally:
            timings["extract_ms"] = (time.monotonic() - started) * 1000.0
        source = pooled[span.document_index].source
        return (
            QueryKnowledgePair(query=query, knowledge=span.text, source=source),
            keyword_query or None,
        )

    def _run_chain(self, chain: list[GeneratorClient], request: GenerationRequest) -> GenerationResult:
        """Primary instance, then one backup retry; first usable result wins."""
        result = GenerationResult(generator="unattempted", error="no instances")
        for client in chain[:2]:
            result = call_with_deadline(client, request, self.cfg.generator_deadline)
            if result.ok:
                return result
        return result

    # -- entry point ----------------------------------------------------------

    def respond(self, context: ConversationContext,
                control_tag: ControlTag = ControlTag.NONE) -> PipelineResponse:
        last = context.last_user_turn()
        if last is None:
            raise ValueError("context has no user turn")
        user_text = last.display_text
        total_start = time.monotonic()
        timings: dict[str, float] = {}

        with ThreadPoolExecutor(max_workers=2) as pool:
            classify_start = time.monotonic()
            classify_future = pool.submit(self._classify, user_text)
            query_future = pool.submit(self._make_query, context)
            classification = classify_future.result()
            timings["do_search_ms"] = (time.monotonic() - classify_start) * 1000.0
            query = query_future.result()
            timings["query_gen_ms"] = (time.monotonic() - classify_start) * 1000.0

        search_probability = (
            classification.probability
            if classification.label == DO_SEARCH
            else 1.0 - classification.probability
        )

        knowledge: QueryKnowledgePair | None = None
        keyword_query: str | None = None
        if classification.label == DO_SEARCH and query:
            knowledge, keyword_query = self._retrieve(query, timings)

        ctx = window(context, self.cfg.context_window)
        request = GenerationRequest(
            context=ctx,
            knowledge=knowledge,
            control_tag=control_tag,
            persona_prompt=self.persona_prompt,
        )

        generators_start = time.monotonic()
        with ThreadPoolExecutor(max_workers=2) as pool:
            main_future = pool.submit(self._run_chain, self.main_chain, request)
            aux_future = pool.submit(self._run_chain, self.aux_chain, request)
            main_result = main_future.result()
            aux_result = aux_future.result()
        timings["generators_ms"] = (time.monotonic() - generators_start) * 1000.0
        timings["main_ms"] = main_result.elapsed_ms
        timings["aux_ms"] = aux_result.elapsed_ms

        decide_start = time.monotonic()
        verdict = decide_output(
            main_result,
            aux_result,
            knowledge,
            user_text,
            search_probability,
            self.cfg,
        )
        timings["decide_ms"] = (time.monotonic() - decide_start) * 1000.0

        if verdict.chosen is Chosen.MAIN:
            text = verdict.main_response or ""
        elif verdict.chosen is Chosen.AUX:
            text = verdict.aux_response or ""
        else:
            backup_start = time.monotonic()
            backup = call_with_deadline(self.final_backup, request, self.cfg.generator_deadline)
            timings["final_backup_ms"] = (time.monotonic() - backup_start) * 1000.0
            if not backup.ok:
                timings["total_ms"] = (time.monotonic() - total_start) * 1000.0
                with self._metrics_lock:
                    self.metrics.exhausted += 1
                raise PipelineExhausted(
                    f"all generators failed (main={main_result.error}, "
                    f"aux={aux_result.error}, backup={backup.error})"
                )
            text = backup.text or ""

        timings["total_ms"] = (time.monotonic() - total_start) * 1000.0
        with self._metrics_lock:
            self.metrics.record(verdict, timings["total_ms"])
        return PipelineResponse(
            text=text,
            verdict=verdict,
            timings=timings,
            do_search=classification,
            search_probability=search_probability,
            query=query,
            keyword_query=keyword_query,
        )
