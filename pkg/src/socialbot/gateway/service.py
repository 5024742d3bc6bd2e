"""The conversation service: one entry point per user turn.

``handle_turn`` is the full control plane: punctuate, skim facts, log a
safety verdict for the user text (never blocking it), route the turn through
either the active generative loop or the dialogue engine, pass every
candidate bot utterance through the safety filter, update the UI state under
preserve-mode semantics, and persist the session. Sessions are mutated by a
single writer at a time; distinct sessions proceed in parallel.
"""

from __future__ import annotations

import threading
import time
from dataclasses import dataclass, field

from socialbot.core.config import PipelineConfig
from socialbot.core.lines import ERROR_APOLOGY
from socialbot.core.clients import ClassifierClient
from socialbot.core.punctuation import punctuate
from socialbot.core.types import ConversationContext, Speaker, UserProfile, Utterance
from socialbot.dialogue.engine import DialogueEngine, EngineOutput, GlobalAction, Handoff
from socialbot.dialogue.skimmer import SkimmerRule, skim
from socialbot.gateway.sessions import MemorySessionStore, SessionRecord, SessionStore, new_session_id
from socialbot.gateway.topics import TopicClassifier
from socialbot.gateway.ui import (
    Background,
    Template,
    TemplateHint,
    UiState,
    apply_preserve,
    with_karaoke,
)
from socialbot.llmloop import (
    DEFAULT_DISINTEREST_PHRASES,
    EntryKind,
    ExitRoute,
    LoopState,
    LoopTurnResult,
    route_entry,
    run_loop_turn,
)
from socialbot.pipeline.respond import PipelineExhausted, ResponsePipeline
from socialbot.safety.combine import SafetyFilter

_LATENCY_BUCKETS_MS = (50, 100, 250, 500, 1000, 2000)


@dataclass
class GatewayMetrics:
    turns: int = 0
    latency_total_ms: float = 0.0
    latency_buckets: dict[str, int] = field(default_factory=dict)
    safety_blocks: int = 0
    user_unsafe_flags: int = 0
    loop_entries: dict[str, int] = field(default_factory=dict)
    selector_runs: int = 0
    pipeline_errors: int = 0

    def observe_latency(self, ms: float) -> None:
        self.turns += 1
        self.latency_total_ms += ms
        for bound in _LATENCY_BUCKETS_MS:
            if ms < bound:
                key = f"<{bound}ms"
                break
        else:
            key = f">={_LATENCY_BUCKETS_MS[-1]}ms"
        self.latency_buckets[key] = self.latency_buckets.get(key, 0) + 1

    def as_dict(self) -> dict:
        mean = self.latency_total_ms / self.turns if self.turns else 0.0
        return {
            "turns": self.turns,
            "mean_turn_latency_ms": round(mean, 3),
            "latency_buckets": dict(sorted(self.latency_buckets.items())),
            "safety_blocks": self.safety_blocks,
            "user_unsafe_flags": self.user_unsafe_flags,
            "loop_entries": dict(sorted(self.loop_entries.items())),
            "selector_runs": self.selector_runs,
            "pipeline_errors": self.pipeline_errors,
        }


@dataclass(frozen=True)
class TurnResponse:
    session_id: str
    bot_text: str
    template_hint: TemplateHint
    debug_trace: dict | None = None

    def as_dict(self) -> dict:
        body = {
            "session_id": self.session_id,
            "bot_text": self.bot_text,
            "template_hint": self.template_hint.as_dict(),
        }
        if self.debug_trace is not None:
            body["debug_trace"] = self.debug_trace
        return body


class GatewayService:
    def __init__(
        self,
        engine: DialogueEngine,
        pipeline: ResponsePipeline,
        safety: SafetyFilter,
        cfg: PipelineConfig,
        skimmer_rules: list[SkimmerRule] | None = None,
        odes: ClassifierClient | None = None,
        topic_classifier: TopicClassifier | None = None,
        store: SessionStore | None = None,
        profile_vocabulary: frozenset[str] = frozenset(),
        clock_ms=None,
        disinterest_phrases: tuple[str, ...] = DEFAULT_DISINTEREST_PHRASES,
    ) -> None:
        self.engine = engine
        self.pipeline = pipeline
        self.safety = safety
        self.cfg = cfg
        self.skimmer_rules = list(skimmer_rules or [])
        self.odes = odes
        self.topic_classifier = topic_classifier or TopicClassifier()
        self.store = store or MemorySessionStore()
        self.profile_vocabulary = profile_vocabulary
        self.clock_ms = clock_ms or (lambda: int(time.time() * 1000))
        self.disinterest_phrases = disinterest_phrases
        self.metrics = GatewayMetrics()
        self._metrics_lock = threading.Lock()
        self._session_locks: dict[str, threading.Lock] = {}
        self._locks_guard = threading.Lock()

    # -- session plumbing ------------------------------------------------------

    def _lock_for(self, session_id: str) -> threading.Lock:
        with self._locks_guard:
            if session_id not in self._session_locks:
                self._session_locks[session_id] = threading.Lock()
            return self._session_locks[session_id]

    def create_session(self, session_id: str | None = None) -> SessionRecord:
        sid = session_id or new_session_id()
        record = SessionRecord(
            session_id=sid,
            context=ConversationContext(session_id=sid, max_window=self.cfg.context_window),
            profile=UserProfile(vocabulary=self.profile_vocabulary),
        )
        self.store.save(sid, record.as_dict())
        return record

    def load_session(self, session_id: str) -> SessionRecord | None:
        snapshot = self.store.load(session_id)
        if snapshot is None:
            return None
        return SessionRecord.from_dict(snapshot, self.profile_vocabulary)

    def _next_timestamp(self, record: SessionRecord) -> int:
        now = self.clock_ms()
        if record.context.turns:
            return max(now, record.context.turns[-1].timestamp + 1)
        return now

    # -- turn handling ---------------------------------------------------------

    def handle_turn(self, session_id: str, user_text: str, debug: bool = False) -> TurnResponse:
        if not user_text.strip():
            raise ValueError("user text must be non-empty")
        started = time.monotonic()
        with self._lock_for(session_id):
            record = self.load_session(session_id) or self.create_session(session_id)
            response = self._handle_locked(record, user_text, debug)
        with self._metrics_lock:
            self.metrics.observe_latency((time.monotonic() - started) * 1000.0)
        return response

    def _handle_locked(self, record: SessionRecord, user_text: str, debug: bool) -> TurnResponse:
        record.turn_count += 1
        trace: dict = {"turn": record.turn_count, "user_text": user_text}

        punctuated = punctuate(user_text)
        trace["punctuated"] = punctuated
        utterance = Utterance(
            speaker=Speaker.USER,
            text=user_text,
            punctuated_text=punctuated,
            timestamp=self._next_timestamp(record),
        )
        record.context = record.context.append(utterance)

        facts = skim(utterance, self.skimmer_rules)
        for key, value, confidence in facts:
            record.profile.insert(key, value, source_turn=len(record.context) - 1,
                                  confidence=confidence)
        trace["skimmed"] = [[k, v, c] for k, v, c in facts]

        user_verdict = self.safety.verdict(punctuated)
        trace["user_safety"] = user_verdict.as_dict()
        if user_verdict.final.value == "UNSAFE":
            with self._metrics_lock:
                self.metrics.user_unsafe_flags += 1

        hint: TemplateHint | None = None
        error_turn = False
        bot_parts: list[str] = []
        try:
            if record.loop_state is not None:
                trace["route"] = "loop"
                hint = self._loop_turn(record, trace, bot_parts)
            elif self.engine.current_node(record.engine_state) is None:
                trace["route"] = "selector_initial"
                hint = self._initial_selector(record, trace, bot_parts)
            else:
                trace["route"] = "engine"
                hint = self._engine_turn(record, utterance, trace, bot_parts)
        except PipelineExhausted as exc:
            trace["error"] = f"pipeline_exhausted: {exc}"
            error_turn = True
            bot_parts = [ERROR_APOLOGY]
            hint = TemplateHint(template=Template.KARAOKE_AVATAR, background=Background.ERROR)
            with self._metrics_lock:
                self.metrics.pipeline_errors += 1

        bot_text = " ".join(part for part in bot_parts if part).strip()
        if not bot_text:
            bot_text = ERROR_APOLOGY
            if not error_turn:
                trace["error"] = "empty_response"
                hint = TemplateHint(template=Template.KARAOKE_AVATAR, background=Background.ERROR)

        outcome = self.safety.filter_response(bot_text)
        trace["safety_blocked"] = not outcome.allowed
        if outcome.allowed:
            final_text = bot_text
            final_verdict = outcome.verdict
        else:
            with self._metrics_lock:
                self.metrics.safety_blocks += 1
            trace["blocked_verdict"] = outcome.verdict.as_dict()
            final_text = outcome.replacement or ERROR_APOLOGY
            final_verdict = self.safety.verdict(final_text)
        trace["bot_safety"] = final_verdict.as_dict()
        trace["bot_text"] = final_text

        record.ui_state = apply_preserve(record.ui_state, hint)
        display_hint = with_karaoke(record.ui_state.active, final_text, self.cfg.speech_rate_wpm)
        trace["template"] = display_hint.template.value
        trace["background"] = display_hint.background.value

        bot_utterance = Utterance(
            speaker=Speaker.BOT,
            text=final_text,
            punctuated_text=None,
            timestamp=self._next_timestamp(record),
        )
        record.context = record.context.append(bot_utterance)

        self.store.save(record.session_id, record.as_dict())
        self.store.append_event(record.session_id, trace)
        return TurnResponse(
            session_id=record.session_id,
            bot_text=final_text,
            template_hint=display_hint,
            debug_trace=trace if debug else None,
        )

    # -- routing branches --------------------------------------------------------

    def _initial_selector(self, record: SessionRecord, trace: dict,
                          bot_parts: list[str]) -> TemplateHint | None:
        response, hint, tree_id = self.engine.select_and_start(
            record.engine_state, record.profile
        )
        trace["selected_tree"] = tree_id
        with self._metrics_lock:
            self.metrics.selector_runs += 1
        bot_parts.append(response)
        return hint

    def _switch_selector(self, record: SessionRecord, trace: dict,
                         bot_parts: list[str]) -> TemplateHint:
        """Mid-conversation topic change: topic-picker template."""
        response, hint, tree_id = self.engine.select_and_start(
            record.engine_state, record.profile
        )
        trace["selected_tree"] = tree_id
        with self._metrics_lock:
            self.metrics.selector_runs += 1
        bot_parts.append(response)
        background = hint.background if hint else Background.IDLE
        return TemplateHint(template=Template.IMAGE_LIST, background=background)

    def _loop_turn(self, record: SessionRecord, trace: dict,
                   bot_parts: list[str]) -> TemplateHint | None:
        assert record.loop_state is not None
        result: LoopTurnResult = run_loop_turn(
            record.loop_state,
            record.context,
            self.pipeline,
            odes=self.odes,
            phrases=self.disinterest_phrases,
        )
        trace["loop"] = {
            "decision": result.decision.as_dict(),
            "state": result.new_state.as_dict(),
            "exited": result.exited,
            "exit_route": result.exit_route.value if result.exit_route else None,
        }
        if result.exited:
            state = record.loop_state
            record.loop_state = None
            if result.exit_route is ExitRoute.RESUME_TREE:
                resume_node = state.resume_node or state.origin_node
                response, hint = self.engine.resume(
                    record.engine_state, resume_node, record.profile
                )
                trace["resumed_node"] = resume_node
                bot_parts.append(response)
                return hint
            return self._switch_selector(record, trace, bot_parts)

        record.loop_state = result.new_state
        assert result.response is not None
        trace["pipeline"] = result.response.as_dict()
        bot_parts.append(result.response.text)
        topic = self.topic_classifier.classify(result.response.text)
        return TemplateHint(
            template=Template.KARAOKE_AVATAR, background=Background[topic.label]
        )

    def _engine_turn(self, record: SessionRecord, utterance: Utterance, trace: dict,
                     bot_parts: list[str]) -> TemplateHint | None:
        output: EngineOutput = self.engine.step(
            record.engine_state, utterance, record.profile
        )
        trace["engine"] = {
            "match": output.match.as_dict() if output.match else None,
            "source_node": output.source_node,
            "advanced_to": output.advanced_to.id if output.advanced_to else None,
            "handoff": output.handoff.value,
            "hybrid_pending": output.hybrid_pending,
            "funfact": output.funfact,
            "global_action": output.global_action,
        }

        tree = self.engine.trees[record.engine_state.active_tree]
        source_node = tree.node(output.source_node) if output.source_node else None
        entry = route_entry(
            output,
            utterance.punctuated_text or utterance.text,
            source_node,
            topic=tree.topic,
            default_max_turns=self.cfg.llm_loop_max_turns,
        )
        if entry is not None:
            trace["loop_entry"] = {
                "kind": entry.kind.value,
                "origin_node": entry.origin_node,
                "resume_node": entry.resume_node,
                "max_turns": entry.max_turns,
                "topic": entry.topic,
            }
            with self._metrics_lock:
                self.metrics.loop_entries[entry.kind.value] = (
                    self.metrics.loop_entries.get(entry.kind.value, 0) + 1
                )
            record.loop_state = LoopState.from_entry(entry)
            return self._loop_turn(record, trace, bot_parts)

        if output.handoff is Handoff.SELECTOR:
            if output.response:
                bot_parts.append(output.response)
            return self._switch_selector(record, trace, bot_parts)

        if output.response is not None:
            bot_parts.append(output.response)
            return output.ui_hint

        # Defensive: a step variant with nothing to say and no loop entry.
        trace["fallback_generation"] = True
        pipeline_response = self.pipeline.respond(record.context)
        trace["pipeline"] = pipeline_response.as_dict()
        bot_parts.append(pipeline_response.text)
        topic = self.topic_classifier.classify(pipeline_response.text)
        return TemplateHint(template=Template.KARAOKE_AVATAR,
                            background=Background[topic.label])

    # -- observability -------------------------------------------------------------

    def metrics_snapshot(self) -> dict:
        with self._metrics_lock:
            gateway = self.metrics.as_dict()
        snapshot = {"gateway": gateway, "pipeline": self.pipeline.metrics.as_dict()}
        if self.pipeline.hub is not None:
            snapshot["apihub"] = self.pipeline.hub.metrics()
        return snapshot
