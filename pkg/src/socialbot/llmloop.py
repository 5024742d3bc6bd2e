"""The generative loop and its routing into the dialogue trees.

The loop hands a bounded number of consecutive turns to the response
pipeline. Before every generation the terminating function runs three
checks, cheapest first: the turn budget, a disinterest phrase list, and a
disengagement classifier. The first hit ends the loop and routes control
back out: tree insertions resume their tree at the scripted continuation,
everything else returns to the dialogue selector.

Four situations route a conversation into a loop, in fixed precedence:
a node-level insertion directive, a proactive question riding on a matched
intent, an out-of-domain handoff, and a hybrid opener.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass, replace

from socialbot.core.clients import ClassifierClient
from socialbot.core.punctuation import detect_question
from socialbot.core.text import normalize_phrase
from socialbot.core.types import ConversationContext, Utterance
from socialbot.dialogue.engine import EngineOutput, Handoff
from socialbot.dialogue.matching import MatchKind
from socialbot.dialogue.trees import DialogueNode
from socialbot.pipeline.respond import PipelineResponse, ResponsePipeline

logger = logging.getLogger(__name__)

TERMINATING_CLASSES = frozenset(
    {"USER_DISINTEREST", "USER_INITIATED_TOPIC_SWITCH", "USER_REQUEST_STOP"}
)

# Seed phrases signalling disinterest; single-word entries must be the whole
# utterance, longer ones match anywhere. All matching happens on lowercased,
# punctuation-stripped text, which also covers the apostrophe variants.
DEFAULT_DISINTEREST_PHRASES = (
    "alright",
    "all right",
    "i don't know",
    "i want to chat about something else",
)


class EntryKind(enum.Enum):
    OOD = "ood"
    PROACTIVE_QUESTION = "proactive_question"
    HYBRID = "hybrid"
    TREE_INSERTION = "tree_insertion"


class TerminationReason(enum.Enum):
    TURN_LIMIT = "turn_limit"
    DISINTEREST_PHRASE = "disinterest_phrase"
    ODES_CLASS = "odes_class"
    NONE = "none"


class ExitRoute(enum.Enum):
    TO_SELECTOR = "to_selector"
    RESUME_TREE = "resume_tree"


@dataclass(frozen=True)
class LlmLoopEntry:
    kind: EntryKind
    topic: str
    origin_node: str | None = None
    resume_node: str | None = None
    max_turns: int = 3


@dataclass(frozen=True)
class LoopState:
    entry_kind: EntryKind
    max_turns: int
    turns_taken: int = 0
    origin_node: str | None = None
    resume_node: str | None = None
    topic: str = ""

    def __post_init__(self) -> None:
        if self.max_turns < 1:
            raise ValueError("max_turns must be >= 1")
        if not 0 <= self.turns_taken <= self.max_turns:
            raise ValueError("turns_taken must stay within [0, max_turns]")

    @classmethod
    def from_entry(cls, entry: LlmLoopEntry) -> "LoopState":
        return cls(
            entry_kind=entry.kind,
            max_turns=entry.max_turns,
            origin_node=entry.origin_node,
            resume_node=entry.resume_node,
            topic=entry.topic,
        )

    def as_dict(self) -> dict:
        return {
            "entry_kind": self.entry_kind.value,
            "max_turns": self.max_turns,
            "turns_taken": self.turns_taken,
            "origin_node": self.origin_node,
            "resume_node": self.resume_node,
            "topic": self.topic,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LoopState":
        return cls(
            entry_kind=EntryKind(data["entry_kind"]),
            max_turns=int(data["max_turns"]),
            turns_taken=int(data.get("turns_taken", 0)),
            origin_node=data.get("origin_node"),
            resume_node=data.get("resume_node"),
            topic=data.get("topic", ""),
        )


@dataclass(frozen=True)
class TerminationDecision:
    terminate: bool
    reason: TerminationReason
    detail: str = ""

    def __post_init__(self) -> None:
        if self.terminate == (self.reason is TerminationReason.NONE):
            raise ValueError("reason must be NONE exactly when not terminating")

    def as_dict(self) -> dict:
        return {"terminate": self.terminate, "reason": self.reason.value, "detail": self.detail}


def _phrase_hit(text: str, phrases: tuple[str, ...]) -> str | None:
    normalized = normalize_phrase(text)
    padded = f" {normalized} "
    for phrase in phrases:
        norm_phrase = normalize_phrase(phrase)
        if " " in norm_phrase:
            if f" {norm_phrase} " in padded:
                return phrase
        elif normalized == norm_phrase:
            return phrase
    return None


def should_terminate(
    state: LoopState,
    user_utterance: Utterance,
    odes: ClassifierClient | None,
    phrases: tuple[str, ...] = DEFAULT_DISINTEREST_PHRASES,
) -> TerminationDecision:
    """First criterion to fire wins: turn count, phrase list, classifier."""
    if state.turns_taken >= state.max_turns:
        return TerminationDecision(
            terminate=True,
            reason=TerminationReason.TURN_LIMIT,
            detail=f"{state.turns_taken}/{state.max_turns} turns used",
        )

    hit = _phrase_hit(user_utterance.display_text, phrases)
    if hit is not None:
        return TerminationDecision(
            terminate=True, reason=TerminationReason.DISINTEREST_PHRASE, detail=hit
        )

    if odes is not None:
        try:
            result = odes.classify(user_utterance.display_text)
        except Exception as exc:  # classifier outage: skip the criterion
            logger.warning("disengagement classifier failed, skipping: %s", exc)
        else:
            if result.label in TERMINATING_CLASSES:
                return TerminationDecision(
                    terminate=True, reason=TerminationReason.ODES_CLASS, detail=result.label
                )

    return TerminationDecision(terminate=False, reason=TerminationReason.NONE)


@dataclass(frozen=True)
class LoopTurnResult:
    response: PipelineResponse | None
    new_state: LoopState
    exited: bool
    exit_route: ExitRoute | None
    decision: TerminationDecision


def run_loop_turn(
    state: LoopState,
    context: ConversationContext,
    pipeline: ResponsePipeline,
    odes: ClassifierClient | None = None,
    phrases: tuple[str, ...] = DEFAULT_DISINTEREST_PHRASES,
) -> LoopTurnResult:
    """One loop iteration for the latest user turn in ``context``."""
    last = context.last_user_turn()
    if last is None:
        raise ValueError("context has no user turn")

    decision = should_terminate(state, last, odes, phrases)
    if decision.terminate:
        route = (
            ExitRoute.RESUME_TREE
            if state.entry_kind is EntryKind.TREE_INSERTION
            else ExitRoute.TO_SELECTOR
        )
        return LoopTurnResult(
            response=None, new_state=state, exited=True, exit_route=route, decision=decision
        )

    response = pipeline.respond(context)
    new_state = replace(state, turns_taken=state.turns_taken + 1)
    return LoopTurnResult(
        response=response, new_state=new_state, exited=False, exit_route=None, decision=decision
    )


def route_entry(
    output: EngineOutput,
    punctuated_utterance: str,
    node: DialogueNode | None,
    topic: str = "",
    default_max_turns: int = 3,
) -> LlmLoopEntry | None:
    """Decide whether the engine's step routes into a loop, and how.

    Precedence: TREE_INSERTION > PROACTIVE_QUESTION > OOD > HYBRID; a
    node-local directive outranks generic routing.
    """
    advanced = output.advanced_to
    if advanced is not None and advanced.llm_insertion is not None:
        insertion = advanced.llm_insertion
        return LlmLoopEntry(
            kind=EntryKind.TREE_INSERTION,
            topic=topic,
            origin_node=advanced.id,
            resume_node=insertion.resume_node,
            max_turns=insertion.max_turns or default_max_turns,
        )

    if (
        output.match is not None
        and output.match.kind is MatchKind.LOCAL
        and detect_question(punctuated_utterance)
    ):
        return LlmLoopEntry(
            kind=EntryKind.PROACTIVE_QUESTION, topic=topic, max_turns=default_max_turns
        )

    if output.handoff is Handoff.LLM_LOOP:
        return LlmLoopEntry(kind=EntryKind.OOD, topic=topic, max_turns=default_max_turns)

    if node is not None and node.is_hybrid_entry and output.hybrid_pending:
        return LlmLoopEntry(kind=EntryKind.HYBRID, topic=topic, max_turns=default_max_turns)

    return None
