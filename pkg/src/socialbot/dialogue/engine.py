"""Tree-walking dialogue engine.

One ``step`` per user utterance: global intents are honoured anywhere, local
intents advance to their child node, anything unrecognised hands off to the
generative loop, and exhausted trees hand off to the dialogue selector (with
a fun-fact teed up for the boundary). Hybrid openers never consume the
utterance themselves; their follow-up belongs to the loop, so the step only
reports that a hybrid entry is pending.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field

from socialbot.core.text import normalize_phrase
from socialbot.core.types import UserProfile, Utterance
from socialbot.dialogue.matching import IntentMatch, MatchKind, match_intent
from socialbot.dialogue.selector import select_dialogue
from socialbot.dialogue.trees import DialogueNode, DialogueTree, IntentSpec
from socialbot.gateway.ui import TemplateHint

FUNFACT_PREFIX = "Here's something interesting: "

_SLOT_RE = re.compile(r"\{([a-z_][a-z0-9_]*)(?:\|([^{}]*))?\}")


class TemplateError(ValueError):
    """A response slot references a profile key with no value and no default."""


class Handoff(enum.Enum):
    NONE = "none"
    LLM_LOOP = "llm_loop"
    SELECTOR = "selector"


class GlobalAction:
    NONE = "none"
    SELECTOR = "selector"


@dataclass(frozen=True)
class GlobalHandler:
    spec: IntentSpec
    response: str
    action: str = GlobalAction.NONE


@dataclass
class EngineState:
    """Per-session progress through the registry; single-writer mutation."""

    active_tree: str | None = None
    node_id: str | None = None
    visited: set[str] = field(default_factory=set)
    offered_order: dict[str, int] = field(default_factory=dict)
    offer_counter: int = 0
    funfact_cursor: dict[str, int] = field(default_factory=dict)
    detected_topics: list[str] = field(default_factory=list)

    def as_dict(self) -> dict:
        return {
            "active_tree": self.active_tree,
            "node_id": self.node_id,
            "visited": sorted(self.visited),
            "offered_order": dict(self.offered_order),
            "offer_counter": self.offer_counter,
            "funfact_cursor": dict(self.funfact_cursor),
            "detected_topics": list(self.detected_topics),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "EngineState":
        return cls(
            active_tree=data.get("active_tree"),
            node_id=data.get("node_id"),
            visited=set(data.get("visited", [])),
            offered_order=dict(data.get("offered_order", {})),
            offer_counter=int(data.get("offer_counter", 0)),
            funfact_cursor=dict(data.get("funfact_cursor", {})),
            detected_topics=list(data.get("detected_topics", [])),
        )


@dataclass(frozen=True)
class EngineOutput:
    response: str | None
    ui_hint: TemplateHint | None
    handoff: Handoff
    match: IntentMatch | None
    source_node: str | None
    advanced_to: DialogueNode | None = None
    funfact: str | None = None
    hybrid_pending: bool = False
    global_action: str | None = None


def render_template(template: str, profile: UserProfile, node_id: str = "?") -> str:
    def substitute(match: re.Match) -> str:
        key, default = match.group(1), match.group(2)
        value = profile.get(key)
        if value is not None:
            return value
        if default is not None:
            return default
        raise TemplateError(f"node {node_id!r}: no profile value or default for slot {key!r}")

    return _SLOT_RE.sub(substitute, template)


class DialogueEngine:
    def __init__(
        self,
        registry: list[DialogueTree],
        global_handlers: list[GlobalHandler] | None = None,
        funfacts: dict[str, list[str]] | None = None,
        profile_topic_map: dict[str, str] | None = None,
    ) -> None:
        if not registry:
            raise ValueError("registry must be non-empty")
        ids = [t.id for t in registry]
        if len(set(ids)) != len(ids):
            raise ValueError("duplicate tree ids in registry")
        self.registry = list(registry)
        self.trees = {t.id: t for t in registry}
        self.global_handlers = list(global_handlers or [])
        self._handlers_by_name = {h.spec.name: h for h in self.global_handlers}
        self.funfacts = {k.lower(): list(v) for k, v in (funfacts or {}).items()}
        self.profile_topic_map = dict(profile_topic_map or {})

    # -- helpers --------------------------------------------------------------

    def current_node(self, state: EngineState) -> DialogueNode | None:
        if state.active_tree is None or state.node_id is None:
            return None
        return self.trees[state.active_tree].node(state.node_id)

    def note_topics(self, state: EngineState, utterance: Utterance) -> None:
        """Record registry topics mentioned by the user for the selector."""
        normalized = f" {normalize_phrase(utterance.display_text)} "
        for tree in self.registry:
            if f" {tree.topic} " in normalized and tree.topic not in state.detected_topics:
                state.detected_topics.append(tree.topic)
        del state.detected_topics[:-5]  # keep the most recent few

    def next_funfact(self, state: EngineState, topic: str) -> str | None:
        facts = self.funfacts.get(topic.lower())
        if not facts:
            return None
        cursor = state.funfact_cursor.get(topic, 0)
        state.funfact_cursor[topic] = cursor + 1
        return facts[cursor % len(facts)]

    def render(self, node: DialogueNode, profile: UserProfile) -> str:
        return render_template(node.bot_response, profile, node.id)

    # -- tree control ----------------------------------------------------------

    def start_tree(self, state: EngineState, tree_id: str,
                   profile: UserProfile) -> tuple[str, TemplateHint | None]:
        tree = self.trees[tree_id]
        state.active_tree = tree.id
        state.node_id = tree.root
        state.visited.add(tree.id)
        state.offered_order[tree.id] = state.offer_counter
        state.offer_counter += 1
        root = tree.node(tree.root)
        return self.render(root, profile), root.ui_hint

    def select_and_start(self, state: EngineState,
                         profile: UserProfile) -> tuple[str, TemplateHint | None, str]:
        if {t.id for t in self.registry} <= state.visited:
            state.visited.clear()
        tree_id = select_dialogue(
            profile,
            state.detected_topics,
            state.visited,
            self.registry,
            profile_topic_map=self.profile_topic_map,
            offered_order=state.offered_order,
        )
        response, hint = self.start_tree(state, tree_id, profile)
        return response, hint, tree_id

    def resume(self, state: EngineState, node_id: str,
               profile: UserProfile) -> tuple[str, TemplateHint | None]:
        tree = self.trees[state.active_tree]
        node = tree.node(node_id)
        state.node_id = node.id
        return self.render(node, profile), node.ui_hint

    # -- the step --------------------------------------------------------------

    def step(self, state: EngineState, utterance: Utterance,
             profile: UserProfile) -> EngineOutput:
        node = self.current_node(state)
        if node is None:
            raise ValueError("no active node; run the selector first")
        tree = self.trees[state.active_tree]
        self.note_topics(state, utterance)

        match = match_intent(utterance, node, [h.spec for h in self.global_handlers])

        if match.kind is MatchKind.GLOBAL:
            handler = self._handlers_by_name[match.intent]
            handoff = Handoff.SELECTOR if handler.action == GlobalAction.SELECTOR else Handoff.NONE
            return EngineOutput(
                response=handler.response,
                ui_hint=None,
                handoff=handoff,
                match=match,
                source_node=node.id,
                global_action=handler.action,
            )

        if node.is_hybrid_entry:
            return EngineOutput(
                response=None,
                ui_hint=None,
                handoff=Handoff.NONE,
                match=match,
                source_node=node.id,
                hybrid_pending=True,
            )

        if node.is_leaf():
            fact = self.next_funfact(state, tree.topic)
            return EngineOutput(
                response=FUNFACT_PREFIX + fact if fact else None,
                ui_hint=None,
                handoff=Handoff.SELECTOR,
                match=match,
                source_node=node.id,
                funfact=fact,
            )

        if match.kind is MatchKind.LOCAL:
            child = tree.node(match.child)
            state.node_id = child.id
            response = None if child.llm_insertion else self.render(child, profile)
            return EngineOutput(
                response=response,
                ui_hint=child.ui_hint,
                handoff=Handoff.NONE,
                match=match,
                source_node=node.id,
                advanced_to=child,
            )

        return EngineOutput(
            response=None,
            ui_hint=None,
            handoff=Handoff.LLM_LOOP,
            match=match,
            source_node=node.id,
        )
