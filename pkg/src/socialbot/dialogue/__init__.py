from socialbot.dialogue.trees import (
    DialogueNode,
    DialogueTree,
    IntentScope,
    IntentSpec,
    LlmInsertion,
    LocalIntent,
    SchemaError,
    TreeValidationError,
    load_tree,
    load_tree_file,
)
from socialbot.dialogue.matching import IntentMatch, MatchKind, intent_score, match_intent
from socialbot.dialogue.skimmer import SkimmerRule, load_skimmer_rules, skim
from socialbot.dialogue.selector import select_dialogue, score_tree
from socialbot.dialogue.engine import (
    DialogueEngine,
    EngineOutput,
    EngineState,
    FUNFACT_PREFIX,
    GlobalAction,
    GlobalHandler,
    Handoff,
    TemplateError,
    render_template,
)

__all__ = [
    "DialogueNode",
    "DialogueTree",
    "IntentScope",
    "IntentSpec",
    "LlmInsertion",
    "LocalIntent",
    "SchemaError",
    "TreeValidationError",
    "load_tree",
    "load_tree_file",
    "IntentMatch",
    "MatchKind",
    "intent_score",
    "match_intent",
    "SkimmerRule",
    "load_skimmer_rules",
    "skim",
    "select_dialogue",
    "score_tree",
    "DialogueEngine",
    "EngineOutput",
    "EngineState",
    "FUNFACT_PREFIX",
    "GlobalAction",
    "GlobalHandler",
    "Handoff",
    "TemplateError",
    "render_template",
]
