from socialbot.core.types import (
    Speaker,
    Utterance,
    ConversationContext,
    FactEntry,
    UserProfile,
    UnknownFactKeyError,
    window,
)
from socialbot.core.config import PipelineConfig, load_config
from socialbot.core.clients import (
    ControlTag,
    QueryKnowledgePair,
    GenerationRequest,
    GenerationResult,
    Classification,
    GeneratorClient,
    ClassifierClient,
)
from socialbot.core.punctuation import punctuate, detect_question

__all__ = [
    "Speaker",
    "Utterance",
    "ConversationContext",
    "FactEntry",
    "UserProfile",
    "UnknownFactKeyError",
    "window",
    "PipelineConfig",
    "load_config",
    "ControlTag",
    "QueryKnowledgePair",
    "GenerationRequest",
    "GenerationResult",
    "Classification",
    "GeneratorClient",
    "ClassifierClient",
    "punctuate",
    "detect_question",
]
