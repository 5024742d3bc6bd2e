from socialbot.safety.ngram import (
    SAFE,
    UNSAFE,
    CorpusError,
    Hyperparams,
    NgramClassifier,
    PRESET_HYPERPARAMS,
    train,
    training_accuracy,
)
from socialbot.safety.rules import RuleList, rule_match
from socialbot.safety.combine import (
    ClassifierOutput,
    FinalLabel,
    FilterOutcome,
    SafetyFilter,
    SafetyVerdict,
    VerdictPath,
    combined_verdict,
    evaluate,
)
from socialbot.safety.synthetic import make_corpus, novel_unsafe_examples

__all__ = [
    "SAFE",
    "UNSAFE",
    "CorpusError",
    "Hyperparams",
    "NgramClassifier",
    "PRESET_HYPERPARAMS",
    "train",
    "training_accuracy",
    "RuleList",
    "rule_match",
    "ClassifierOutput",
    "FinalLabel",
    "FilterOutcome",
    "SafetyFilter",
    "SafetyVerdict",
    "VerdictPath",
    "combined_verdict",
    "evaluate",
    "make_corpus",
    "novel_unsafe_examples",
]
