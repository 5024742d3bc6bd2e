"""Combined safety decision: classifier consensus with a rule-based fallback.

A text is safe only when every classifier says so. A unanimous SAFE with high
mean confidence is final; when confidence is too low to trust, the unsafe
phrase list decides instead. By default the fallback is fail-open (no rule
match means SAFE); a config switch flips that.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass

from socialbot.core.clients import ClassifierClient
from socialbot.core.lines import SAFE_REPLACEMENT
from socialbot.safety.ngram import SAFE, UNSAFE, CorpusError
from socialbot.safety.rules import RuleList, rule_match

logger = logging.getLogger(__name__)


class VerdictPath(enum.Enum):
    CLASSIFIER_CONSENSUS = "classifier_consensus"
    RULE_FALLBACK = "rule_fallback"


class FinalLabel(enum.Enum):
    SAFE = "SAFE"
    UNSAFE = "UNSAFE"


@dataclass(frozen=True)
class ClassifierOutput:
    name: str
    label: str
    confidence: float


@dataclass(frozen=True)
class SafetyVerdict:
    per_classifier: tuple[ClassifierOutput, ...]
    mean_confidence: float
    rule_matched: bool
    final: FinalLabel
    path: VerdictPath

    def as_dict(self) -> dict:
        return {
            "per_classifier": [
                {"name": o.name, "label": o.label, "confidence": round(o.confidence, 6)}
                for o in self.per_classifier
            ],
            "mean_confidence": round(self.mean_confidence, 6),
            "rule_matched": self.rule_matched,
            "final": self.final.value,
            "path": self.path.value,
        }


def combined_verdict(
    outputs: list[ClassifierOutput],
    rule_matched: bool,
    threshold: float,
    fallback_unsafe: bool = False,
) -> SafetyVerdict:
    if not outputs:
        raise ValueError("need at least one classifier output")
    if not 0.0 <= threshold <= 1.0:
        raise ValueError("threshold must be in [0, 1]")
    mean_confidence = sum(o.confidence for o in outputs) / len(outputs)

    if any(o.label == UNSAFE for o in outputs):
        final, path = FinalLabel.UNSAFE, VerdictPath.CLASSIFIER_CONSENSUS
    elif mean_confidence >= threshold:
        final, path = FinalLabel.SAFE, VerdictPath.CLASSIFIER_CONSENSUS
    else:
        path = VerdictPath.RULE_FALLBACK
        if rule_matched:
            final = FinalLabel.UNSAFE
        else:
            final = FinalLabel.UNSAFE if fallback_unsafe else FinalLabel.SAFE

    return SafetyVerdict(
        per_classifier=tuple(outputs),
        mean_confidence=mean_confidence,
        rule_matched=rule_matched,
        final=final,
        path=path,
    )


@dataclass(frozen=True)
class FilterOutcome:
    allowed: bool
    verdict: SafetyVerdict
    replacement: str | None


DEFAULT_REPLACEMENT = SAFE_REPLACEMENT


class SafetyFilter:
    """Applies the combined decision to every outbound response."""

    def __init__(
        self,
        classifiers: list[ClassifierClient],
        rules: RuleList,
        threshold: float = 0.8,
        fallback_unsafe: bool = False,
        replacement: str = DEFAULT_REPLACEMENT,
    ) -> None:
        if not classifiers:
            raise ValueError("safety filter needs at least one classifier")
        self.classifiers = list(classifiers)
        self.rules = rules
        self.threshold = threshold
        self.fallback_unsafe = fallback_unsafe
        self.replacement = replacement

    def verdict(self, text: str) -> SafetyVerdict:
        outputs = [
            ClassifierOutput(name=c.name, label=result.label, confidence=result.probability)
            for c in self.classifiers
            for result in (c.classify(text),)
        ]
        return combined_verdict(
            outputs,
            rule_matched=rule_match(text, self.rules),
            threshold=self.threshold,
            fallback_unsafe=self.fallback_unsafe,
        )

    def filter_response(self, text: str) -> FilterOutcome:
        verdict = self.verdict(text)
        if verdict.final is FinalLabel.SAFE:
            return FilterOutcome(allowed=True, verdict=verdict, replacement=None)
        logger.info("blocked unsafe response via %s", verdict.path.value)
        return FilterOutcome(allowed=False, verdict=verdict, replacement=self.replacement)


def _f1_unsafe(predictions: list[str], gold: list[str]) -> float:
    tp = sum(1 for p, g in zip(predictions, gold) if p == UNSAFE and g == UNSAFE)
    fp = sum(1 for p, g in zip(predictions, gold) if p == UNSAFE and g == SAFE)
    fn = sum(1 for p, g in zip(predictions, gold) if p == SAFE and g == UNSAFE)
    if tp == 0:
        return 0.0
    precision = tp / (tp + fp)
    recall = tp / (tp + fn)
    return 2 * precision * recall / (precision + recall)


def evaluate(
    classifiers: list[ClassifierClient],
    rules: RuleList,
    test_set: list[tuple[str, str]],
    threshold: float = 0.8,
    fallback_unsafe: bool = False,
) -> dict[str, float]:
    """UNSAFE-class F1 of classifier-only vs combined decisions, same data."""
    if not test_set:
        raise CorpusError("empty test set")
    gold = [label for _, label in test_set]
    if len(set(gold)) < 2:
        raise CorpusError("test set must contain both labels")

    automatic: list[str] = []
    combined: list[str] = []
    for text, _ in test_set:
        outputs = [
            ClassifierOutput(name=c.name, label=r.label, confidence=r.probability)
            for c in classifiers
            for r in (c.classify(text),)
        ]
        automatic.append(UNSAFE if any(o.label == UNSAFE for o in outputs) else SAFE)
        verdict = combined_verdict(
            outputs,
            rule_matched=rule_match(text, rules),
            threshold=threshold,
            fallback_unsafe=fallback_unsafe,
        )
        combined.append(verdict.final.value)

    return {
        "automatic_f1": _f1_unsafe(automatic, gold),
        "combined_f1": _f1_unsafe(combined, gold),
    }
