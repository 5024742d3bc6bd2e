"""Bag-of-n-grams linear text classifier.

A from-scratch stand-in for an off-the-shelf subword classifier: word n-grams
plus character n-grams feed an averaged one-hot embedding into a multinomial
logistic layer trained by SGD with linear learning-rate decay and inverse
label-frequency class weights. Training is deterministic under a fixed seed.

The hyper-parameter surface mirrors the usual knobs (epoch, lr, minn, maxn,
wordNgrams). When ``minn``/``maxn`` do not describe a valid range, character
n-grams are simply disabled.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from socialbot.core.clients import Classification
from socialbot.core.text import lower_tokens

SAFE = "SAFE"
UNSAFE = "UNSAFE"
LABELS = (SAFE, UNSAFE)

MODEL_FORMAT_VERSION = 1


class CorpusError(ValueError):
    """Corpus unusable for training: empty, or only one label present."""


@dataclass(frozen=True)
class Hyperparams:
    epoch: int = 5
    lr: float = 0.1
    minn: int = 0
    maxn: int = 0
    word_ngrams: int = 1

    def __post_init__(self) -> None:
        if self.epoch < 1:
            raise ValueError("epoch must be >= 1")
        if self.lr <= 0:
            raise ValueError("lr must be positive")
        if self.word_ngrams < 1:
            raise ValueError("word_ngrams must be >= 1")

    @property
    def char_range(self) -> range | None:
        """Valid char n-gram lengths, or None when disabled (minn/maxn unset
        or inverted)."""
        if self.minn < 1 or self.maxn < 1 or self.minn > self.maxn:
            return None
        return range(self.minn, self.maxn + 1)


# Hyper-parameters tuned per public dataset family.
PRESET_HYPERPARAMS: dict[str, Hyperparams] = {
    "cyberbully": Hyperparams(epoch=5, lr=0.05, minn=3, maxn=6, word_ngrams=4),
    "diasafety": Hyperparams(epoch=1, lr=0.09, minn=0, maxn=0, word_ngrams=5),
    "tweetoffensive": Hyperparams(epoch=11, lr=0.09, minn=6, maxn=3, word_ngrams=1),
    "stereoset": Hyperparams(epoch=55, lr=0.04, minn=6, maxn=3, word_ngrams=5),
}


def extract_features(text: str, hp: Hyperparams) -> list[str]:
    """Word n-grams (orders 1..word_ngrams) and char n-grams per token."""
    tokens = lower_tokens(text)
    feats: list[str] = []
    for order in range(1, hp.word_ngrams + 1):
        for i in range(len(tokens) - order + 1):
            feats.append("w:" + "_".join(tokens[i : i + order]))
    char_range = hp.char_range
    if char_range is not None:
        for token in tokens:
            wrapped = f"<{token}>"
            for n in char_range:
                for i in range(len(wrapped) - n + 1):
                    feats.append("c:" + wrapped[i : i + n])
    return feats


class NgramClassifier:
    """Trained model; classification is read-only and thread-safe."""

    def __init__(
        self,
        vocabulary: dict[str, int],
        weights: np.ndarray,
        bias: np.ndarray,
        hyperparams: Hyperparams,
        name: str = "ngram",
    ) -> None:
        self.vocabulary = vocabulary
        self.weights = weights
        self.bias = bias
        self.hyperparams = hyperparams
        self.name = name

    def _probabilities(self, text: str) -> np.ndarray | None:
        indices = [
            self.vocabulary[f]
            for f in extract_features(text, self.hyperparams)
            if f in self.vocabulary
        ]
        if not indices:
            return None
        x = np.bincount(indices, minlength=self.weights.shape[0]).astype(np.float64)
        x /= x.sum()
        scores = x @ self.weights + self.bias
        scores -= scores.max()
        exp = np.exp(scores)
        return exp / exp.sum()

    def classify(self, text: str) -> Classification:
        """Argmax label and probability; inputs with no known n-grams give
        the fail-safe default (SAFE at even odds)."""
        probs = self._probabilities(text)
        if probs is None:
            return Classification(label=SAFE, probability=0.5)
        index = int(np.argmax(probs))
        return Classification(label=LABELS[index], probability=float(probs[index]))

    # -- serialization -------------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "format": MODEL_FORMAT_VERSION,
            "name": self.name,
            "labels": list(LABELS),
            "hyperparams": {
                "epoch": self.hyperparams.epoch,
                "lr": self.hyperparams.lr,
                "minn": self.hyperparams.minn,
                "maxn": self.hyperparams.maxn,
                "word_ngrams": self.hyperparams.word_ngrams,
            },
            "vocabulary": self.vocabulary,
            "weights": self.weights.tolist(),
            "bias": self.bias.tolist(),
        }

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict()), encoding="utf-8")

    @classmethod
    def from_dict(cls, data: dict) -> "NgramClassifier":
        if data.get("format") != MODEL_FORMAT_VERSION:
            raise ValueError(f"unsupported model format: {data.get('format')!r}")
        hp = Hyperparams(**data["hyperparams"])
        return cls(
            vocabulary=dict(data["vocabulary"]),
            weights=np.asarray(data["weights"], dtype=np.float64),
            bias=np.asarray(data["bias"], dtype=np.float64),
            hyperparams=hp,
            name=data.get("name", "ngram"),
        )

    @classmethod
    def load(cls, path: str | Path) -> "NgramClassifier":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def train(
    corpus: list[tuple[str, str]],
    hp: Hyperparams,
    seed: int = 0,
    name: str = "ngram",
) -> NgramClassifier:
    """SGD training with linear lr decay and inverse-frequency class weights."""
    if not corpus:
        raise CorpusError("empty corpus")
    labels = {label for _, label in corpus}
    if not labels <= set(LABELS):
        raise CorpusError(f"unknown labels: {sorted(labels - set(LABELS))}")
    if len(labels) < 2:
        raise CorpusError("corpus must contain both SAFE and UNSAFE examples")

    vocabulary: dict[str, int] = {}
    encoded: list[tuple[list[int], int]] = []
    for text, label in corpus:
        indices = []
        for feat in extract_features(text, hp):
            if feat not in vocabulary:
                vocabulary[feat] = len(vocabulary)
            indices.append(vocabulary[feat])
        encoded.append((indices, LABELS.index(label)))

    counts = np.bincount([y for _, y in encoded], minlength=len(LABELS)).astype(np.float64)
    class_weights = counts.sum() / (len(LABELS) * np.maximum(counts, 1.0))

    weights = np.zeros((len(vocabulary), len(LABELS)), dtype=np.float64)
    bias = np.zeros(len(LABELS), dtype=np.float64)

    rng = np.random.default_rng(seed)
    order = np.arange(len(encoded))
    total_steps = hp.epoch * len(encoded)
    step = 0
    for _ in range(hp.epoch):
        rng.shuffle(order)
        for example_index in order:
            indices, y = encoded[example_index]
            lr_t = hp.lr * (1.0 - step / total_steps)
            step += 1
            if not indices:
                continue
            x_positions, x_counts = np.unique(indices, return_counts=True)
            x_values = x_counts.astype(np.float64) / len(indices)
            scores = x_values @ weights[x_positions] + bias
            scores -= scores.max()
            exp = np.exp(scores)
            probs = exp / exp.sum()
            grad = probs.copy()
            grad[y] -= 1.0
            grad *= class_weights[y]
            # Presence-scaled update: every present feature moves by the full
            # gradient. The averaged readout would otherwise shrink steps by
            # 1/len and need orders of magnitude more epochs to separate.
            weights[x_positions] -= lr_t * grad
            bias -= lr_t * grad

    return NgramClassifier(
        vocabulary=vocabulary, weights=weights, bias=bias, hyperparams=hp, name=name
    )


def training_accuracy(model: NgramClassifier, corpus: list[tuple[str, str]]) -> float:
    if not corpus:
        raise CorpusError("empty corpus")
    correct = sum(1 for text, label in corpus if model.classify(text).label == label)
    return correct / len(corpus)
