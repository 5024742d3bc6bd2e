"""Synthetic labeled corpus for training and testing the toy safety models.

The real training sets are external and license-bound, so the repo generates
its own: benign conversational sentences against mild insult constructions.
``NOVEL_INSULTS`` are deliberately excluded from generation; tests use them
as classifier blind spots that only the rule list can catch.
"""

from __future__ import annotations

import random

from socialbot.core.lines import SYSTEM_LINES
from socialbot.safety.ngram import SAFE, UNSAFE

SAFE_TEMPLATES = (
    "I really enjoyed the {} yesterday.",
    "The {} was absolutely wonderful.",
    "Let us talk about the {} for a while.",
    "My friend told me about a great {}.",
    "That {} sounds like a lot of fun.",
    "I would love to visit the {} next week.",
    "We spent the afternoon at the {}.",
    "Have you seen the new {} everyone mentions?",
    # Bot-style conversational lines keep second-person questions and
    # greetings from becoming accidental unsafe markers.
    "Hi there, shall we chat about the {}?",
    "What is your favorite {}?",
    "Did you enjoy the {} last weekend?",
    "You would really love that {}.",
    "Thanks for telling me about the {}.",
    "How was the {} you visited?",
    "I am really glad you brought up the {}.",
    "Here is something interesting about the {}.",
)

SAFE_TOPICS = (
    "concert", "garden", "museum", "recipe", "movie", "library",
    "festival", "beach", "mountain", "restaurant", "gallery", "park",
)

UNSAFE_TEMPLATES = (
    "you are a complete {}",
    "shut up you {}",
    "only a {} would say that",
    "everyone knows you are a {}",
    "stop being such a {}",
    "what a pathetic {} you are",
)

TRAIN_INSULTS = (
    "idiot", "moron", "loser", "fool", "clown", "jerk",
    "dimwit", "nitwit", "blockhead", "buffoon",
)

# Never generated: stand-ins for slurs the classifiers have not seen.
NOVEL_INSULTS = ("grobnik", "sleazoid", "wretchling", "scumlet")


def make_corpus(n: int, seed: int = 0, unsafe_fraction: float = 0.5) -> list[tuple[str, str]]:
    """Deterministic labeled corpus of ``n`` examples.

    The safe side mixes generated sentences with the bot's own canned
    persona lines; a filter that blocks its host's templates is miscalibrated
    by construction.
    """
    if n < 2:
        raise ValueError("need at least two examples")
    rng = random.Random(seed)
    n_unsafe = max(1, int(n * unsafe_fraction))
    n_safe = n - n_unsafe
    corpus: list[tuple[str, str]] = []
    for index in range(n_safe):
        if index % 3 == 2:
            corpus.append((rng.choice(SYSTEM_LINES), SAFE))
            continue
        template = rng.choice(SAFE_TEMPLATES)
        corpus.append((template.format(rng.choice(SAFE_TOPICS)), SAFE))
    for _ in range(n_unsafe):
        template = rng.choice(UNSAFE_TEMPLATES)
        corpus.append((template.format(rng.choice(TRAIN_INSULTS)), UNSAFE))
    rng.shuffle(corpus)
    return corpus


def novel_unsafe_examples() -> list[tuple[str, str]]:
    """Unsafe texts the classifiers cannot have learned.

    Built almost entirely from never-generated tokens, so the models see no
    meaningful evidence and stay low-confidence; only the rule list can catch
    these.
    """
    singles = [(insult, UNSAFE) for insult in NOVEL_INSULTS]
    pairs = [
        (f"{a} {b}", UNSAFE)
        for a, b in zip(NOVEL_INSULTS, NOVEL_INSULTS[1:] + NOVEL_INSULTS[:1])
    ]
    return singles + pairs


def load_fasttext_file(path) -> list[tuple[str, str]]:
    """Read ``__label__safe some text`` lines (the common export format)."""
    corpus = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            label_token, _, text = line.partition(" ")
            if not label_token.startswith("__label__") or not text:
                raise ValueError(f"malformed line: {line[:60]!r}")
            label = label_token[len("__label__"):].upper()
            if label not in (SAFE, UNSAFE):
                raise ValueError(f"unknown label {label!r}")
            corpus.append((text, label))
    return corpus


def load_tsv_file(path) -> list[tuple[str, str]]:
    """Read ``text<TAB>label`` lines."""
    corpus = []
    with open(path, "r", encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line.strip():
                continue
            text, _, label = line.rpartition("\t")
            label = label.strip().upper()
            if not text or label not in (SAFE, UNSAFE):
                raise ValueError(f"malformed line: {line[:60]!r}")
            corpus.append((text, label))
    return corpus
