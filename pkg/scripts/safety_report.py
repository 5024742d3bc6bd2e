#!/usr/bin/env python3
"""Train the toy safety classifiers and report classifier-only vs combined F1.

Shows the value of the rule fallback: the test set mixes in-distribution
examples with insult stand-ins the classifiers have never seen, which only
the rule list can catch.
"""

from __future__ import annotations

import argparse
import json

from socialbot.safety.combine import evaluate
from socialbot.safety.ngram import PRESET_HYPERPARAMS, train, training_accuracy
from socialbot.safety.rules import RuleList
from socialbot.safety.synthetic import NOVEL_INSULTS, make_corpus, novel_unsafe_examples


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--train-size", type=int, default=200)
    parser.add_argument("--test-size", type=int, default=80)
    parser.add_argument("--seed", type=int, default=3)
    args = parser.parse_args()

    corpus = make_corpus(args.train_size, seed=args.seed)
    models = {}
    for offset, preset in enumerate(("cyberbully", "diasafety", "stereoset")):
        model = train(corpus, PRESET_HYPERPARAMS[preset], seed=args.seed + offset, name=preset)
        models[preset] = {
            "train_accuracy": round(training_accuracy(model, corpus), 4),
            "features": len(model.vocabulary),
        }
        models[f"_{preset}"] = model

    classifiers = [models.pop(f"_{p}") for p in ("cyberbully", "diasafety", "stereoset")]
    rules = RuleList.from_entries(list(NOVEL_INSULTS))
    test_set = make_corpus(args.test_size, seed=args.seed + 100) + novel_unsafe_examples()
    scores = evaluate(classifiers, rules, test_set)

    print(json.dumps({
        "models": models,
        "test_examples": len(test_set),
        "automatic_f1": round(scores["automatic_f1"], 4),
        "combined_f1": round(scores["combined_f1"], 4),
        "combined_gain": round(scores["combined_f1"] - scores["automatic_f1"], 4),
    }, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
