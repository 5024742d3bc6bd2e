#!/usr/bin/env python3
"""Measure mock-pipeline latency and decision-rule shares over scripted load.

Drives N responses through the full pipeline (heuristic classifiers, local
knowledge sources, mock generators) and prints latency percentiles plus how
often each output-decision rule fired. With mocks the absolute numbers only
sanity-check plumbing overhead; the shape of the report mirrors what the
metrics endpoint exposes in a deployment.
"""

from __future__ import annotations

import argparse
import json
import random

from socialbot.core.config import PipelineConfig
from socialbot.core.types import ConversationContext, Speaker, Utterance
from socialbot.gateway.factory import build_pipeline

UTTERANCE_POOL = [
    "i love hiking in the mountains",
    "where is the eiffel tower?",
    "what are the top 10 popular songs right now?",
    "tell me a joke",
    "how tall is mount everest?",
    "my day was great, thanks for asking",
    "what is the capital of france?",
    "i had pasta for dinner",
    "who is the president of france?",
    "do you like pizza?",
]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--requests", type=int, default=200)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    cfg = PipelineConfig()
    pipeline = build_pipeline(cfg, seed=args.seed)
    rng = random.Random(args.seed)

    latencies = []
    for index in range(args.requests):
        text = rng.choice(UTTERANCE_POOL)
        context = ConversationContext(
            session_id="bench",
            turns=(Utterance(speaker=Speaker.USER, text=text, timestamp=index + 1),),
        )
        response = pipeline.respond(context)
        latencies.append(response.timings["total_ms"])

    latencies.sort()

    def pct(p: float) -> float:
        return latencies[min(len(latencies) - 1, int(p * len(latencies)))]

    report = {
        "requests": args.requests,
        "latency_ms": {
            "mean": round(sum(latencies) / len(latencies), 3),
            "p50": round(pct(0.50), 3),
            "p90": round(pct(0.90), 3),
            "p99": round(pct(0.99), 3),
        },
        "pipeline_metrics": pipeline.metrics.as_dict(),
        "apihub_metrics": pipeline.hub.metrics() if pipeline.hub else None,
    }
    print(json.dumps(report, indent=2))
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
