"""Deterministic conversation simulation for golden-file testing.

A script is a list of user turns. The simulator builds a fully mocked
service with an injected clock, drives every turn with debug traces on, and
canonicalises the result: wall-clock timing values are stripped (they are
the only nondeterministic part), so two runs with the same seed serialise
byte-for-byte identically.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import yaml

from socialbot.core.config import PipelineConfig
from socialbot.gateway.factory import build_service
from socialbot.gateway.service import GatewayService

_VOLATILE_KEY_SUFFIXES = ("_ms", "elapsed")


def canonicalize(value):
    """Strip wall-clock timing fields so traces compare byte-for-byte."""
    if isinstance(value, dict):
        return {
            key: canonicalize(inner)
            for key, inner in value.items()
            if not any(key.endswith(suffix) for suffix in _VOLATILE_KEY_SUFFIXES)
        }
    if isinstance(value, list):
        return [canonicalize(inner) for inner in value]
    return value


@dataclass(frozen=True)
class SimulationReport:
    seed: int
    session_id: str
    turns: list[dict]
    errors: list[str]

    def as_dict(self) -> dict:
        return {
            "seed": self.seed,
            "session_id": self.session_id,
            "turns": self.turns,
            "errors": self.errors,
        }

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def make_sim_service(seed: int = 0, cfg: PipelineConfig | None = None) -> GatewayService:
    cfg = cfg or PipelineConfig()
    clock_state = {"now": 1_700_000_000_000}

    def clock_ms() -> int:
        clock_state["now"] += 1000
        return clock_state["now"]

    return build_service(cfg=cfg, seed=seed, clock_ms=clock_ms)


def simulate(
    script: list[str],
    seed: int = 0,
    cfg: PipelineConfig | None = None,
    service: GatewayService | None = None,
    session_id: str = "sim",
) -> SimulationReport:
    if not script:
        raise ValueError("script must be non-empty")
    svc = service or make_sim_service(seed=seed, cfg=cfg)
    turns: list[dict] = []
    errors: list[str] = []
    for user_text in script:
        try:
            response = svc.handle_turn(session_id, user_text, debug=True)
        except Exception as exc:  # per-turn failures land in the report
            errors.append(f"{type(exc).__name__}: {exc}")
            turns.append({"user": user_text, "error": str(exc)})
            continue
        turns.append(
            {
                "user": user_text,
                "bot": response.bot_text,
                "template": response.template_hint.template.value,
                "background": response.template_hint.background.value,
                "trace": canonicalize(response.debug_trace),
            }
        )
    return SimulationReport(seed=seed, session_id=session_id, turns=turns, errors=errors)


def load_script(path: str | Path) -> tuple[list[str], int]:
    """Read a YAML script file: ``{seed: int, turns: [str, ...]}``."""
    raw = yaml.safe_load(Path(path).read_text(encoding="utf-8"))
    if isinstance(raw, list):
        return [str(t) for t in raw], 0
    return [str(t) for t in raw["turns"]], int(raw.get("seed", 0))
