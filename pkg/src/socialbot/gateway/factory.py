"""Assembly of a fully wired gateway from the bundled data files.

Everything neural is mocked or heuristic, so a default build is deterministic
under one seed: mock generators, heuristic classifiers, toy-trained safety
models, local knowledge sources.
"""

from __future__ import annotations

from importlib import resources
from pathlib import Path

import yaml

from socialbot.apihub.cache import SearchCache
from socialbot.apihub.fakes import default_sources
from socialbot.apihub.hub import ApiHub
from socialbot.core.config import PipelineConfig
from socialbot.core.mocks import CannedGenerator, MockGenerator, default_disengagement_classifier
from socialbot.dialogue.engine import DialogueEngine, GlobalHandler
from socialbot.dialogue.skimmer import SkimmerRule, load_skimmer_rules
from socialbot.dialogue.trees import DialogueTree, IntentScope, IntentSpec, load_tree_file
from socialbot.gateway.service import GatewayService
from socialbot.gateway.sessions import SessionStore
from socialbot.gateway.topics import TopicClassifier
from socialbot.pipeline.respond import ResponsePipeline
from socialbot.safety.combine import SafetyFilter
from socialbot.safety.ngram import PRESET_HYPERPARAMS, train
from socialbot.safety.rules import RuleList
from socialbot.safety.synthetic import make_corpus


def _data_path(name: str) -> Path:
    return Path(str(resources.files("socialbot.data").joinpath(name)))


def load_registry() -> list[DialogueTree]:
    tree_dir = _data_path("trees")
    return [load_tree_file(path) for path in sorted(tree_dir.glob("*.yaml"))]


def load_global_handlers() -> list[GlobalHandler]:
    raw = yaml.safe_load(_data_path("globals.yaml").read_text(encoding="utf-8")) or []
    handlers = []
    for item in raw:
        spec = IntentSpec(
            name=item["name"],
            examples=tuple(item.get("examples", [])),
            patterns=tuple(item.get("patterns", [])),
            scope=IntentScope.GLOBAL,
            threshold=float(item.get("threshold", 0.5)),
        )
        handlers.append(
            GlobalHandler(spec=spec, response=item["response"], action=item.get("action", "none"))
        )
    return handlers


def load_profile_config() -> tuple[frozenset[str], dict[str, str]]:
    raw = yaml.safe_load(_data_path("profile.yaml").read_text(encoding="utf-8"))
    return frozenset(raw["vocabulary"]), dict(raw.get("topic_map", {}))


def load_funfacts() -> dict[str, list[str]]:
    return yaml.safe_load(_data_path("funfacts.yaml").read_text(encoding="utf-8")) or {}


def build_engine() -> DialogueEngine:
    vocabulary, topic_map = load_profile_config()
    return DialogueEngine(
        registry=load_registry(),
        global_handlers=load_global_handlers(),
        funfacts=load_funfacts(),
        profile_topic_map=topic_map,
    )


def _authored_content_lines() -> list[str]:
    """Every line the bot can emit from its own content files.

    The filter trains on these as safe examples: authored content must never
    be blocked by a miscalibrated toy classifier.
    """
    from socialbot.dialogue.engine import FUNFACT_PREFIX, render_template
    from socialbot.core.types import UserProfile

    vocabulary, _ = load_profile_config()
    dummy = UserProfile(vocabulary=vocabulary)
    for key in vocabulary:
        dummy.insert(key, "music", source_turn=0, confidence=1.0)
    lines: list[str] = []
    for tree in load_registry():
        for node in tree.nodes.values():
            lines.append(render_template(node.bot_response, dummy, node.id))
    for facts in load_funfacts().values():
        lines.extend(FUNFACT_PREFIX + fact for fact in facts)
    lines.extend(handler.response for handler in load_global_handlers())
    return lines


def build_safety_filter(cfg: PipelineConfig, seed: int) -> SafetyFilter:
    corpus = make_corpus(160, seed=seed)
    corpus += [(line, "SAFE") for line in _authored_content_lines()]
    classifiers = [
        train(corpus, PRESET_HYPERPARAMS["cyberbully"], seed=seed, name="cyberbully"),
        train(corpus, PRESET_HYPERPARAMS["diasafety"], seed=seed + 1, name="diasafety"),
    ]
    rules = RuleList.from_file(_data_path("unsafe_rules.txt"))
    return SafetyFilter(
        classifiers=classifiers,
        rules=rules,
        threshold=cfg.safety_confidence_threshold,
        fallback_unsafe=cfg.safety_fallback_unsafe,
    )


def build_hub(clock=None) -> ApiHub:
    import time as _time

    from socialbot.apihub.remote import sources_from_env

    clock = clock or _time.time
    sources = sources_from_env(default_sources())
    return ApiHub(sources=sources, cache=SearchCache(clock=clock), clock=clock)


def build_pipeline(cfg: PipelineConfig, seed: int, hub: ApiHub | None = None) -> ResponsePipeline:
    return ResponsePipeline(
        main_chain=[
            MockGenerator("main-primary", seed=seed),
            MockGenerator("main-backup", seed=seed + 1),
        ],
        aux_chain=[
            MockGenerator("aux-primary", seed=seed + 2),
            MockGenerator("aux-backup", seed=seed + 3),
        ],
        final_backup=CannedGenerator("final-backup"),
        hub=hub if hub is not None else build_hub(),
        cfg=cfg,
    )


def build_service(
    cfg: PipelineConfig | None = None,
    seed: int | None = None,
    store: SessionStore | None = None,
    hub: ApiHub | None = None,
    pipeline: ResponsePipeline | None = None,
    clock_ms=None,
) -> GatewayService:
    cfg = cfg or PipelineConfig()
    seed = cfg.seed if seed is None else seed
    vocabulary, _ = load_profile_config()
    return GatewayService(
        engine=build_engine(),
        pipeline=pipeline or build_pipeline(cfg, seed, hub=hub),
        safety=build_safety_filter(cfg, seed),
        cfg=cfg,
        skimmer_rules=load_skimmer_rules(_data_path("skimmer_rules.yaml"), vocabulary),
        odes=default_disengagement_classifier(),
        topic_classifier=TopicClassifier(),
        store=store,
        profile_vocabulary=vocabulary,
        clock_ms=clock_ms,
    )
