"""Dialogue tree documents: schema, loading, and validation.

Trees ship as YAML files with a versioned ``format: 1`` header. A document
must describe a genuine tree: the root exists, every edge target exists,
every node is reachable, and no node has two parents or sits on a cycle.
Validation failures name the offending node.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from socialbot.gateway.ui import Background, Template, TemplateHint

TREE_FORMAT_VERSION = 1


class SchemaError(ValueError):
    """Document malformed: missing / mistyped fields or wrong format version."""


class TreeValidationError(ValueError):
    """Structurally broken tree; the message names the offending node."""


class IntentScope:
    LOCAL = "local"
    GLOBAL = "global"


@dataclass(frozen=True)
class IntentSpec:
    name: str
    examples: tuple[str, ...] = ()
    patterns: tuple[str, ...] = ()
    scope: str = IntentScope.LOCAL
    threshold: float = 0.5

    def __post_init__(self) -> None:
        if not self.examples and not self.patterns:
            raise SchemaError(f"intent {self.name!r} needs at least one example or pattern")
        if not 0.0 < self.threshold <= 1.0:
            raise SchemaError(f"intent {self.name!r} threshold must be in (0, 1]")
        for pattern in self.patterns:
            try:
                re.compile(pattern)
            except re.error as exc:
                raise SchemaError(f"intent {self.name!r} pattern does not compile: {exc}")

    def compiled_patterns(self) -> list[re.Pattern]:
        return [re.compile(p, re.IGNORECASE) for p in self.patterns]


@dataclass(frozen=True)
class LocalIntent:
    spec: IntentSpec
    child: str


@dataclass(frozen=True)
class LlmInsertion:
    """Replace this node's scripted acknowledgement with a bounded LLM loop,
    then continue the tree at ``resume_node``."""

    resume_node: str
    max_turns: int | None = None


@dataclass(frozen=True)
class DialogueNode:
    id: str
    bot_response: str
    local_intents: tuple[LocalIntent, ...] = ()
    llm_insertion: LlmInsertion | None = None
    is_hybrid_entry: bool = False
    ui_hint: TemplateHint | None = None

    def is_leaf(self) -> bool:
        return not self.local_intents


@dataclass(frozen=True)
class DialogueTree:
    id: str
    topic: str
    group: str
    root: str
    nodes: dict[str, DialogueNode] = field(default_factory=dict)

    def node(self, node_id: str) -> DialogueNode:
        return self.nodes[node_id]


def _parse_ui_hint(raw: dict, node_id: str) -> TemplateHint:
    try:
        template = Template[raw.get("template", "KARAOKE_CHAT")]
        background = Background[raw.get("background", "IDLE")]
    except KeyError as exc:
        raise SchemaError(f"node {node_id!r} ui hint names unknown value {exc}")
    return TemplateHint(
        template=template,
        background=background,
        preserve=bool(raw.get("preserve", False)),
    )


def _parse_intent(raw: dict, node_id: str, scope: str = IntentScope.LOCAL) -> IntentSpec:
    if "name" not in raw:
        raise SchemaError(f"node {node_id!r} has an unnamed intent")
    return IntentSpec(
        name=str(raw["name"]),
        examples=tuple(str(e) for e in raw.get("examples", [])),
        patterns=tuple(str(p) for p in raw.get("patterns", [])),
        scope=scope,
        threshold=float(raw.get("threshold", 0.5)),
    )


def _parse_node(node_id: str, raw: dict) -> DialogueNode:
    if not isinstance(raw, dict):
        raise SchemaError(f"node {node_id!r} must be a mapping")
    if "response" not in raw:
        raise SchemaError(f"node {node_id!r} is missing its response")
    intents = []
    for intent_raw in raw.get("intents", []):
        if "child" not in intent_raw:
            raise SchemaError(f"node {node_id!r} intent {intent_raw.get('name')!r} has no child")
        intents.append(
            LocalIntent(spec=_parse_intent(intent_raw, node_id), child=str(intent_raw["child"]))
        )
    insertion = None
    if raw.get("llm_insertion"):
        ins = raw["llm_insertion"]
        if "resume" not in ins:
            raise SchemaError(f"node {node_id!r} llm_insertion needs a resume node")
        max_turns = ins.get("max_turns")
        insertion = LlmInsertion(
            resume_node=str(ins["resume"]),
            max_turns=int(max_turns) if max_turns is not None else None,
        )
    ui_hint = _parse_ui_hint(raw["ui"], node_id) if raw.get("ui") else None
    return DialogueNode(
        id=node_id,
        bot_response=str(raw["response"]),
        local_intents=tuple(intents),
        llm_insertion=insertion,
        is_hybrid_entry=bool(raw.get("hybrid", False)),
        ui_hint=ui_hint,
    )


def load_tree(document: dict) -> DialogueTree:
    if not isinstance(document, dict):
        raise SchemaError("tree document must be a mapping")
    if document.get("format") != TREE_FORMAT_VERSION:
        raise SchemaError(f"unsupported tree format: {document.get('format')!r}")
    for required in ("id", "topic", "root", "nodes"):
        if required not in document:
            raise SchemaError(f"tree document missing field {required!r}")
    nodes_raw = document["nodes"]
    if not isinstance(nodes_raw, dict) or not nodes_raw:
        raise SchemaError("tree needs a non-empty nodes mapping")

    nodes = {str(nid): _parse_node(str(nid), raw) for nid, raw in nodes_raw.items()}
    tree = DialogueTree(
        id=str(document["id"]),
        topic=str(document["topic"]).lower(),
        group=str(document.get("group", "")),
        root=str(document["root"]),
        nodes=nodes,
    )
    _validate(tree)
    return tree


def load_tree_file(path: str | Path) -> DialogueTree:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            document = yaml.safe_load(fh)
        except yaml.YAMLError as exc:
            raise SchemaError(f"tree file {path} does not parse: {exc}")
    return load_tree(document)


def _validate(tree: DialogueTree) -> None:
    if tree.root not in tree.nodes:
        raise TreeValidationError(f"root node {tree.root!r} does not exist")

    parents: dict[str, str] = {}
    for node in tree.nodes.values():
        for intent in node.local_intents:
            if intent.child not in tree.nodes:
                raise TreeValidationError(
                    f"node {node.id!r} points at missing node {intent.child!r}"
                )
            if intent.child == tree.root:
                raise TreeValidationError(
                    f"edge {node.id!r} -> {tree.root!r} cycles back to the root"
                )
            if intent.child in parents and parents[intent.child] != node.id:
                raise TreeValidationError(
                    f"node {intent.child!r} has two parents "
                    f"({parents[intent.child]!r} and {node.id!r})"
                )
            if intent.child == node.id:
                raise TreeValidationError(f"node {node.id!r} loops onto itself")
            parents[intent.child] = node.id
        if node.llm_insertion and node.llm_insertion.resume_node not in tree.nodes:
            raise TreeValidationError(
                f"node {node.id!r} resumes at missing node {node.llm_insertion.resume_node!r}"
            )

    # Reachability walk over intent edges plus insertion-resume jumps. Cycles
    # among intent edges are impossible once every node has at most one parent
    # and the root has none; whatever this walk misses is detached.
    seen: set[str] = set()
    stack = [tree.root]
    while stack:
        current = stack.pop()
        if current in seen:
            continue
        seen.add(current)
        node = tree.nodes[current]
        stack.extend(intent.child for intent in node.local_intents)
        if node.llm_insertion:
            stack.append(node.llm_insertion.resume_node)
    unreachable = set(tree.nodes) - seen
    if unreachable:
        raise TreeValidationError(f"unreachable node {sorted(unreachable)[0]!r}")

    _validate_intent_separation(tree)


def _validate_intent_separation(tree: DialogueTree) -> None:
    """Each local intent's examples must match their own intent best."""
    from socialbot.dialogue.matching import intent_score

    for node in tree.nodes.values():
        specs = [li.spec for li in node.local_intents]
        for own_index, own in enumerate(specs):
            for example in own.examples:
                best_index = None
                best_score = 0.0
                for index, other in enumerate(specs):
                    score = intent_score(example, other)
                    if score >= other.threshold and score > best_score:
                        best_index, best_score = index, score
                if best_index is not None and best_index != own_index:
                    raise TreeValidationError(
                        f"node {node.id!r}: example {example!r} of intent "
                        f"{own.name!r} matches {specs[best_index].name!r} better"
                    )
