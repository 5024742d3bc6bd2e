"""Dialogue selection: pick the next tree from profile facts and live topics.

Scoring: +2 for every detected topic equal to a tree's topic, +1 for every
profile fact whose key the config maps to that topic. Visited trees are
skipped until everything has been visited, at which point the whole registry
is back in play (the caller resets its visited set). Ties go to the tree
least recently offered, then registry order.
"""

from __future__ import annotations

from socialbot.core.types import UserProfile
from socialbot.dialogue.trees import DialogueTree


def score_tree(
    tree: DialogueTree,
    profile: UserProfile,
    detected_topics: list[str],
    profile_topic_map: dict[str, str],
) -> int:
    topic = tree.topic.lower()
    score = 2 * sum(1 for t in detected_topics if t.lower() == topic)
    score += sum(
        1
        for key in profile.keys()
        if profile_topic_map.get(key, "").lower() == topic
    )
    return score


def select_dialogue(
    profile: UserProfile,
    detected_topics: list[str],
    visited: set[str],
    registry: list[DialogueTree],
    profile_topic_map: dict[str, str] | None = None,
    offered_order: dict[str, int] | None = None,
) -> str:
    if not registry:
        raise ValueError("registry must be non-empty")
    mapping = profile_topic_map or {}
    offered = offered_order or {}

    eligible = [t for t in registry if t.id not in visited]
    if not eligible:
        eligible = list(registry)  # everything visited: reset semantics

    best_id: str | None = None
    best_key: tuple[int, int, int] | None = None
    for index, tree in enumerate(eligible):
        score = score_tree(tree, profile, detected_topics, mapping)
        # Higher score first, then least recently offered, then registry order.
        key = (-score, offered.get(tree.id, -1), index)
        if best_key is None or key < best_key:
            best_id, best_key = tree.id, key
    assert best_id is not None
    return best_id
