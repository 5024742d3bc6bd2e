"""Output decision: which of the two generated candidates ships.

Four rules promote the knowledge-grounded main generator; when none applies
the auxiliary generator wins (it reads better in open chit-chat). The rules,
in fixed order:

1. Knowledge came from the QA source and the user asked a wh-question.
2. Knowledge exists, the aux response does not include it, and the estimated
   search-need probability is above the configured threshold.
3. The aux generator crashed.
4. The aux output is nonsense (foreign scripts or made-up words).

The final backup only ever ships when neither generator produced usable text.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from socialbot.core.clients import GenerationResult, KnowledgeSource, QueryKnowledgePair
from socialbot.core.config import PipelineConfig
from socialbot.core.text import (
    WH_WORDS,
    base_token,
    final_sentence,
    lower_tokens,
    sentence_spans,
    tokenize,
)
from socialbot.core.wordlists import stopwords, vocabulary


class RuleFired(enum.Enum):
    NONE = "none"
    R1_WH_EVI = "r1_wh_evi"
    R2_MISSING_KNOWLEDGE = "r2_missing_knowledge"
    R3_CRASH = "r3_crash"
    R4_NONSENSE = "r4_nonsense"


class Chosen(enum.Enum):
    MAIN = "main"
    AUX = "aux"
    FINAL_BACKUP = "final_backup"


@dataclass(frozen=True, slots=True)
class GeneratorVerdict:
    main_response: str | None
    aux_response: str | None
    chosen: Chosen
    rule_fired: RuleFired
    knowledge_used: QueryKnowledgePair | None = None

    def as_dict(self) -> dict:
        return {
            "main_response": self.main_response,
            "aux_response": self.aux_response,
            "chosen": self.chosen.value,
            "rule_fired": self.rule_fired.value,
            "knowledge_used": (
                {
                    "query": self.knowledge_used.query,
                    "knowledge": self.knowledge_used.knowledge,
                    "source": self.knowledge_used.source.value,
                }
                if self.knowledge_used
                else None
            ),
        }


def is_wh_question(text: str) -> bool:
    """True iff the final sentence starts with a wh-word ("how" included)."""
    tokens = tokenize(final_sentence(text))
    return bool(tokens) and base_token(tokens[0]) in WH_WORDS


_ALLOWED_TEXT_RE = re.compile(
    r"""^[A-Za-z0-9\s.,!?'"“”‘’\-–—:;()\[\]{}&%$#@/_+*=<>~^`|\\]*$"""
)

_SUFFIXES = ("ing", "ed", "es", "s")
_KNOWN_SUFFIXES = ("ing", "ed", "es", "s", "ly", "er", "est")


def _stem(word: str) -> str:
    for suffix in _SUFFIXES:
        if word.endswith(suffix) and len(word) - len(suffix) >= 3:
            return word[: -len(suffix)]
    return word


def _known_word(token: str, sentence_initial: bool) -> bool:
    lowered = token.lower()
    if lowered in vocabulary():
        return True
    for suffix in _KNOWN_SUFFIXES:
        if lowered.endswith(suffix) and len(lowered) - len(suffix) >= 3:
            base = lowered[: -len(suffix)]
            if base in vocabulary() or base + "e" in vocabulary():
                return True
    # Mid-sentence capitalised tokens read as proper nouns.
    return token[0].isupper() and not sentence_initial


def is_nonsense(text: str, known_word_floor: float = 0.5) -> bool:
    """Empty text, disallowed scripts, or mostly unknown words."""
    if not text or not text.strip():
        return True
    if not _ALLOWED_TEXT_RE.match(text):
        return True
    total = 0
    known = 0
    for start, end in sentence_spans(text):
        for position, token in enumerate(tokenize(text[start:end])):
            if not any(ch.isalpha() for ch in token):
                continue
            total += 1
            if _known_word(token, sentence_initial=(position == 0)):
                known += 1
    if total == 0:
        return False  # digits/punctuation only: odd but not gibberish
    return known / total < known_word_floor


def knowledge_included(knowledge: str, response: str, threshold: float = 0.5) -> bool:
    """At least ``threshold`` of the knowledge's content tokens, stemmed,
    appear in the response."""
    content = [t for t in lower_tokens(knowledge) if t not in stopwords()]
    if not content:
        return True  # vacuous: nothing substantive to include
    response_stems = {_stem(t) for t in lower_tokens(response)}
    hits = sum(1 for t in content if _stem(t) in response_stems)
    return hits / len(content) >= threshold


def decide_output(
    main: GenerationResult,
    aux: GenerationResult,
    knowledge: QueryKnowledgePair | None,
    user_input: str,
    do_search_prob: float,
    cfg: PipelineConfig,
) -> GeneratorVerdict:
    """Pure rule evaluation; the trace depends on the inputs alone."""
    aux_text = aux.text if aux.ok else None
    main_text = main.text if main.ok else None

    rule = RuleFired.NONE
    if knowledge is not None and knowledge.source is KnowledgeSource.EVI and is_wh_question(user_input):
        rule = RuleFired.R1_WH_EVI
    elif (
        knowledge is not None
        and aux_text is not None
        and not knowledge_included(
            knowledge.knowledge, aux_text, cfg.knowledge_inclusion_threshold
        )
        and do_search_prob > cfg.do_search_rule2_threshold
    ):
        rule = RuleFired.R2_MISSING_KNOWLEDGE
    elif aux_text is None:
        rule = RuleFired.R3_CRASH
    elif is_nonsense(aux_text, cfg.nonsense_known_word_floor):
        rule = RuleFired.R4_NONSENSE

    aux_usable = aux_text is not None and not is_nonsense(aux_text, cfg.nonsense_known_word_floor)
    main_usable = main_text is not None

    if rule is not RuleFired.NONE:
        if main_usable:
            chosen = Chosen.MAIN
        elif aux_usable:
            chosen = Chosen.AUX  # rule favoured main, but only aux survived
        else:
            chosen = Chosen.FINAL_BACKUP
    else:
        if aux_usable:
            chosen = Chosen.AUX
        elif main_usable:
            chosen = Chosen.MAIN
        else:
            chosen = Chosen.FINAL_BACKUP

    return GeneratorVerdict(
        main_response=main_text,
        aux_response=aux_text,
        chosen=chosen,
        rule_fired=rule,
        knowledge_used=knowledge,
    )
