from socialbot.pipeline.dosearch import (
    DO_NOT_SEARCH,
    DO_SEARCH,
    DoSearchClassifier,
    classify_do_search,
    do_search_score,
)
from socialbot.pipeline.querygen import EmptyQueryError, generate_query
from socialbot.pipeline.extract import KnowledgeSpan, NoSpanError, extract_knowledge
from socialbot.pipeline.decide import (
    Chosen,
    GeneratorVerdict,
    RuleFired,
    decide_output,
    is_nonsense,
    is_wh_question,
    knowledge_included,
)
from socialbot.pipeline.respond import (
    PipelineExhausted,
    PipelineResponse,
    ResponsePipeline,
)

__all__ = [
    "DO_NOT_SEARCH",
    "DO_SEARCH",
    "DoSearchClassifier",
    "classify_do_search",
    "do_search_score",
    "EmptyQueryError",
    "generate_query",
    "KnowledgeSpan",
    "NoSpanError",
    "extract_knowledge",
    "Chosen",
    "GeneratorVerdict",
    "RuleFired",
    "decide_output",
    "is_nonsense",
    "is_wh_question",
    "knowledge_included",
    "PipelineExhausted",
    "PipelineResponse",
    "ResponsePipeline",
]
