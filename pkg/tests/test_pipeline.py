import math
import random

import pytest
from hypothesis import given, strategies as st

from socialbot.apihub.cache import SearchCache
from socialbot.apihub.fakes import FakeQaSource, FakeWebSource, WikiIntroSource
from socialbot.apihub.hub import ApiHub
from socialbot.core.clients import (
    GenerationResult,
    KnowledgeSource,
    QueryKnowledgePair,
)
from socialbot.core.config import PipelineConfig
from socialbot.core.mocks import (
    CannedGenerator,
    FailingGenerator,
    MockGenerator,
    NonsenseGenerator,
)
from socialbot.pipeline.decide import (
    Chosen,
    RuleFired,
    decide_output,
    is_nonsense,
    is_wh_question,
    knowledge_included,
)
from socialbot.pipeline.dosearch import DO_NOT_SEARCH, DO_SEARCH, DoSearchClassifier
from socialbot.pipeline.extract import KnowledgeSpan, NoSpanError, extract_knowledge
from socialbot.pipeline.querygen import EmptyQueryError, generate_query
from socialbot.pipeline.respond import PipelineExhausted, ResponsePipeline
from tests.conftest import make_context

# The eight labeled calibration samples plus sixteen hand-labeled analogs.
DO_SEARCH_FIXTURE = [
    ("What are the top 10 popular songs right now?", DO_SEARCH, True),
    ("What is the movie Matrix about?", DO_SEARCH, True),
    ("What is the difference between Deep Learning and Machine Learning?", DO_SEARCH, True),
    (
        "I think watching movies is a really loss of time. "
        "One can surely do something more productive.",
        DO_NOT_SEARCH,
        True,
    ),
    ("Tell me a joke.", DO_NOT_SEARCH, True),
    ("I know a good joke, do you want to hear it?", DO_NOT_SEARCH, True),
    ("What's your favourite food?", DO_NOT_SEARCH, True),
    ("What do you do for living?", DO_NOT_SEARCH, True),
    ("Who is the president of France?", DO_SEARCH, False),
    ("What is the capital of Australia?", DO_SEARCH, False),
    ("When did the Berlin Wall fall?", DO_SEARCH, False),
    ("What's the latest news about the election?", DO_SEARCH, False),
    ("How tall is Mount Everest?", DO_SEARCH, False),
    ("Who won the World Cup in 2022?", DO_SEARCH, False),
    ("What is quantum computing?", DO_SEARCH, False),
    ("Where can I find information about the Roman Empire?", DO_SEARCH, False),
    ("Do you have any pets?", DO_NOT_SEARCH, False),
    ("I love hiking in the mountains.", DO_NOT_SEARCH, False),
    ("That's so funny!", DO_NOT_SEARCH, False),
    ("Do you like pizza?", DO_NOT_SEARCH, False),
    ("My day was great, thanks for asking.", DO_NOT_SEARCH, False),
    ("You are really nice.", DO_NOT_SEARCH, False),
    ("What's your opinion on cats?", DO_NOT_SEARCH, False),
    ("Haha, tell me another one.", DO_NOT_SEARCH, False),
]


class TestDoSearch:
    def test_fixture_accuracy(self):
        classifier = DoSearchClassifier()
        correct = sum(
            1 for text, label, _ in DO_SEARCH_FIXTURE
            if classifier.classify(text).label == label
        )
        assert correct / len(DO_SEARCH_FIXTURE) >= 0.8

    @pytest.mark.parametrize(
        "text,label",
        [(t, l) for t, l, calibration in DO_SEARCH_FIXTURE if calibration],
    )
    def test_calibration_samples_exact(self, text, label):
        assert DoSearchClassifier().classify(text).label == label

    def test_probability_valid(self):
        result = DoSearchClassifier().classify("Where is Prague?")
        assert 0.0 <= result.probability <= 1.0
        assert result.label == DO_SEARCH

    def test_search_probability_is_logistic_of_score(self):
        classifier = DoSearchClassifier()
        p = classifier.search_probability("Where is Prague?")
        assert 0.5 < p < 1.0


class TestGenerateQuery:
    def test_procedural_with_plural_pronoun(self):
        ctx = make_context(
            "Do you like animals? I love animals.",
            "I love them too. Today I will bake a fish, it is my favourite food.",
            "I love fish too. I used to live in Tennessee.",
            "how do you cook them?",
        )
        assert generate_query(ctx).lower() == "how to cook fish?"

    def test_focal_noun_phrase_of_last_turn(self):
        ctx = make_context(
            "Do you know anything about the Tasmanians?",
            "I didn't catch that.",
            "Only that they live in Tasmania.",
            "Do you have any pets? I have a tasmanian tiger.",
        )
        assert generate_query(ctx).lower() == "tasmanian tiger"

    def test_pronoun_resolves_to_phrase_in_history(self):
        ctx = make_context(
            "ok",
            "The house is fine to you?",
            "what house?",
            "The House of assembly. Do you know what that is?",
            "no, i don't, what is it?",
        )
        assert generate_query(ctx).lower() == "house of assembly"

    def test_plain_statement_yields_phrase(self):
        ctx = make_context("i really love rock music")
        assert generate_query(ctx) == "rock music"

    def test_no_content_anywhere_raises(self):
        ctx = make_context("yes", "no", "ok then")
        with pytest.raises(EmptyQueryError):
            generate_query(ctx)


class TestExtractKnowledge:
    DOCS = ["Paris is the capital of France.", "Berlin is in Germany."]

    def test_hand_computed_idf_scores(self):
        span = extract_knowledge(self.DOCS, "capital of France", k=2)
        # Oracle: idf(t) = ln(1 + N/df). "capital" and "france" appear in one
        # of two documents each, so the winning sentence scores 2*ln(3).
        expected = 2 * math.log(1 + 2 / 1)
        assert span.document_index == 0
        assert span.text == "Paris is the capital of France."
        assert span.score == pytest.approx(expected)

    def test_single_sentence_doc(self):
        span = extract_knowledge(["Only sentence here."], "sentence", k=1)
        assert span.text == "Only sentence here."
        assert span.char_range == (0, len("Only sentence here."))

    def test_no_overlap_raises(self):
        with pytest.raises(NoSpanError):
            extract_knowledge(self.DOCS, "volcanoes", k=2)

    def test_tie_breaks_to_earliest_document_and_sentence(self):
        docs = ["Cats sleep. Cats play.", "Cats sleep a lot."]
        span = extract_knowledge(docs, "cats", k=2)
        assert span.document_index == 0
        assert span.char_range[0] == 0

    def test_k_limits_documents_considered(self):
        docs = ["Nothing relevant here.", "Volcanoes erupt lava."]
        with pytest.raises(NoSpanError):
            extract_knowledge(docs, "volcanoes", k=1)

    @given(
        docs=st.lists(
            st.text(alphabet="abcdef .", min_size=3, max_size=60).filter(lambda s: s.strip(". ")),
            min_size=1,
            max_size=4,
        ),
        query=st.text(alphabet="abcdef ", min_size=1, max_size=20).filter(lambda s: s.strip()),
    )
    def test_span_matches_source_slice(self, docs, query):
        try:
            span = extract_knowledge(docs, query, k=len(docs))
        except (NoSpanError, ValueError):
            return
        start, end = span.char_range
        assert docs[span.document_index][start:end] == span.text


class TestWhQuestion:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Where is Prague?", True),
            ("Is it Vienna?", False),
            ("tell me more", False),
            ("I wonder. What time is it?", True),
            ("How does it work?", True),
            ("What? No.", False),
        ],
    )
    def test_cases(self, text, expected):
        assert is_wh_question(text) is expected


class TestNonsense:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("Привет there", True),
            ("I love hiking.", False),
            ("xqzt blorp vmmp", True),
            ("", True),
            ("   ", True),
            ("The Eiffel Tower is in Paris, France.", False),
            ("你好 world", True),
            ("I met Professor Grindlewhack yesterday.", False),  # proper noun ok
        ],
    )
    def test_cases(self, text, expected):
        assert is_nonsense(text) is expected


class TestKnowledgeIncluded:
    def test_full_overlap(self):
        assert knowledge_included(
            "Jupiter is the largest planet", "Jupiter is indeed the largest planet!"
        )

    def test_no_overlap(self):
        assert not knowledge_included("Jupiter is the largest planet", "I love space.")

    def test_two_of_three_tokens_passes_half_threshold(self):
        assert knowledge_included("Jupiter largest planet", "the largest planet")


def ok(name, text):
    return GenerationResult(generator=name, text=text)


def crashed(name):
    return GenerationResult(generator=name, error="crash")


def make_knowledge(source=KnowledgeSource.EVI, knowledge="Paris is the capital of France."):
    return QueryKnowledgePair(query="capital of France", knowledge=knowledge, source=source)


class TestDecideOutput:
    def test_rule1_qa_knowledge_plus_wh_question(self, cfg):
        verdict = decide_output(
            ok("main", "The Eiffel Tower is in Paris."),
            ok("aux", "Paris is lovely, the Eiffel Tower is right there."),
            make_knowledge(),
            "where is the Eiffel Tower?",
            do_search_prob=0.6,
            cfg=cfg,
        )
        assert verdict.rule_fired is RuleFired.R1_WH_EVI
        assert verdict.chosen is Chosen.MAIN

    def test_rule2_knowledge_missing_and_high_probability(self, cfg):
        verdict = decide_output(
            ok("main", "Jupiter is the largest planet."),
            ok("aux", "I enjoy talking with you."),
            make_knowledge(source=KnowledgeSource.WIKI, knowledge="Jupiter largest planet"),
            "tell me about that planet",
            do_search_prob=0.95,
            cfg=cfg,
        )
        assert verdict.rule_fired is RuleFired.R2_MISSING_KNOWLEDGE
        assert verdict.chosen is Chosen.MAIN

    def test_rule2_requires_probability_above_threshold(self, cfg):
        verdict = decide_output(
            ok("main", "Jupiter is the largest planet."),
            ok("aux", "I enjoy talking with you."),
            make_knowledge(source=KnowledgeSource.WIKI, knowledge="Jupiter largest planet"),
            "tell me about that planet",
            do_search_prob=0.9,  # not strictly greater
            cfg=cfg,
        )
        assert verdict.rule_fired is RuleFired.NONE
        assert verdict.chosen is Chosen.AUX

    def test_rule3_aux_crash(self, cfg):
        verdict = decide_output(
            ok("main", "All good here."), crashed("aux"), None, "hi", 0.1, cfg
        )
        assert verdict.rule_fired is RuleFired.R3_CRASH
        assert verdict.chosen is Chosen.MAIN

    def test_rule4_aux_nonsense(self, cfg):
        verdict = decide_output(
            ok("main", "All good here."), ok("aux", "xqzt blorp vmmp"), None, "hi", 0.1, cfg
        )
        assert verdict.rule_fired is RuleFired.R4_NONSENSE
        assert verdict.chosen is Chosen.MAIN

    def test_default_is_aux(self, cfg):
        verdict = decide_output(
            ok("main", "Main line."), ok("aux", "Aux line, much nicer."), None, "hi", 0.2, cfg
        )
        assert verdict.rule_fired is RuleFired.NONE
        assert verdict.chosen is Chosen.AUX

    def test_rule1_beats_rule2_when_both_hold(self, cfg):
        verdict = decide_output(
            ok("main", "Answer."),
            ok("aux", "Totally unrelated reply."),
            make_knowledge(),  # QA source, knowledge not included in aux
            "where is the Eiffel Tower?",
            do_search_prob=0.99,
            cfg=cfg,
        )
        assert verdict.rule_fired is RuleFired.R1_WH_EVI

    def test_both_dead_is_final_backup(self, cfg):
        verdict = decide_output(crashed("main"), crashed("aux"), None, "hi", 0.5, cfg)
        assert verdict.chosen is Chosen.FINAL_BACKUP
        assert verdict.rule_fired is RuleFired.R3_CRASH

    def test_rule_fired_but_main_dead_falls_to_aux(self, cfg):
        # FINAL_BACKUP is reserved for both generators failing, so a healthy
        # aux ships even when a rule wanted the main generator.
        verdict = decide_output(
            crashed("main"),
            ok("aux", "Perfectly fine reply."),
            make_knowledge(),
            "where is the Eiffel Tower?",
            do_search_prob=0.99,
            cfg=cfg,
        )
        assert verdict.rule_fired is RuleFired.R1_WH_EVI
        assert verdict.chosen is Chosen.AUX

    def test_purity_and_precedence_randomized(self, cfg):
        rng = random.Random(1234)
        texts = [
            None,
            "Jupiter is the largest planet.",
            "I enjoy chatting.",
            "xqzt blorp vmmp",
            "",
        ]
        sources = [None, KnowledgeSource.EVI, KnowledgeSource.WIKI]
        inputs = ["where is the Eiffel Tower?", "tell me more", "Is it Vienna?"]
        for _ in range(2000):
            main_text = rng.choice(texts)
            aux_text = rng.choice(texts)
            main = ok("m", main_text) if main_text else crashed("m")
            aux = ok("a", aux_text) if aux_text else crashed("a")
            source = rng.choice(sources)
            knowledge = make_knowledge(source=source) if source else None
            user_input = rng.choice(inputs)
            prob = rng.random()
            first = decide_output(main, aux, knowledge, user_input, prob, cfg)
            second = decide_output(main, aux, knowledge, user_input, prob, cfg)
            assert first == second  # pure
            if (
                knowledge is not None
                and knowledge.source is KnowledgeSource.EVI
                and is_wh_question(user_input)
            ):
                assert first.rule_fired is RuleFired.R1_WH_EVI  # precedence


def make_pipeline(cfg, main=None, aux=None, final=None, hub=None):
    return ResponsePipeline(
        main_chain=main or [MockGenerator("main-a", seed=1), MockGenerator("main-b", seed=2)],
        aux_chain=aux or [MockGenerator("aux-a", seed=3), MockGenerator("aux-b", seed=4)],
        final_backup=final or CannedGenerator("final"),
        hub=hub,
        cfg=cfg,
    )


def make_hub():
    state = {"now": 1_000_000.0}
    return ApiHub(
        sources={
            KnowledgeSource.EVI: FakeQaSource(),
            KnowledgeSource.WEB: FakeWebSource(),
            KnowledgeSource.WIKI: WikiIntroSource(),
        },
        cache=SearchCache(clock=lambda: state["now"]),
        clock=lambda: state["now"],
    )


class TestRespond:
    def test_chitchat_defaults_to_aux(self, cfg):
        pipeline = make_pipeline(cfg)
        response = pipeline.respond(make_context("i love hiking in the mountains"))
        assert response.verdict.chosen is Chosen.AUX
        assert response.verdict.rule_fired is RuleFired.NONE
        assert response.text

    def test_aux_crash_promotes_main(self, cfg):
        pipeline = make_pipeline(
            cfg, aux=[FailingGenerator("aux-a"), FailingGenerator("aux-b")]
        )
        response = pipeline.respond(make_context("i love hiking"))
        assert response.verdict.rule_fired is RuleFired.R3_CRASH
        assert response.verdict.chosen is Chosen.MAIN

    def test_aux_nonsense_promotes_main(self, cfg):
        pipeline = make_pipeline(
            cfg, aux=[NonsenseGenerator("aux-a"), NonsenseGenerator("aux-b")]
        )
        response = pipeline.respond(make_context("i love hiking"))
        assert response.verdict.rule_fired is RuleFired.R4_NONSENSE
        assert response.verdict.chosen is Chosen.MAIN

    def test_primary_killed_backup_answers(self, cfg):
        pipeline = make_pipeline(
            cfg,
            aux=[FailingGenerator("aux-a"), MockGenerator("aux-b", seed=9)],
        )
        response = pipeline.respond(make_context("i love hiking"))
        assert response.verdict.chosen is Chosen.AUX
        assert response.verdict.aux_response  # produced by the backup instance

    def test_all_generator_chains_dead_uses_final_backup(self, cfg):
        pipeline = make_pipeline(
            cfg,
            main=[FailingGenerator("m1"), FailingGenerator("m2")],
            aux=[FailingGenerator("a1"), FailingGenerator("a2")],
        )
        response = pipeline.respond(make_context("hello there friend"))
        assert response.verdict.chosen is Chosen.FINAL_BACKUP
        assert response.text == CannedGenerator("x").text

    def test_everything_dead_raises_exhausted_once(self, cfg):
        pipeline = make_pipeline(
            cfg,
            main=[FailingGenerator("m1"), FailingGenerator("m2")],
            aux=[FailingGenerator("a1"), FailingGenerator("a2")],
            final=FailingGenerator("final"),
        )
        with pytest.raises(PipelineExhausted):
            pipeline.respond(make_context("hello there friend"))
        assert pipeline.metrics.exhausted == 1

    def test_search_path_attaches_qa_knowledge(self, cfg):
        pipeline = make_pipeline(cfg, hub=make_hub())
        response = pipeline.respond(make_context("Where is the Eiffel Tower?"))
        assert response.do_search.label == DO_SEARCH
        assert response.verdict.knowledge_used is not None
        assert response.verdict.knowledge_used.source is KnowledgeSource.EVI
        assert response.verdict.rule_fired is RuleFired.R1_WH_EVI

    def test_timings_recorded(self, cfg):
        pipeline = make_pipeline(cfg)
        response = pipeline.respond(make_context("good morning to you"))
        for stage in ("do_search_ms", "query_gen_ms", "generators_ms", "decide_ms", "total_ms"):
            assert stage in response.timings

    def test_aux_dominates_benign_traffic(self, cfg):
        # With healthy mocks and low search probabilities the aux generator
        # should carry every response.
        pipeline = make_pipeline(cfg)
        lines = [
            "i love hiking",
            "my day was great",
            "tell me a joke",
            "i had pasta for dinner",
            "do you like pizza",
        ]
        for line in lines:
            response = pipeline.respond(make_context(line))
            assert response.verdict.chosen is Chosen.AUX
