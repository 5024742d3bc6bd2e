import time

import pytest
from hypothesis import given, strategies as st

from socialbot.core.clients import (
    ControlTag,
    GenerationRequest,
    QueryKnowledgePair,
    KnowledgeSource,
    call_with_deadline,
)
from socialbot.core.mocks import MockGenerator, RaisingGenerator, SlowGenerator
from socialbot.core.punctuation import detect_question, punctuate
from socialbot.core.types import (
    ConversationContext,
    Speaker,
    UnknownFactKeyError,
    UserProfile,
    Utterance,
    window,
)
from tests.conftest import make_context


def turn(text, ts, speaker=Speaker.USER):
    return Utterance(speaker=speaker, text=text, timestamp=ts)


class TestUtterance:
    def test_rejects_blank_text(self):
        with pytest.raises(ValueError):
            Utterance(speaker=Speaker.USER, text="   ")

    def test_display_prefers_punctuated(self):
        u = Utterance(speaker=Speaker.USER, text="hi there", punctuated_text="Hi there.")
        assert u.display_text == "Hi there."


class TestContext:
    def test_requires_strictly_increasing_timestamps(self):
        with pytest.raises(ValueError):
            ConversationContext("s", (turn("a", 5), turn("b", 5)))

    def test_window_suffix(self):
        ctx = make_context("a", "b", "c", "d", "e")
        assert [t.text for t in window(ctx, 2).turns] == ["d", "e"]

    def test_window_larger_than_context(self):
        ctx = make_context("only")
        assert [t.text for t in window(ctx, 10).turns] == ["only"]

    def test_window_empty_context(self):
        ctx = ConversationContext("s")
        assert window(ctx, 3).turns == ()

    @given(
        n_turns=st.integers(min_value=0, max_value=12),
        n=st.integers(min_value=1, max_value=15),
        m=st.integers(min_value=1, max_value=15),
    )
    def test_window_composes(self, n_turns, n, m):
        ctx = ConversationContext(
            "s", tuple(turn(f"t{i}", (i + 1) * 10) for i in range(n_turns))
        )
        assert window(window(ctx, n), m).turns == window(ctx, min(n, m)).turns


PUNCTUATE_CASES = [
    ("what's yours", "What's yours?"),
    ("i like vanilla", "I like vanilla."),
    ("is it Vienna", "Is it Vienna?"),
    ("vanilla. what's yours", "Vanilla. What's yours?"),
    ("where do you live", "Where do you live?"),
    ("tell me a story", "Tell me a story."),
    ("do you like jazz", "Do you like jazz?"),
    ("That's great!", "That's great!"),
]


class TestPunctuate:
    @pytest.mark.parametrize("raw,expected", PUNCTUATE_CASES)
    def test_cases(self, raw, expected):
        assert punctuate(raw) == expected

    @pytest.mark.parametrize("raw,_", PUNCTUATE_CASES)
    def test_idempotent_on_cases(self, raw, _):
        once = punctuate(raw)
        assert punctuate(once) == once

    @given(st.text(alphabet="abcdefghij en.?!',", min_size=1).filter(lambda s: s.strip()))
    def test_idempotent_property(self, text):
        once = punctuate(text)
        assert punctuate(once) == once

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            punctuate("   ")


# Hand-labeled: (punctuated text, final sentence is a question)
QUESTION_FIXTURE = [
    ("Vanilla. What's yours?", True),
    ("I like vanilla.", False),
    ("Why? I said so.", False),
    ("Is it Vienna?", True),
    ("I went home. Did you?", True),
    ("Did you? I went home.", False),
    ("What a day!", False),
    ("Really? No way!", False),
    ("Tell me. Now. Please?", True),
    ("How are you?", True),
    ("Fine.", False),
    ("You said what? Unbelievable.", False),
    ("One. Two. Three?", True),
    ("Three? Two. One.", False),
    ("Is that so? Yes? No?", True),
    ("It rained today.", False),
    ("Who knows?", True),
    ("Who knows? Nobody.", False),
    ("Maybe tomorrow?", True),
    ("Maybe tomorrow? We'll see.", False),
]


class TestDetectQuestion:
    @pytest.mark.parametrize("text,expected", QUESTION_FIXTURE)
    def test_fixture(self, text, expected):
        assert detect_question(text) is expected


class TestUserProfile:
    def test_insert_and_overwrite(self):
        profile = UserProfile(vocabulary=frozenset({"has_pet"}))
        profile.insert("has_pet", "dog", source_turn=1, confidence=0.9)
        profile.insert("has_pet", "cat", source_turn=4, confidence=0.8)
        assert profile.get("has_pet") == "cat"
        assert profile.entries["has_pet"].source_turn == 4

    def test_unknown_key_rejected(self):
        profile = UserProfile(vocabulary=frozenset({"has_pet"}))
        with pytest.raises(UnknownFactKeyError):
            profile.insert("shoe_size", "44", source_turn=0, confidence=1.0)


class TestGeneratorDeadline:
    def test_slow_generator_times_out_within_slack(self):
        slow = SlowGenerator("slow", delay=2.0)
        request = GenerationRequest(context=make_context("hi"))
        started = time.monotonic()
        result = call_with_deadline(slow, request, deadline=0.2)
        elapsed = time.monotonic() - started
        assert not result.ok
        assert result.error == "timeout"
        assert elapsed < 0.2 + 0.1  # deadline + scheduling slack

    def test_raising_generator_reports_error(self):
        result = call_with_deadline(
            RaisingGenerator("boom"), GenerationRequest(context=make_context("hi")), 1.0
        )
        assert not result.ok
        assert "RuntimeError" in result.error


class TestMockGenerator:
    def test_deterministic_for_same_request_and_seed(self):
        request = GenerationRequest(
            context=make_context("i love hiking"),
            knowledge=QueryKnowledgePair(
                query="hiking", knowledge="Hiking is good exercise.",
                source=KnowledgeSource.WIKI,
            ),
        )
        a = MockGenerator("m", seed=5).generate(request, 1.0)
        b = MockGenerator("m", seed=5).generate(request, 1.0)
        assert a.text == b.text

    def test_seed_changes_output_space(self):
        request = GenerationRequest(context=make_context("i love hiking"))
        texts = {
            MockGenerator("m", seed=s).generate(request, 1.0).text for s in range(12)
        }
        assert len(texts) > 1

    def test_knowledge_is_interpolated(self):
        request = GenerationRequest(
            context=make_context("where is the eiffel tower"),
            knowledge=QueryKnowledgePair(
                query="eiffel tower", knowledge="The Eiffel Tower is in Paris",
                source=KnowledgeSource.EVI,
            ),
        )
        result = MockGenerator("m", seed=1).generate(request, 1.0)
        assert "The Eiffel Tower is in Paris." in result.text

    def test_control_tag_question_yields_question(self):
        request = GenerationRequest(
            context=make_context("i like tea"), control_tag=ControlTag.QUESTION
        )
        result = MockGenerator("m", seed=3).generate(request, 1.0)
        assert result.text.endswith("?")
