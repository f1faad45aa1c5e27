"""Gateway layer: templates, providers, embeddings, decoding policy."""

import httpx
import numpy as np
import pytest

from tutorkit.errors import (
    MissingSlotError,
    ProviderError,
    ScriptExhaustedError,
    UnknownTemplateError,
)
from tutorkit.gateway.core import DecodingPolicy, ModelGateway
from tutorkit.gateway.embeddings import (
    Embedding,
    HashEmbeddingProvider,
    WireEmbeddingProvider,
)
from tutorkit.gateway.providers import (
    CompletionRequest,
    DecodingParams,
    ScriptedChatProvider,
    WireChatProvider,
    WireConfig,
)
from tutorkit.gateway.templates import TemplateRegistry, placeholders_in
from tutorkit.tools.catalog import build_registry


class TestTemplates:
    def test_render_replaces_all_placeholders(self):
        registry = TemplateRegistry()
        registry.register("greet", "Hello {name}, study {subject}.")
        text = registry.render("greet", {"name": "Ada", "subject": "rocks"})
        assert text == "Hello Ada, study rocks."

    def test_placeholders_derived_from_body(self):
        assert placeholders_in("a {x} b {y_z} c {x}") == {"x", "y_z"}

    def test_missing_binding_names_the_slot(self):
        registry = TemplateRegistry()
        registry.register("greet", "Hello {name}.")
        with pytest.raises(MissingSlotError) as excinfo:
            registry.render("greet", {})
        assert excinfo.value.slot == "name"
        assert excinfo.value.template_id == "greet"

    def test_unknown_template(self):
        with pytest.raises(UnknownTemplateError):
            TemplateRegistry().render("nope", {})

    def test_duplicate_registration_rejected(self):
        registry = TemplateRegistry()
        registry.register("t", "x")
        with pytest.raises(ValueError):
            registry.register("t", "y")

    def test_binding_values_are_not_rescanned(self):
        registry = TemplateRegistry()
        registry.register("t", "say {a}")
        assert registry.render("t", {"a": "{b}"}) == "say {b}"

    def test_extra_bindings_ignored(self):
        registry = TemplateRegistry()
        registry.register("t", "just {a}")
        assert registry.render("t", {"a": "this", "b": "spare"}) == "just this"

    def test_builtin_catalog_registers_known_ids(self):
        ids = build_registry().ids()
        for expected in ("teach", "answer", "quiz", "evaluation", "meta_route",
                         "profile_generation", "objective_completion",
                         "course_design_initial", "course_design_update",
                         "quiz_generation", "final_quiz", "final_quiz_plan"):
            assert expected in ids


class TestScriptedProvider:
    def test_replays_in_order_per_tag(self):
        provider = ScriptedChatProvider({"teach": ["one", "two"]})
        params = DecodingParams()
        first = provider.complete(CompletionRequest("p", params, "teach"))
        second = provider.complete(CompletionRequest("p", params, "teach"))
        assert (first.text, second.text) == ("one", "two")
        assert first.latency == 0.0 and first.attempts == 1

    def test_underflow_names_the_tag(self):
        provider = ScriptedChatProvider()
        with pytest.raises(ScriptExhaustedError) as excinfo:
            provider.complete(CompletionRequest("p", DecodingParams(), "quiz"))
        assert excinfo.value.tool_tag == "quiz"
        assert "quiz" in str(excinfo.value)

    def test_remaining_counts_queue(self):
        provider = ScriptedChatProvider({"teach": ["a", "b", "c"]})
        assert provider.remaining("teach") == 3
        assert provider.remaining("answer") == 0


class _Responder:
    """httpx MockTransport handler failing a fixed number of times."""

    def __init__(self, failures: int, text: str = "fine"):
        self.failures = failures
        self.calls = 0
        self.text = text

    def __call__(self, request: httpx.Request) -> httpx.Response:
        self.calls += 1
        if self.calls <= self.failures:
            return httpx.Response(500)
        return httpx.Response(
            200, json={"choices": [{"message": {"content": self.text}}]}
        )


def _wire_provider(responder) -> WireChatProvider:
    config = WireConfig(base_url="http://model.test", model="m")
    client = httpx.Client(base_url=config.base_url,
                          transport=httpx.MockTransport(responder))
    return WireChatProvider(config, client=client, sleep=lambda _: None)


class TestWireProvider:
    def test_success_carries_metadata(self):
        provider = _wire_provider(_Responder(failures=0))
        result = provider.complete(CompletionRequest("p", DecodingParams(), "t"))
        assert result.text == "fine"
        assert result.attempts == 1
        assert result.timeout == 30.0

    def test_two_failures_then_success_is_three_attempts(self):
        responder = _Responder(failures=2)
        provider = _wire_provider(responder)
        result = provider.complete(CompletionRequest("p", DecodingParams(), "t"))
        assert result.text == "fine"
        assert result.attempts == 3
        assert responder.calls == 3

    def test_retry_budget_exhausted_raises(self):
        responder = _Responder(failures=5)
        provider = _wire_provider(responder)
        with pytest.raises(ProviderError):
            provider.complete(CompletionRequest("p", DecodingParams(), "t"))
        assert responder.calls == 3  # first attempt + two retries, never more

    def test_token_header_from_environment(self, monkeypatch):
        monkeypatch.setenv("TUTORKIT_API_TOKEN", "s3cret")
        config = WireConfig(base_url="http://model.test", model="m")
        assert config.headers()["Authorization"] == "Bearer s3cret"
        monkeypatch.delenv("TUTORKIT_API_TOKEN")
        assert "Authorization" not in config.headers()


class TestEmbeddings:
    def test_vectors_are_unit_norm(self):
        provider = HashEmbeddingProvider(dim=32)
        for text in ("erosion", "a", "Deep-sea bioluminescence at night"):
            vec = provider.embed(text)
            assert vec.dim == 32
            assert abs(float(np.linalg.norm(vec.values)) - 1.0) < 1e-9

    def test_equal_text_equal_vector(self):
        provider = HashEmbeddingProvider(dim=16)
        a = provider.embed("same words")
        b = provider.embed("same words")
        assert np.array_equal(a.values, b.values)

    def test_different_text_different_vector(self):
        provider = HashEmbeddingProvider(dim=16)
        assert not np.array_equal(provider.embed("one").values,
                                  provider.embed("two").values)

    def test_empty_text_rejected(self):
        with pytest.raises(ValueError):
            HashEmbeddingProvider().embed("")

    def test_embedding_normalizes_input(self):
        vec = Embedding([3.0, 4.0])
        assert vec.tolist() == pytest.approx([0.6, 0.8])

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            Embedding([0.0, 0.0])

    def test_wire_embedding_dim_mismatch(self):
        def handler(request):
            return httpx.Response(200, json={"data": [{"embedding": [1.0, 0.0]}]})

        client = httpx.Client(base_url="http://model.test",
                              transport=httpx.MockTransport(handler))
        provider = WireEmbeddingProvider(client, model="e", dim=3)
        with pytest.raises(ProviderError):
            provider.embed("hello")


class TestDecodingPolicy:
    def test_interaction_tools_sample_backend_tools_do_not(self):
        policy = DecodingPolicy()
        assert policy.for_tool("teach").temperature == 0.7
        assert policy.for_tool("answer").temperature == 0.7
        assert policy.for_tool("quiz").temperature == 0.7
        assert policy.for_tool("evaluation").temperature == 0.7
        for tag in ("route", "objective_completion", "profile_generation",
                    "course_design", "quiz_generation", "final_quiz"):
            assert policy.for_tool(tag).temperature == 0.0

    def test_override_wins(self):
        policy = DecodingPolicy(
            overrides={"teach": DecodingParams(temperature=0.2,
                                              max_output_tokens=64)}
        )
        assert policy.for_tool("teach").temperature == 0.2
        assert policy.for_tool("teach").max_output_tokens == 64

    def test_gateway_routes_through_policy(self):
        captured = []

        class Spy(ScriptedChatProvider):
            def complete(self, request):
                captured.append(request)
                return super().complete(request)

        gateway = ModelGateway(
            chat=Spy({"teach": ["x"], "route": ["y"]}),
            embedder=HashEmbeddingProvider(dim=8),
            templates=build_registry(),
        )
        gateway.complete("prompt", "teach")
        gateway.complete("prompt", "route")
        assert captured[0].decoding.temperature == 0.7
        assert captured[1].decoding.temperature == 0.0
