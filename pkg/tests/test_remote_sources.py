import json
import threading
import time
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from urllib.parse import parse_qs, urlparse

import pytest

from socialbot.apihub.cache import SearchCache
from socialbot.apihub.fakes import default_sources
from socialbot.apihub.hub import ApiHub
from socialbot.apihub.remote import HttpSourceClient, sources_from_env
from socialbot.core.clients import KnowledgeSource
from socialbot.core.config import PipelineConfig


class _SourceHandler(BaseHTTPRequestHandler):
    delay = 0.0

    def do_GET(self):
        parsed = urlparse(self.path)
        if parsed.path != "/fetch":
            self.send_response(404)
            self.end_headers()
            return
        if self.delay:
            time.sleep(self.delay)
        query = parse_qs(parsed.query).get("q", [""])[0]
        raw = json.dumps(
            [{"title": f"doc for {query}", "url": "https://remote.example/d1",
              "content": f"Remote content about {query}."}]
        ).encode()
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(raw)))
        self.end_headers()
        self.wfile.write(raw)

    def log_message(self, *args):
        pass


@pytest.fixture()
def source_server():
    _SourceHandler.delay = 0.0
    server = ThreadingHTTPServer(("127.0.0.1", 0), _SourceHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{server.server_address[1]}"
    server.shutdown()
    thread.join(timeout=2)


class TestHttpSourceClient:
    def test_fetch_round_trip(self, source_server):
        client = HttpSourceClient(KnowledgeSource.WEB, source_server)
        docs = client.fetch("giraffes", deadline=2.0)
        assert len(docs) == 1
        assert docs[0].source is KnowledgeSource.WEB
        assert "giraffes" in docs[0].content

    def test_hub_deadline_still_bounds_slow_remote(self, source_server, cfg):
        _SourceHandler.delay = 3.0
        hub = ApiHub(
            sources={KnowledgeSource.WEB: HttpSourceClient(KnowledgeSource.WEB, source_server)},
            cache=SearchCache(),
        )
        started = time.monotonic()
        results = hub.search("slow remote", "remote", cfg)
        assert time.monotonic() - started <= cfg.apihub_timeout + 0.2
        assert results.per_source[KnowledgeSource.WEB] == ()


class TestSourcesFromEnv:
    def test_env_overlays_configured_roles_only(self, source_server):
        wired = sources_from_env(
            default_sources(),
            env={"SOCIALBOT_SOURCE_WEB_URL": source_server},
        )
        assert isinstance(wired[KnowledgeSource.WEB], HttpSourceClient)
        assert not isinstance(wired[KnowledgeSource.EVI], HttpSourceClient)

    def test_no_env_keeps_defaults(self):
        defaults = default_sources()
        assert sources_from_env(defaults, env={}) == defaults

    def test_configured_remote_serves_results(self, source_server, cfg):
        wired = sources_from_env(
            default_sources(), env={"SOCIALBOT_SOURCE_NEWS_URL": source_server}
        )
        hub = ApiHub(sources=wired, cache=SearchCache())
        results = hub.search("zzz unknown thing", "thing", cfg)
        news = results.per_source[KnowledgeSource.NEWS]
        assert news and news[0].content.startswith("Remote content")
