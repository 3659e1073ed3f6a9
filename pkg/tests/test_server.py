import json
import threading
import time
import urllib.error
import urllib.request

import pytest

from entropia.game import alphabet_from_entries
from entropia.server import GameService, make_server, serve_forever_in_thread


@pytest.fixture(scope="module")
def flowers_deck():
    return alphabet_from_entries(
        [("rose", 0.5), ("tulip", 0.25), ("daisy", 0.125), ("lily", 0.125)]
    )


@pytest.fixture()
def server(flowers_deck):
    srv = make_server(flowers_deck, port=0)
    serve_forever_in_thread(srv)
    yield srv
    srv.shutdown()
    srv.server_close()


def _request(server, method, path, body=None):
    base = "http://127.0.0.1:%d" % server.server_address[1]
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(
        base + path, data=data, method=method, headers={"Content-Type": "application/json"}
    )
    try:
        with urllib.request.urlopen(req) as resp:
            return resp.status, json.loads(resp.read()), dict(resp.headers)
    except urllib.error.HTTPError as err:
        return err.code, json.loads(err.read()), dict(err.headers)


class TestEndpoints:
    def test_alphabet(self, server):
        status, body, _ = _request(server, "GET", "/alphabet")
        assert status == 200
        assert body == {"size": 4, "entropy_bits": 1.75, "expected_questions": 1.75}

    def test_full_game_to_tulip(self, server):
        status, created, _ = _request(server, "POST", "/sessions")
        assert status == 201
        sid = created["id"]

        status, q, _ = _request(server, "GET", f"/sessions/{sid}/question")
        assert status == 200
        assert q["p_no"] == 0.5 and q["p_yes"] == 0.5
        assert q["pending_bits"] == 1.0
        assert q["no_labels_sample"] == ["rose"]

        status, view, _ = _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 1})
        assert status == 200
        assert view["asked"] == 1 and not view["finished"]
        assert view["transcript"] == [1]

        status, view, _ = _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 0})
        assert view["finished"] and view["answer_label"] == "tulip"
        assert view["asked"] == 2 and view["transcript"] == [1, 0]

        status, view, _ = _request(server, "GET", f"/sessions/{sid}")
        assert view["asked"] == len(view["transcript"]) == 2

    def test_unknown_session_404(self, server):
        status, body, _ = _request(server, "GET", "/sessions/deadbeef")
        assert status == 404
        assert body["error"] == "unknown_session"

    def test_bad_bit_400(self, server):
        _, created, _ = _request(server, "POST", "/sessions")
        status, body, _ = _request(
            server, "POST", f"/sessions/{created['id']}/answer", {"bit": 2}
        )
        assert status == 400
        assert body["error"] == "bad_request"

    def test_missing_bit_400(self, server):
        _, created, _ = _request(server, "POST", "/sessions")
        status, body, _ = _request(server, "POST", f"/sessions/{created['id']}/answer", {})
        assert status == 400

    def test_malformed_json_body_400(self, server):
        _, created, _ = _request(server, "POST", "/sessions")
        base = "http://127.0.0.1:%d" % server.server_address[1]
        req = urllib.request.Request(
            f"{base}/sessions/{created['id']}/answer",
            data=b"{not json",
            method="POST",
            headers={"Content-Type": "application/json"},
        )
        with pytest.raises(urllib.error.HTTPError) as err:
            urllib.request.urlopen(req)
        assert err.value.code == 400
        assert json.loads(err.value.read())["error"] == "bad_request"

    def test_answer_after_finish_409(self, server):
        _, created, _ = _request(server, "POST", "/sessions")
        sid = created["id"]
        _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 0})  # rose
        status, body, _ = _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 0})
        assert status == 409
        assert body["error"] == "finished"

    def test_unknown_route_404(self, server):
        status, body, _ = _request(server, "GET", "/nope")
        assert status == 404

    def test_cors_headers(self, server):
        _, _, headers = _request(server, "GET", "/alphabet")
        assert headers.get("Access-Control-Allow-Origin") == "*"

    def test_options_preflight(self, server):
        base = "http://127.0.0.1:%d" % server.server_address[1]
        req = urllib.request.Request(base + "/sessions", method="OPTIONS")
        with urllib.request.urlopen(req) as resp:
            assert resp.status == 204
            assert resp.headers["Access-Control-Allow-Origin"] == "*"

    def test_concurrent_sessions_are_isolated(self, server):
        _, a, _ = _request(server, "POST", "/sessions")
        _, b, _ = _request(server, "POST", "/sessions")
        _request(server, "POST", f"/sessions/{a['id']}/answer", {"bit": 1})
        _, view_b, _ = _request(server, "GET", f"/sessions/{b['id']}")
        assert view_b["asked"] == 0

    def test_parallel_answers_across_sessions(self, server):
        sids = [_request(server, "POST", "/sessions")[1]["id"] for _ in range(8)]
        errors = []

        def play(sid):
            try:
                _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 1})
                _request(server, "POST", f"/sessions/{sid}/answer", {"bit": 1})
            except Exception as exc:  # noqa: BLE001
                errors.append(exc)

        threads = [threading.Thread(target=play, args=(sid,)) for sid in sids]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert not errors
        for sid in sids:
            _, view, _ = _request(server, "GET", f"/sessions/{sid}")
            assert view["asked"] == 2


class TestTtlEviction:
    def test_expired_session_is_dropped(self, flowers_deck):
        service = GameService(flowers_deck, ttl_seconds=0.05)
        sid = service.create_session()["id"]
        assert service.session_view(sid)["asked"] == 0
        time.sleep(0.1)
        from entropia.server import NotFound

        with pytest.raises(NotFound):
            service.session_view(sid)


class TestStaticUi:
    def test_serves_index_and_assets(self, flowers_deck, tmp_path):
        (tmp_path / "index.html").write_text("<html><body>ui</body></html>")
        (tmp_path / "app").mkdir()
        (tmp_path / "app" / "main.js").write_text("export {};")
        srv = make_server(flowers_deck, port=0, ui_dir=tmp_path)
        serve_forever_in_thread(srv)
        try:
            base = "http://127.0.0.1:%d" % srv.server_address[1]
            with urllib.request.urlopen(base + "/") as resp:
                assert resp.status == 200
                assert b"ui" in resp.read()
                assert resp.headers["Content-Type"].startswith("text/html")
            with urllib.request.urlopen(base + "/app/main.js") as resp:
                assert resp.headers["Content-Type"].startswith("text/javascript")
            req = urllib.request.Request(base + "/../etc/passwd")
            with pytest.raises(urllib.error.HTTPError) as err:
                urllib.request.urlopen(req)
            assert err.value.code == 404
        finally:
            srv.shutdown()
            srv.server_close()
