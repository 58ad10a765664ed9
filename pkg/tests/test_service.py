"""Play-service API tests over the in-process test client."""

import random

import pytest
from fastapi.testclient import TestClient

from ughost import core
from ughost.districts import enumerate_maps, load_bundled, make_language
from ughost.service import create_app


@pytest.fixture()
def client(tmp_path):
    app = create_app(data_dir=tmp_path)
    with TestClient(app) as c:
        yield c


def new_session(client, instance="six_county", first_party="A",
                controllers=None, **params):
    body = {
        "instance": instance,
        "first_party": first_party,
        "controllers": controllers or {"first": "human", "second": "engine"},
    }
    response = client.post("/sessions", json=body, params=params)
    assert response.status_code == 201, response.text
    return response.json()


class TestCreate:
    def test_human_first_session_starts_empty(self, client):
        session = new_session(client, "nh_counties")
        assert session["prefix"] == []
        assert session["mover_party"] == "A"
        assert session["mover_controller"] == "human"

    def test_engine_first_moves_before_returning(self, client):
        session = new_session(client, controllers={"first": "engine", "second": "human"})
        assert len(session["prefix"]) == 1

    def test_engine_vs_engine_finishes_immediately(self, client):
        session = new_session(client, controllers={"first": "engine", "second": "engine"})
        assert session["status"] == "finished"
        assert session["result"]["seats"] == {"A": 1, "B": 1, "ties": 0}

    def test_malformed_instance_is_400(self, client):
        response = client.post("/sessions", json={
            "instance_text": "atoms\n0 a 1 0\nconstraints\nk: 2\n",
            "first_party": "A",
        })
        assert response.status_code == 400
        body = response.json()
        assert body["code"] == "bad_instance"
        assert "atom line" in body["message"]

    def test_unknown_instance_is_400(self, client):
        response = client.post("/sessions", json={"instance": "atlantis"})
        assert response.status_code == 400

    def test_legal_first_moves_match_engine(self, client):
        session = new_session(client)
        graph, constraints = load_bundled("six_county")
        maps = enumerate_maps(graph, constraints)
        lang = make_language(maps, graph.atoms, constraints.k)
        expected = [list(move) for move in lang.legal_moves(())]
        assert session["legal_moves"] == expected

    def test_instances_listing(self, client):
        names = client.get("/instances").json()["instances"]
        assert {"six_county", "decomino", "nh_counties"} <= set(names)

    def test_instances_dir_overrides_bundled(self, tmp_path):
        custom = tmp_path / "instances"
        custom.mkdir()
        (custom / "tiny.state").write_text(
            "grid: 1x4\natoms\n0 a 1 1 0\n1 b 1 1 0\n2 c 1 0 1\n3 d 1 0 1\n"
            "constraints\nk: 2\nbalance: exact\n",
            encoding="utf-8",
        )
        app = create_app(instances_dir=custom, data_dir=tmp_path / "data")
        with TestClient(app) as client:
            assert "tiny" in client.get("/instances").json()["instances"]
            session = new_session(client, "tiny")
            assert session["atom_count"] == 4


class TestMoves:
    def test_move_applies_engine_reply(self, client):
        session = new_session(client)
        response = client.post(f"/sessions/{session['id']}/moves",
                               json={"atom": 0, "district": 0})
        assert response.status_code == 200
        body = response.json()
        assert len(body["applied"]) == 2
        assert len(body["prefix"]) == 2

    def test_engine_reply_is_best_move(self, client):
        session = new_session(client)
        client.post(f"/sessions/{session['id']}/moves", json={"atom": 0, "district": 0})
        state = client.get(f"/sessions/{session['id']}").json()
        graph, constraints = load_bundled("six_county")
        maps = enumerate_maps(graph, constraints)
        lang = make_language(maps, graph.atoms, constraints.k)
        expected = core.best_move(((0, 0),), lang)
        assert state["prefix"][1] == list(expected)

    def test_atom_taken_is_422(self, client):
        session = new_session(client)
        client.post(f"/sessions/{session['id']}/moves", json={"atom": 0, "district": 0})
        response = client.post(f"/sessions/{session['id']}/moves",
                               json={"atom": 0, "district": 1})
        assert response.status_code == 422
        assert response.json()["message"] == "atom taken"

    def test_no_completion_is_422(self, client):
        session = new_session(client)
        client.post(f"/sessions/{session['id']}/moves", json={"atom": 0, "district": 0})
        # nw in 0 and sw in 1 forces the L-splits; se can no longer join 0
        response = client.post(f"/sessions/{session['id']}/moves",
                               json={"atom": 5, "district": 0})
        # depending on the engine's reply the move may be merely illegal now
        assert response.status_code == 422
        assert response.json()["message"] in ("no admissible completion", "atom taken")

    def test_out_of_range_is_422(self, client):
        session = new_session(client)
        response = client.post(f"/sessions/{session['id']}/moves",
                               json={"atom": 77, "district": 0})
        assert response.status_code == 422

    def test_engine_turn_is_409(self, client):
        session = new_session(client, controllers={"first": "engine", "second": "engine"})
        response = client.post(f"/sessions/{session['id']}/moves",
                               json={"atom": 0, "district": 0})
        assert response.status_code == 409

    def test_unknown_session_is_404(self, client):
        assert client.get("/sessions/nope").status_code == 404
        assert client.post("/sessions/nope/moves",
                           json={"atom": 0, "district": 0}).status_code == 404

    def test_full_game_reaches_seat_summary(self, client):
        session = new_session(client, "nh_counties")
        sid = session["id"]
        while True:
            state = client.get(f"/sessions/{sid}").json()
            if state["status"] == "finished":
                seats = state["result"]["seats"]
                assert seats["A"] + seats["B"] + seats["ties"] == 2
                break
            move = state["legal_moves"][0]
            response = client.post(f"/sessions/{sid}/moves",
                                   json={"atom": move[0], "district": move[1]})
            assert response.status_code == 200


class TestReveal:
    def test_projection_hidden_by_default(self, client):
        session = new_session(client)
        state = client.get(f"/sessions/{session['id']}").json()
        assert "projection" not in state

    def test_projection_with_reveal(self, client):
        session = new_session(client)
        state = client.get(f"/sessions/{session['id']}", params={"reveal": "true"}).json()
        assert state["projection"]["u1"] == 1.0
        assert state["projection"]["u2"] == 1.0

    def test_whatif_requires_reveal(self, client):
        session = new_session(client)
        response = client.post(f"/sessions/{session['id']}/whatif",
                               json={"atom": 0, "district": 0})
        assert response.status_code == 403

    def test_whatif_on_principal_move_matches_projection(self, client):
        session = new_session(client)
        sid = session["id"]
        state = client.get(f"/sessions/{sid}", params={"reveal": "true"}).json()
        principal = state["projection"]["principal_move"]
        value = client.post(f"/sessions/{sid}/whatif", params={"reveal": "true"},
                            json={"atom": principal[0], "district": principal[1]}).json()
        assert (value["u1"], value["u2"]) == (state["projection"]["u1"],
                                              state["projection"]["u2"])

    def test_whatif_illegal_is_422(self, client):
        session = new_session(client)
        response = client.post(f"/sessions/{session['id']}/whatif",
                               params={"reveal": "true"},
                               json={"atom": 0, "district": 7})
        assert response.status_code == 422
        assert not client.get(f"/sessions/{session['id']}").json()["prefix"]

    def test_whatif_shows_seat_consequence_of_committing_to_the_sweep(self, client):
        # Human-vs-human ten-county session steered to one move short of the
        # unique both-seats map: the hypothetical closing move projects 2-0.
        graph, constraints = load_bundled("nh_counties")
        maps = enumerate_maps(graph, constraints)
        from ughost.districts import seats
        sweep = next(p for p in maps if seats(p, graph.atoms).seats_a == 2)
        word = [(atom, d) for d, part in enumerate(sweep) for atom in sorted(part)]
        session = new_session(client, "nh_counties",
                              controllers={"first": "human", "second": "human"})
        sid = session["id"]
        for atom, district in word[:-1]:
            response = client.post(f"/sessions/{sid}/moves",
                                   json={"atom": atom, "district": district})
            assert response.status_code == 200, response.text
        last = word[-1]
        value = client.post(f"/sessions/{sid}/whatif", params={"reveal": "true"},
                            json={"atom": last[0], "district": last[1]}).json()
        assert (value["u1"], value["u2"]) == (2.0, 0.0)


class TestConsistency:
    def test_concurrent_mutation_is_409(self, tmp_path):
        app = create_app(data_dir=tmp_path)
        with TestClient(app) as client:
            session = new_session(client)
            sid = session["id"]
            client.post(f"/sessions/{sid}/moves", json={"atom": 0, "district": 0})
            lock = app.state.session_locks[sid]
            lock.acquire()
            try:
                response = client.post(f"/sessions/{sid}/moves",
                                       json={"atom": 2, "district": 0})
                assert response.status_code == 409
                assert response.json()["code"] == "concurrent_mutation"
            finally:
                lock.release()

    def test_get_is_idempotent(self, client):
        session = new_session(client)
        sid = session["id"]
        first = client.get(f"/sessions/{sid}").content
        second = client.get(f"/sessions/{sid}").content
        assert first == second

    def test_sessions_survive_restart(self, tmp_path):
        app = create_app(data_dir=tmp_path)
        with TestClient(app) as client:
            session = new_session(client)
            sid = session["id"]
            client.post(f"/sessions/{sid}/moves", json={"atom": 0, "district": 0})
        fresh = create_app(data_dir=tmp_path)
        with TestClient(fresh) as client:
            state = client.get(f"/sessions/{sid}")
            assert state.status_code == 200
            assert len(state.json()["prefix"]) == 2

    def test_random_call_fuzz_never_breaks_legality(self, client):
        rng = random.Random(5)
        session = new_session(client)
        sid = session["id"]
        graph, constraints = load_bundled("six_county")
        maps = enumerate_maps(graph, constraints)
        lang = make_language(maps, graph.atoms, constraints.k)
        for _ in range(120):
            roll = rng.random()
            if roll < 0.5:
                client.post(f"/sessions/{sid}/moves",
                            json={"atom": rng.randrange(8), "district": rng.randrange(3)})
            elif roll < 0.7:
                client.post(f"/sessions/{sid}/whatif", params={"reveal": "true"},
                            json={"atom": rng.randrange(8), "district": rng.randrange(3)})
            else:
                state = client.get(f"/sessions/{sid}").json()
                prefix = tuple((a, d) for a, d in state["prefix"])
                assert lang.is_prefix(prefix)
                if state["status"] == "finished":
                    session = new_session(client)
                    sid = session["id"]
