import json

import pytest

from wittquiver import quiver
from wittquiver.ext1 import EngineDisagreement
from wittquiver.witt import Character


def test_expected_simple_p7_shape():
    q = quiver.expected_quiver(7, -1, "simple")
    assert q.mult(0, 6) == q.mult(6, 0) == 2
    assert q.mult(0, 1) == 1 and q.mult(5, 0) == 1
    assert q.mult(1, 3) == q.mult(1, 4) == q.mult(1, 5) == 1
    assert q.mult(6, 2) == q.mult(6, 3) == q.mult(6, 4) == 1
    assert all(q.mult(a, a) == 0 for a in q.nodes)


def test_expected_verma_p17_difference_six():
    q = quiver.expected_quiver(17, -1, "verma")
    six = {(a, b) for (a, b) in q.edges if (b - a) % 17 == 6}
    assert six == {(2, 8), (8, 14)}


def test_height_zero_matches_verma_minus_top():
    p = 7
    v = quiver.delete_node(quiver.expected_quiver(p, -1, "verma"), p - 1)
    assert not quiver.diff(quiver.expected_quiver(p, 0), v)


def test_expected_errors():
    with pytest.raises(ValueError):
        quiver.expected_quiver(7, 3)
    with pytest.raises(ValueError):
        quiver.expected_quiver(5, 4)


def test_build_matches_expected_p5():
    for h in (-1, 0, 1):
        q = quiver.build_quiver(5, h, "simple", "both")
        assert not quiver.diff(q, quiver.expected_quiver(5, h))


def test_build_rejects_nonstandard_character_at_low_height():
    with pytest.raises(ValueError):
        quiver.build_quiver(5, chi=Character((2, 0, 0, 0, 0), 5))
    with pytest.raises(ValueError):
        quiver.build_quiver(5, -1, engine="guess")


def test_top_height_uses_classification():
    q = quiver.build_quiver(5, chi=Character((0, 0, 0, 0, 1), 5))
    assert q.engine == "classification" and q.nodes == ["L"] and q.mult("L", "L") == 1


def test_emit_formats_and_roundtrip():
    q = quiver.build_quiver(5, -1, "simple", "derivation")
    dot = quiver.emit(q, "dot")
    assert dot.startswith("digraph ext1 {")
    assert dot.count("  0 -> 4;") == 2 and dot.count("  4 -> 0;") == 2
    data = json.loads(quiver.emit(q, "json"))
    assert set(data) == {"p", "height", "chi", "family", "nodes", "edges", "engine"}
    assert {"from": 0, "to": 4, "mult": 2} in data["edges"]
    assert quiver.from_json(quiver.emit(q, "json")) == q
    text = quiver.emit(q, "text")
    assert text.splitlines()[0].startswith("# p=5")
    with pytest.raises(ValueError):
        quiver.emit(q, "svg")


def test_emit_is_deterministic():
    a = quiver.emit(quiver.build_quiver(7, -1, "verma", "cocycle"))
    b = quiver.emit(quiver.build_quiver(7, -1, "verma", "derivation"))
    assert a == b


def test_diff_lines_and_connectivity():
    e = quiver.expected_quiver(5, -1)
    q = quiver.Quiver.from_dict(e.to_dict())
    q.set(1, 1, 1)
    d = quiver.diff(q, e)
    assert d and d.lines() == ["1 -> 1: computed 1, expected 0"]
    assert quiver.is_connected(e)
    assert not quiver.is_connected(quiver.Quiver(5, -1, [0] * 5, "simple", [0, 1], {}, "x"))


def test_engine_disagreement_is_reported(monkeypatch):
    monkeypatch.setattr(quiver, "derivation_ext", lambda *a: 7)
    with pytest.raises(EngineDisagreement):
        quiver.build_quiver(5, -1, "verma", "both")
