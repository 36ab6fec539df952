import numpy as np
import pytest

import framemult.blockseq as bs
import framemult.formats as fmt
from framemult.errors import ParseError
from framemult.frames import FiniteFrame
from framemult.multipliers import Symbol


def test_frame_roundtrip():
    f = FiniteFrame([[1.0, 2.0j], [0.5, -1.0]])
    doc = fmt.frame_to_json(f)
    back = fmt.frame_from_json(doc)
    assert np.array_equal(back.synthesis, f.synthesis)


def test_symbol_roundtrip():
    m = Symbol([1.0, -2.0j, 0.25 + 0.25j])
    back = fmt.symbol_from_json(fmt.symbol_to_json(m))
    assert np.array_equal(back.values, m.values)


@pytest.mark.parametrize(
    "doc",
    [
        42,
        {},
        {"dim": 2},
        {"dim": 0, "vectors": [[[1, 0]]]},
        {"dim": "2", "vectors": [[[1, 0], [0, 0]]]},
        {"dim": 2, "vectors": []},
        {"dim": 2, "vectors": [[[1, 0]]]},
        {"dim": 1, "vectors": [[[1, 0, 0]]]},
        {"dim": 1, "vectors": [[["x", 0]]]},
        {"dim": 1, "vectors": [[[True, 0]]]},
    ],
)
def test_frame_from_json_rejects_malformed(doc):
    with pytest.raises(ParseError):
        fmt.frame_from_json(doc)


@pytest.mark.parametrize(
    "doc",
    [[], {"values": []}, {"values": [[1]]}, {"values": [1, 2]}, {"wrong": []}],
)
def test_symbol_from_json_rejects_malformed(doc):
    with pytest.raises(ParseError):
        fmt.symbol_from_json(doc)


def test_block_system_roundtrip_constant():
    sys = bs.BlockSystem.constant_template(
        [[1.0, 0.0], [0.0, 1.0]], [[1.0, 1.0], [1.0, -1.0]], [2.0, 0.5], name="demo"
    )
    back = fmt.block_system_from_json(fmt.block_system_to_json(sys))
    assert back.kind == "constant-template"
    assert back.name == "demo"
    for a, b in zip(sys.block(3), back.block(3)):
        assert np.array_equal(a, b)


def test_block_system_roundtrip_harmonic():
    sys = bs.BlockSystem.harmonic_weight(
        [[1.0]], [0], [[1.0]], [1], [1.0], [1], name="h"
    )
    back = fmt.block_system_from_json(fmt.block_system_to_json(sys))
    assert back.kind == "harmonic-weight"
    for a, b in zip(sys.block(5), back.block(5)):
        assert np.array_equal(a, b)


def test_block_system_roundtrip_interleave():
    sys = bs.example_registry()["ex4_2"].system
    back = fmt.block_system_from_json(fmt.block_system_to_json(sys))
    assert back == sys  # frozen dataclass equality


def test_block_system_rejects_unknown_kind():
    with pytest.raises(ParseError):
        fmt.block_system_from_json({"kind": "mystery", "params": {}})
    with pytest.raises(ParseError):
        fmt.block_system_from_json({"kind": "constant-template", "params": {"phi": [[[1, 0]]]}})


def test_generator_system_has_no_json_form():
    sys = bs.BlockSystem.from_generator(
        1, lambda k: (np.array([[1.0]]), np.array([[1.0]]), np.array([1.0]))
    )
    with pytest.raises(ParseError):
        fmt.block_system_to_json(sys)


def test_load_json_file_errors(tmp_path):
    missing = tmp_path / "nope.json"
    with pytest.raises(ParseError):
        fmt.load_json_file(str(missing))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    with pytest.raises(ParseError):
        fmt.load_json_file(str(bad))
