import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given, strategies as st

from isospectral import cli, io
from isospectral.gallery import catalog, looped_six
from isospectral.graph import CycleOverflowError
from isospectral.wfield import RootFindingError

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"


def write(tmp_path, obj, name="g.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj) if not isinstance(obj, str) else obj, encoding="utf-8")
    return str(p)


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


# --- graph files --------------------------------------------------------------


@pytest.mark.parametrize("name", sorted(catalog()))
def test_fixture_files_are_canonical(name):
    text = (FIXTURES / f"{name}.json").read_text(encoding="utf-8")
    assert text == io.dump_graph(catalog()[name], 1)
    parsed = io.load_graph(str(FIXTURES / f"{name}.json"))
    assert parsed.graph.close(catalog()[name]) and not parsed.warnings


@pytest.mark.parametrize("base", [0, 1])
def test_round_trip_is_fixed_point(base):
    for g in catalog().values():
        text = io.dump_graph(g, base)
        again = io.parse_graph(json.loads(text))
        assert again.index_base == base
        assert io.dump_graph(again.graph, base) == text


def test_hash_ignores_index_base():
    g = catalog()["three_vertex_rational"]
    h = io.parse_graph(json.loads(io.dump_graph(g, 1))).graph
    assert io.graph_hash(g) == io.graph_hash(h)
    assert len(io.graph_hash(g)) == 64


def test_zero_denominator_rejected():
    obj = {"n": 2, "entries": [{"i": 1, "j": 2, "num": [1], "den": [0, 0]}]}
    with pytest.raises(io.GraphFormatError, match=r"zero denominator at \(1,2\)"):
        io.parse_graph(obj)


def test_duplicates_summed_with_warning():
    obj = {"n": 2, "entries": [{"i": 1, "j": 2, "num": [1]}, {"i": 1, "j": 2, "num": [[2, 0]]}]}
    parsed = io.parse_graph(obj)
    assert parsed.graph[0, 1].close(3)
    assert parsed.warnings == ["duplicate entry (1,2) merged by summing weights"]


@pytest.mark.parametrize("obj,msg", [
    ([], "JSON object"),
    ({"n": 0}, "positive integer"),
    ({"n": 2, "index_base": 2}, "index_base"),
    ({"n": 2, "entries": [{"i": 3, "j": 1, "num": [1]}]}, "out of range"),
    ({"n": 2, "entries": [{"i": 1, "j": 1}]}, "'num'"),
    ({"n": 2, "entries": [{"i": 1, "num": [1]}]}, "'j'"),
    ({"n": 2, "entries": [{"i": 1, "j": 1, "num": ["a"]}]}, "coefficient 0"),
    ({"n": 2, "entries": [{"i": 1, "j": 1, "num": [True]}]}, "coefficient 0"),
    ({"format": "other", "n": 1}, "format"),
])
def test_malformed_graphs(obj, msg):
    with pytest.raises(io.GraphFormatError, match=msg):
        io.parse_graph(obj)


def test_invalid_json(tmp_path):
    with pytest.raises(io.GraphFormatError, match="invalid JSON"):
        io.load_graph(write(tmp_path, "{not json"))


def test_numbers_rounded_and_negative_zero_cleared():
    assert io.complex_to_obj(complex(-0.0, 1 / 3)) == [0, 0.333333333333]
    assert io.fmt_number(complex(2, -1)) == "2-1i"


@given(st.lists(st.booleans(), min_size=1, max_size=80), st.integers(1, 8))
def test_rle_round_trip(bits, width):
    n = len(bits) - len(bits) % width or width
    mask = np.array((bits * width)[:n], dtype=bool).reshape(-1, width)
    runs = io.encode_rle(mask)
    assert sum(runs) == mask.size
    assert all(r > 0 for r in runs[1:])
    assert np.array_equal(io.decode_rle(runs, mask.shape), mask)


def test_rle_starts_with_false_run():
    assert io.encode_rle(np.array([[True, True, False]])) == [0, 2, 1]
    with pytest.raises(ValueError):
        io.decode_rle([1, 1], (1, 3))


# --- command line -------------------------------------------------------------


def test_validate_prints_canonical(capsys):
    path = str(FIXTURES / "three_vertex_rational.json")
    code, out, err = run(["validate", path], capsys)
    assert code == 0 and "OK: 3 vertices" in err
    assert out == (FIXTURES / "three_vertex_rational.json").read_text(encoding="utf-8")


def test_validate_invalid_exit_code(tmp_path, capsys):
    bad = write(tmp_path, {"n": 1, "entries": [{"i": 1, "j": 1, "num": [1], "den": [0]}]})
    code, _, err = run(["validate", bad], capsys)
    assert code == 2 and "zero denominator at (1,1)" in err
    code, _, _ = run(["validate", str(tmp_path / "missing.json")], capsys)
    assert code == 2


def test_reduce_keep(capsys):
    path = str(FIXTURES / "five_vertex_unweighted.json")
    code, out, err = run(["reduce", path, "--keep", "v1,v2,v3"], capsys)
    obj = json.loads(out)
    assert code == 0 and obj["kept"] == ["v1", "v2", "v3"]
    assert "exceptional set: {0}" in err
    again = io.parse_graph(obj["graph"]).graph
    assert again.close(catalog()["three_vertex_rational"])


def test_reduce_sequence_and_eliminate_agree(capsys):
    path = str(FIXTURES / "five_vertex_unweighted.json")
    _, a, _ = run(["reduce", path, "--sequence", "v1,v2,v3;v1,v2"], capsys)
    _, b, _ = run(["reduce", path, "--eliminate", "v4,v5,v3"], capsys)
    ga = io.parse_graph(json.loads(a)["graph"]).graph
    gb = io.parse_graph(json.loads(b)["graph"]).graph
    assert ga.close(gb)


def test_reduce_not_structural(capsys):
    path = str(FIXTURES / "five_vertex_unweighted.json")
    code, _, err = run(["reduce", path, "--keep", "1,3"], capsys)
    assert code == 2 and "cycle" in err
    code, _, err = run(["reduce", path, "--keep", "v9"], capsys)
    assert code == 2 and "out of range" in err
    code, _, _ = run(["reduce", path], capsys)
    assert code == 2


def test_spectrum_json(capsys):
    code, out, _ = run(["spectrum", str(FIXTURES / "laplacian_demo.json"), "--json"], capsys)
    vals = sorted(e["value"][0] for e in json.loads(out)["eigenvalues"])
    assert code == 0 and len(vals) == 5


def test_region_deterministic(tmp_path, capsys):
    path = str(FIXTURES / "three_vertex_rational.json")
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    args = ["region", path, "--kind", "brualdi", "--window=-3,3,-3,3", "--res", "50,40"]
    assert run(args + ["--out", str(out1)], capsys)[0] == 0
    assert run(args + ["--out", str(out2)], capsys)[0] == 0
    assert out1.read_bytes() == out2.read_bytes()
    masks = io.raster_from_obj(json.loads(out1.read_text()))
    assert masks["union"].shape == (40, 50)


def test_region_bad_window(capsys):
    path = str(FIXTURES / "three_vertex_rational.json")
    code, _, err = run(["region", path, "--window=1,2,3"], capsys)
    assert code == 2 and "--window" in err


def test_rho_output(capsys):
    code, out, _ = run(["rho", str(FIXTURES / "looped_six.json")], capsys)
    assert code == 0 and "spectral radius <= 2.0000" in out


def test_laplacian_and_suggest(capsys):
    code, out, _ = run(["laplacian", str(FIXTURES / "laplacian_demo.json")], capsys)
    assert code == 0 and io.parse_graph(json.loads(out)).graph.n == 5
    code, out, _ = run(["suggest", str(FIXTURES / "looped_six.json"), "--top", "1"], capsys)
    assert code == 0 and out.startswith("1. keep {v1,v3,v5}")
    code, _, _ = run(["laplacian", str(FIXTURES / "five_vertex_unweighted.json")], capsys)
    assert code == 2


@pytest.mark.parametrize("exc", [CycleOverflowError("too many cycles"),
                                 RootFindingError("no convergence", None)])
def test_numeric_failures_exit_3(monkeypatch, capsys, exc):
    def boom(*a, **k):
        raise exc
    monkeypatch.setattr(cli, "poly_extension", boom)
    code, _, err = run(["region", str(FIXTURES / "looped_six.json")], capsys)
    assert code == 3 and "error:" in err


def test_in_memory_graph_survives_cli_round_trip(tmp_path, capsys):
    p = write(tmp_path, io.dump_graph(looped_six(), 0))
    code, out, _ = run(["validate", p], capsys)
    assert code == 0 and json.loads(out)["index_base"] == 0
