import io as _io
import json
import subprocess
import sys

import pydot
import pytest

from rxnskel.cli import main, revalidate


def run(*argv):
    out, err = _io.StringIO(), _io.StringIO()
    code = main(list(map(str, argv)), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def tour(data_dir):
    return data_dir / "tour.rs"


@pytest.fixture
def swapped(tmp_path, tour):
    code, out, _ = run("swap", tour, "{1,3}", "{1,3,4}")
    assert code == 0
    path = tmp_path / "tour-swapped.rs"
    path.write_text(out)
    return path


def test_res(tour):
    assert run("res", tour, "{2,3,4}")[:2] == (0, "{1}\n")
    assert run("res", tour, "{1,2,3}")[:2] == (0, "{}\n")
    assert run("res", tour, "{1,2,4}")[:2] == (0, "{1,2,3}\n")


def test_res_bad_state_is_parse_error(tour):
    code, _, err = run("res", tour, "{7}")
    assert code == 2 and "unknown element" in err


def test_missing_file_is_parse_error(tmp_path):
    code, _, err = run("closure", tmp_path / "nope.fam")
    assert code == 2 and "nope.fam" in err


def test_parse_error_reports_location(tmp_path):
    bad = tmp_path / "bad.rs"
    bad.write_text("background 1,2\na1: {1} ! {} -> {2}\n")
    code, _, err = run("res", bad, "{1}")
    assert code == 2 and "bad.rs:2:" in err


def test_graph0_text_and_dot(tour):
    code, out, _ = run("graph0", tour)
    assert code == 0
    assert out.startswith("vertices 16\n")
    assert "{1,3} -> {2,3}" in out.splitlines()
    code, out, _ = run("graph0", tour, "--dot")
    assert code == 0 and pydot.graph_from_dot_data(out)


def test_tgraph_dot_marks_extremes(tour):
    code, out, _ = run("tgraph", tour, "--dot")
    assert code == 0
    marked = [ln for ln in out.splitlines() if "peripheries=2" in ln]
    assert len(marked) == 2
    assert any('label="{}"' in ln for ln in marked)
    assert any('label="{1,2,3,4}"' in ln for ln in marked)
    graph = pydot.graph_from_dot_data(out)[0]
    assert len(graph.get_edges()) > 16


def test_companions_of_family(data_dir):
    code, out, _ = run("companions", data_dir / "regions.fam")
    assert code == 0
    assert out.split() == ["{1,2,3}", "{4}", "{5}", "{6,7,8}"]


def test_companions_of_rs(tour):
    code, out, _ = run("companions", tour)
    assert code == 0
    blocks = [ln for ln in out.splitlines()]
    assert any("{1,3}" in b and "{1,3,4}" in b for b in blocks)


def test_closure(data_dir):
    code, out, _ = run("closure", data_dir / "regions.fam")
    assert code == 0
    assert sorted(out.splitlines()[1:]) == sorted(["{4}", "{1,2,3,4}", "{5}", "{4,5}"])


def test_skeleton_and_companion_check(tmp_path, data_dir):
    code, out, _ = run("skeleton", data_dir / "embedding.graph")
    assert code == 0 and "sets:" in out
    a = tmp_path / "a.skel"
    a.write_text(out)
    b = tmp_path / "b.skel"
    # swap the representatives of two companions (vertices 1 and 2)
    b.write_text(out.replace("1 -> 1\n2 -> 2", "1 -> 2\n2 -> 1"))
    code, out, _ = run("companion-check", a, b)
    verdict = json.loads(out)
    assert code == 0 and verdict["outcome"] == "yes"
    assert revalidate("companion-check", [a, b], verdict) == []


def test_companion_check_negative(tmp_path):
    a = tmp_path / "a.skel"
    b = tmp_path / "b.skel"
    a.write_text("universe 2\nsets:\nrep 1: {1}\nf:\n1 -> 1\n2 -> 1\n")
    b.write_text("universe 2\nsets:\nrep 1: {1,2}\nf:\n1 -> 1\n2 -> 1\n")
    code, out, _ = run("companion-check", a, b)
    assert code == 1 and json.loads(out)["outcome"] == "no"


def test_iso_with_oracle(tmp_path, data_dir):
    g = data_dir / "embedding.graph"
    h = tmp_path / "h.graph"
    h.write_text("vertices 3\n1 -> 2\n")
    code, out, _ = run("iso", g, g, "--oracle")
    verdict = json.loads(out)
    assert code == 0 and "brute-force oracle agrees" in verdict["diagnostics"]
    assert revalidate("iso", [g, g], verdict) == []
    assert run("iso", g, h)[0] == 1


def test_iso_oracle_cap(tmp_path):
    big = tmp_path / "big.graph"
    big.write_text("vertices 9\n")
    code, _, err = run("iso", big, big, "--oracle")
    assert code == 3 and "size cap" in err


def test_characterize_transition_graph(tmp_path, tour):
    tg = tmp_path / "tour.tgraph"
    tg.write_text(run("tgraph", tour)[1])
    out_rs = tmp_path / "syn.rs"
    code, out, _ = run("characterize", tg, "-o", out_rs)
    verdict = json.loads(out)
    assert code == 0 and verdict["outcome"] == "yes"
    assert revalidate("characterize", [tg], verdict) == []
    assert out_rs.read_text().startswith("background ")
    code, out, _ = run("equivalent", tour, out_rs)
    assert code == 0


def test_characterize_six_vertices(data_dir):
    code, out, _ = run("characterize", data_dir / "six.graph")
    verdict = json.loads(out)
    assert code == 1
    assert verdict["outcome"] == "no" and verdict["witness"] is None
    assert verdict["diagnostics"] == ["vertex count not a power of two"]


def test_characterize_non_cone_graph(tmp_path):
    g = tmp_path / "g.graph"
    g.write_text("vertices 4\n1 -> 2\n1 -> 3\n1 -> 4\n")
    code, out, _ = run("characterize", g)
    assert code == 1 and "cones" in json.loads(out)["diagnostics"][0]


def test_equivalent_yes_with_witness(tour, swapped):
    code, out, _ = run("equivalent", tour, swapped)
    verdict = json.loads(out)
    assert code == 0 and verdict["outcome"] == "yes"
    assert "set_map" in verdict["witness"] and "isomorphism" in verdict["witness"]
    assert revalidate("equivalent", [tour, swapped], verdict) == []


def test_tampered_witness_is_caught(tour, swapped):
    verdict = json.loads(run("equivalent", tour, swapped)[1])
    iso = verdict["witness"]["isomorphism"]
    iso["{1}"], iso["{2}"] = iso["{2}"], iso["{1}"]
    assert revalidate("equivalent", [tour, swapped], verdict)


def test_equivalent_no(tmp_path, tour):
    other = tmp_path / "other.rs"
    other.write_text("background 1,2,3,4\na1: {1} ! {2} -> {1}\n")
    code, out, _ = run("equivalent", tour, other)
    assert code == 1 and json.loads(out)["outcome"] == "no"


def test_swap_precondition(tour):
    code, _, err = run("swap", tour, "{1}", "{2}")
    assert code == 3 and "'companions'" in err
    code, _, err = run("swap", tour, "{}", "{2}")
    assert code == 3 and "'non-extremal'" in err


def test_swap_json(tour):
    code, out, _ = run("swap", tour, "{1,3}", "{1,3,4}", "--json")
    assert code == 0 and json.loads(out)["background"] == ["1", "2", "3", "4"]


def test_trace(tmp_path, tour):
    good = tmp_path / "good.seq"
    good.write_text("{1}\n{2}\n{1,3,4}\n{2,3}\n")
    code, out, _ = run("trace", tour, good)
    verdict = json.loads(out)
    assert code == 0 and len(verdict["witness"]["steps"]) == 3
    assert revalidate("trace", [tour, good], verdict) == []
    bad = tmp_path / "bad.seq"
    bad.write_text("{1}\n{3}\n")
    code, out, _ = run("trace", tour, bad)
    assert code == 1 and "step 0" in json.loads(out)["diagnostics"][0]
    empty = tmp_path / "empty.seq"
    empty.write_text("# nothing\n")
    assert run("trace", tour, empty)[0] == 3


def test_cap_environment(tmp_path, tour, monkeypatch):
    monkeypatch.setenv("RXNSKEL_MAX_N", "3")
    code, _, err = run("tgraph", tour)
    assert code == 3 and "size cap" in err


def test_console_entry_point(tour):
    proc = subprocess.run([sys.executable, "-m", "rxnskel.cli", "res", str(tour), "{2,3,4}"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == "{1}\n"
