import io
import json

import pytest
from hypothesis import given, settings, strategies as st

from conftest import DATA
from multitoric.cli import format_binomial, main
from multitoric.errors import ParseError
from multitoric.formats import format_graph, format_poset, parse_graph, parse_poset
from multitoric.graphs import Graph, verify_strong_peo
from multitoric.posets import enumerate_posets, poset_from_covers

INTRO_ECHO = ["    3 2 1 0 0 0 0",
              "    0 1 2 3 2 1 0",
              "    0 0 0 0 1 2 3"]


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_parse_poset_with_comments():
    P = parse_poset("# intro\nposet n=3\ncover 2 1  # x2 < x1\n\ncover 2 3\n")
    assert P == poset_from_covers(3, [(1, 0), (1, 2)])


@pytest.mark.parametrize("text, line", [
    ("poset n=3\ncover 1 4\n", 2),
    ("poset n=3\ncover 1\n", 2),
    ("poset n=3\ncover a b\n", 2),
    ("graph n=3\n", 1),
    ("poset n=0\n", 1),
    ("", 1),
])
def test_parse_poset_errors(text, line):
    with pytest.raises(ParseError) as exc:
        parse_poset(text)
    assert exc.value.line == line


def test_parse_poset_cycle_has_no_line():
    with pytest.raises(ParseError) as exc:
        parse_poset("poset n=2\ncover 1 2\ncover 2 1\n")
    assert exc.value.line is None


def test_parse_graph():
    G = parse_graph("graph n=3\nedge 1 2\nedge 2 3\n")
    assert G == Graph.path(3)
    with pytest.raises(ParseError):
        parse_graph("graph n=0\n")
    with pytest.raises(ParseError):
        parse_graph("graph n=2\nedge 1 1\n")


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 4).flatmap(lambda n: st.sampled_from(list(enumerate_posets(n)))))
def test_poset_format_round_trip(P):
    assert parse_poset(format_poset(P)) == P


def test_graph_format_round_trip():
    G = Graph.cycle(5)
    assert parse_graph(format_graph(G)) == G


def test_analyze_intro_echoes_matrix():
    code, text = run("analyze-poset", str(DATA / "intro.poset"), "--d", "3")
    assert code == 0
    lines = text.splitlines()
    k = lines.index("  configuration:")
    assert lines[k + 1:k + 4] == INTRO_ECHO
    assert "comparability graph chordal: True" in lines
    assert "all verdicts agree: True" in lines


def test_analyze_c4_json():
    code, text = run("analyze-poset", str(DATA / "c4.poset"), "--d", "2", "--format", "json")
    assert code == 0
    obj = json.loads(text)
    assert obj["cond_i"] is False and obj["gb_quadratic"]["2"] is False
    assert obj["generation"]["2"]["verdict"] is False
    cert = obj["generation"]["2"]["certificate"]
    assert max(sum(cert["plus"]), sum(cert["minus"])) == 3
    assert obj["witnesses"]["even_cycle_d2"]["lemma1"] is True


def test_malformed_file_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.poset"
    bad.write_text("poset n=2\ncover 1 5\n")
    code, _ = run("analyze-poset", str(bad))
    assert code == 1
    assert "ParseError" in capsys.readouterr().err
    empty = tmp_path / "empty.graph"
    empty.write_text("graph n=0\n")
    assert run("analyze-graph", str(empty))[0] == 1
    assert run("analyze-poset", str(tmp_path / "missing.poset"))[0] == 1


def test_analyze_graph_examples():
    code, text = run("analyze-graph", str(DATA / "sun3.graph"))
    assert code == 0
    assert "strongly chordal: False" in text and "sun: [1, 2, 3, 4, 5, 6]" in text
    code, text = run("analyze-graph", str(DATA / "two_triangles.graph"), "--format", "json")
    obj = json.loads(text)
    assert obj["strongly_chordal"]["verdict"] == "strongly_chordal"
    G = parse_graph((DATA / "two_triangles.graph").read_text())
    assert verify_strong_peo(G, [v - 1 for v in obj["strongly_chordal"]["speo"]])


def test_sweep_commands():
    code, text = run("sweep-posets", "--n-max", "3", "--d", "2")
    assert code == 0 and text.startswith("posets: 19 instances, 19 agree, 0 violations")
    code, text = run("sweep-graphs", "--n-max", "4")
    assert code == 0 and text.startswith("graphs: 64 instances, 64 agree, 0 violations")
    assert run("sweep-posets", "--n-max", "9")[0] == 1
    code, text = run("sweep-graphs", "--n-max", "3", "--format", "json")
    lines = [json.loads(x) for x in text.splitlines()]
    assert len(lines) == 9 and lines[-1]["summary"]["instances"] == 8


def test_sweep_jobs_keep_order():
    serial = run("sweep-graphs", "--n-max", "4", "--format", "json")[1].splitlines()
    parallel = run("sweep-graphs", "--n-max", "4", "--format", "json", "--jobs", "2")[1].splitlines()
    assert serial[:-1] == parallel[:-1]


def test_gb_command():
    code, text = run("gb", str(DATA / "chain3.poset"), "--d", "2")
    assert code == 0
    assert "reduced Groebner basis (6 elements, max degree 2)" in text
    assert "  y_{12}^2 - y_{11}y_{22}" in text
    code, text = run("gb", str(DATA / "chain2.poset"), "--d", "2")
    assert "  y_{12}^2 - y_{11}y_{22}" in text.splitlines()
    assert "(1 element," in text
    assert run("gb", str(DATA / "c4.poset"))[0] == 1
    # seeded random pair selection gives the same basis
    a = json.loads(run("gb", str(DATA / "two_branches.poset"), "--format", "json")[1])
    b = json.loads(run("gb", str(DATA / "two_branches.poset"), "--format", "json", "--seed", "5")[1])
    assert a["basis"] == b["basis"]
    code, text = run("gb", str(DATA / "c5.graph"), "--order", "grevlex")
    assert code == 0


def test_markov_command():
    code, text = run("markov", str(DATA / "two_branches.poset"), "--d", "2", "--format", "json")
    obj = json.loads(text)
    assert obj["minimal_degrees"] == [2] * len(obj["minimal_degrees"])


def test_normality_command():
    code, text = run("normality", str(DATA / "star.poset"), "--d", "2", "--format", "json")
    obj = json.loads(text)
    assert code == 0
    assert [0, 1, 1] in [h["vector"] for h in obj["holes"]]
    code, text = run("normality", str(DATA / "two_chains.poset"), "--d", "3", "--format", "json")
    obj = json.loads(text)
    assert obj["holes"] == [] and obj["disjoint_union_of_chains"]
    code, text = run("normality", str(DATA / "intro.poset"), "--d", "3", "--format", "json")
    obj = json.loads(text)
    assert obj["holes"] and obj["normalization_equals_veronese"] is True


def test_format_binomial():
    from multitoric.binomials import PureBinomial
    assert format_binomial(PureBinomial((2, 0, 1), (0, 3, 0)), ["a", "b", "c"]) == "a^2c - b^3"
