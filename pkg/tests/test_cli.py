import json
import subprocess
import sys

import pytest

from cliquetop.cli import main
from cliquetop.complexes import load_fixture, write_facet_list
from cliquetop.graphs import Graph, read_edge_list, write_edge_list


def run_json(capsys, argv):
    assert main(argv) == 0
    return json.loads(capsys.readouterr().out)


def test_generate_roundtrip(tmp_path):
    out = tmp_path / "g.edges"
    assert main(["generate", "--n", "20", "--p", "0.3", "--seed", "7",
                 "--out", str(out)]) == 0
    g = read_edge_list(str(out))
    assert g.n == 20
    again = tmp_path / "g2.edges"
    main(["generate", "--n", "20", "--p", "0.3", "--seed", "7",
          "--out", str(again)])
    assert out.read_bytes() == again.read_bytes()


def test_generate_needs_one_probability(capsys):
    assert main(["generate", "--n", "10"]) == 1
    assert "exactly one" in capsys.readouterr().err
    assert main(["generate", "--n", "10", "--p", "0.5", "--alpha", "-1"]) == 1


def test_complex_command(tmp_path):
    edges = tmp_path / "k4.edges"
    write_edge_list(Graph.complete(4), str(edges))
    facets = tmp_path / "k4.facets"
    assert main(["complex", str(edges), "--out", str(facets)]) == 0
    assert facets.read_text().split() == ["0", "1", "2", "3"]


def test_homology_cycle(tmp_path, capsys):
    edges = tmp_path / "c4.edges"
    write_edge_list(Graph.cycle(4), str(edges))
    payload = run_json(capsys, ["homology", str(edges)])
    assert payload["f_vector"] == [4, 4]
    assert payload["betti"] == [0, 1]
    assert payload["exhausted"] is True


def test_homology_facets_torsion(tmp_path, capsys):
    facets = tmp_path / "rp2.facets"
    write_facet_list(load_fixture("rp2_6"), str(facets))
    p2 = run_json(capsys, ["homology", str(facets), "--facets", "--prime", "2",
                           "--integers", "1"])
    assert p2["betti"][1] == 1
    assert p2["integer"]["torsion"] == [2]
    pbig = run_json(capsys, ["homology", str(facets), "--facets",
                             "--crosscheck"])
    assert pbig["betti"][1] == 0
    assert pbig["crosscheck"]["agreed"] is True


def test_morse_command(tmp_path, capsys):
    edges = tmp_path / "k4.edges"
    write_edge_list(Graph.complete(4), str(edges))
    lex = run_json(capsys, ["morse", str(edges), "--k", "1"])
    assert lex["strategy"] == "lex" and lex["acyclic"] is True
    assert lex["critical_lower"] == 3
    rnd = run_json(capsys, ["morse", str(edges), "--k", "1",
                            "--strategy", "random", "--seed", "5"])
    assert rnd["proposed"] == 6
    assert rnd["acyclic"] is True


def test_detect_commands(tmp_path, capsys):
    c4 = tmp_path / "c4.edges"
    write_edge_list(Graph.cycle(4), str(c4))
    sphere = run_json(capsys, ["detect", str(c4), "--sphere-k", "1",
                               "--budget", "50"])
    assert sphere["found"] is True and sphere["verified"] is True
    path = tmp_path / "p5.edges"
    write_edge_list(Graph.path(5), str(path))
    vanish = run_json(capsys, ["detect", str(path), "--vanish-k", "1"])
    assert vanish["guaranteed_zero"] is True
    assert "core" in vanish["reason"]


def test_analytic_command(capsys):
    payload = run_json(capsys, ["analytic", "--n", "100", "--p", "0.05",
                                "--k", "1", "--l", "4"])
    assert payload["expected_faces"] == pytest.approx(247.5)
    assert "p_connect" in payload["thresholds"]
    assert "p_common_l" in payload["thresholds"]


def test_sweep_command(tmp_path, capsys):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps(
        {"n_list": [8], "p_list": [0.5], "trials": 3, "master_seed": 3}))
    out = tmp_path / "results"
    payload = run_json(capsys, ["sweep", "--config", str(config),
                                "--out", str(out), "--jobs", "1"])
    assert payload["records"] == 3 and payload["errors"] == 0
    assert (out / "trials.csv").read_text().count("\n") == 4
    assert (out / "summary.json").exists()


def test_sweep_rejects_unknown_key(tmp_path, capsys):
    config = tmp_path / "cfg.json"
    config.write_text('{"n_list": [8], "p_list": [0.5], "bogus": 1}')
    assert main(["sweep", "--config", str(config)]) == 1
    assert "bogus" in capsys.readouterr().err


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "cliquetop", "analytic",
                           "--n", "50", "--p", "0.5", "--k", "1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["n"] == 50


def test_no_subcommand_is_usage_error():
    with pytest.raises(SystemExit):
        main([])
