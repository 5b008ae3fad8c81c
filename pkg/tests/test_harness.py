import csv
import json
from pathlib import Path

import pytest

from cliquetop.harness import (
    MeshulamReport,
    SweepConfig,
    emit,
    meshulam_suite,
    run_sweep,
    run_trial,
    summarize,
    trial_stream_id,
)
from cliquetop.homology import euler_check


def one_point(cfg):
    return cfg.points()[0]


# -- single trials -------------------------------------------------------

def test_trial_complete_graph():
    cfg = SweepConfig(n_list=[4], p_list=[1.0], k_max=1, max_dim=3, master_seed=5)
    rec = run_trial(cfg, one_point(cfg), 0)
    assert rec.f_vector == (4, 6, 4, 1)
    assert rec.betti == (0, 0, 0, 0)
    assert rec.exact == (True,) * 4
    assert not rec.truncated
    assert rec.critical_lex == (1, 3)
    assert rec.d_pairs == 12
    assert rec.removed_pairs is not None
    assert not rec.cert_found and rec.vanish_cert == ""
    assert rec.error is None


def test_trial_edgeless():
    cfg = SweepConfig(n_list=[6], p_list=[0.0], k_max=1, master_seed=5)
    rec = run_trial(cfg, one_point(cfg), 0)
    assert rec.f_vector == (6,)
    assert rec.betti == (5,)
    assert not rec.truncated
    assert rec.critical_lex == (6, 0)
    assert rec.d_pairs == 0
    assert "core" in rec.vanish_cert


def test_trial_deterministic():
    cfg = SweepConfig(n_list=[20], p_list=[0.4], k_max=1, master_seed=77)
    a = run_trial(cfg, one_point(cfg), 3)
    b = run_trial(cfg, one_point(cfg), 3)
    assert a == b


def test_trial_euler_when_untruncated():
    cfg = SweepConfig(n_list=[12], p_list=[0.35], k_max=1, max_dim=11,
                      master_seed=2)
    for index in range(5):
        rec = run_trial(cfg, one_point(cfg), index)
        assert not rec.truncated
        assert rec.error is None


def test_trial_guard_truncates_not_fatal():
    cfg = SweepConfig(n_list=[12], p_list=[0.9], k_max=2, max_dim=3,
                      max_faces_per_dim=5, master_seed=1)
    rec = run_trial(cfg, one_point(cfg), 0)
    assert rec.truncated
    assert rec.error is None
    assert rec.d_pairs is None and rec.removed_pairs is None
    assert rec.critical_lex == ()


def test_paranoid_spot_check():
    cfg = SweepConfig(n_list=[10], p_list=[0.5], k_max=1, paranoid=True,
                      master_seed=3)
    assert run_trial(cfg, one_point(cfg), 0).paranoid_ok is True
    assert run_trial(cfg, one_point(cfg), 1).paranoid_ok is None


# -- config --------------------------------------------------------------

def test_config_from_json_defaults():
    cfg = SweepConfig.from_json('{"n_list": [10], "p_list": [0.5]}')
    assert cfg.k_max == 1 and cfg.trials == 1 and cfg.jobs == 1
    assert cfg.resolved_max_dim == 2
    assert cfg.budget_for(10) == 500


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="bogus"):
        SweepConfig.from_json('{"n_list": [10], "p_list": [0.5], "bogus": 1}')


def test_config_validation():
    with pytest.raises(ValueError):
        SweepConfig(n_list=[10])  # neither p nor alpha
    with pytest.raises(ValueError):
        SweepConfig(n_list=[10], p_list=[0.5], alpha_list=[-0.5])
    with pytest.raises(ValueError):
        SweepConfig(n_list=[10], p_list=[1.5])
    with pytest.raises(ValueError):
        SweepConfig(n_list=[10], p_list=[0.5], trials=0)
    with pytest.raises(ValueError):
        SweepConfig(n_list=[10], p_list=[0.5], prime=91)
    with pytest.raises(ValueError):
        SweepConfig(n_list=[], p_list=[0.5])
    cfg = SweepConfig(n_list=[10], alpha_list=[-0.5], detector_budget=0)
    assert cfg.budget_for(10) == 0
    assert one_point(cfg).probability == 10 ** (-0.5)


def test_stream_id_depends_on_bits():
    assert trial_stream_id(10, 0.5, 0) != trial_stream_id(10, 0.5, 1)
    assert trial_stream_id(10, 0.5, 0) != trial_stream_id(11, 0.5, 0)
    assert trial_stream_id(10, 0.5, 0) != trial_stream_id(10, 0.25, 0)


# -- sweeps --------------------------------------------------------------

def test_sweep_single_trial():
    cfg = SweepConfig(n_list=[8], p_list=[0.5], trials=1, master_seed=4)
    result = run_sweep(cfg)
    assert len(result.records) == 1
    assert len(result.summary) == 1
    assert result.summary[0].trials == 1


def test_sweep_adding_points_preserves_records():
    a = SweepConfig(n_list=[14], p_list=[0.3], trials=3, master_seed=9)
    b = SweepConfig(n_list=[14], p_list=[0.3, 0.55], trials=3, master_seed=9)
    assert run_sweep(a).records == run_sweep(b).records[:3]


def test_sweep_parallel_byte_identical(tmp_path):
    base = dict(n_list=[12], p_list=[0.3, 0.5], trials=3, master_seed=11)
    r1 = run_sweep(SweepConfig(**base, jobs=1, out_dir=str(tmp_path / "a")))
    r2 = run_sweep(SweepConfig(**base, jobs=2, out_dir=str(tmp_path / "b")))
    assert r1.records == r2.records
    for name in ("trials.csv", "trials.jsonl", "summary.json"):
        assert (tmp_path / "a" / name).read_bytes() == \
            (tmp_path / "b" / name).read_bytes()


def test_sweep_captures_trial_errors(monkeypatch):
    import cliquetop.harness as hmod

    def boom(n, p, rng):
        raise RuntimeError("forced failure")

    monkeypatch.setattr(hmod, "generate_gnp", boom)
    cfg = SweepConfig(n_list=[5], p_list=[0.5], trials=2, master_seed=1)
    result = run_sweep(cfg)
    assert all(r.error and "forced failure" in r.error for r in result.records)
    assert result.summary[0].error_trials == 2


def test_summary_recomputation():
    cfg = SweepConfig(n_list=[18], p_list=[0.02, 0.6], trials=5, master_seed=21)
    result = run_sweep(cfg)
    assert summarize(cfg, result.records) == result.summary
    for row in result.summary:
        assert 0.0 <= row.prob_nonzero <= 1.0
        assert 0.0 <= row.cert_hit_rate <= 1.0
        assert row.known_trials <= row.trials == 5
        assert row.expected_f > 0.0
    with pytest.raises(ValueError):
        summarize(cfg, result.records[:-1])


# -- emit ----------------------------------------------------------------

def test_emit_csv_two_lines(tmp_path):
    cfg = SweepConfig(n_list=[4], p_list=[1.0], k_max=1, max_dim=3, master_seed=5)
    rec = run_trial(cfg, one_point(cfg), 0)
    paths = emit([rec], tmp_path)
    lines = Path(paths["csv"]).read_text().splitlines()
    assert len(lines) == 2
    assert lines[0] == ("trial_id,n,p,alpha,k,seed,f_vector,betti,truncated,"
                       "critical_lex,d_pairs,cert_found,cert_verified,"
                       "vanish_cert,time_ms_total")
    row = lines[1].split(",")
    assert row[6] == "4;6;4;1" and row[7] == "0;0;0;0"


def test_emit_formats_agree(tmp_path):
    cfg = SweepConfig(n_list=[10], p_list=[0.4], trials=3, master_seed=6)
    records = run_sweep(cfg).records
    paths = emit(records, tmp_path)
    with open(paths["csv"], newline="") as fh:
        rows = list(csv.DictReader(fh))
    with open(paths["jsonl"]) as fh:
        docs = [json.loads(line) for line in fh]
    assert len(rows) == len(docs) == 3
    for row, doc in zip(rows, docs):
        assert row["trial_id"] == doc["trial_id"]
        assert int(row["n"]) == doc["n"]
        assert float(row["p"]) == doc["p"]
        assert int(row["seed"]) == doc["seed"]
        assert [int(x) for x in row["f_vector"].split(";")] == doc["f_vector"]
        assert [int(x) for x in row["betti"].split(";")] == doc["betti"]
        assert (row["truncated"] == "true") == doc["truncated"]
        assert (row["cert_found"] == "true") == doc["cert_found"]
        assert row["vanish_cert"] == doc["vanish_cert"]
    with pytest.raises(ValueError):
        emit(records, tmp_path, formats=("xml",))


# -- meshulam suite ------------------------------------------------------

def test_meshulam_complete_graph():
    report = meshulam_suite(8, 1.0, 1, 2, seed=0)
    assert report.hypothesis_count == 2
    assert report.violations == () and report.unchecked == ()


def test_meshulam_tiny_n_rejected():
    report = meshulam_suite(3, 0.9, 1, 4, seed=0)
    assert report.hypothesis_count == 0 and report.violations == ()


def test_meshulam_random_zero_violations():
    report = meshulam_suite(30, 0.8, 1, 5, seed=123)
    assert isinstance(report, MeshulamReport)
    assert report.violations == () and report.unchecked == ()
    assert 0 <= report.hypothesis_count <= 5


def test_meshulam_validation():
    with pytest.raises(ValueError):
        meshulam_suite(10, 0.5, -1, 5, seed=0)
    with pytest.raises(ValueError):
        meshulam_suite(10, 0.5, 1, 0, seed=0)
