from __future__ import annotations

import json

import pytest

from detrep.cli import main
from detrep.biaffine import rep_from_json, rep_to_json, verify
from detrep.construct import construct
from detrep.poly import poly_to_json
from detrep.roots import rootset_from_json

from conftest import random_full_system


def run(argv):
    return main(argv)


def write_system(tmp_path, name, d, seed, real=False):
    p, q = random_full_system(d, seed=seed, real=real)
    pp = tmp_path / f"{name}.p.json"
    qq = tmp_path / f"{name}.q.json"
    pp.write_text(json.dumps(poly_to_json(p)))
    qq.write_text(json.dumps(poly_to_json(q)))
    return pp, qq


def test_construct_minunif(tmp_path, capsys):
    out = tmp_path / "rep.json"
    assert run(["construct", "-n", "2", "-d", "4", "--method", "minunif", "--out", str(out)]) == 0
    obj = json.loads(out.read_text())
    assert obj["N"] == 7
    assert verify(rep_from_json(obj), "symbolic").ok


def test_construct_turan(tmp_path):
    out = tmp_path / "rep.json"
    assert run(["construct", "-n", "6", "-d", "4", "--method", "cons2-turan", "--out", str(out)]) == 0
    assert json.loads(out.read_text())["N"] == 22


def test_construct_inapplicable_exit_2(capsys):
    assert run(["construct", "-n", "3", "-d", "4", "--method", "cons2-turan"]) == 2
    err = capsys.readouterr().err
    assert json.loads(err.strip().splitlines()[-1])["error"]


def test_verify_pass_and_fail(tmp_path, capsys):
    rep = construct(2, 2, "cons2-table")
    good = tmp_path / "good.json"
    good.write_text(json.dumps(rep_to_json(rep)))
    assert run(["verify", "--rep", str(good), "--mode", "symbolic"]) == 0
    out = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert out["verdict"] == "pass"

    obj = rep_to_json(rep)
    obj["M0"][0][1]["c"] = "2"  # corrupt the printed 1
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(obj))
    assert run(["verify", "--rep", str(bad), "--mode", "symbolic"]) == 1
    captured = capsys.readouterr()
    assert "witness" in captured.out


def test_verify_cap_exit_2(tmp_path, capsys):
    rep = construct(6, 4, "cons2-turan")
    f = tmp_path / "rep.json"
    f.write_text(json.dumps(rep_to_json(rep)))
    assert run(["verify", "--rep", str(f), "--mode", "symbolic"]) == 2
    assert run(["verify", "--rep", str(f), "--mode", "random", "--trials", "5", "--seed", "1"]) == 0
    capsys.readouterr()


def test_solve_circle_line(tmp_path, capsys):
    p = {"n": 2, "terms": [{"exp": [2, 0], "re": 1.0}, {"exp": [0, 2], "re": 1.0}, {"exp": [0, 0], "re": -1.0}]}
    q = {"n": 2, "terms": [{"exp": [1, 0], "re": 1.0}, {"exp": [0, 1], "re": -1.0}]}
    pf, qf = tmp_path / "p.json", tmp_path / "q.json"
    pf.write_text(json.dumps(p))
    qf.write_text(json.dumps(q))
    assert run(["solve", "--p", str(pf), "--q", str(qf)]) == 0
    obj = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    rs = rootset_from_json(obj)
    assert len(rs) == 2 and rs.max_residual() < 1e-10
    # csv flavour
    out = tmp_path / "roots.csv"
    assert run(["solve", "--p", str(pf), "--q", str(qf), "--format", "csv", "--out", str(out)]) == 0
    assert out.read_text().splitlines()[0] == "x_re,x_im,y_re,y_im,residual"


def test_solve_matches_oracle_flag(tmp_path, capsys):
    pf, qf = write_system(tmp_path, "sys", d=3, seed=55)
    assert run(["solve", "--p", str(pf), "--q", str(qf), "--seed", "0"]) == 0
    eig = rootset_from_json(json.loads(capsys.readouterr().out.strip().splitlines()[-1]))
    assert run(["solve", "--p", str(pf), "--q", str(qf), "--oracle"]) == 0
    orc = rootset_from_json(json.loads(capsys.readouterr().out.strip().splitlines()[-1]))
    from conftest import pairing_distance

    assert pairing_distance(eig.roots, orc.roots) < 1e-6


def test_solve_zero_poly_exit_2(tmp_path, capsys):
    pf = tmp_path / "p.json"
    pf.write_text(json.dumps({"n": 2, "terms": []}))
    qf = tmp_path / "q.json"
    qf.write_text(json.dumps({"n": 2, "terms": [{"exp": [1, 0], "re": 1.0}]}))
    assert run(["solve", "--p", str(pf), "--q", str(qf)]) == 2
    capsys.readouterr()


def test_solve_missing_args_exit_2(capsys):
    assert run(["solve"]) == 2
    capsys.readouterr()


def test_solve_batch(tmp_path, capsys):
    write_system(tmp_path, "a", d=2, seed=3)
    write_system(tmp_path, "b", d=3, seed=4, real=True)
    assert run(["solve", "--batch", str(tmp_path), "--jobs", "2", "--seed", "0"]) == 0
    for name, count in (("a", 4), ("b", 9)):
        rs = rootset_from_json(json.loads((tmp_path / f"{name}.roots.json").read_text()))
        assert len(rs) == count
    capsys.readouterr()


def test_seed_env_fallback(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("DETREP_SEED", "7")
    pf, qf = write_system(tmp_path, "sys", d=2, seed=9)
    assert run(["solve", "--p", str(pf), "--q", str(qf)]) == 0
    first = capsys.readouterr().out
    assert run(["solve", "--p", str(pf), "--q", str(qf)]) == 0
    second = capsys.readouterr().out
    assert first == second  # bit-reproducible for a fixed seed


def test_sizes_reproduces_best_known(capsys):
    assert run(["sizes", "--n-range", "2:8", "--d-range", "2:9"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    table = {}
    for line in lines[1:]:
        n, d, method, size = line.split(",")
        table[(int(n), int(d))] = int(size)
    from detrep.construct import KNOWN_SIZES

    assert table == KNOWN_SIZES


def test_sizes_methods_rows(capsys):
    assert run(["sizes", "--n-range", "2", "--d-range", "3:12", "--methods", "cons1-tree,minunif"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()[1:]
    tree = [int(l.split(",")[3]) for l in lines if l.split(",")[2] == "cons1-tree"]
    mu = [int(l.split(",")[3]) for l in lines if l.split(",")[2] == "minunif"]
    assert tree == [5, 8, 11, 15, 19, 24, 29, 35, 41, 48]
    assert mu == [5, 7, 9, 11, 13, 15, 17, 19, 21, 23]


def test_sizes_empty_range(capsys):
    assert run(["sizes", "--n-range", "", "--d-range", "2:3"]) == 0
    assert capsys.readouterr().out.strip() == "n,d,method,N"
