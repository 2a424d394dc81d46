import json
from pathlib import Path

import pytest

from graverip.cli import main
from graverip.core import ILPInstance, brute_force_solve

DATA = Path(__file__).resolve().parent.parent / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


def write(tmp_path, obj, name="inst.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return p


def test_solve_sample(capsys):
    code, out, err = run(capsys, "solve", DATA / "sample.json")
    assert code == 0 and out["status"] == "Optimal" and out["objective"] == 0
    assert "no block structure" in err


def test_solve_infeasible_exit_code(capsys):
    code, out, _ = run(capsys, "solve", DATA / "infeasible.json", "--oracle", "exact")
    assert code == 2 and out["status"] == "Infeasible"


def test_solve_unbounded_exit_code(capsys, tmp_path):
    p = write(tmp_path, {"A": [[1, -1]], "b": [0], "w": [-1, 0], "l": [0, 0], "u": ["+inf", "+inf"]})
    code, out, _ = run(capsys, "solve", p, "--oracle", "exact")
    assert code == 3 and out["status"] == "Unbounded"


def test_solve_bounded_by_column(capsys):
    code, out, _ = run(capsys, "solve", DATA / "bounded_by_column.json", "--oracle", "exact")
    inst = ILPInstance.from_json_obj(json.loads((DATA / "bounded_by_column.json").read_text()))
    assert code == 0 and out["objective"] == brute_force_solve(inst, box=(-10, 10)).objective


def test_malformed_input_exits_one(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "solve", bad)[0] == 1
    shape = write(tmp_path, {"A": [[1, 2]], "b": [1, 2], "w": [0, 0], "l": [0, 0], "u": [1, 1]}, "shape.json")
    assert run(capsys, "solve", shape)[0] == 1
    assert run(capsys, "solve", tmp_path / "missing.json")[0] == 1
    assert run(capsys, "nonsense")[0] == 1


def test_nfold_oracles_agree(capsys, tmp_path):
    for seed in range(4):
        _, gen, _ = run(capsys, "generate", "nfold", "--n", "2", "--seed", seed)
        p = write(tmp_path, gen, f"nf{seed}.json")
        results = {}
        for oracle in ("exact", "dual-dp", "auto"):
            code, out, _ = run(capsys, "solve", p, "--oracle", oracle)
            results[oracle] = (code, out["status"], out.get("objective"))
        assert len(set(results.values())) == 1
        assert out["oracle"] == "dual-dp"


def test_brute_oracle_matches(capsys):
    code, out, _ = run(capsys, "solve", DATA / "sample.json", "--oracle", "brute")
    assert code == 0 and out["objective"] == 0


def test_lowerbound_analyze(capsys, tmp_path):
    _, gen, _ = run(capsys, "generate", "lowerbound", "--n", 4)
    assert gen["expected_graver_element"] == [1, 2, 4, 8]
    p = write(tmp_path, gen)
    code, rep, _ = run(capsys, "analyze", p)
    assert code == 0
    assert rep["norms"]["ginf"] == 8
    assert rep["primal"]["treedepth"] == 3
    code, gb, _ = run(capsys, "graver", p)
    assert [1, 2, 4, 8] in gb["elements"] or [-1, -2, -4, -8] in gb["elements"]


def test_subset_sum_certificate(capsys, tmp_path):
    _, gen, _ = run(capsys, "generate", "subset-sum", "--S", "3,5,6", "--target", 9)
    p = write(tmp_path, gen)
    _, rep, _ = run(capsys, "analyze", p)
    assert rep["certificate"] == {"kind": "dual", "width": 3, "valid": True}
    assert rep["max_abs"] == 2


def test_embed_outputs_structure(capsys, tmp_path):
    p = write(tmp_path, {"A": [[1, 1, 0], [0, 1, 1]], "b": [1, 1], "w": [1, 0, 1], "l": [0, 0, 0], "u": [1, 1, 1]})
    for kind in ("primal", "dual"):
        code, out, _ = run(capsys, "embed", p, "--kind", kind)
        assert code == 0
        assert out["structure"]["kind"] in ("multistage", "treefold")
        assert len(out["var_map"]) == 3


def test_bench_small(capsys):
    code, out, _ = run(capsys, "bench", "--count", 5)
    assert code == 0 and out["agree"] == 5
