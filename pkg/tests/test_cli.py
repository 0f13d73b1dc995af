import json

import pytest

from efxcost.cli import choose_algorithm, main
from efxcost.generators import gen_random
from efxcost.model import factor_instance, general_instance, serialize_instance

DISASTER = factor_instance([15] * 8 + [10] * 3, [0, 1, 1, 2])


def _write(path, inst):
    path.write_text(serialize_instance(inst))
    return str(path)


def _run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_partition_dp(tmp_path, capsys):
    code, out, _ = _run(capsys, "generate", "partition", "--set", "1,2,3,4",
                        "--out", str(tmp_path / "p.json"))
    assert code == 0
    assert json.loads((tmp_path / "p.contract.json").read_text())["threshold"] == 5
    code, out, _ = _run(capsys, "solve", "--in", str(tmp_path / "p.json"), "--algo", "dp")
    assert code == 0 and json.loads(out)["cost"] == 5


def test_check_forties(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", DISASTER)
    alloc = tmp_path / "a.json"
    alloc.write_text('{"owner":[0,0,1,1,2,2,3,3,0,1,2]}')
    code, out, _ = _run(capsys, "check", "--instance", inst, "--allocation", str(alloc))
    assert code == 0 and out.strip() == '{"efx":true,"cost":140}'


def test_check_failure(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", factor_instance([2, 2], [0, 1]))
    alloc = tmp_path / "a.json"
    alloc.write_text('{"owner":[1,1]}')
    code, out, err = _run(capsys, "check", "--instance", inst, "--allocation", str(alloc))
    assert code == 3
    assert json.loads(out)["witness"] == {"envious": 0, "envied": 1, "item": 0}
    assert "strongly envies" in err


def test_solve_empty(tmp_path, capsys):
    inst = _write(tmp_path / "e.json", factor_instance([], [1, 1]))
    code, out, _ = _run(capsys, "solve", "--in", inst)
    doc = json.loads(out)
    assert code == 0 and doc["cost"] == 0 and doc["owner"] == []


def test_all_algorithms_agree(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", DISASTER)
    costs = {}
    for algo in ("auto", "brute", "dp", "types"):
        code, out, _ = _run(capsys, "solve", "--in", inst, "--algo", algo)
        assert code == 0
        costs[algo] = json.loads(out)["cost"]
    assert set(costs.values()) == {135}


def test_threads_only_change_timing(tmp_path, capsys, monkeypatch):
    inst = _write(tmp_path / "d.json", DISASTER)
    docs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("EFX_THREADS", threads)
        _, out, _ = _run(capsys, "solve", "--in", inst, "--algo", "brute")
        doc = json.loads(out)
        doc["stats"].pop("wall_us")
        docs.append(doc)
    assert docs[0] == docs[1]


def test_solve_writes_out(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", factor_instance([3, 1], [1, 2]))
    code, out, _ = _run(capsys, "solve", "--in", inst, "--out", str(tmp_path / "r.json"))
    assert code == 0 and out == ""
    assert json.loads((tmp_path / "r.json").read_text())["cost"] == 5


def test_auto_selection():
    assert choose_algorithm(factor_instance([1, 2], [1, 1, 1])) == "matching"
    assert choose_algorithm(DISASTER) == "types"
    assert choose_algorithm(general_instance(2, [1, 2, 3], [[0] * 3] * 2)) == "dp"
    wide = gen_random(9, 12, 9, "general", 9, seed=1)
    assert choose_algorithm(wide, dp_budget=10, brute_budget=10**12) == "brute"
    assert choose_algorithm(wide, dp_budget=10, brute_budget=10) is None


def test_out_of_scale_exit_4(tmp_path, capsys):
    inst = _write(tmp_path / "w.json", gen_random(9, 12, 9, "general", 9, seed=1))
    code, _, err = _run(capsys, "solve", "--in", inst, "--budget", "10")
    assert code == 4 and "desk scale" in err


def test_budget_exceeded_exit_4(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", DISASTER)
    code, _, err = _run(capsys, "solve", "--in", inst, "--algo", "brute", "--budget", "10")
    assert code == 4


@pytest.mark.parametrize("argv", [
    [], ["solve"], ["frobnicate"], ["generate", "partition", "--set", "1,x"],
    ["solve", "--in", "x.json", "--algo", "magic"],
])
def test_usage_errors(argv, capsys):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 1


def test_precondition_is_usage_error(tmp_path, capsys):
    inst = _write(tmp_path / "d.json", DISASTER)
    code, _, _ = _run(capsys, "solve", "--in", inst, "--algo", "matching")
    assert code == 1
    code, _, _ = _run(capsys, "generate", "gadget-factor", "--set", "1,1,1")
    assert code == 1


def test_io_and_parse_errors(tmp_path, capsys):
    code, _, err = _run(capsys, "solve", "--in", str(tmp_path / "missing.json"))
    assert code == 2 and err
    bad = tmp_path / "bad.json"
    bad.write_text('{"n":2,')
    code, _, err = _run(capsys, "solve", "--in", str(bad))
    assert code == 2 and "line 1" in err
    inst = _write(tmp_path / "d.json", DISASTER)
    alloc = tmp_path / "a.json"
    alloc.write_text('{"owner":[0]}')
    code, _, _ = _run(capsys, "check", "--instance", inst, "--allocation", str(alloc))
    assert code == 2


def test_kernelize(tmp_path, capsys):
    inst = _write(tmp_path / "r.json", gen_random(30, 3, 5, "general", 9, seed=4))
    code, _, _ = _run(capsys, "kernelize", "--in", inst, "--out", str(tmp_path / "k.json"))
    assert code == 0
    retained = json.loads((tmp_path / "k.retained.json").read_text())["retained"]
    reduced = json.loads((tmp_path / "k.json").read_text())
    assert reduced["n"] == len(retained) <= 18


def test_generate_to_stdout(capsys):
    code, out, _ = _run(capsys, "generate", "gadget-general", "--set", "1,2,1,2", "--rho", "5")
    inst, side = out.strip().splitlines()
    assert code == 0 and json.loads(inst)["n"] == 3 and json.loads(side)["threshold"] == 1
    code, out, _ = _run(capsys, "generate", "shift", "--set", "1,3")
    assert json.loads(out) == {"set": [5, 7]}
    code, out, _ = _run(capsys, "generate", "binpacking", "--sizes", "2,2,2,2,2,2",
                        "--capacity", "4", "--bins", "3")
    assert json.loads(out.splitlines()[1])["threshold"] == 12


def test_generate_random_reproducible(capsys):
    argv = ["generate", "random", "--n", "2", "--m", "4", "--vmax", "3", "--cmax", "5",
            "--seed", "7"]
    first = _run(capsys, *argv)
    assert first == _run(capsys, *argv) and first[0] == 0
    assert json.loads(first[1].splitlines()[1]) == {"contract": "random", "seed": 7}


def test_bench(capsys):
    code, out, _ = _run(capsys, "bench", "--suite", "matching", "--seed", "3")
    assert code == 0 and "matching" in out and "instances" in out
