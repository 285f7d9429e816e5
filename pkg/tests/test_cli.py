import json
from fractions import Fraction as F

import pytest

from rncgit.cli import run
from rncgit.configs import veronese_config
from rncgit.trees import StableTree, TreePoint


@pytest.fixture
def config_file(tmp_path):
    cfg = veronese_config(1, [F(0), F(1), F(2), F(3)])
    path = tmp_path / "config.json"
    path.write_text(json.dumps(cfg.to_json()))
    return str(path)


@pytest.fixture
def tree_file(tmp_path):
    tree = StableTree(
        [
            [TreePoint("mark:1", F(0)), TreePoint("mark:2", F(1)), TreePoint("edge:e0", F(2))],
            [TreePoint("mark:3", F(0)), TreePoint("mark:4", F(1)), TreePoint("edge:e0", F(2))],
        ],
        [("e0", 0, 1)],
    )
    path = tmp_path / "tree.json"
    path.write_text(json.dumps(tree.to_json()))
    return str(path)


def test_fakhruddin_single(capsys):
    assert run(["fakhruddin", "--n", "6", "--k", "2", "--partition", "1,1,1,3"]) == 0
    assert capsys.readouterr().out.strip() == "0"


def test_fakhruddin_all_csv(capsys):
    assert run(["fakhruddin", "--n", "6", "--k", "2", "--all"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[0] == "partition,degree,certificate"
    assert lines[1] == "1+1+1+3,0,alpha-family"
    assert lines[2] == "1+1+2+2,2,"


def test_contract_check_sizes(capsys):
    assert run(["contract-check", "--n", "6", "--d", "1", "--sizes", "1,1,1,3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["certificate"]["vector"] == [0, 0, 0, 1]


def test_contract_check_blocks(capsys):
    code = run(["contract-check", "--n", "6", "--d", "1", "--blocks", "1|2|3|4,5,6"])
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["hassett_contracted"] is True
    assert payload["certificate"]["kind"] == "alpha-family"


def test_stability(config_file, capsys):
    assert run(["stability", "--config", config_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["status"] == "stable"


def test_walls(capsys):
    assert run(["walls", "--d", "1", "--n", "4"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert len(payload["walls"]) == 6
    assert payload["chamber_interior"] is False


def test_limit_config_and_semistable(tree_file, capsys):
    assert run(["limit-config", "--tree", tree_file, "--degrees", "1,0"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["d"] == 1 and payload["n"] == 4

    assert run(["semistable-partitions", "--tree", tree_file, "--d", "1"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["multiple"] is True
    assert len(payload["partitions"]) == 2


def test_count_maps(tree_file, capsys):
    assert run(["count-maps", "--tree", tree_file, "--d", "2", "--e", "1", "--seed", "3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["count"] == 1 and payload["degree"] == 1


def test_count_maps_deterministic(tree_file, capsys):
    run(["count-maps", "--tree", tree_file, "--d", "1", "--e", "1", "--seed", "5"])
    first = capsys.readouterr().out
    run(["count-maps", "--tree", tree_file, "--d", "1", "--e", "1", "--seed", "5"])
    assert capsys.readouterr().out == first


def test_gale(config_file, capsys):
    assert run(["gale", "--config", config_file]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dual"]["d"] == 1 and payload["dual"]["n"] == 4


def test_goppa_verify(capsys):
    assert run(["goppa-verify", "--d", "1", "--params", "0,1,2,3"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["ok"] is True


def test_self_assoc(capsys):
    assert run(["self-assoc", "--params", "0,1,2,3"]) == 0
    out = capsys.readouterr().out.splitlines()
    assert json.loads(out[0]) == [["0", "0"], ["0", "0"]]
    assert out[1] == "self-associated: true"


def test_nefcone_report_sweep(capsys):
    assert run(["nefcone-report", "--sweep", "8"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["passed"] is True


def test_nefcone_report_single(capsys):
    assert run(["nefcone-report", "--n", "6", "--d", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["reports"][0]["family_curves"] == [[1, 1, 2, 2]]


def test_input_error_exit_code(capsys, tmp_path):
    assert run(["stability", "--config", str(tmp_path / "missing.json")]) == 2
    assert "error:" in capsys.readouterr().err
    assert run(["fakhruddin", "--n", "6", "--k", "9", "--partition", "1,1,1,3"]) == 2
    assert run(["contract-check", "--n", "6", "--d", "1"]) == 2


def test_byte_identical_reruns(capsys):
    run(["nefcone-report", "--n", "10"])
    first = capsys.readouterr().out
    run(["nefcone-report", "--n", "10"])
    assert capsys.readouterr().out == first
