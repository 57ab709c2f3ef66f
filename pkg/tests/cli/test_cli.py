import json

import pytest
import yaml

from dedekind_pcoef.cli import create_parser, main
from dedekind_pcoef.config import DEFAULT_ORACLE_SAMPLE_SEED


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_compute(capsys):
    code, out = run(capsys, "compute", "--method", "nplus2", "--n", "2")
    assert code == 0
    report = yaml.safe_load(out)
    assert report["result"] == "168"
    assert report["target"] == 4
    assert report["complete"] is True


def test_compute_json_with_checkpoint(capsys, tmp_path):
    path = str(tmp_path / "run.jsonl")
    code, out = run(
        capsys, "--format", "json", "compute", "--method", "nplus3", "--n", "1", "--checkpoint", path, "--stop-after", "1"
    )
    assert code == 0
    assert json.loads(out)["complete"] is False

    code, out = run(capsys, "--format", "json", "compute", "--method", "nplus3", "--n", "1", "--checkpoint", path)
    report = json.loads(out)
    assert code == 0
    assert report["result"] == "168"
    assert len(report["details"]["rows"]) == 10


def test_compute_above_the_cap(capsys):
    code, out = run(capsys, "compute", "--method", "wiedemann", "--n", "9")
    assert code == 3
    report = yaml.safe_load(out)
    assert report["error"] == "CapabilityException"
    assert report["cap"]["name"] == "max_n_wiedemann"


def test_pcoef(capsys):
    code, out = run(capsys, "pcoef", "--n", "1", "--alpha", "{}", "--beta", "{1}", "--beta", "{1}", "--beta", "{0}", "--oracle")
    assert code == 0
    report = yaml.safe_load(out)
    assert report["r"] == 3
    assert report["p"] == "2"
    assert report["oracle"] == "2"
    assert "literal_connections" in report

    argv = ["pcoef", "--n", "1", "--alpha", "{}", "--beta", "{1}", "--beta", "{1}", "--beta", "{0}"]
    code, out = run(capsys, *argv, "--oracle", "--unrestricted")
    assert code == 0
    assert yaml.safe_load(out)["oracle"] == "2"

    code, out = run(capsys, "pcoef", "--n", "2", "--alpha", "{0}", "--beta", "{1,2}")
    report = yaml.safe_load(out)
    assert report["p"] == "4"
    assert report["connector_number"] == 2


def test_pcoef_invalid_input(capsys):
    code, out = run(capsys, "pcoef", "--n", "2", "--alpha", "{}", "--beta", "{1,12}")
    assert code == 2
    assert "error" in yaml.safe_load(out)

    code, out = run(capsys, "pcoef", "--n", "2", "--alpha", "{}", "--beta", "{1,12}", "--normalize")
    assert code == 0
    assert yaml.safe_load(out)["p"] == "2"

    code, _ = run(capsys, "pcoef", "--n", "1", "--alpha", "{}", "--beta", "{0}", "--beta", "{0}")
    assert code == 2


def test_classes(capsys):
    code, out = run(capsys, "--format", "json", "classes", "--n", "4")
    assert code == 0
    report = json.loads(out)
    assert report["classes"] == 30
    assert report["antichains"] == "168"
    assert len(report["representatives"]) == 30
    assert sum(c["orbit_size"] for c in report["representatives"]) == 168

    code, out = run(capsys, "classes", "--n", "2")
    assert code == 0
    representatives = yaml.safe_load(out)["representatives"]
    assert [c["representative"] for c in representatives] == ["{}", "{0}", "{1}", "{1,2}", "{12}"]
    assert [c["orbit_size"] for c in representatives] == [1, 1, 2, 1, 1]

    code, out = run(capsys, "classes", "--n", "7")
    assert code == 3


def test_consistency(capsys):
    code, out = run(capsys, "--format", "json", "consistency", "--max-n", "4")
    assert code == 0
    matrix = json.loads(out)["consistency"]
    assert matrix["4"]["values"]["nplus4(0)"] == "168"
    assert all(row["agree"] for row in matrix.values())


def test_oracle_check(capsys):
    code, out = run(capsys, "oracle-check", "--n", "1", "--r", "3")
    assert code == 0
    assert yaml.safe_load(out)["mode"] == "exhaustive"

    code, out = run(capsys, "oracle-check", "--n", "3", "--r", "3", "--samples", "20", "--seed", "4")
    assert code == 0
    assert yaml.safe_load(out)["systems"] == 20

    code, out = run(capsys, "oracle-check", "--n", "3", "--r", "2", "--samples", "4")
    assert yaml.safe_load(out)["seed"] == DEFAULT_ORACLE_SAMPLE_SEED

    code, _ = run(capsys, "oracle-check", "--n", "1", "--r", "7")
    assert code == 2


def test_tables(capsys):
    code, out = run(capsys, "tables")
    assert code == 0
    assert yaml.safe_load(out)["tables"]["nplus4"]["result"] == "168"


def test_parser_defaults():
    args = create_parser().parse_args(["compute", "--method", "nplus2", "--n", "1"])
    assert args.workers == 1
    assert args.reduce_symmetry is False
    assert args.checkpoint is None


def test_compute_brute_force(capsys):
    code, out = run(capsys, "compute", "--method", "bruteforce", "--n", "3")
    assert code == 0
    assert yaml.safe_load(out)["result"] == "20"


@pytest.mark.slow
def test_compute_d7(capsys):
    code, out = run(capsys, "compute", "--method", "nplus2", "--n", "5", "--reduce-symmetry", "--workers", "4")
    assert code == 0
    assert yaml.safe_load(out)["result"] == "2414682040998"
