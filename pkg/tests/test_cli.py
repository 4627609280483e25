import json

import pytest

from qcoord import crystal, sl2
from qcoord.cli import main


def run(tmp_path, *argv, name="out"):
    out = tmp_path / name
    code = main([*argv, "-o", str(out)])
    return code, out.read_text() if out.exists() else None


def test_filtration_report_csv(tmp_path):
    code, text = run(tmp_path, "filtration", "report", "--type", "A1", "--lambda", "1", "--mu", "1",
                     "--format", "csv")
    assert code == 0
    lines = text.splitlines()
    assert lines[0].startswith("# config: ")
    assert lines[1] == "length,word,weight,quotient"
    assert len(lines) == 4


def test_cells_multiplicity_json(tmp_path):
    code, text = run(tmp_path, "cells", "multiplicity", "--type", "A2", "--xi", "theta", "--eta", "0")
    assert code == 0
    doc = json.loads(text)
    cell = doc["result"]["cells"][0]
    assert cell["count"] == 2 and cell["oracle"] == 2
    assert cell["certificate"]["stabilized_at"] <= 2
    assert doc["config"]["xi"] == "theta"


def test_sl2_verify(tmp_path):
    code, text = run(tmp_path, "sl2", "verify", "--max-power", "2")
    assert code == 0 and json.loads(text)["result"]["all_pass"]


def test_sl2_structconst_and_dualprod(tmp_path):
    code, text = run(tmp_path, "sl2", "structconst", "--b", "F1_0", "--c", "1_1")
    assert code == 0
    entry = json.loads(text)["result"]["entries"][0]
    assert {"a": "F1_1", "poly": "1"} in entry["entries"]
    code, text = run(tmp_path, "sl2", "dualprod", "--b", "1_0", "--c", "1_0")
    assert code == 0 and {"a": "1_0", "poly": "1"} in json.loads(text)["result"]["product"]


def test_crystal_outputs(tmp_path):
    code, text = run(tmp_path, "crystal", "gen", "--type", "A2", "--lambda", "theta", "--format", "dot")
    assert code == 0 and text.startswith("// config: ") and "digraph" in text
    code, text = run(tmp_path, "crystal", "character", "--type", "A2", "--lambda", "1,1")
    assert code == 0 and json.loads(text)["result"]["matches_oracle"]
    code, text = run(tmp_path, "crystal", "tensor", "--type", "A1", "--lambda", "1", "--mu", "1")
    assert code == 0 and len(json.loads(text)["result"]["classification"]) == 2


def test_affine_trichotomy_command(tmp_path):
    code, text = run(tmp_path, "filtration", "affine", "--type", "A1~", "--lambda", "L0", "--mu", "L0",
                     "--depth", "6")
    assert code == 0 and json.loads(text)["result"]["case"] == "TrivialM"


def test_repeated_runs_are_byte_identical(tmp_path):
    args = ["cells", "peter-weyl", "--type", "A1", "--eta1", "0", "--eta2", "0", "--cutoff", "4"]
    _, first = run(tmp_path, *args)
    _, second = run(tmp_path, *args)
    assert first == second and json.loads(first)["result"]["total"] == 3


def test_config_files(tmp_path):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("type: A2\nxi: theta\neta: '0'\n")
    code, text = run(tmp_path, "cells", "multiplicity", "--config", str(cfg))
    assert code == 0 and json.loads(text)["result"]["cells"][0]["count"] == 2
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"type": "A1", "lam": "2", "mu": "2"}))
    code, text = run(tmp_path, "filtration", "report", "--config", str(cfg), "--mu", "1")
    assert code == 0 and json.loads(text)["config"]["mu"] == "1"


@pytest.mark.parametrize("body,suffix", [('{"type": "A1", "bogus": 1}', ".json"), ("type: [A1\n", ".yaml"),
                                         ("not json", ".json"), ('{"type": "A1", "depth": -2}', ".json")])
def test_bad_config_exits_3(tmp_path, body, suffix):
    cfg = tmp_path / f"bad{suffix}"
    cfg.write_text(body)
    assert main(["crystal", "gen", "--config", str(cfg), "--lambda", "1"]) == 3


def test_bad_arguments_exit_3(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["crystal", "nonsense"])
    assert exc.value.code == 3
    assert main(["crystal", "gen", "--type", "Z9", "--lambda", "1"]) == 3
    assert main(["crystal", "gen", "--type", "A2", "--lambda", "thetaa"]) == 3
    assert main(["filtration", "report", "--type", "A1", "--lambda", "1"]) == 3


def test_domain_error_exits_1(tmp_path):
    assert main(["filtration", "report", "--type", "A1", "--lambda=-1", "--mu", "1", "-o",
                 str(tmp_path / "x")]) == 1
    # an invalid Cartan matrix parses fine but is rejected by the domain layer
    assert main(["crystal", "gen", "--cartan", "[[2, 1], [-1, 2]]", "--lambda", "1,0"]) == 1


def test_budget_exits_2_with_partial_output(tmp_path):
    code, text = run(tmp_path, "crystal", "gen", "--type", "A1~", "--lambda", "L0", "--depth", "30",
                     "--vertex-cap", "20")
    assert code == 2
    doc = json.loads(text)
    assert doc["result"]["status"] == "BudgetExceeded" and doc["result"]["partial"]["vertices"] > 0
    code, text = run(tmp_path, "cells", "multiplicity", "--type", "A2", "--xi", "theta", "--eta", "0",
                     "--theta-steps", "1", "--max-length", "1")
    assert code == 2 and json.loads(text)["result"]["status"] == "NotStabilized"


def test_conventions_are_restored(tmp_path):
    run(tmp_path, "sl2", "verify", "--coproduct", "upper", "--tensor-rule", "anti-kashiwara")
    assert crystal.TENSOR_CONVENTION == "kashiwara" and sl2.COPRODUCT_CONVENTION == "lower"
