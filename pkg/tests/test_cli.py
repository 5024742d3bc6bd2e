import json

import pytest
import yaml

from socialbot.gateway.cli import main
from socialbot.safety.ngram import SAFE, UNSAFE


@pytest.fixture()
def script_file(tmp_path):
    path = tmp_path / "script.yaml"
    path.write_text(
        yaml.safe_dump({"seed": 11, "turns": ["hello", "pretty good"]}),
        encoding="utf-8",
    )
    return path


class TestSimulateCommand:
    def test_writes_report(self, script_file, tmp_path):
        out = tmp_path / "report.json"
        code = main(["simulate", str(script_file), "--output", str(out)])
        assert code == 0
        report = json.loads(out.read_text())
        assert report["seed"] == 11
        assert len(report["turns"]) == 2
        assert report["errors"] == []

    def test_stdout_when_no_output(self, script_file, capsys):
        assert main(["simulate", str(script_file)]) == 0
        assert '"turns"' in capsys.readouterr().out


class TestSafetyCommands:
    def test_train_eval_check_round_trip(self, tmp_path, capsys):
        model_path = tmp_path / "model.json"
        code = main([
            "safety", "train",
            "--preset", "cyberbully",
            "--synthetic-size", "120",
            "--seed", "3",
            "--output", str(model_path),
        ])
        assert code == 0
        assert model_path.exists()

        test_path = tmp_path / "test.tsv"
        rows = [
            ("the museum was wonderful", SAFE),
            ("you are a complete idiot", UNSAFE),
            ("what a lovely garden", SAFE),
            ("shut up you moron", UNSAFE),
        ]
        test_path.write_text("\n".join(f"{t}\t{l}" for t, l in rows), encoding="utf-8")

        rules_path = tmp_path / "rules.txt"
        rules_path.write_text("idiot\nmoron\n", encoding="utf-8")

        capsys.readouterr()
        code = main([
            "safety", "eval",
            "--model", str(model_path),
            "--rules", str(rules_path),
            "--test-set", str(test_path),
        ])
        assert code == 0
        scores = json.loads(capsys.readouterr().out)
        assert set(scores) == {"automatic_f1", "combined_f1"}

        assert main(["safety", "check", "the garden was lovely"]) == 0
        capsys.readouterr()
        assert main(["safety", "check", "you are a complete idiot"]) == 1


class TestApihubCommand:
    def test_query_prints_aggregate(self, capsys):
        assert main(["apihub", "query", "where is the eiffel tower"]) == 0
        body = json.loads(capsys.readouterr().out)
        assert body["per_source"]["evi"][0]["content"].startswith("The Eiffel Tower")
