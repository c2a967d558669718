import json
import re
from pathlib import Path

import jsonschema
import pytest

from gkit.actions import Side, regular_action
from gkit.cli import main, random_report
from gkit.common import Partition, ValidationReport
from gkit.errors import UnsupportedFormat
from gkit.generate import RandomConfig
from gkit.groupoid import pairs
from gkit.mackey import verify_mackey
from gkit.report import REPORT_SCHEMA, Report, emit_report, groupoid_dot, mackey_result

DATA = Path(__file__).parent / "data"
SAMPLE, RELATION, BROKEN = (str(DATA / n) for n in ("sample.gk", "relation.gk", "broken.gk"))
MACKEY_SCHEMA = {"$defs": REPORT_SCHEMA["$defs"], "$ref": "#/$defs/mackey"}
VALIDATION_SCHEMA = {"$defs": REPORT_SCHEMA["$defs"], "$ref": "#/$defs/validation"}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    doc = json.loads(out)
    jsonschema.validate(doc, REPORT_SCHEMA)
    return code, doc


class TestEmit:
    def test_dot_pairs(self):
        dot = groupoid_dot(pairs(["a", "b"]))
        assert dot.startswith("digraph")
        assert len(re.findall(r"^\s+\"\w\";$", dot, re.M)) == 2
        assert dot.count("->") == 2  # identities suppressed
        assert groupoid_dot(pairs(["a", "b"]), identities=True).count("->") == 4

    def test_dot_action(self):
        dot = emit_report(regular_action(pairs(["a", "b"]), Side.RIGHT), "dot").decode()
        assert dot.count("->") == 8 - 4

    def test_empty_partition(self):
        assert json.loads(emit_report(Partition(()), "json")) == []

    def test_validation_report(self):
        doc = json.loads(emit_report(ValidationReport(), "json"))
        jsonschema.validate(doc, VALIDATION_SCHEMA)

    def test_unsupported(self):
        with pytest.raises(UnsupportedFormat):
            emit_report({}, "yaml")
        with pytest.raises(UnsupportedFormat):
            emit_report(Partition(()), "dot")

    def test_text(self):
        out = emit_report({"a": 1, "b": [1, 2], "c": {"d": True}}, "text").decode()
        assert out == "a: 1\nb:\n  1, 2\nc:\n  d: true\n"

    def test_mackey_keys(self):
        from corpus import full_identity_instance

        r = verify_mackey(full_identity_instance())
        res = mackey_result(r)
        jsonschema.validate(res, MACKEY_SCHEMA)
        assert res["lhs_size"] == 24 and len(res["summands"]) == 6
        doc = Report("mackey", {}, r, seed=0, verdict=r.verdict).to_dict()
        jsonschema.validate(doc, REPORT_SCHEMA)
        assert {"verdict", "seed"} <= doc.keys() and doc["result"]["summands"]


class TestCommands:
    def test_validate(self, capsys):
        code, doc = run_json(capsys, "validate", SAMPLE, "--json")
        assert code == 0 and doc["verdict"] is True
        for e in doc["result"]["entities"]:
            jsonschema.validate({k: e[k] for k in ("ok", "violation_count", "violations", "info")},
                                VALIDATION_SCHEMA)
        assert [c["check"] for c in doc["result"]["checks"]] == ["mackey K H G M L", "orbits A"]

    def test_validate_failure_exit_1(self, capsys):
        code, doc = run_json(capsys, "validate", BROKEN, "--json")
        assert code == 1 and doc["verdict"] is False
        ent = next(e for e in doc["result"]["entities"] if e["name"] == "S")
        assert "identity-closed" in {v["axiom"] for v in ent["violations"]}

    def test_orbits(self, capsys):
        code, doc = run_json(capsys, "orbits", SAMPLE, "--name", "A", "--json")
        assert code == 0 and doc["result"]["orbits"] == [["p", "q"]]
        code, out, _ = run(capsys, "orbits", SAMPLE, "--name", "A", "--dot")
        assert code == 0 and out.startswith("digraph") and out.count("->") == 2

    def test_orbits_biset(self, capsys):
        code, doc = run_json(capsys, "orbits", SAMPLE, "--name", "R", "--json")
        assert doc["result"]["kind"] == "biset" and doc["result"]["count"] == 1

    def test_cosets(self, capsys):
        code, doc = run_json(capsys, "cosets", SAMPLE, "--groupoid", "KH", "--sub", "M", "--side", "left", "--json")
        assert code == 0 and doc["result"]["count"] == len(doc["result"]["classes"])

    def test_tensor(self, capsys):
        code, doc = run_json(capsys, "tensor", SAMPLE, "--left", "R", "--over", "G", "--right", "R", "--json")
        assert code == 0 and doc["result"]["count"] == 2

    def test_tensor_mismatch(self, capsys):
        code, _, err = run(capsys, "tensor", SAMPLE, "--left", "R", "--over", "K", "--right", "R")
        assert code == 1 and "MiddleGroupoidMismatch" in err

    def test_mackey(self, capsys, tmp_path):
        png = tmp_path / "m.png"
        code, doc = run_json(capsys, "mackey", RELATION, "--k", "K", "--h", "H", "--g", "G", "--m", "M", "--l", "L",
                             "--json", "--plot", str(png))
        assert code == 0 and doc["verdict"] is True
        jsonschema.validate(doc["result"], MACKEY_SCHEMA)
        assert doc["result"]["lhs_size"] == 24
        assert [s["size"] for s in doc["result"]["summands"]] == [4] * 6
        assert png.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"

    def test_text_default(self, capsys):
        code, out, _ = run(capsys, "mackey", RELATION, "--k", "K", "--h", "H", "--g", "G", "--m", "M", "--l", "L")
        assert code == 0 and "verdict: true" in out

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "r.json"
        code, text, _ = run(capsys, "validate", SAMPLE, "--json", "-o", str(out))
        assert code == 0 and text == ""
        jsonschema.validate(json.loads(out.read_text()), REPORT_SCHEMA)


class TestRandom:
    def test_json_stdout(self, capsys):
        code, doc = run_json(capsys, "random", "--seed", "3", "--max-objects", "2", "--max-group-order", "2",
                             "--count", "4", "--json", "-")
        assert code == 0 and doc["seed"] == 3 and doc["result"]["passed"] == 4
        for row in doc["result"]["instances"]:
            jsonschema.validate({k: row[k] for k in ("verdict", "lhs_size", "rhs_size", "summands", "checks",
                                                     "sizes")}, MACKEY_SCHEMA)

    def test_env_seed(self, capsys, monkeypatch):
        monkeypatch.setenv("GKIT_SEED", "17")
        _, doc = run_json(capsys, "random", "--seed", "3", "--max-objects", "2", "--count", "2", "--json", "-")
        assert doc["seed"] == 17

    def test_text_summary(self, capsys):
        code, out, _ = run(capsys, "random", "--seed", "1", "--max-objects", "2", "--count", "3")
        assert code == 0 and out.splitlines()[-1] == "seed 1: 3/3 verdict true"

    def test_byte_identical(self, capsys, tmp_path):
        a, b = tmp_path / "a.json", tmp_path / "b.json"
        args = ["random", "--seed", "5", "--max-objects", "2", "--count", "6"]
        assert main(args + ["--json", str(a)]) == 0
        assert main(args + ["--json", str(b), "--jobs", "2"]) == 0
        capsys.readouterr()
        assert a.read_bytes() == b.read_bytes()

    def test_timings_opt_in(self):
        cfg = RandomConfig(0, 2, 2, count=2)
        assert random_report(cfg).timings_ms == {}
        tm = random_report(cfg, timings=True).timings_ms
        assert "total" in tm and "instance_0" in tm

    def test_plot(self, capsys, tmp_path):
        png = tmp_path / "r.png"
        assert main(["random", "--count", "5", "--max-objects", "2", "--plot", str(png)]) == 0
        capsys.readouterr()
        assert png.stat().st_size > 0


class TestExitCodes:
    def test_missing_file(self, capsys):
        code, _, err = run(capsys, "validate", str(DATA / "nope.gk"))
        assert code == 2 and err.startswith("gkit:")

    def test_syntax_error(self, capsys, tmp_path):
        f = tmp_path / "bad.gk"
        f.write_text("groupoid K = pairs {a}\ngroupoid H = cube {a}\n")
        code, _, err = run(capsys, "validate", str(f))
        assert code == 2 and f"{f}:2:14:" in err

    def test_undeclared(self, capsys, tmp_path):
        f = tmp_path / "bad.gk"
        f.write_text(Path(SAMPLE).read_text().replace("subgroupoid L ", "subgroupoid L2 "))
        code, _, err = run(capsys, "validate", str(f))
        assert code == 2 and "undeclared name 'L'" in err

    def test_unknown_name_on_command_line(self, capsys):
        code, _, _ = run(capsys, "orbits", SAMPLE, "--name", "nope")
        assert code == 2

    def test_not_an_action(self, capsys):
        code, _, _ = run(capsys, "orbits", SAMPLE, "--name", "K")
        assert code == 2

    def test_bad_arguments(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["cosets", SAMPLE, "--groupoid", "KH"])
        assert exc.value.code == 2
        with pytest.raises(SystemExit) as exc:
            main(["random", "--count", "x"])
        assert exc.value.code == 2

    def test_bad_bounds(self, capsys):
        code, _, _ = run(capsys, "random", "--count", "0")
        assert code == 2
