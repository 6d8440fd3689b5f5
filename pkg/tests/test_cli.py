"""Command-line interface: commands, config files, exit codes."""

import json
from pathlib import Path

import pytest

from grouphandover.cli import (
    CONFIG_KEYS,
    CliConfig,
    ParseError,
    SchemaError,
    load_config,
    main,
    parse_range,
    resolve_config,
)

GOLDEN = Path(__file__).parent / "golden"
SCHEMA = Path(__file__).parent.parent / "docs" / "config-schema.json"


def write(tmp_path, text, name="run.conf"):
    p = tmp_path / name
    p.write_text(text)
    return p


class TestCommands:
    def test_sweep_matches_golden(self, tmp_path, capsys):
        assert main(["sweep", "--ue-counts", "1:100", "--protocols", "lte,group", "--seed", "7",
                     "--out", str(tmp_path)]) == 0
        for name in ("handover_time.csv", "packet_counts.csv"):
            assert (tmp_path / name).read_bytes() == (GOLDEN / f"sweep_seed7_{name}").read_bytes()
        assert capsys.readouterr().out == ""

    def test_sweep_byte_identical(self, tmp_path):
        for d in ("a", "b"):
            assert main(["sweep", "--ue-counts", "1:20", "--protocols", "lte,nr,group", "--seed", "3",
                         "--out", str(tmp_path / d)]) == 0
        for name in ("handover_time.csv", "packet_counts.csv"):
            assert (tmp_path / "a" / name).read_bytes() == (tmp_path / "b" / name).read_bytes()

    def test_sweep_to_stdout(self, capsys):
        assert main(["sweep", "--ue-counts", "1,2", "--protocols", "group"]) == 0
        out = capsys.readouterr().out
        assert "protocol,ue_count,seconds\ngroup,1,0.05\ngroup,2,0.05\n" in out

    def test_handover_corrupt(self, tmp_path, capsys):
        rc = main(["handover", "--ue-count", "50", "--threshold", "5", "--corrupt", "17", "--out", str(tmp_path)])
        assert rc == 0
        out = capsys.readouterr().out
        assert "rejected=[17]" in out and "accepted=49" in out
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["rejected_ues"] == [17]
        assert (tmp_path / "handover_time.csv").read_text().startswith("# tool=grouphandover")

    def test_handover_lte(self, capsys):
        assert main(["handover", "--protocol", "lte", "--ue-count", "100"]) == 0
        assert "handover_time=0.0500115s" in capsys.readouterr().out

    def test_capacity(self, capsys):
        assert main(["capacity", "--ue-count", "100"]) == 0
        out = capsys.readouterr().out
        assert "capacity basis: 1 UxNB(s) at 160 Mbps each" in out
        assert "rule-of-thumb basis (1 UxNB per ~10 UEs): 10 UxNB(s)" in out

    def test_capacity_zero(self, capsys):
        assert main(["capacity", "--ue-count", "0"]) == 0
        assert "capacity basis: 0 UxNB(s)" in capsys.readouterr().out

    def test_keygen(self, tmp_path, capsys):
        assert main(["keygen", "--ue-count", "4", "--out", str(tmp_path)]) == 0
        doc = json.loads((tmp_path / "group.json").read_text())
        assert doc["threshold"] == 3 and len(doc["credentials"]) == 4
        assert "shares" in json.loads((tmp_path / "shares.json").read_text())

    def test_keygen_stdout_has_no_secrets(self, capsys):
        assert main(["keygen", "--ue-count", "2"]) == 0
        assert "shares" not in json.loads(capsys.readouterr().out)

    def test_authenticate(self, capsys):
        assert main(["authenticate-uxnb"]) == 0
        assert "authenticated" in capsys.readouterr().out
        assert main(["authenticate-uxnb", "--forge"]) == 0
        assert "not a valid UxNB" in capsys.readouterr().out

    def test_adversary(self, tmp_path, capsys):
        rc = main(["adversary", "--trials", "2", "--kinds", "FakeBsDesync,ReplayUeCredential",
                   "--control", "--out", str(tmp_path)])
        assert rc == 0
        lines = (tmp_path / "adversary.csv").read_text().splitlines()
        assert "# group_size=standard" in lines
        rows = [l for l in lines if not l.startswith("#")]
        assert rows == ["kind,trials,thwarted", "FakeBsDesync,2,2", "ReplayUeCredential,2,2",
                        "ReplayUeCredential+stolen-share,2,0"]


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        ["sweep", "--ue-counts", "9:1"],
        ["sweep", "--protocols", "lte,umts"],
        ["handover", "--ue-count", "5", "--corrupt", "5"],
        ["handover", "--protocol", "lte", "--corrupt", "1"],
        ["handover", "--ue-count", "0"],
        ["handover", "--threshold", "0"],
        ["capacity", "--uxnb-capacity", "0"],
        ["bogus"],
        [],
        ["sweep", "--config", "/nonexistent/path.conf"],
    ])
    def test_usage_errors(self, argv, capsys):
        assert main(argv) == 2
        assert capsys.readouterr().err

    def test_error_names_flag_and_range(self, capsys):
        main(["handover", "--ue-count", "5", "--corrupt", "7"])
        err = capsys.readouterr().err
        assert "corrupt" in err and "[0, 4]" in err

    def test_scenario_failure_is_one(self, tmp_path, capsys):
        # threshold larger than the toy field can support is a protocol failure, not a usage error
        assert main(["handover", "--ue-count", "3", "--threshold", "70000"]) == 1
        assert "error" in capsys.readouterr().err


class TestConfig:
    def test_minimal_defaults(self, tmp_path):
        cfg = resolve_config(["--config", str(write(tmp_path, "command = capacity\n"))])
        assert cfg.command == "capacity" and cfg.seed == 0 and cfg.group == "toy"

    def test_values_parsed(self, tmp_path):
        text = "# sweep config\ncommand = sweep\nue_counts = 2:4  # inline comment\nprotocols = nr\nseed=9\n"
        cfg = resolve_config(["--config", str(write(tmp_path, text))])
        assert cfg.ue_counts == [2, 3, 4] and cfg.protocols == ["nr"] and cfg.seed == 9

    def test_negative_ue_count(self, tmp_path):
        with pytest.raises(SchemaError) as exc:
            load_config(write(tmp_path, "command = handover\nue_count = -1\n"))
        assert exc.value.key == "ue_count"

    def test_unknown_key(self, tmp_path):
        with pytest.raises(SchemaError) as exc:
            load_config(write(tmp_path, "command = sweep\ncolour = blue\n"))
        assert exc.value.key == "colour"

    def test_parse_error_position(self, tmp_path):
        with pytest.raises(ParseError) as exc:
            load_config(write(tmp_path, "command = sweep\n\n   seed 4\n"))
        assert (exc.value.line, exc.value.col) == (3, 4)

    def test_duplicate_key(self, tmp_path):
        with pytest.raises(ParseError) as exc:
            load_config(write(tmp_path, "seed = 1\nseed = 2\n"))
        assert exc.value.line == 2

    def test_flag_overrides_file(self, tmp_path, capsys):
        conf = write(tmp_path, "command = sweep\nseed = 1\nue_counts = 1:3\nprotocols = lte\n")
        cfg = resolve_config(["sweep", "--config", str(conf), "--seed", "5"])
        assert cfg.seed == 5 and cfg.overrides == ["seed"]
        out = tmp_path / "out"
        assert main(["sweep", "--config", str(conf), "--seed", "5", "--out", str(out)]) == 0
        text = (out / "handover_time.csv").read_text()
        assert "# seed=5\n" in text and "# overrides=seed\n" in text

    def test_config_error_exit_code(self, tmp_path, capsys):
        assert main(["--config", str(write(tmp_path, "command = sweep\nue_count = x\n"))]) == 2
        assert "ue_count" in capsys.readouterr().err

    def test_schema_file_matches_parser(self):
        schema = json.loads(SCHEMA.read_text())
        assert set(schema["properties"]) == set(CONFIG_KEYS)
        fields = set(CliConfig.__dataclass_fields__) - {"overrides"}
        assert set(CONFIG_KEYS) == fields

    def test_parse_range(self):
        assert parse_range("1:3") == [1, 2, 3]
        assert parse_range("5,7") == [5, 7]
        with pytest.raises(ValueError):
            parse_range("a:b")
