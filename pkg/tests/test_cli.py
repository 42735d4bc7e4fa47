"""CLI driver: suites, report schema, determinism, exit codes."""

import json

import pytest

from qclass import cli
from qclass.rootdata import ClassData


def cfg_file(tmp_path, obj, name="cls.json"):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


SO5 = {"N": 5, "gl_blocks": [], "m": 2, "p": 0}


class TestRunSuite:
    def test_verma_suite_passes(self):
        config = cli.SuiteConfig(suite="verma", cls=ClassData.make(5, (), 2, 0))
        report = cli.run_suite(config)
        assert report.passed and not report.capped
        assert {c.status for c in report.checks} == {"pass"}

    def test_generic_mode_singular_dimension_zero(self):
        config = cli.SuiteConfig(
            suite="singular", cls=ClassData.make(5, (), 2, 0), mode="generic"
        )
        report = cli.run_suite(config)
        assert report.passed
        ids = [c.id for c in report.checks]
        assert "singular.generic_direction" in ids
        assert "singular.specialized_direction" not in ids

    def test_report_determinism(self):
        config = cli.SuiteConfig(suite="spectra", cls=ClassData.make(5, (), 2, 0))
        a = cli.run_suite(config).canonical_json()
        b = cli.run_suite(config).canonical_json()
        assert a == b

    def test_jobs_do_not_change_the_report(self):
        c1 = cli.SuiteConfig(suite="verma", cls=ClassData.make(5, (), 2, 0))
        c2 = cli.SuiteConfig(suite="verma", cls=ClassData.make(5, (), 2, 0), jobs=4)
        assert cli.run_suite(c1).canonical_json() == cli.run_suite(c2).canonical_json()

    def test_report_schema(self):
        config = cli.SuiteConfig(suite="verma", cls=ClassData.make(5, (), 2, 0))
        obj = cli.run_suite(config).as_json()
        assert obj["schema_version"] == cli.SCHEMA_VERSION
        assert obj["suite"] == "verma"
        assert obj["config"]["class"] == SO5
        for c in obj["checks"]:
            assert set(c) == {"id", "claim", "status", "witness", "wall_time_ms"}
        ids = [c["id"] for c in obj["checks"]]
        assert ids == sorted(ids)

    def test_resource_cap_status(self):
        config = cli.SuiteConfig(
            suite="verma", cls=ClassData.make(5, (), 2, 0), word_cap=2
        )
        report = cli.run_suite(config)
        assert report.capped

    def test_invalid_suite_rejected(self):
        with pytest.raises(ValueError):
            cli.SuiteConfig(suite="nope", cls=ClassData.make(5, (), 2, 0))


class TestMain:
    def test_text_run_exit_zero(self, tmp_path, capsys):
        path = cfg_file(tmp_path, SO5)
        rc = cli.main(["verify", "verma", "--config", path])
        out = capsys.readouterr().out
        assert rc == 0
        assert "suite verma: PASS" in out

    def test_json_output_and_report_file(self, tmp_path, capsys):
        path = cfg_file(tmp_path, SO5)
        out_path = str(tmp_path / "report.json")
        rc = cli.main(
            ["verify", "verma", "--config", path, "--format", "json", "--out", out_path]
        )
        assert rc == 0
        obj = json.loads(capsys.readouterr().out)
        assert obj["passed"] is True
        with open(out_path) as fh:
            disk = json.load(fh)
        assert disk == obj

    def test_config_error_exit_two(self, tmp_path, capsys):
        path = cfg_file(tmp_path, {"N": 6, "gl_blocks": [], "m": 2, "p": 1})
        rc = cli.main(["verify", "verma", "--config", path])
        assert rc == 2
        path = cfg_file(tmp_path, {"N": "x"}, "bad.json")
        assert cli.main(["verify", "verma", "--config", path]) == 2

    def test_malformed_json_exit_two(self, tmp_path):
        p = tmp_path / "broken.json"
        p.write_text("{not json")
        assert cli.main(["verify", "verma", "--config", str(p)]) == 2

    def test_resource_cap_exit_three(self, tmp_path):
        path = cfg_file(tmp_path, {**SO5, "caps": {"word_cap": 2}})
        # nest the class under its own key to exercise that layout too
        nested = cfg_file(
            tmp_path, {"class": SO5, "caps": {"word_cap": 2}}, "nested.json"
        )
        for p in (path, nested):
            assert cli.main(["verify", "verma", "--config", p]) == 3

    def test_check_failure_exit_one(self, tmp_path, monkeypatch):
        path = cfg_file(tmp_path, SO5)

        def fake_builder(ctx):
            return [("fake.always_fails", "deliberate failure", lambda _: ("fail", ""))]

        monkeypatch.setitem(cli._BUILDERS, "verma", fake_builder)
        assert cli.main(["verify", "verma", "--config", path]) == 1

    def test_env_word_cap_override(self, monkeypatch):
        from qclass.verma import word_cap_from_env

        monkeypatch.setenv("QCLASS_CAP_WORDLEN", "7")
        assert word_cap_from_env() == 7
        config = cli.SuiteConfig(suite="verma", cls=ClassData.make(5, (), 2, 0))
        assert config.word_cap == 7

    def test_all_suite_so5_within_budget(self):
        import time

        config = cli.SuiteConfig(suite="all", cls=ClassData.make(5, (), 2, 0))
        t0 = time.monotonic()
        report = cli.run_suite(config)
        assert report.passed
        assert time.monotonic() - t0 <= 60.0

    def test_all_suite_generic_mode(self):
        config = cli.SuiteConfig(
            suite="all", cls=ClassData.make(5, (), 2, 0), mode="generic"
        )
        report = cli.run_suite(config)
        assert report.passed
        skipped = {c.id for c in report.checks if c.status == "skipped"}
        assert "tensor.quotient_checks" in skipped
        assert "spectra.classical_limit_roots" in skipped

    def test_module_entry_point(self, tmp_path):
        import subprocess
        import sys

        path = cfg_file(tmp_path, SO5)
        proc = subprocess.run(
            [sys.executable, "-m", "qclass", "verify", "verma", "--config", path],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "suite verma: PASS" in proc.stdout
