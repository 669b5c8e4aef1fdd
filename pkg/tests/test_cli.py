from __future__ import annotations

import json
from pathlib import Path

import pytest

from cleva.cli import main, parse_args
from cleva.errors import UsageError
from cleva.fixtures import METHOD_IDS, bundled_entry_text, five_method_document
from cleva.model import serialize_document
from cleva.render import layout, render_svg


@pytest.fixture
def doc_file(tmp_path) -> Path:
    path = tmp_path / "doc.json"
    path.write_text(serialize_document(five_method_document()), encoding="utf-8")
    return path


@pytest.fixture
def log_file(tmp_path) -> Path:
    path = tmp_path / "log.json"
    path.write_text(json.dumps({"accuracy_matrix": [[0.9, None], [0.6, 0.8]]}))
    return path


class TestParseArgs:
    def test_validate(self):
        cmd = parse_args(["validate", "doc.json"])
        assert cmd.verb == "validate"
        assert cmd.options.path == "doc.json"

    def test_render_tikz(self):
        cmd = parse_args(["render", "doc.json", "--format", "tikz", "-o", "out.tex"])
        assert cmd.verb == "render"
        assert cmd.options.format == "tikz"
        assert cmd.options.output == "out.tex"

    def test_missing_argument_is_usage_error(self):
        with pytest.raises(UsageError):
            parse_args(["render"])

    def test_unknown_verb(self):
        with pytest.raises(UsageError):
            parse_args(["frobnicate"])

    def test_unknown_flag(self):
        with pytest.raises(UsageError):
            parse_args(["validate", "doc.json", "--wat"])


class TestValidate:
    def test_ok_on_fixture(self, doc_file, capsys):
        assert main(["validate", str(doc_file)]) == 0
        assert "OK" in capsys.readouterr().err

    def test_single_entry_file(self, tmp_path, capsys):
        path = tmp_path / "entry.json"
        path.write_text(bundled_entry_text(METHOD_IDS[0]), encoding="utf-8")
        assert main(["validate", str(path)]) == 0

    def test_schema_failure_exits_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text('{"version": "1", "entries": [{}]}')
        assert main(["validate", str(path)]) == 1
        assert "error" in capsys.readouterr().err

    def test_missing_file_exits_2(self, tmp_path):
        assert main(["validate", str(tmp_path / "absent.json")]) == 2

    def test_lenient_downgrades_unknown_fields(self, tmp_path, capsys):
        payload = {"version": "1", "entries": [], "note": "x"}
        path = tmp_path / "doc.json"
        path.write_text(json.dumps(payload))
        assert main(["validate", str(path)]) == 1
        assert main(["validate", str(path), "--lenient"]) == 0
        assert "warning" in capsys.readouterr().err


class TestRender:
    def test_svg_requires_output(self, doc_file):
        assert main(["render", str(doc_file), "--format", "svg"]) == 2

    def test_svg_deterministic_across_runs(self, doc_file, tmp_path):
        out1 = tmp_path / "a.svg"
        out2 = tmp_path / "b.svg"
        assert main(["render", str(doc_file), "--format", "svg", "-o", str(out1)]) == 0
        assert main(["render", str(doc_file), "--format", "svg", "-o", str(out2)]) == 0
        assert out1.read_bytes() == out2.read_bytes()
        assert out1.read_bytes() == render_svg(layout(five_method_document()))

    def test_tikz_to_stdout(self, doc_file, capsys):
        assert main(["render", str(doc_file), "--format", "tikz"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("% Compass figure fragment")

    def test_export_tex_requires_output_flag(self, doc_file):
        assert main(["export-tex", str(doc_file)]) == 2

    def test_export_tex_matches_render_tikz(self, doc_file, tmp_path, capsys):
        out = tmp_path / "compass.tex"
        assert main(["export-tex", str(doc_file), "-o", str(out)]) == 0
        assert main(["render", str(doc_file), "--format", "tikz"]) == 0
        assert out.read_text(encoding="utf-8") == capsys.readouterr().out


class TestMetrics:
    def test_worked_example(self, log_file, capsys):
        assert main(["metrics", str(log_file)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["forgetting"] == pytest.approx(0.3)
        assert report["backward_transfer"] == pytest.approx(-0.3)
        assert report["average_accuracy"] == pytest.approx(0.7)

    def test_select(self, log_file, capsys):
        assert main(["metrics", str(log_file), "--select", "forgetting"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert list(report) == ["forgetting"]

    def test_bad_log_exits_1(self, tmp_path):
        path = tmp_path / "log.json"
        path.write_text('{"accuracy_matrix": [[0.9, null], [null, 0.8]]}')
        assert main(["metrics", str(path)]) == 1

    def test_malformed_log_exits_1(self, tmp_path):
        path = tmp_path / "log.json"
        path.write_text("not json")
        assert main(["metrics", str(path)]) == 1


class TestDiff:
    def test_diff_fixture_entries(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        b = tmp_path / "b.json"
        a.write_text(bundled_entry_text("osaka-caccia-2020"), encoding="utf-8")
        b.write_text(bundled_entry_text("agem-chaudhry-2019"), encoding="utf-8")
        assert main(["diff", str(a), str(b)]) == 0
        out = capsys.readouterr().out
        assert "inner.open_world: supervised -> none" in out
        assert "inner.online: supervised -> none" in out

    def test_diff_identical(self, tmp_path, capsys):
        a = tmp_path / "a.json"
        a.write_text(bundled_entry_text("vcl-nguyen-2018"), encoding="utf-8")
        assert main(["diff", str(a), str(a)]) == 0
        assert capsys.readouterr().out == ""

    def test_diff_rejects_multi_entry_documents(self, doc_file, tmp_path):
        assert main(["diff", str(doc_file), str(doc_file)]) == 1


class TestFetchAndList:
    def test_unreachable_repo_exits_3(self, tmp_path):
        assert (
            main(["fetch", "--repo", "http://127.0.0.1:1", "--cache", str(tmp_path)]) == 3
        )

    def test_missing_repo_is_usage_error(self, tmp_path, monkeypatch):
        monkeypatch.delenv("CLEVA_CONFIG", raising=False)
        assert main(["fetch", "--cache", str(tmp_path)]) == 2

    def test_list_empty_cache(self, tmp_path, capsys):
        assert main(["list", "--cache", str(tmp_path)]) == 0
        assert capsys.readouterr().out == ""

    def test_config_supplies_repo_url(self, tmp_path, monkeypatch):
        config = tmp_path / "config.json"
        config.write_text(json.dumps({"repo_url": "http://127.0.0.1:1"}))
        monkeypatch.setenv("CLEVA_CONFIG", str(config))
        assert main(["fetch", "--cache", str(tmp_path / "cache")]) == 3

    def test_offline_fetch_after_warm_cache(self, tmp_path, capsys):
        import hashlib

        from test_reposync import RepoServer

        server = RepoServer()
        try:
            payload = bundled_entry_text(METHOD_IDS[0]).encode("utf-8")
            server.files["/methods/m.json"] = payload
            manifest = {
                "version": 1,
                "methods": [
                    {
                        "id": "m",
                        "label": "M",
                        "url": f"{server.url}/methods/m.json",
                        "sha256": hashlib.sha256(payload).hexdigest(),
                    }
                ],
            }
            server.files["/manifest.json"] = json.dumps(manifest).encode("utf-8")
            cache = tmp_path / "cache"
            assert main(["fetch", "--repo", server.url, "--cache", str(cache)]) == 0
        finally:
            server.close()
        # repository gone: offline mode keeps serving the cache
        assert main(["fetch", "--offline", "--cache", str(cache)]) == 0
        assert main(["list", "--cache", str(cache)]) == 0
        assert "m\tM\t" in capsys.readouterr().out


class TestUsage:
    def test_no_verb(self, capsys):
        assert main([]) == 2
        assert "usage" in capsys.readouterr().err.lower()

    def test_missing_render_input_names_argument(self, capsys):
        assert main(["render"]) == 2
        assert "path" in capsys.readouterr().err
