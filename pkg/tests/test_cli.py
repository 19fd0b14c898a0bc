"""Command-line interface: exit codes, rendering, corpus runner."""

import json
import pathlib
import socket
import subprocess
import sys
import time

import pytest

from modcert.certify import certify
from modcert.cli import main
from modcert.curvefile import load_curve_file


def write_curve(tmp_path, name, a, field=None, assume=None):
    doc = {"field": field or {"type": "rational"}, "a": a}
    if assume:
        doc["assume"] = assume
    path = tmp_path / name
    path.write_text(json.dumps(doc))
    return str(path)


@pytest.fixture
def f37a1(tmp_path):
    return write_curve(tmp_path, "37a1.json", [0, 0, 1, -1, 0])


@pytest.fixture
def f_ec1(tmp_path):
    return write_curve(tmp_path, "ec1.json", [0, 0, 0, 625, 625])


@pytest.fixture
def f_ec2(tmp_path):
    return write_curve(tmp_path, "ec2.json", [0, 0, 0, 49, 49])


class TestCertifyCommand:
    def test_modular_exit_0(self, f37a1, capsys):
        assert main(["certify", f37a1]) == 0
        out = capsys.readouterr().out
        assert "verdict: Modular" in out
        assert "cite:" in out

    def test_inconclusive_exit_2(self, tmp_path, capsys):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 3, 0])
        assert main(["certify", path, "--l-bound", "3"]) == 2
        assert "verdict: Inconclusive" in capsys.readouterr().out

    def test_assume_flags_merge_with_file(self, tmp_path, capsys):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 9, 27])
        code = main(
            ["certify", path, "--assume", "reducible-5", "--assume", "reducible-7"]
        )
        assert code == 0
        out = capsys.readouterr().out
        assert "quadratic twist by" in out
        assert "assumptions:" in out

    def test_assume_flags_in_file(self, tmp_path, capsys):
        path = write_curve(
            tmp_path, "c.json", [0, 0, 0, 9, 27],
            assume=["reducible-5", "reducible-7"],
        )
        assert main(["certify", path]) == 0
        assert "quadratic twist by" in capsys.readouterr().out

    def test_json_output_matches_engine(self, f37a1, tmp_path, capsys):
        out_path = tmp_path / "cert.json"
        assert main(["certify", f37a1, "--json", str(out_path)]) == 0
        capsys.readouterr()
        written = out_path.read_text()
        parsed = load_curve_file(f37a1)
        assert written == certify(parsed.source).to_json()
        # emit-then-parse: the written certificate is valid JSON with the
        # advertised top-level shape
        payload = json.loads(written)
        assert set(payload) == {"curve", "field", "verdict", "steps", "assumptions"}

    def test_missing_file_exit_1(self, tmp_path, capsys):
        assert main(["certify", str(tmp_path / "absent.json")]) == 1
        assert "modcert" in capsys.readouterr().err

    def test_malformed_file_exit_1(self, tmp_path, capsys):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"field": {"type": "rational"}, "a": [0, 1, 1, -1.5, 0]}))
        assert main(["certify", str(path)]) == 1
        assert "floats are not exact" in capsys.readouterr().err

    def test_file_and_corpus_conflict(self, f37a1, tmp_path, capsys):
        assert main(["certify", f37a1, "--corpus", str(tmp_path)]) == 1
        assert "not both" in capsys.readouterr().err

    def test_no_file_exit_1(self, capsys):
        assert main(["certify"]) == 1
        assert "required" in capsys.readouterr().err

    def test_usage_error_exit_1(self, f37a1):
        with pytest.raises(SystemExit) as err:
            main(["certify", f37a1, "--assume", "not-a-flag"])
        assert err.value.code == 1

    def test_unknown_subcommand_exit_1(self):
        with pytest.raises(SystemExit) as err:
            main(["frobnicate"])
        assert err.value.code == 1

    def test_lbound_env_override(self, tmp_path, capsys, monkeypatch):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 3, 0])
        monkeypatch.setenv("MODCERT_LBOUND", "3")
        assert main(["certify", path]) == 2
        capsys.readouterr()
        monkeypatch.delenv("MODCERT_LBOUND")
        assert main(["certify", path]) == 0

    def test_explicit_l_bound_beats_env(self, tmp_path, capsys, monkeypatch):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 3, 0])
        monkeypatch.setenv("MODCERT_LBOUND", "3")
        assert main(["certify", path, "--l-bound", "50"]) == 0


class TestCorpusRunner:
    def test_table_and_summary(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        write_curve(corpus, "a-modular.json", [0, 1, 1, -1, 0])
        write_curve(corpus, "b-twist.json", [0, 0, 0, 9, 27],
                    assume=["reducible-5", "reducible-7"])
        assert main(["certify", "--corpus", str(corpus)]) == 0
        out = capsys.readouterr().out
        assert "a-modular.json" in out
        assert "b-twist.json" in out
        assert "-- 2 files" in out
        assert "Modular: 2" in out

    def test_bad_file_is_isolated(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        corpus.mkdir()
        write_curve(corpus, "good.json", [0, 1, 1, -1, 0])
        (corpus / "broken.json").write_text("{not json")
        assert main(["certify", "--corpus", str(corpus)]) == 1
        out = capsys.readouterr().out
        assert "broken.json" in out
        assert "Error" in out
        # the good file was still processed
        assert "good.json" in out and "Modular" in out

    def test_empty_corpus_exit_1(self, tmp_path, capsys):
        assert main(["certify", "--corpus", str(tmp_path)]) == 1
        assert "no .json files" in capsys.readouterr().err

    def test_repo_corpus_all_green(self, capsys):
        corpus = pathlib.Path(__file__).resolve().parent.parent / "corpus"
        assert main(["certify", "--corpus", str(corpus)]) == 2  # has Inconclusive demos
        out = capsys.readouterr().out
        assert "-- 17 files" in out
        assert "Error" not in out


class TestLocalCommand:
    def test_exceptional_case_1_text(self, f_ec1, capsys):
        assert main(["local", "--prime", "5", f_ec1]) == 0
        out = capsys.readouterr().out
        assert "Exceptional Case 1: v(j) ≡ 1 (mod 3), potentially good supersingular reduction" in out
        assert "[v(j) = 4]" in out
        assert "verdict: ExceptionalCase1" in out

    def test_exceptional_case_2_text(self, f_ec2, capsys):
        assert main(["local", "--prime", "7", f_ec2]) == 0
        out = capsys.readouterr().out
        assert "Exceptional Case 2: v(j) ≡ 2 (mod 3), potentially good ordinary reduction" in out
        assert "verdict: ExceptionalCase2" in out

    def test_semistable_place(self, f37a1, capsys):
        assert main(["local", "--prime", "7", f37a1]) == 0
        out = capsys.readouterr().out
        assert "Kodaira I0" in out
        assert "verdict: Semistable" in out

    def test_prime_is_restricted(self, f37a1):
        with pytest.raises(SystemExit) as err:
            main(["local", "--prime", "3", f37a1])
        assert err.value.code == 1

    def test_json_output(self, f_ec1, tmp_path, capsys):
        out_path = tmp_path / "report.json"
        assert main(["local", "--prime", "5", f_ec1, "--json", str(out_path)]) == 0
        payload = json.loads(out_path.read_text())
        assert payload["verdict"] == "ExceptionalCase1"


class TestSstestCommand:
    def test_twist_found(self, tmp_path, capsys):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 9, 27])
        assert main(["sstest", path]) == 0
        out = capsys.readouterr().out
        assert 'semistabilizing twist: d = "3"' in out
        assert "verdict: Semistabilized" in out

    def test_already_semistable(self, f37a1, capsys):
        assert main(["sstest", f37a1]) == 0
        assert "verdict: AlreadySemistable" in capsys.readouterr().out

    def test_no_twist_exit_2(self, tmp_path, capsys):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 3, 3])
        assert main(["sstest", path]) == 2
        out = capsys.readouterr().out
        assert "no semistabilizing twist" in out
        assert "verdict: NoTwistFound" in out

    def test_external_data_rejected(self, tmp_path, capsys):
        path = tmp_path / "ext.json"
        path.write_text(json.dumps({
            "field": {"type": "external", "label": "K"},
            "local_data": [{
                "p": 7, "e": 1, "f": 1, "kodaira": "IV", "v_disc": 4,
                "v_c4": 2, "v_c6": 2, "v_j": 2,
                "reduction": "AdditivePotGoodOrdinary",
            }],
        }))
        assert main(["sstest", str(path)]) == 1
        assert "curve coefficients" in capsys.readouterr().err


class TestGroupAuditCommand:
    def test_constants(self, capsys):
        assert main(["group-audit"]) == 0
        out = capsys.readouterr().out
        assert "|B(F_5)| = 80" in out
        assert "|B(F_7)| = 252" in out
        assert "gcd(|B(F_5)|, |B(F_7)|) = 4" in out
        assert "cyclic order-4 subgroups of B(F_7): 0" in out
        assert "|PGL_2(F_5)| = 120, |PGL_2(F_7)| = 336" in out

    def test_json_output(self, tmp_path, capsys):
        out_path = tmp_path / "audit.json"
        assert main(["group-audit", "--json", str(out_path)]) == 0
        payload = json.loads(out_path.read_text())
        assert payload["gcd_value"] == 4


@pytest.fixture(scope="module")
def server():
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        port = s.getsockname()[1]
    proc = subprocess.Popen(
        [sys.executable, "-m", "uvicorn", "modcert.service:app",
         "--host", "127.0.0.1", "--port", str(port)],
        stdout=subprocess.DEVNULL,
        stderr=subprocess.DEVNULL,
    )
    import httpx

    url = f"http://127.0.0.1:{port}"
    try:
        for _ in range(100):
            try:
                if httpx.get(url + "/healthz", timeout=1.0).status_code == 200:
                    break
            except httpx.TransportError:
                time.sleep(0.15)
        else:
            raise RuntimeError("service did not come up")
        yield url
    finally:
        proc.terminate()
        proc.wait(timeout=10)


class TestRemoteMode:
    """One live round trip through `serve`; everything else uses the
    in-process TestClient in test_service.py."""

    def test_certify_through_service(self, server, f37a1, capsys):
        assert main(["--url", server, "certify", f37a1]) == 0
        payload = json.loads(capsys.readouterr().out)
        assert payload["verdict"] == "Modular"

    def test_exit_2_propagates(self, server, tmp_path, capsys):
        path = write_curve(tmp_path, "c.json", [0, 0, 0, 3, 0])
        # remote l-bound travels in the request body
        assert main(["--url", server, "certify", path, "--l-bound", "3"]) == 2
        assert json.loads(capsys.readouterr().out)["verdict"] == "Inconclusive"

    def test_group_audit_remote(self, server, capsys):
        assert main(["--url", server, "group-audit"]) == 0
        assert json.loads(capsys.readouterr().out)["borel_order_5"] == 80
