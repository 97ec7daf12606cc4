import json
import math
from pathlib import Path

import pytest

from qsaffine.cli import main

CONFIG_DIR = Path(__file__).resolve().parent.parent / "configs"


def run(capsys, *argv):
    rc = main(list(argv))
    captured = capsys.readouterr()
    return rc, captured.out, captured.err


def cfg(name):
    return str(CONFIG_DIR / f"{name}.cfg")


def write_config(tmp_path, text, name="sys.cfg"):
    path = tmp_path / name
    path.write_text(text, encoding="utf-8")
    return str(path)


class TestAnalyze:
    def test_reference_report(self, capsys):
        rc, out, _ = run(capsys, "analyze", "--config", cfg("cantor_max"), "--format", "json")
        assert rc == 0
        report = json.loads(out)
        assert report["bounds"]["M"] == pytest.approx(2.0, abs=1e-10)
        assert report["bounds"]["source"] == "closed-form"
        assert report["maxima_set"]["digits"] == [1, 2]
        assert report["maxima_set"]["dimension"] == pytest.approx(0.564, abs=1e-3)
        assert report["predicates"]["nowhere_differentiable"] is True
        assert report["non_invariance"]["dimension"] < 1.0

    def test_identity_report(self, capsys):
        rc, out, _ = run(capsys, "analyze", "--config", cfg("identity"), "--format", "json")
        assert rc == 0
        report = json.loads(out)
        assert report["predicates"]["monotone"] is True
        assert report["predicates"]["singular"] is False
        assert report["predicates"]["closed_form_regime"] is None
        assert report["bounds"]["source"] == "oracle"
        assert report["bounds"]["m"] == 0.0
        assert report["bounds"]["M"] == 1.0
        assert report["maxima_set"] is None

    def test_continuum_level_reported(self, capsys):
        rc, out, _ = run(capsys, "analyze", "--config", cfg("level_sets"), "--format", "json")
        assert rc == 0
        report = json.loads(out)
        assert report["predicates"]["singular"] is True
        rows = {tuple(r["digits"]): r for r in report["levels"]}
        assert rows[(1, 3)]["continuum"] is True
        assert rows[(1, 3)]["y"] == pytest.approx(0.625, abs=1e-12)

    def test_text_and_json_are_byte_stable(self, capsys):
        for fmt in ("text", "json"):
            _, out1, _ = run(capsys, "analyze", "--config", cfg("deep_min_s3"), "--format", fmt)
            _, out2, _ = run(capsys, "analyze", "--config", cfg("deep_min_s3"), "--format", fmt)
            assert out1 == out2 and out1


class TestExitCodes:
    def test_validation_failure_is_2(self, capsys, tmp_path):
        bad = write_config(tmp_path, "label: broken\nq: [1/2, 1/3]\ng: [1/2, 1/2]\n")
        rc, _, err = run(capsys, "analyze", "--config", bad)
        assert rc == 2
        diag = json.loads(err)
        assert diag["error"] == "ValidationError"
        assert "sum to 1" in diag["message"]

    def test_missing_key_is_2(self, capsys, tmp_path):
        bad = write_config(tmp_path, "q: [1/2, 1/2]\n")
        rc, _, err = run(capsys, "analyze", "--config", bad)
        assert rc == 2
        assert json.loads(err)["error"] == "ValidationError"

    def test_conditions_not_met_is_3(self, capsys):
        rc, _, err = run(capsys, "cantor", "--config", cfg("identity"), "--steps", "3")
        assert rc == 3
        assert json.loads(err)["error"] == "ConditionsNotMet"
        rc, _, _ = run(capsys, "preimage", "--config", cfg("level_sets"), "--y", "0.5")
        assert rc == 3

    def test_io_failure_is_4(self, capsys):
        rc, _, err = run(
            capsys, "analyze", "--config", cfg("identity"),
            "--out", "/nonexistent-dir-qsaffine/report.txt",
        )
        assert rc == 4

    def test_bad_digit_string_is_2(self, capsys):
        rc, _, err = run(capsys, "eval", "--config", cfg("cantor_max"), "--digits", "(7)")
        assert rc == 2
        assert json.loads(err)["error"] == "InvalidDigit"

    def test_unsupported_format_is_2(self, capsys):
        rc, _, err = run(capsys, "analyze", "--config", cfg("identity"), "--format", "csv")
        assert rc == 2
        assert json.loads(err)["error"] == "ValidationError"

    def test_too_few_points_is_2(self, capsys):
        rc, _, err = run(capsys, "sample", "--config", cfg("identity"), "--points", "1")
        assert rc == 2


class TestRoundTrips:
    def test_encode_then_decode_within_printed_bound(self, capsys):
        rc, out, _ = run(
            capsys, "encode", "--config", cfg("cantor_max"), "--x", "0.37", "--depth", "24",
        )
        assert rc == 0
        lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
        digits = lines["digits"]
        bound = float(lines["error_bound"])
        rc, out, _ = run(capsys, "decode", "--config", cfg("cantor_max"), "--digits", digits)
        assert rc == 0
        x = float(out.strip().splitlines()[0].split(" ", 1)[1])
        assert abs(x - 0.37) <= bound

    def test_exact_encode_has_zero_bound(self, capsys):
        rc, out, _ = run(capsys, "encode", "--config", cfg("cantor_max"), "--x", "0.2")
        assert rc == 0
        lines = dict(line.split(" ", 1) for line in out.strip().splitlines())
        assert lines["digits"] == "1,(0)"
        assert float(lines["error_bound"]) == 0.0


class TestPassThroughCommands:
    def test_eval_periodic_closed_form(self, capsys):
        rc, out, _ = run(capsys, "eval", "--config", cfg("singular_s3"), "--digits", "(2)")
        assert rc == 0
        value = float(out.strip().splitlines()[0].split(" ", 1)[1])
        # delta_2 / (1 - g_2) = 1.1 / 1.1
        assert value == pytest.approx(1.0, abs=1e-12)

    def test_eval_at_point(self, capsys):
        rc, out, _ = run(capsys, "eval", "--config", cfg("cantor_max"), "--x", "1")
        assert rc == 0
        assert float(out.strip().splitlines()[0].split(" ", 1)[1]) == 1.0

    def test_holder_flags(self, capsys):
        rc, out, _ = run(capsys, "holder", "--config", cfg("cantor_max"), "--binary")
        assert rc == 0
        value = float(out.strip().splitlines()[0].split(" ", 1)[1])
        assert value == pytest.approx(0.3174, abs=1e-4)
        rc, out, _ = run(capsys, "holder", "--config", cfg("cantor_max"))
        assert float(out.strip().splitlines()[0].split(" ", 1)[1]) == pytest.approx(
            0.2435, abs=1e-4
        )
        rc, out, _ = run(capsys, "holder", "--config", cfg("cantor_max"), "--ae")
        assert rc == 0
        rc, out, _ = run(
            capsys, "holder", "--config", cfg("cantor_max"),
            "--digits", "(1)", "--ranks", "1:40",
        )
        value = float(out.strip().splitlines()[0].split(" ", 1)[1])
        assert value == pytest.approx(math.log(0.8) / math.log(0.4), abs=1e-12)

    def test_level_command(self, capsys):
        rc, out, _ = run(
            capsys, "level", "--config", cfg("level_sets"), "--y", "0.625", "--format", "json",
        )
        assert rc == 0
        payload = json.loads(out)
        assert payload["digits"] == [1, 3]
        assert payload["continuum"] is True

    def test_preimage_command(self, capsys):
        rc, out, _ = run(
            capsys, "preimage", "--config", cfg("cantor_max"), "--y", "0.5", "--format", "json",
        )
        assert rc == 0
        payload = json.loads(out)
        assert payload["residual"] <= payload["residual_bound"]

    def test_variation_command(self, capsys):
        rc, out, _ = run(
            capsys, "variation", "--config", cfg("cantor_max"), "--rank", "3", "--format", "json",
        )
        assert rc == 0
        assert json.loads(out)["value"] == pytest.approx(10.648, rel=1e-12)


class TestSampleOutputs:
    def test_csv_two_points(self, capsys):
        rc, out, _ = run(
            capsys, "sample", "--config", cfg("identity"), "--points", "2", "--format", "csv",
        )
        assert rc == 0
        assert out.splitlines() == ["x,f,error_bound", "0,0,0", "1,1,0"]

    def test_csv_respects_oracle_bounds(self, capsys):
        # both systems have oracle maximum 2; sampled curve must come within 1e-3
        for name in ("cantor_max", "singular_s3"):
            rc, out, _ = run(
                capsys, "sample", "--config", cfg(name), "--points", "4096", "--format", "csv",
            )
            assert rc == 0
            rows = [line.split(",") for line in out.splitlines()[1:]]
            values = [float(v) for _, v, _ in rows]
            assert max(values) <= 2.0 + 1e-12
            assert max(values) >= 2.0 - 1e-3

    def test_svg_file(self, capsys, tmp_path):
        out_path = tmp_path / "curve.svg"
        rc, _, _ = run(
            capsys, "sample", "--config", cfg("singular_s3"), "--points", "512",
            "--format", "svg", "--out", str(out_path),
        )
        assert rc == 0
        body = out_path.read_text()
        assert body.startswith("<?xml")
        assert "<polyline" in body and "<script" not in body

    def test_byte_stable_files(self, capsys, tmp_path):
        paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
        for p in paths:
            rc, _, _ = run(
                capsys, "sample", "--config", cfg("deep_min_s3"), "--points", "1024",
                "--format", "csv", "--out", str(p),
            )
            assert rc == 0
        assert paths[0].read_bytes() == paths[1].read_bytes()


class TestCantorOutputs:
    def test_csv_band_counts(self, capsys):
        rc, out, _ = run(
            capsys, "cantor", "--config", cfg("cantor_max"), "--steps", "5", "--format", "csv",
        )
        assert rc == 0
        lines = out.splitlines()[1:]
        counts = {}
        for line in lines:
            stage = int(line.split(",")[0])
            counts[stage] = counts.get(stage, 0) + 1
        assert counts == {t: 2**t for t in range(1, 6)}
        first = lines[0].split(",")
        assert float(first[2]) == pytest.approx(0.2, abs=1e-12)
        assert float(first[3]) == pytest.approx(0.6, abs=1e-12)

    def test_singleton_bands(self, capsys):
        rc, out, _ = run(
            capsys, "cantor", "--config", cfg("rough_s3"), "--steps", "4", "--format", "csv",
        )
        assert rc == 0
        lines = out.splitlines()[1:]
        assert len(lines) == 4  # one interval per stage

    def test_svg_bands(self, capsys, tmp_path):
        out_path = tmp_path / "bands.svg"
        rc, _, _ = run(
            capsys, "cantor", "--config", cfg("cantor_max"), "--steps", "5",
            "--format", "svg", "--out", str(out_path),
        )
        assert rc == 0
        body = out_path.read_text()
        assert body.count("<rect") >= sum(2**t for t in range(1, 6))

    def test_step_cap(self, capsys):
        rc, _, err = run(
            capsys, "cantor", "--config", cfg("cantor_max"), "--steps", "25",
        )
        assert rc == 2
