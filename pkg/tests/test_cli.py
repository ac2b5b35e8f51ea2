import json

import pytest

from tracekit.cli import main


def test_verify_kloosterman_battery(tmp_path):
    out = tmp_path / "klo.csv"
    assert main(["verify", "kloosterman", "--out", str(out), "--precision-bits", "128"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "m,n,c,value_mid,value_rad,is_zero,certificate"
    assert any(",ZeroExact" in line for line in lines)  # S(1,1,8)
    assert len(lines) > 30


def test_verify_bessel_battery(tmp_path):
    out = tmp_path / "bessel.csv"
    assert main(["verify", "bessel", "--out", str(out), "--precision-bits", "96"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "a,x_mid,value_mid,value_rad,method,lemma_check,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_verify_measures_battery(tmp_path):
    out = tmp_path / "measures.csv"
    assert main(["verify", "measures", "--out", str(out), "--precision-bits", "96"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "check,measure,param,value_mid,value_rad,expected,pass"
    assert all(line.endswith(",true") for line in lines[1:])


def test_petersson_subcommand_json(tmp_path):
    out = tmp_path / "pet.json"
    code = main(["petersson", "--k", "68", "--N", "5", "--m", "1", "--n", "729",
                 "--out", str(out), "--precision-bits", "160"])
    assert code == 0
    payload = json.loads(out.read_text())
    assert set(payload) == {"value_mid", "value_rad", "tail_bound", "window_ok",
                            "main_term_mid", "remainder_mid", "envelope"}
    assert payload["window_ok"] is True
    assert abs(payload["value_mid"] - 0.43) < 0.01
    assert payload["envelope"] > 0


def test_petersson_small_weight_leaves_asymptotics_null(tmp_path):
    out = tmp_path / "pet.json"
    assert main(["petersson", "--k", "12", "--N", "1", "--m", "1", "--n", "1",
                 "--trunc", "40", "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["main_term_mid"] is None and payload["envelope"] is None
    assert abs(payload["value_mid"] - 2.8402873751675) < 1e-9


def test_thm1_cli_roundtrip(tmp_path):
    out = tmp_path / "thm1.csv"
    assert main(["thm1", "--p", "3", "--N", "5", "--n-max", "4", "--out", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("n,k_n,window_ok")
    svg = tmp_path / "thm1.svg"
    assert main(["--format", "svg", "thm1", "--p", "3", "--N", "5", "--n-max", "4",
                 "--out", str(svg)]) == 0
    assert svg.read_text().startswith("<svg")


def test_thm2_cli_json(tmp_path):
    out = tmp_path / "thm2.json"
    assert main(["--format", "json", "thm2", "--p", "3", "--N", "5", "--n-max", "1",
                 "--out", str(out)]) == 0
    payload = json.loads(out.read_text())
    assert payload["mode"] == "theorem2"
    assert payload["metadata"]["p"] == 3


def test_config_file_defaults(tmp_path):
    cfg = tmp_path / "tracekit.conf"
    out = tmp_path / "from_config.csv"
    cfg.write_text(f"precision_bits = 128\nout = {out}\n# comment\n")
    assert main(["--config", str(cfg), "thm1", "--p", "3", "--N", "5", "--n-max", "3"]) == 0
    assert out.exists()


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as exc:
        main(["thm1", "--p", "3"])  # missing required flags
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["verify", "nonsense"])
    assert exc.value.code == 2
