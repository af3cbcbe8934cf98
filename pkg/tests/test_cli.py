import json

import pytest

from lfbeam.cli import main, parse_config
from lfbeam.simulator import ConfigError


def tiny_config(tmp_path, **extra):
    body = {
        "snr_db_points": [0.0, 4.0],
        "target_errors": 30,
        "max_bits": 50_000,
        "master_seed": 1,
    }
    body.update(extra)
    path = tmp_path / "config.json"
    path.write_text(json.dumps(body))
    return path


# ------------------------------------------------------------- parse_config


def test_defaults_without_any_input():
    cfg, curves = parse_config()
    assert cfg.n_subcarriers == 64
    assert cfg.n_taps == 4
    assert cfg.modulation == "bpsk"
    assert cfg.target_errors == 200
    assert cfg.max_bits == 10_000_000
    assert cfg.snr_db_points == tuple(float(s) for s in range(0, 21, 2))
    assert curves == [None, 4]


def test_presets_shape_the_link():
    miso, _ = parse_config(preset="fig2-miso")
    assert (miso.n_t, miso.n_r) == (2, 1)
    mimo, _ = parse_config(preset="fig3-mimo22")
    assert (mimo.n_t, mimo.n_r) == (2, 2)
    assert mimo.modulation == "qpsk"
    est, _ = parse_config(preset="fig4-estimated")
    assert est.csi_mode == "estimated"
    assert est.n_pilots >= est.n_t


def test_unknown_preset_rejected():
    with pytest.raises(ConfigError):
        parse_config(preset="fig9-nope")


def test_file_overrides_preset_and_flags_override_file(tmp_path):
    path = tiny_config(tmp_path, modulation="qpsk")
    cfg, _ = parse_config(path=str(path), preset="fig2-miso")
    assert cfg.modulation == "qpsk"  # file beats preset
    cfg, _ = parse_config(
        path=str(path), preset="fig2-miso", overrides={"modulation": "bpsk"}
    )
    assert cfg.modulation == "bpsk"  # flag beats file


def test_curves_from_file(tmp_path):
    path = tiny_config(tmp_path, curves=["perfect", 1, 8])
    _, curves = parse_config(path=str(path))
    assert curves == [None, 1, 8]


def test_unknown_key_rejected(tmp_path):
    path = tiny_config(tmp_path, carrier_freq=2.4e9)
    with pytest.raises(ConfigError):
        parse_config(path=str(path))


def test_invalid_json_rejected(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    with pytest.raises(ConfigError):
        parse_config(path=str(path))


def test_missing_file_rejected(tmp_path):
    with pytest.raises(ConfigError):
        parse_config(path=str(tmp_path / "absent.json"))


# --------------------------------------------------------------------- main


def test_main_runs_and_writes_outputs(tmp_path, capsys):
    out = tmp_path / "out"
    code = main([
        "--preset", "fig2-miso",
        "--config", str(tiny_config(tmp_path)),
        "--feedback-bits", "perfect,1",
        "--out-dir", str(out),
    ])
    assert code == 0
    assert (out / "perfect.csv").exists()
    assert (out / "rvq-b1.csv").exists()
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["n_t"] == 2
    assert manifest["curves"] == [
        {"label": "perfect", "feedback_bits": "perfect"},
        {"label": "rvq-b1", "feedback_bits": 1},
    ]
    stdout = capsys.readouterr().out
    assert "summary" in stdout
    assert "snr gap to perfect" in stdout


def test_manifest_reproduces_run_bit_for_bit(tmp_path):
    first = tmp_path / "first"
    again = tmp_path / "again"
    args = [
        "--config", str(tiny_config(tmp_path)),
        "--feedback-bits", "perfect,2",
    ]
    assert main(args + ["--out-dir", str(first)]) == 0
    assert main([
        "--config", str(first / "manifest.json"),
        "--out-dir", str(again),
    ]) == 0
    for name in ("perfect.csv", "rvq-b2.csv"):
        assert (first / name).read_bytes() == (again / name).read_bytes()


def test_threads_flag_does_not_change_output(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    base = ["--config", str(tiny_config(tmp_path)),
            "--feedback-bits", "perfect"]
    assert main(base + ["--out-dir", str(a), "--threads", "1"]) == 0
    assert main(base + ["--out-dir", str(b), "--threads", "2"]) == 0
    assert (a / "perfect.csv").read_bytes() == (b / "perfect.csv").read_bytes()


def test_snr_and_seed_flags(tmp_path):
    out = tmp_path / "out"
    code = main([
        "--config", str(tiny_config(tmp_path)),
        "--feedback-bits", "perfect",
        "--snr", "2,6",
        "--seed", "9",
        "--out-dir", str(out),
    ])
    assert code == 0
    text = (out / "perfect.csv").read_text().strip().split("\n")
    assert [line.split(",")[0] for line in text[1:]] == ["2", "6"]
    manifest = json.loads((out / "manifest.json").read_text())
    assert manifest["config"]["master_seed"] == 9
    assert manifest["config"]["snr_db_points"] == [2.0, 6.0]


def test_config_error_exits_1(tmp_path, capsys):
    path = tiny_config(tmp_path, snr_db_points=[4.0, 0.0])
    code = main(["--config", str(path), "--out-dir", str(tmp_path / "x")])
    assert code == 1
    assert "config error" in capsys.readouterr().err


def test_bad_flag_value_exits_1(tmp_path, capsys):
    code = main(["--preset", "made-up", "--out-dir", str(tmp_path / "x")])
    assert code == 1
    assert capsys.readouterr().err != ""


def test_bad_feedback_bits_exits_1(tmp_path, capsys):
    code = main([
        "--config", str(tiny_config(tmp_path)),
        "--feedback-bits", "perfect,many",
        "--out-dir", str(tmp_path / "x"),
    ])
    assert code == 1
    assert "config error" in capsys.readouterr().err


def test_unwritable_out_dir_exits_2(tmp_path, capsys):
    blocker = tmp_path / "blocked"
    blocker.write_text("a file, not a directory")
    code = main([
        "--config", str(tiny_config(tmp_path)),
        "--feedback-bits", "perfect",
        "--out-dir", str(blocker),
    ])
    assert code == 2
    assert "runtime error" in capsys.readouterr().err
