import pytest

from amphisim.cli import main


def test_neutral_prism(capsys):
    assert main(["neutral", "--mass-g", "330", "--model", "prism"]) == 0
    out = capsys.readouterr().out
    assert "5.185 cm" in out


def test_neutral_affine(capsys):
    assert main(["neutral", "--mass-g", "330", "--model", "affine"]) == 0
    assert "6.500 cm" in capsys.readouterr().out


def test_neutral_out_of_range(capsys):
    assert main(["neutral", "--mass-g", "120", "--model", "prism"]) == 0
    assert "always floats" in capsys.readouterr().out


def test_unknown_flag_exits_2(capsys):
    with pytest.raises(SystemExit) as excinfo:
        main(["neutral", "--mass-g", "330", "--frobnicate"])
    assert excinfo.value.code == 2
    assert "usage" in capsys.readouterr().err


def test_missing_subcommand_exits_2():
    with pytest.raises(SystemExit) as excinfo:
        main([])
    assert excinfo.value.code == 2


def test_design_space_writes_grid_and_curve(tmp_path, capsys):
    out = tmp_path / "grid.csv"
    code = main([
        "design-space", "--mass-g", "200:500:11", "--height-cm", "4:10:11",
        "--model", "prism", "--out", str(out),
    ])
    assert code == 0
    assert out.exists()
    assert (tmp_path / "neutral_curve.csv").exists()
    assert out.read_text().splitlines()[0] == "mass_g,height_cm,net_force_n"


def test_design_space_bad_axis_exits_1(tmp_path, capsys):
    code = main(["design-space", "--mass-g", "200-500", "--out", str(tmp_path / "g.csv")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_sink_command(tmp_path, capsys):
    out = tmp_path / "sink.csv"
    assert main(["sink", "--out", str(out), "--duration-s", "80"]) == 0
    assert out.exists()
    assert "sink segment" in capsys.readouterr().out


def test_mission_builtin_script(tmp_path, capsys):
    out = tmp_path / "run.csv"
    assert main(["mission", "fig6", "--out", str(out)]) == 0
    assert out.exists()
    assert "on_ramp->sinking" in capsys.readouterr().out


def test_mission_missing_script_exits_1(tmp_path, capsys):
    code = main(["mission", str(tmp_path / "nope.json"), "--out", str(tmp_path / "o.csv")])
    assert code == 1
    assert "error" in capsys.readouterr().err


def test_speeds(capsys):
    assert main(["speeds"]) == 0
    out = capsys.readouterr().out
    assert "0.70 cm/s" in out
    assert "0.24 cm/s" in out
    assert "0.75 cm/s" in out


def test_calibrate_drag_drop(tmp_path, capsys):
    cfg_out = tmp_path / "calibrated.json"
    code = main([
        "calibrate", "drag", "--target-s", "7", "--depth-cm", "30",
        "--scenario", "drop", "--write-config", str(cfg_out),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert "cd_descend" in out
    assert cfg_out.exists()


def test_config_flag_round_trip(tmp_path, capsys):
    from amphisim.config import AppConfig, save_config

    path = tmp_path / "config.json"
    save_config(AppConfig(mass_kg=0.250), path)
    assert main(["--config", str(path), "neutral", "--mass-g", "250", "--model", "prism"]) == 0
    assert "3.210 cm" in capsys.readouterr().out
