import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from scalar_ab.cli import ConfigError, main, parse_config, run


def write(tmp_path, doc, name="run.json"):
    path = tmp_path / name
    path.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return path


def test_minimal_config_defaults():
    cfg = parse_config('{"command": "sidebands", "v0": 2, "omega": 1}')
    assert cfg.drive.units == "natural"
    assert cfg.output.format == "csv" and cfg.output.path is None
    assert cfg.params["n_hi"] is None
    assert [lv.label for lv in cfg.levels] == ["0"]


def test_omega_zero_names_field():
    with pytest.raises(ConfigError) as info:
        parse_config('{"command": "sidebands", "drive": {"v0": 1, "omega": 0}}')
    assert info.value.field == "drive.omega"
    assert "omega" in str(info.value)


def test_syntax_error_position():
    with pytest.raises(ConfigError) as info:
        parse_config('{"command": "sidebands",\n  "v0": 1,, }')
    assert info.value.line == 2
    assert info.value.column is not None


def test_si_config_alpha():
    cfg = parse_config(json.dumps({"command": "splitting",
                                   "drive": {"v0": 5e-4, "omega": 1e8, "units": "SI"}}))
    assert cfg.make_drive().alpha == pytest.approx(7.6e3, rel=1e-3)


@pytest.mark.parametrize("doc,field", [
    ({"command": "nope"}, "command"),
    ({"command": "sidebands"}, "drive"),
    ({"command": "sidebands", "v0": -1, "omega": 1}, "drive.v0"),
    ({"command": "sidebands", "drive": {"v0": 1, "omega": 1, "units": "cgs"}}, "drive.units"),
    ({"command": "sidebands", "v0": 1, "omega": 1, "levels": [{"label": "a"}, {"label": "a"}]}, "levels"),
    ({"command": "sidebands", "v0": 1, "omega": 1, "params": {"bogus": 1}}, "params"),
    ({"command": "sidebands", "v0": 1, "omega": 1, "params": {"n_hi": 2.5}}, "params.n_hi"),
    ({"command": "spectrum", "v0": 1, "omega": 1, "params": {"width": 0.1}}, "levels"),
    ({"command": "eit", "params": {"rabi_c": 1, "gamma_3": 1}}, "params.rabi_p"),
    ({"command": "sidebands", "v0": 1, "omega": 1, "output": {"format": "xml"}}, "output.format"),
    ({"command": "sidebands", "drive": {"v0": 1, "omega": 1, "units": "SI"},
      "levels": [{"label": "g", "units": "natural"}]}, "levels[0].units"),
])
def test_validation_errors(doc, field):
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(doc))
    assert info.value.field == field


def test_sidebands_alpha_zero(tmp_path, capsys):
    out = tmp_path / "out.csv"
    path = write(tmp_path, {"command": "sidebands", "v0": 0, "omega": 1, "output": {"path": str(out)}})
    assert main(["--config", str(path), "--quiet"]) == 0
    assert out.read_text() == "level_label,n,energy,amplitude,weight\n0,0,0.0,1.0,1.0\n"


def test_output_flag_overrides(tmp_path):
    cfg_out, flag_out = tmp_path / "a.csv", tmp_path / "b.csv"
    path = write(tmp_path, {"command": "constants", "output": {"path": str(cfg_out)}})
    assert main(["--config", str(path), "--output", str(flag_out), "--quiet"]) == 0
    assert flag_out.exists() and not cfg_out.exists()
    assert flag_out.read_text().splitlines()[0] == "name,value,unit"


@pytest.mark.parametrize("command", ["tdse-verify", "gauge-check"])
def test_verification_reports(tmp_path, command):
    out = tmp_path / "report.json"
    path = write(tmp_path, {"command": command, "drive": {"v0": 2, "omega": 1},
                            "output": {"format": "json", "path": str(out)}})
    assert main(["--config", str(path), "--quiet"]) == 0
    report = json.loads(out.read_text())
    assert set(report) == {"alpha", "periods", "max_error", "tolerance", "pass"}
    assert report["alpha"] == 2.0 and report["periods"] == 10
    assert report["max_error"] < 1e-8 and report["pass"] is True


def test_contract_failure_exit_code(tmp_path, capsys):
    path = write(tmp_path, {"command": "tdse-verify", "drive": {"v0": 2, "omega": 1},
                            "params": {"substeps": 1, "tolerance": 1e-14}, "output": {"format": "json"}})
    assert main(["--config", str(path), "--quiet"]) == 3
    err = json.loads(capsys.readouterr().err.strip().splitlines()[-1])
    assert err["error"] == "contract" and err["module"] == "tdse"


def test_config_error_exit_code(tmp_path, capsys):
    path = write(tmp_path, '{"command": "sidebands", "drive": {"v0": 1, "omega": 0}}')
    assert main(["--config", str(path)]) == 2
    record = json.loads(capsys.readouterr().err)
    assert record["error"] == "config" and record["field"] == "drive.omega"


def test_module_error_surfaces_module(tmp_path, capsys):
    # an under-resolved explicit grid is rejected by the integrator
    path = write(tmp_path, {"command": "tdse-verify", "drive": {"v0": 50, "omega": 1},
                            "params": {"samples_per_period": 60}})
    assert main(["--config", str(path)]) == 2
    record = json.loads(capsys.readouterr().err)
    assert record["module"] == "tdse"


def test_io_errors(tmp_path, capsys):
    assert main(["--config", str(tmp_path / "missing.json")]) == 4
    path = write(tmp_path, {"command": "constants"})
    assert main(["--config", str(path), "--output", str(tmp_path / "no" / "dir.csv")]) == 4


def test_spectrum_and_eit_columns(tmp_path):
    out = tmp_path / "s.csv"
    path = write(tmp_path, {
        "command": "spectrum", "drive": {"v0": 3, "omega": 1},
        "levels": [{"label": "g", "energy": 0}, {"label": "e", "energy": 20, "coupling": 0}],
        "params": {"width": 0.2, "points": 101}, "output": {"path": str(out)}})
    assert main(["--config", str(path), "--quiet"]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "frequency,absorption" and len(lines) == 102

    path = write(tmp_path, {"command": "eit", "params": {"rabi_p": 0.01, "rabi_c": 1, "gamma_3": 1},
                            "output": {"path": str(out)}})
    assert main(["--config", str(path), "--quiet"]) == 0
    assert out.read_text().splitlines()[0] == "frequency,absorption"


def test_acstark_json(tmp_path):
    out = tmp_path / "c.json"
    path = write(tmp_path, {"command": "acstark", "params": {"e0": 1, "d": 2, "omega": 1},
                            "output": {"format": "json", "path": str(out)}})
    assert main(["--config", str(path), "--quiet"]) == 0
    doc = json.loads(out.read_text())
    assert doc["columns"] == ["n", "c_n", "scalar_ab_weight"]
    assert doc["reduction_residual"] < 1e-12


def test_determinism(tmp_path):
    doc = {"command": "sidebands", "drive": {"v0": 7.5, "omega": 1.3},
           "levels": [{"label": "g", "energy": 0.25}, {"label": "e", "energy": 3, "coupling": 0.5}]}
    outs = []
    for k in range(2):
        out = tmp_path / f"o{k}.csv"
        path = write(tmp_path, {**doc, "output": {"path": str(out)}}, f"c{k}.json")
        assert main(["--config", str(path), "--quiet"]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_round_trip_full_config():
    cfg = parse_config(json.dumps({
        "command": "spectrum", "drive": {"v0": 5e-4, "omega": 1e8, "units": "SI"},
        "levels": [{"label": "g", "energy": 0.0, "coupling": 1.0}, {"label": "e", "energy": 1e-19, "coupling": 0}],
        "params": {"width": 1e9}, "output": {"format": "json", "path": "x.json"}}))
    assert parse_config(cfg.to_json()) == cfg


label_st = st.text(alphabet="abcdefgxyz0123456789_", min_size=1, max_size=6)
level_st = st.fixed_dictionaries({"label": label_st, "energy": st.floats(-1e3, 1e3),
                                  "coupling": st.floats(-2, 2)})


@settings(max_examples=60, deadline=None)
@given(
    command=st.sampled_from(["sidebands", "splitting", "tdse-verify", "gauge-check"]),
    v0=st.floats(0, 1e3), omega=st.floats(1e-3, 1e9), units=st.sampled_from(["SI", "natural"]),
    levels=st.lists(level_st, min_size=1, max_size=4, unique_by=lambda d: d["label"]),
    fmt=st.sampled_from(["csv", "json"]),
)
def test_round_trip_property(command, v0, omega, units, levels, fmt):
    doc = {"command": command, "drive": {"v0": v0, "omega": omega, "units": units},
           "levels": levels, "output": {"format": fmt}}
    cfg = parse_config(json.dumps(doc))
    assert parse_config(cfg.to_json()) == cfg
    assert json.loads(cfg.to_json()) == cfg.to_dict()


def test_run_returns_code_directly(tmp_path, capsys):
    cfg = parse_config('{"command": "constants"}')
    assert run(cfg, output=str(tmp_path / "c.csv"), quiet=True) == 0
