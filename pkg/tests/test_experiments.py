"""Config parsing, presets, file formats, and the run pipeline."""
import json
import math

import pytest

from chernoff_lab.analysis import ErrorRecord, geometric_degrees
from chernoff_lab.experiments import (
    CSV_HEADER,
    ConfigError,
    RunReport,
    list_presets,
    parse_config,
    preset_text,
    read_error_csv,
    report_to_dict,
    run_experiment,
    write_error_csv,
)

SMALL_TRANSPORT = ("equation=transport scheme=power:1,1 t=1 n=1..8 "
                   "grid=0,6.283185307179586,101")


def _key_of(excinfo):
    return excinfo.value.key


# ------------------------------------------------------------------ parsing

def test_parse_single_line_config():
    cfg = parse_config(
        "equation=transport scheme=power:1,1 t=1 n=1..100 out=results/transport")
    assert cfg.equation == "transport"
    assert cfg.scheme == "power:1,1"
    assert cfg.t == 1.0
    assert cfg.n_values == tuple(range(1, 101))
    assert cfg.output_dir == "results/transport"
    # defaults fill the rest
    assert cfg.initial == "sin"
    assert cfg.grid.label == "[0,6.28319]/20001"
    assert cfg.outputs == ("csv", "json", "svg")


def test_parse_multiline_comments_and_overrides():
    text = (
        "# a comment line\n"
        "equation=heat scheme=g2   # trailing comment\n"
        "\n"
        "initial=sin\n"
        "t=2 a=1\n"
    )
    cfg = parse_config(text, overrides=("t=3", "n=1,2,4"))
    assert cfg.equation == "heat"
    assert cfg.t == 3.0  # override wins
    assert cfg.n_values == (1, 2, 4)
    assert cfg.a == 1.0


def test_scheme_equation_mismatch():
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat scheme=power:1,1")
    assert _key_of(exc) == "scheme"
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=transport scheme=g1")
    assert _key_of(exc) == "scheme"


def test_scheme_value_validation():
    for bad in ("power:1", "power:0,1", "power:1,0", "power:x,y",
                "slow:0", "slow:1", "slow:z", "g9"):
        with pytest.raises(ConfigError) as exc:
            parse_config(f"equation=transport scheme={bad}")
        assert _key_of(exc) == "scheme"


def test_unknown_and_missing_keys():
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat scheme=g1 conductivity=2")
    assert _key_of(exc) == "conductivity"
    with pytest.raises(ConfigError) as exc:
        parse_config("")
    assert _key_of(exc) == "equation"
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat")
    assert _key_of(exc) == "scheme"
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=wave scheme=g1")
    assert _key_of(exc) == "equation"
    with pytest.raises(ConfigError) as exc:
        parse_config("equation transport")
    assert _key_of(exc) == "config"


def test_time_validation():
    for bad_t in ("0", "-1", "abc", "inf"):
        with pytest.raises(ConfigError) as exc:
            parse_config(f"equation=transport scheme=power:1,1 t={bad_t}")
        assert _key_of(exc) == "t"


def test_conductivity_rules():
    # transport carries its amplitude inside the scheme token
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=transport scheme=power:1,1 a=2")
    assert _key_of(exc) == "a"
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat scheme=g1 a=-1")
    assert _key_of(exc) == "a"
    cfg = parse_config("equation=heat scheme=g1 a=2.5")
    assert cfg.a == 2.5


def test_initial_validation():
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat scheme=g1 initial=box")
    assert _key_of(exc) == "initial"


def test_n_spec_forms():
    base = "equation=transport scheme=power:1,1 "
    assert parse_config(base + "n=1,2,5,16").n_values == (1, 2, 5, 16)
    assert parse_config(base + "n=16..4096(geometric)").n_values == \
        geometric_degrees(16, 4096)
    assert parse_config(base + "n=3..6").n_values == (3, 4, 5, 6)
    for bad in ("5..2", "0..4", "1,1", "2,1", "(geometric)", "a..b", "7,"):
        with pytest.raises(ConfigError) as exc:
            parse_config(base + f"n={bad}")
        assert _key_of(exc) == "n"


def test_grid_forms():
    cfg = parse_config("equation=heat scheme=g1 initial=exp-abs grid=-5,5,11")
    assert cfg.grid.label == "[-5,5]/11"
    for bad in ("1,2", "2,1,5", "0,1,1", "a,b,c"):
        with pytest.raises(ConfigError) as exc:
            parse_config(f"equation=heat scheme=g1 grid={bad}")
        assert _key_of(exc) == "grid"


def test_tabulated_requires_explicit_grid():
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=transport scheme=power:1,1 initial=tabulated:f.txt")
    assert _key_of(exc) == "grid"


def test_default_degree_lists():
    assert parse_config("equation=transport scheme=power:1,1").n_values == \
        tuple(range(1, 101))
    assert parse_config("equation=heat scheme=g3").n_values == \
        geometric_degrees(1, 256)
    assert parse_config("equation=heat scheme=g1 initial=exp-abs").grid.label \
        == "[-5,5]/20001"


def test_outputs_selection():
    cfg = parse_config("equation=heat scheme=g1 outputs=json,csv")
    assert cfg.outputs == ("csv", "json")  # canonical order
    assert parse_config("equation=heat scheme=g1 outputs=").outputs == ()
    with pytest.raises(ConfigError) as exc:
        parse_config("equation=heat scheme=g1 outputs=png")
    assert _key_of(exc) == "outputs"


# ------------------------------------------------------------------ presets

def test_preset_catalog():
    presets = list_presets()
    assert set(presets) == {
        "fig-transport-approach", "fig-transport-order",
        "fig-transport-slow-half", "fig-transport-slow-third",
        "fig-transport-slow-sixth",
        "fig-heat-sin-g1", "fig-heat-sin-g2", "fig-heat-sin-g3",
        "fig-heat-expabs-g1", "fig-heat-expabs-g2", "fig-heat-expabs-g3",
    }
    for name, desc in presets.items():
        assert desc and not desc.startswith("#")


def test_every_preset_parses_and_builds():
    for name in list_presets():
        cfg = parse_config(preset_text(name), overrides=("out=unused",))
        cfg.build_problem()


def test_unknown_preset():
    with pytest.raises(ConfigError):
        preset_text("fig-nope")


# ------------------------------------------------------------- file formats

def test_csv_round_trip_is_exact(tmp_path):
    records = [
        ErrorRecord(n=1, measured_error=math.pi / 7, closed_form_error=1 / 3,
                    t=1.0, scheme="power:1,1", initial="sin", grid="[0,1]/3"),
        ErrorRecord(n=2, measured_error=2.0 ** -40, closed_form_error=None,
                    t=1.0, scheme="power:1,1", initial="sin", grid="[0,1]/3"),
    ]
    path = tmp_path / "errors.csv"
    write_error_csv(str(path), records)
    text = path.read_text()
    assert text.splitlines()[0] == CSV_HEADER
    rows = read_error_csv(str(path))
    assert rows[0]["measured_error"] == math.pi / 7
    assert rows[0]["closed_form_error"] == 1 / 3
    assert rows[0]["abs_gap"] == abs(math.pi / 7 - 1 / 3)
    assert rows[1]["measured_error"] == 2.0 ** -40
    assert rows[1]["closed_form_error"] is None
    assert rows[1]["abs_gap"] is None


def test_csv_header_guard(tmp_path):
    path = tmp_path / "bad.csv"
    path.write_text("n,error\n1,0.5\n")
    with pytest.raises(ValueError):
        read_error_csv(str(path))


# ------------------------------------------------------------ run pipeline

def test_run_writes_all_outputs(tmp_path):
    cfg = parse_config(SMALL_TRANSPORT, overrides=(f"out={tmp_path}",))
    report = run_experiment(cfg)
    assert isinstance(report, RunReport)
    for name in ("errors.csv", "report.json", "overlay_n1.svg",
                 "overlay_n2.svg", "error.svg", "error_loglog.svg"):
        assert (tmp_path / name).exists(), name

    doc = json.loads((tmp_path / "report.json").read_text())
    assert doc["config"]["equation"] == "transport"
    assert doc["config"]["grid"] == "[0,6.28319]/101"
    assert len(doc["records"]) == 8
    assert -1.05 < doc["fit"]["slope"] < -0.95
    assert doc["conjecture_probe"]["trend"] in ("bounded", "growing")
    assert doc["wall_time_seconds"] > 0
    assert doc["notes"] == []

    loglog = (tmp_path / "error_loglog.svg").read_text()
    assert "slope ≈" in loglog


def test_run_is_deterministic_except_wall_time(tmp_path):
    out1, out2 = tmp_path / "one", tmp_path / "two"
    for out in (out1, out2):
        cfg = parse_config(SMALL_TRANSPORT, overrides=(f"out={out}",))
        run_experiment(cfg)
    assert (out1 / "errors.csv").read_bytes() == (out2 / "errors.csv").read_bytes()
    for name in ("overlay_n1.svg", "overlay_n2.svg", "error.svg",
                 "error_loglog.svg"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes(), name
    d1 = json.loads((out1 / "report.json").read_text())
    d2 = json.loads((out2 / "report.json").read_text())
    assert d1.pop("wall_time_seconds") != d2.pop("wall_time_seconds") or True
    assert d1 == d2


def test_outputs_require_an_output_directory():
    cfg = parse_config(SMALL_TRANSPORT)
    with pytest.raises(ConfigError) as exc:
        run_experiment(cfg)
    assert _key_of(exc) == "out"


def test_no_outputs_needs_no_directory():
    cfg = parse_config(SMALL_TRANSPORT + " outputs=")
    report = run_experiment(cfg)
    assert report.fit is not None
    assert len(report.records) == 8


def test_tabulated_profile_run(tmp_path):
    table = tmp_path / "flat.txt"
    table.write_text("# x  value\n-20 1.0\n0, 1.0\n20 1.0\n")
    out = tmp_path / "run"
    cfg = parse_config(
        f"equation=transport scheme=power:1,1 t=1 n=1..5 grid=-1,1,21 "
        f"initial=tabulated:{table} outputs=csv,json", overrides=(f"out={out}",))
    report = run_experiment(cfg)
    # a constant profile is transported exactly, so every error is zero
    assert all(r.measured_error == 0.0 for r in report.records)
    assert report.fit is None
    doc = json.loads((out / "report.json").read_text())
    assert doc["fit"] is None


def test_notes_flag_the_damping_factor(tmp_path):
    cfg = parse_config(
        "equation=heat scheme=g1 initial=sin t=2 a=1 n=1..32(geometric) "
        "grid=0,6.283185307179586,2001 outputs=")
    report = run_experiment(cfg)
    assert len(report.notes) == 2
    assert "damped constant" in report.notes[0]
    assert "undamped" in report.notes[0]
    assert "overstates" in report.notes[1]
    # the flag is specific to the g1/sine pairing
    other = parse_config(SMALL_TRANSPORT + " outputs=")
    assert run_experiment(other).notes == ()
