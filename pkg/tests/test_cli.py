import csv
import json

import pytest

from cvteleport.cli import (
    SweepSpec,
    figure_data,
    main,
    report_crossover,
    run_sweep,
)
from cvteleport import QuadratureSpec, TruncationPolicy, ValidationError


def _read_rows(path):
    with open(path) as fh:
        body = [line for line in fh if not line.startswith("#")]
    return list(csv.DictReader(body))


def _spec(tmp_path, **kw):
    base = dict(
        chi_range=(0.1, 0.5, 0.1),
        gains=(1.0,),
        thresholds=(2,),
        alpha=2.0 + 0.0j,
        truncation=TruncationPolicy(),
        quadrature=QuadratureSpec(),
        outputs=("fbar",),
        format="csv",
        out_path=str(tmp_path / "out.csv"),
    )
    base.update(kw)
    return SweepSpec(**base)


def test_sweep_unit_gain_fbar_is_closed_form(tmp_path):
    spec = _spec(tmp_path)
    rows = run_sweep(spec)
    parsed = _read_rows(spec.out_path)
    assert len(parsed) == len(rows) == 5
    for rec in parsed:
        chi = float(rec["chi"])
        assert float(rec["value"]) == pytest.approx((1 + chi) / 2, abs=1e-7)
        assert float(rec["extra"]) == pytest.approx(1.0, abs=1e-12)  # success prob
        assert rec["metric"] == "fbar"


def test_sweep_empty_grid_rejected(tmp_path):
    with pytest.raises(ValidationError):
        _spec(tmp_path, chi_range=(0.5, 0.1, 0.1))
    with pytest.raises(ValidationError):
        _spec(tmp_path, chi_range=(0.1, 0.5, -0.1))
    with pytest.raises(ValidationError):
        _spec(tmp_path, outputs=())
    with pytest.raises(ValidationError):
        _spec(tmp_path, outputs=("nope",))


def test_sweep_rows_sorted_and_deterministic(tmp_path):
    spec = _spec(
        tmp_path,
        gains=(2.0, 1.0),
        thresholds=(4, 2),
        outputs=("epr", "entropy"),
    )
    run_sweep(spec, jobs=1)
    first = open(spec.out_path, "rb").read()
    run_sweep(spec, jobs=8)
    second = open(spec.out_path, "rb").read()
    assert first == second
    parsed = _read_rows(spec.out_path)
    keys = [(r["metric"], int(r["p"]), float(r["g"]), float(r["chi"])) for r in parsed]
    assert keys == sorted(keys)


def test_sweep_json_mirrors_rows(tmp_path):
    spec = _spec(tmp_path, format="json", out_path=str(tmp_path / "out.json"))
    rows = run_sweep(spec)
    payload = json.loads(open(spec.out_path).read())
    assert len(payload) == len(rows)
    assert payload[0]["metric"] == "fbar"
    assert payload[0]["chi"] == pytest.approx(0.1)


def test_sweep_pdist_rows_cover_fock_levels(tmp_path):
    spec = _spec(tmp_path, chi_range=(0.3, 0.3, 0.1), outputs=("pdist",))
    rows = run_sweep(spec)
    total = sum(r.value for r in rows)
    assert total == pytest.approx(1.0, abs=1e-9)
    assert [r.extra for r in rows] == list(range(len(rows)))


def test_sweep_grid2d_output_matches_series(tmp_path):
    spec = _spec(
        tmp_path,
        chi_range=(0.4, 0.4, 0.1),
        gains=(2.0,),
        outputs=("fbar", "fbar_grid2d"),
        alpha=1.0 + 1.0j,
    )
    rows = {r.metric: r.value for r in run_sweep(spec)}
    assert rows["fbar_grid2d"] == pytest.approx(rows["fbar"], abs=1e-5)


def test_figure_fig1_standard_series(tmp_path):
    path = figure_data("fig1", str(tmp_path / "fig1.csv"))
    with open(path) as fh:
        header = fh.readline()
    assert header.startswith("# figure:fig1")
    rows = [r for r in _read_rows(path) if float(r["g"]) == 1.0]
    for rec in rows:
        n = int(rec["extra"])
        expected = (1 - 0.36) * 0.36**n
        assert float(rec["value"]) == pytest.approx(expected, abs=1e-12)


def test_figure_fig3_standard_series_is_twb_entropy(tmp_path):
    from cvteleport import TwbParams, twb_entropy_closed

    path = figure_data("fig3", str(tmp_path / "fig3.csv"), step=0.05)
    rows = [r for r in _read_rows(path) if float(r["g"]) == 1.0]
    assert rows
    for rec in rows:
        expected = twb_entropy_closed(TwbParams(float(rec["chi"])))
        assert float(rec["value"]) == pytest.approx(expected, abs=1e-9)


def test_figure_fig6_unit_gain_intercepts(tmp_path):
    path = figure_data("fig6", str(tmp_path / "fig6.csv"), jobs=4)
    rows = [r for r in _read_rows(path) if float(r["g"]) == 1.0]
    assert rows
    for rec in rows:
        chi = float(rec["chi"])
        assert float(rec["value"]) == pytest.approx((1 + chi) / 2, abs=1e-7)


def test_figure_fig7_reports_secure_window(tmp_path):
    path = figure_data("fig7", str(tmp_path / "fig7.csv"))
    with open(path) as fh:
        lines = fh.readlines()
    interval_line = [ln for ln in lines if "secure_only_interval" in ln]
    assert interval_line
    lo, hi = map(float, interval_line[0].split(":")[1].split(","))
    assert lo < hi
    assert abs(hi - 1.0 / 3.0) <= 0.01
    classes = {r["extra"] for r in _read_rows(path)}
    assert classes <= {"classical", "nonlocal", "secure"}


def test_figure_rejects_unknown_id(tmp_path):
    with pytest.raises(ValidationError):
        figure_data("fig9", str(tmp_path / "x.csv"))


def test_figure_determinism_across_jobs(tmp_path):
    a = figure_data("fig2", str(tmp_path / "a.csv"), step=0.05, jobs=1)
    b = figure_data("fig2", str(tmp_path / "b.csv"), step=0.05, jobs=8)
    assert open(a, "rb").read() == open(b, "rb").read()


def test_report_crossover_unit_gain():
    report = report_crossover(1.0, 4, step=0.05)
    assert report["chi_c1"] is None
    assert report["chi_c2"] is None
    assert report["secure_only"] is None


def test_report_crossover_active_amplifier():
    report = report_crossover(2.0, 4, step=0.01)
    assert report["chi_c1"] is not None
    assert report["chi_c2"] is not None
    assert report["secure_only"] is not None
    assert report["regions"]["fidelity_improved"][0] == 0.01


def test_report_crossover_validates_step():
    with pytest.raises(ValidationError):
        report_crossover(2.0, 4, step=0.0)


# ---------------------------------------------------------------------------
# process-level behavior


def test_main_validation_exit_code(capsys):
    assert main(["twb", "--chi", "1.5"]) == 2
    assert "error" in capsys.readouterr().err


def test_main_numerics_exit_code(capsys):
    # threshold cannot fit below the dimension cap
    assert main(["amplify", "--chi", "0.5", "--gain", "2", "--threshold", "5000"]) == 3


def test_main_io_exit_code(tmp_path, capsys):
    missing = tmp_path / "no" / "such" / "dir" / "out.csv"
    rc = main(
        ["sweep", "--chi-start", "0.2", "--chi-stop", "0.2", "--chi-step", "0.1",
         "--outputs", "entropy", "--out", str(missing)]
    )
    assert rc == 4


def test_main_twb_json_payload(capsys):
    assert main(["twb", "--chi", "0.6"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["dim"] == 28
    assert payload["photon_distribution"][0] == pytest.approx(0.64, abs=1e-9)


def test_main_amplify_payload(capsys):
    assert main(["amplify", "--chi", "0.6", "--gain", "2", "--threshold", "2"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["success_probability"] == pytest.approx(0.2272, abs=1e-10)


def test_main_metrics_debug_flag(capsys):
    assert main(["metrics", "--chi", "0.5", "--debug-ng"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["non_gaussianity"] == pytest.approx(0.0, abs=1e-8)
    assert payload["non_gaussianity_additive"] > 0.1


def test_main_metrics_baseline_resources(capsys):
    assert main(["metrics", "--chi", "0.5", "--resource", "subtracted"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["label"].startswith("photsub")


def test_main_teleport_methods_agree(capsys):
    fbars = {}
    for method in ("series", "radial", "grid2d", "mc"):
        assert main(
            ["teleport", "--chi", "0.5", "--gain", "2", "--threshold", "2",
             "--method", method, "--seed", "5"]
        ) == 0
        payload = json.loads(capsys.readouterr().out)
        fbars[method] = payload["average_fidelity"]
        assert payload["classification"] in ("classical", "nonlocal", "secure")
    assert fbars["series"] == pytest.approx(fbars["radial"], abs=1e-8)
    assert fbars["series"] == pytest.approx(fbars["grid2d"], abs=1e-5)
    assert fbars["series"] == pytest.approx(fbars["mc"], abs=0.01)


def test_main_sweep_config_file_with_flag_override(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "from_config.csv"
    cfg.write_text(
        json.dumps(
            {
                "chi_start": 0.2,
                "chi_stop": 0.4,
                "chi_step": 0.1,
                "outputs": ["psucc"],
                "gains": [2.0],
                "thresholds": [2],
                "out": str(out),
            }
        )
    )
    assert main(["sweep", "--config", str(cfg), "--gains", "3"]) == 0
    rows = _read_rows(out)
    assert {float(r["g"]) for r in rows} == {3.0}
    assert {r["metric"] for r in rows} == {"psucc"}


def test_main_sweep_rejects_unknown_config_keys(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"bogus": 1}))
    assert main(["sweep", "--config", str(cfg)]) == 2
