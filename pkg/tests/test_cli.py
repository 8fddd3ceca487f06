import json

import numpy as np
import pytest

from claimsplice.cli import EXIT_CONVERGENCE, EXIT_INPUT, EXIT_OK, EXIT_PARAMS, main
from claimsplice.composite import CompositeModel, CompositeParams
from claimsplice.copula import BivariateModel, GumbelCopula
from claimsplice.families import InverseWeibullParams, WeibullParams
from tests.test_composite import WIW

WIW2 = CompositeParams(WeibullParams(1.3, 1500.0), InverseWeibullParams(1.5, 6000.0), 4000.0)
TRUTH = BivariateModel(CompositeModel(WIW), CompositeModel(WIW2), GumbelCopula(1.5))

PARAMS_DOC = {
    "schema": "claimsplice-params-v1",
    "marginal1": {"family": "wiw", "mu": 1.5, "sigma": 2000.0, "tau": None,
                  "alpha": 1.2, "gamma": 8000.0, "theta": 5000.0},
    "marginal2": {"family": "wiw", "mu": 1.3, "sigma": 1500.0, "tau": None,
                  "alpha": 1.5, "gamma": 6000.0, "theta": 4000.0},
    "phi": 1.5,
}


@pytest.fixture(scope="module")
def data_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("data") / "claims.csv"
    y1, y2 = TRUTH.sample_pairs(3000, 2024)
    lines = ["tcost_bi,tcost_pd"] + [f"{float(a)!r},{float(b)!r}" for a, b in zip(y1, y2)]
    path.write_text("\n".join(lines), encoding="utf-8")
    return path


@pytest.fixture(scope="module")
def params_json(tmp_path_factory):
    path = tmp_path_factory.mktemp("params") / "params.json"
    path.write_text(json.dumps(PARAMS_DOC), encoding="utf-8")
    return path


def run(args):
    return main([str(a) for a in args])


def test_fit_single_family(data_csv, tmp_path):
    out = tmp_path / "report.json"
    code = run(["fit", "--input", data_csv, "--cols", "tcost_bi,tcost_pd",
                "--family", "wiw", "--seed", "1", "--out", out, "--restarts", "1"])
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["schema"] == "claimsplice-report-v1"
    assert doc["seed"] == 1
    m = doc["models"][0]
    assert m["model"] == "wiw"
    assert m["marginal1"]["tau"] is None  # schema-stable: absent params are null
    assert m["df"] == 11 and m["df_fixed_thresholds"] == 9


def test_fit_all_ranks_generating_family_first(data_csv, tmp_path):
    out = tmp_path / "all.json"
    code = run(["fit", "--input", data_csv, "--cols", "tcost_bi,tcost_pd",
                "--family", "all", "--seed", "1", "--out", out])
    assert code == EXIT_OK
    doc = json.loads(out.read_text())
    assert len(doc["models"]) == 3
    aics = [m["aic"] for m in doc["models"]]
    assert aics == sorted(aics)


def test_fit_deterministic_byte_identical(data_csv, tmp_path):
    outs = []
    for name in ("a.json", "b.json"):
        out = tmp_path / name
        assert run(["fit", "--input", data_csv, "--cols", "tcost_bi,tcost_pd",
                    "--family", "pariw", "--seed", "9", "--out", out, "--restarts", "1"]) == EXIT_OK
        outs.append(out.read_bytes())
    assert outs[0] == outs[1]


def test_fit_n_too_small(tmp_path):
    p = tmp_path / "tiny.csv"
    p.write_text("a,b\n1,2\n3,4\n", encoding="utf-8")
    assert run(["fit", "--input", p, "--cols", "a,b", "--family", "pariw", "--seed", "1"]) == EXIT_CONVERGENCE


def test_fit_missing_input():
    assert run(["fit", "--input", "/does/not/exist.csv", "--seed", "1"]) == EXIT_INPUT


def test_fit_text_format(data_csv, tmp_path):
    out = tmp_path / "report.txt"
    assert run(["fit", "--input", data_csv, "--cols", "tcost_bi,tcost_pd", "--family", "wiw",
                "--seed", "1", "--out", out, "--format", "text", "--restarts", "1"]) == EXIT_OK
    text = out.read_text()
    assert "AIC" in text and "wiw" in text


def test_simulate_writes_metadata_and_is_deterministic(params_json, tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for out in (a, b):
        assert run(["simulate", "--params", params_json, "--n", "500", "--seed", "3", "--out", out]) == EXIT_OK
    assert a.read_bytes() == b.read_bytes()
    head = a.read_text().splitlines()
    assert head[0].startswith("# schema=") and "seed=3" in head[0]
    assert any("phi=1.5" in line for line in head[:5])
    assert len(head) - 5 == 500


def test_simulate_rejects_inadmissible_phi(tmp_path):
    doc = dict(PARAMS_DOC, phi=0.3)
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(doc), encoding="utf-8")
    assert run(["simulate", "--params", p, "--n", "10", "--seed", "1"]) == EXIT_PARAMS


def test_simulate_rejects_zero_n(params_json):
    assert run(["simulate", "--params", params_json, "--n", "0", "--seed", "1"]) == EXIT_INPUT


def test_eval_consistent_with_model(params_json, data_csv, tmp_path):
    out = tmp_path / "eval.json"
    assert run(["eval", "--params", params_json, "--input", data_csv,
                "--cols", "tcost_bi,tcost_pd", "--seed", "1", "--out", out]) == EXIT_OK
    doc = json.loads(out.read_text())
    assert doc["model_tau"] == pytest.approx(1 - 1 / 1.5)
    assert doc["df"] == 11
    # density overlay integrates to ~1 by trapezoid
    for side in ("claim1", "claim2"):
        grid = np.array(doc["overlay"][side]["grid"])
        dens = np.array(doc["overlay"][side]["density"])
        mass = np.trapezoid(dens, grid)
        assert 0.9 < mass <= 1.0 + 1e-6
    # exact generating parameters on their own sample: KS should be small
    assert doc["ks"]["claim1"] < 0.05 and doc["ks"]["claim2"] < 0.05


def test_simulate_fit_round_trip(params_json, tmp_path):
    sim = tmp_path / "sim.csv"
    assert run(["simulate", "--params", params_json, "--n", "5000", "--seed", "8", "--out", sim]) == EXIT_OK
    out = tmp_path / "fit.json"
    assert run(["fit", "--input", sim, "--cols", "claim1,claim2", "--family", "wiw",
                "--seed", "8", "--out", out]) == EXIT_OK
    doc = json.loads(out.read_text())
    m = doc["models"][0]
    assert m["phi"] == pytest.approx(1.5, abs=0.15)
    assert m["marginal1"]["theta"] == pytest.approx(5000.0, rel=0.15)
