import json
import os
from pathlib import Path

import pytest

import chainscreen as cs

DATA = Path(os.environ.get("CHAINSCREEN_DATA_DIR", Path(__file__).resolve().parents[2] / "examples_data"))


def test_e1_solution():
    sc = cs.load_scenario(str(DATA / "e1.json"))
    assert len(sc) == 3
    sol = cs.solve(sc)
    assert sol["promise"] == pytest.approx([0.8, 0.8, 2.0], abs=1e-12)
    assert sol["value"] == pytest.approx(34 / 15, abs=1e-9)
    assert sol["K"] == 1 and sol["K_used"] == 1
    assert [s["label"] for s in sol["segments"]] == ["CONSTANT", "FOLLOW_CURVE"]
    assert cs.brute_force_value(sc) == sol["value"]
    assert cs.solve(sc, structural=True)["value"] == pytest.approx(sol["value"], abs=1e-9)


def test_profile_and_round_trip():
    sc = cs.load_scenario(str(DATA / "e1.json"))
    prof = cs.complete_info(sc)
    assert prof["u_c"] == [1.0, 0.0, 2.0]
    assert prof["upper_closure"] == [1.0, 1.0, 2.0]
    assert prof["lower_closure_textual"] == [0.0, 0.0, 2.0]
    text = sc.to_json()
    assert cs.parse_scenario(text).to_json() == text
    assert json.loads(text)["surface"]["kind"] == "quadratic"


def test_errors_are_raised():
    with pytest.raises(cs.ChainscreenError, match="line 1"):
        cs.parse_scenario("{not json")
    sc = cs.load_scenario(str(DATA / "e1.json"))
    with pytest.raises(cs.ChainscreenError):
        sc.with_weights([0.5, 0.5])


def test_fosd_and_applications():
    sc = cs.load_scenario(str(DATA / "e1.json"))
    base, alt, ok = cs.fosd_compare(sc, [0.2, 0.3, 0.5])
    assert ok and alt >= base
    cf = cs.fda_closed_form()
    assert cf["alpha_star"] == pytest.approx(0.16)
    assert cf["alpha_hat"] == pytest.approx(0.64)
    assert cf["p_star"] == pytest.approx(0.352)
    ceo, ref = cs.ceo_scenario()
    assert len(ceo) == 50 and len(ref) == 50
    assert max(abs(a - b) for a, b in zip(cs.complete_info(ceo)["u_c"], ref)) < 1e-3


def test_cli_entry_point(tmp_path):
    code, out, _ = cs.run_cli(["solve", str(DATA / "e1.json"), "--csv", str(tmp_path / "plot.csv")])
    assert code == 0
    assert json.loads(out)["value"] == pytest.approx(2.2666667, abs=1e-7)
    rows = (tmp_path / "plot.csv").read_text().splitlines()
    assert rows[0] == "type,u_c,upper_closure,lower_closure,U"
    assert len(rows) == 4
    bad = tmp_path / "bad.json"
    bad.write_text("{")
    code, _, err = cs.run_cli(["solve", str(bad)])
    assert code == 1 and "line" in err
