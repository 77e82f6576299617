import json

import numpy as np
import pytest

from clusterspec.appio import read_edge_list, read_table
from clusterspec.cli import build_parser, main


def test_generate_spectrum_fit(tmp_path, capsys):
    out = tmp_path / "g"
    assert main(["generate", "--n", "3e3", "--tau", "2.4", "--seeds", "5", "--realizations", "2",
                 "--out", str(out)]) == 0
    files = sorted(out.glob("*.edges"))
    assert [f.name for f in files] == ["hidden_n3000_tau2.4_seed5.edges", "hidden_n3000_tau2.4_seed6.edges"]
    assert read_edge_list(files[0]).n == 3000
    assert main(["generate", "--model", "ecm", "--n", "2000", "--seeds", "1", "--out", str(out)]) == 0
    assert (out / "ecm_n2000_tau2.5_seed1.edges").exists()

    assert main(["spectrum", str(files[0]), "--bin-factor", "1.5", "--out", str(tmp_path / "s")]) == 0
    spec = read_table(tmp_path / "s" / f"{files[0].stem}_spectrum.csv")
    assert list(spec) == ["k", "n_k", "cbar"]
    assert (tmp_path / "s" / f"{files[0].stem}_spectrum_binned.csv").exists()
    ccdf = read_table(tmp_path / "s" / f"{files[0].stem}_ccdf.csv")
    assert list(ccdf) == ["x", "ccdf"] and ccdf["ccdf"][-1] == 0.0

    assert main(["fit", str(files[0]), "--replicates", "50", "--out", str(tmp_path / "f")]) == 0
    rec = json.loads((tmp_path / "f" / f"{files[0].stem}_fit.json").read_text())
    assert rec["exponent_hat"] > 1 and 0 <= rec["gof_pvalue"] <= 1 and "alpha" in rec


def test_analytic_slopes_mix(tmp_path):
    assert main(["analytic", "--n", "1e4", "--points", "40", "--out", str(tmp_path)]) == 0
    curve = read_table(tmp_path / "curve.csv")
    assert list(curve) == ["h", "c", "regime", "c_asymptotic"] and len(curve["h"]) == 40
    assert set(curve["regime"].tolist()) == {"I", "II", "III"}
    sig = read_table(tmp_path / "sigma.csv")
    assert sig["sigma_at_hc"][-1] == pytest.approx(0.0, abs=1e-12)
    assert json.loads((tmp_path / "regimes.json").read_text())["h_c"] == pytest.approx(959.04, abs=0.01)

    assert main(["slopes", "--n", "1e6", "1e16", "--out", str(tmp_path)]) == 0
    recs = json.loads((tmp_path / "slopes.json").read_text())
    assert [r["N"] for r in recs] == [10**6, 10**16]
    assert recs[0]["slope_at_hc"] == pytest.approx(recs[0]["numeric_at_hc"], abs=1e-4)

    assert main(["mix", "--n", "1e4", "--points", "20", "--out", str(tmp_path)]) == 0
    mix = read_table(tmp_path / "mix.csv")
    assert np.all(mix["P_k"] > 0) and np.all(np.diff(mix["cbar"]) <= 1e-12)


def test_compare(tmp_path):
    assert main(["compare", "--n", "3000", "--seeds", "0:3", "--min-count", "20", "--out", str(tmp_path)]) == 0
    summary = json.loads((tmp_path / "compare.json").read_text())
    assert summary["realizations"] == 3 and summary["bins"] >= 1
    assert list(read_table(tmp_path / "compare.csv"))[0] == "k"


def test_errors_exit_nonzero(tmp_path, capsys):
    assert main(["spectrum", str(tmp_path / "missing.edges"), "--out", str(tmp_path)]) == 1
    assert "error" in capsys.readouterr().err
    assert main(["analytic", "--tau", "3.5", "--out", str(tmp_path)]) == 1
    bad = tmp_path / "bad.edges"
    bad.write_text("1 2\n3\n")
    assert main(["fit", str(bad), "--out", str(tmp_path)]) == 1
    assert "line 2" in capsys.readouterr().err
    with pytest.raises(SystemExit):
        build_parser().parse_args(["generate", "--kernel", "gauss"])
    with pytest.raises(SystemExit):
        build_parser().parse_args(["generate", "--n", "1.5"])
