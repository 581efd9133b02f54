import math

import pytest

import heavysum as hs


def test_closed_form_tails():
    assert hs.tail("pareto alpha=2 xm=1", 10) == pytest.approx(0.01, rel=1e-14)
    assert hs.tail("weibull beta=0.5", 4) == pytest.approx(math.exp(-2), rel=1e-14)
    assert hs.mean("pareto alpha=2 xm=1") == pytest.approx(2.0)


def test_validation_error_names_field():
    with pytest.raises(hs.ValidationError, match="alpha"):
        hs.tail("pareto alpha=-1", 2.0)


def test_conv_tail_small_lattice():
    spec = "lattice step=1 offset=1 mass=[0.5, 0, 0.5]"
    assert hs.conv_tail(spec, 2, [3.0])[0] == pytest.approx(0.75)
    assert hs.stopped_tail(spec, "degenerate n=2", [3.0])[0]["estimate"] == pytest.approx(0.75)


def test_simulation_is_seeded():
    a, _ = hs.simulate("pareto alpha=2", "independent tau=(geometric p=0.5)", [5.0], samples=20000, seed=3)
    b, _ = hs.simulate("pareto alpha=2", "independent tau=(geometric p=0.5)", [5.0], samples=20000, seed=3)
    assert a == b


def test_catalog_and_run():
    names = [n for n, _ in hs.list_scenarios()]
    assert len(names) >= 12
    out = hs.run("co1_supercritical_gw")
    assert out["name"] == "co1_supercritical_gw"
    assert "table.csv" in out["files"]


def test_classify_and_sequence():
    rep = hs.classify("pareto alpha=2.5")
    assert rep["long_tailed"]["verdict"].startswith("converging_to")
    seq = hs.pathological_sequence(5)
    assert seq["R"][4] == pytest.approx(47.307067, rel=1e-7)
