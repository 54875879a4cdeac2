import math

import numpy as np
import pytest

from retrodict import classical, experiments, io, measures, samplers
from retrodict import rng as rng_mod
from retrodict.experiments import ExperimentConfig


@pytest.fixture(scope="module")
def trit_rows():
    cfg = ExperimentConfig(experiment="trit", seed=5, samples=300, count=15, injected=6)
    return cfg, experiments.run_trit_figure(cfg)


def test_config_validation():
    with pytest.raises(ValueError):
        ExperimentConfig(samples=0)
    with pytest.raises(ValueError):
        ExperimentConfig(fmt="xml")


# ---------------------------------------------------------------------------
# bit figure


def test_bit_figure_rows():
    rows = experiments.run_bit_figure(ExperimentConfig())
    assert len(rows) == 64 * 64
    top = [r for r in rows if r["D"] == 1.0]
    assert top and all(r["Is"] == 0.0 and r["Id"] == 0.0 for r in top)
    bottom = [r for r in rows if r["D"] == 0.0]
    assert all(r["Is_norm"] == pytest.approx(1.0) and r["Id_norm"] == pytest.approx(1.0) for r in bottom)


def test_bit_figure_check_column():
    rows = experiments.run_bit_figure(ExperimentConfig(grid=4, check=True))
    assert all("Is_quadrature" in r for r in rows)
    # the D = 0, F = 1 corner erases onto a vertex, which has no quadrature value
    corner = [r for r in rows if r["D"] == 0.0 and r["F"] == 1.0]
    assert math.isnan(corner[0]["Is_quadrature"])
    finite = [r for r in rows if not math.isnan(r["Is_quadrature"])]
    assert len(finite) == len(rows) - 1


def test_bit_figure_csv_is_byte_identical(tmp_path):
    paths = []
    for k in range(2):
        path = tmp_path / f"bit{k}.csv"
        io.write_rows(experiments.run_bit_figure(ExperimentConfig(grid=16)), str(path))
        paths.append(path)
    first, second = (p.read_bytes() for p in paths)
    assert first == second and b"\r" not in first


# ---------------------------------------------------------------------------
# qubit figure


def test_qubit_figure_small_grid():
    cfg = ExperimentConfig(experiment="qubit", seed=2, grid=3, quantum_samples=10)
    rows, cells = experiments.run_qubit_figure(cfg)
    assert len(rows) == 9 and len(cells) == 9
    width = 1 / 3
    for r in rows:
        assert abs(r["qad"] - r["u"]) < width
        assert r["qad"] == pytest.approx(r["u"], abs=1e-8)
    assert all(c["count"] == 1 for c in cells)


def test_qubit_rows_at_the_extremes():
    cfg = ExperimentConfig(experiment="qubit", seed=3, quantum_samples=40)
    near_unitary = samplers.sample_qubit_gad_grid(samplers.GridCell(1 - 1e-8, 1.0, 0.0, 0.5), rng_mod.stream(3, 0))
    row = experiments.qubit_row(near_unitary, 0, cfg)
    assert row["Is"] < 1e-3
    near_erasure = samplers.sample_qubit_gad_grid(samplers.GridCell(0.0, 1e-8, 0.0, 0.5), rng_mod.stream(3, 1))
    row = experiments.qubit_row(near_erasure, 1, cfg)
    assert abs(row["Is"] - 1.0) <= 3 * row["Is_stderr"] + 1e-3


# ---------------------------------------------------------------------------
# trit figure


def test_trit_rows_have_expected_families(trit_rows):
    cfg, rows = trit_rows
    assert len(rows) == 6 * 15 + 6 * len(experiments.INJECTED_FAMILIES)
    alt = [r for r in rows if r["family"] == "alternating"]
    assert all(abs(r["cfd"] - 0.5) < 1e-9 for r in alt)
    perms = [r for r in rows if r["family"] == "permutation"]
    assert all(r["Is"] == 0.0 for r in perms)
    assert all(r["class"] == "PseudoAbsorbing" for r in rows if "spiral" in r["family"])
    assert all(r["class"] == "Absorbing(2)" for r in rows if r["family"] in ("alternating", "unbiased", "standard"))


def test_trit_rows_are_reproducible_from_seed_and_index(trit_rows):
    cfg, rows = trit_rows
    for r in rows[::17]:
        gen = rng_mod.stream(cfg.seed, r["index"], tag=rng_mod.CHANNEL)
        if r["family"] == "random":
            m = samplers.sample_trit_channel_restricted(r["D"], gen)
        else:
            m = experiments.injected_channel(r["family"], gen)
        again = experiments.trit_row(m, r["index"], r["family"], cfg, r["D"])
        assert again["Is"] == r["Is"] and again["Id"] == r["Id"]


def test_symmetric_uniform_absorbers_maximize_skew(trit_rows):
    # at fixed cad the isosceles member of a family has the largest skew
    _, rows = trit_rows
    for r in rows:
        if r["family"] == "alternating":
            s = (1 - r["cad"]) / 2
            assert r["skew"] <= classical.skew(samplers.alternating_absorber(s, s)) + 1e-9
    for p in (0.1, 0.3, 0.6):
        grid = np.linspace(0.0, 1.0 - p, 101)[:-1]
        skews = [classical.skew(samplers.construct_spiral(p, q)) for q in grid]
        assert grid[int(np.argmax(skews))] == pytest.approx((1 - p) / 2, abs=0.011)


def test_matched_separation_statistics():
    rows = [{"family": "random", "class": "Generic", "cad": c, "Is": 1.0} for c in np.linspace(0, 1, 20)]
    rows += [{"family": "spiral", "class": "PseudoAbsorbing", "cad": c, "Is": 0.5 + 0.01 * k}
             for k, c in enumerate((0.1, 0.5, 0.9))]
    sep = experiments.matched_separation(rows, ("spiral",))
    assert sep["n"] == 3 and sep["difference"] == pytest.approx(0.49)
    assert sep["z"] > 3
    assert experiments.matched_separation(rows, ("unbiased",)) is None


# ---------------------------------------------------------------------------
# suites


def test_elementwise_decrease_exists():
    found = experiments.find_elementwise_decrease(3, 0)
    assert found is not None and found["after"] < found["before"]
    phi, psi = np.array(found["phi"]), np.array(found["psi"])
    before = measures.disagreement(phi, found["g1"], found["g2"])
    assert before == pytest.approx(found["before"])


def test_dpi_suite_small():
    cfg = ExperimentConfig(seed=1, samples=300, count=10)
    report = experiments.verify_suite(cfg, "dpi")
    assert report["pass"], report["properties"]
    assert {"suite", "seed", "budgets", "properties", "violations"} <= set(report)
    names = [p["name"] for p in report["properties"]]
    assert "element-wise disagreement decrease exists" in names


def test_theorems_suite_small():
    cfg = ExperimentConfig(seed=42, samples=300, count=5, quantum_count=2, quantum_samples=10)
    report = experiments.verify_suite(cfg, "theorems")
    assert report["pass"], [p for p in report["properties"] if not p["pass"]]


def test_absorbing_suite():
    report = experiments.verify_suite(ExperimentConfig(seed=0, count=40), "absorbing")
    assert report["pass"], [p for p in report["properties"] if not p["pass"]]


def test_cfd_bounds_helper():
    lo, hi = experiments.cfd_bounds(3, 2)
    assert lo == pytest.approx(0.5) and hi == pytest.approx(math.sqrt(1 / 3))
    assert experiments.cfd_bounds(4, 1)[0] == pytest.approx(1.0)


def test_unknown_suite():
    with pytest.raises(ValueError):
        experiments.verify_suite(ExperimentConfig(), "nope")
