import math
import os
import subprocess
import sys
import tempfile

import pytest

import momentinfo as mi


def test_gaussian_moments():
    assert mi.gaussian_moment(0) == 1.0
    assert mi.gaussian_moment(1) == 0.0
    assert mi.gaussian_moment(4) == 3.0
    assert mi.gaussian_moment(6) == 15.0


def test_sample_moments_and_standardize():
    mus = mi.sample_moments([1.0, 2.0, 3.0], 2)
    assert mus[0] == pytest.approx(2.0)
    assert mus[1] == pytest.approx(14.0 / 3.0)

    std, shift, scale = mi.standardize([0.0, 2.0])
    assert std == pytest.approx([-1.0, 1.0])
    assert shift == pytest.approx(1.0)
    assert scale == pytest.approx(1.0)


def test_hankel_det_superfactorial():
    moments = [mi.gaussian_moment(k) for k in range(1, 9)]
    assert mi.hankel_det(moments, 4) == pytest.approx(1 * 2 * 6 * 24, rel=1e-10)


def test_rademacher_rational_matches_reference():
    moments = mi.exact_moments("rademacher", 10)
    rat = mi.channel_rational(moments, 5)
    ref_num = [45.0, 360.0, 675.0, 300.0]
    ref_den = [45.0, 405.0, 1035.0, 1005.0, 450.0, 96.0, 8.0]

    def poly_mul(a, b):
        out = [0.0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] += x * y
        return out

    lhs = poly_mul(rat["num"], ref_den)
    rhs = poly_mul(rat["den"], ref_num)
    scale = max(map(abs, lhs + rhs))
    width = max(len(lhs), len(rhs))
    lhs += [0.0] * (width - len(lhs))
    rhs += [0.0] * (width - len(rhs))
    assert all(abs(a - b) <= 1e-8 * scale for a, b in zip(lhs, rhs))


def test_channel_pmmse_reference_point():
    moments = mi.exact_moments("rademacher", 10)
    assert mi.channel_pmmse(moments, 5, 1.0) == pytest.approx(1380.0 / 3044.0, rel=1e-12)


def test_entropy_gaussian_fixed_point():
    moments = mi.exact_moments("gaussian", 16)
    expected = 0.5 * math.log(2.0 * math.pi * math.e)
    for n in (1, 4, 8):
        est = mi.entropy_from_moments(moments, n)
        assert est["value"] == pytest.approx(expected, abs=1e-8)


def test_entropy_from_samples():
    rows = mi.sample("gaussian", 3000, seed=7)
    est = mi.entropy([r[0] for r in rows], n=10)
    assert est["value"] == pytest.approx(0.5 * math.log(2.0 * math.pi * math.e), abs=0.06)


def test_mutual_information_independence():
    rows = mi.sample("bernoulli_uniform_pair", 2000, seed=3)
    labels = [str(r[0]) for r in rows]
    ys = [r[1] for r in rows]
    est = mi.mutual_information(labels, ys, n=5)
    assert abs(est["value"]) < 0.02
    assert est["num_classes"] == 2


def test_mutual_information_scale_invariance():
    rows = mi.sample("zero_inflated_poisson_pair", 800, seed=11)
    labels = [str(r[0]) for r in rows]
    ys = [r[1] for r in rows]
    a = mi.mutual_information(labels, ys, n=5)
    b = mi.mutual_information(labels, [1e4 * y for y in ys], n=5)
    assert abs(a["value"] - b["value"]) <= 1e-9


def test_partition_counts():
    assert [mi.c_r(r) for r in range(2, 8)] == [1, 1, 4, 11, 56, 267]
    assert mi.enumerate_partition_count(7) == 4


def test_cond_exp_tanh():
    f, g = mi.cond_exp([-1.0, 1.0], [0.5, 0.5], 1.0, k_max=2)
    assert f == pytest.approx(math.tanh(1.0), rel=1e-12)
    assert mi.cond_exp_derivative([-1.0, 1.0], [0.5, 0.5], 1.0, 2) == pytest.approx(
        1.0 - math.tanh(1.0) ** 2, rel=1e-10
    )


def test_errors_are_typed():
    with pytest.raises(mi.DegenerateSupportError):
        mi.entropy([1.0, 2.0, 1.0, 2.0], n=2)
    with pytest.raises(ValueError):
        mi.sample_moments([1.0], 3)


def test_experiment_csv_roundtrip():
    csv_text = mi.run_experiment("gaussian", "h_hat", n=4, sizes=[100], trials=2, seed=5)
    lines = csv_text.strip().split("\n")
    assert lines[0].startswith("kind,estimator,sample_size")
    assert sum(1 for ln in lines if ln.startswith("data,")) == 2
    assert sum(1 for ln in lines if ln.startswith("summary,")) == 1
    # determinism
    assert csv_text == mi.run_experiment("gaussian", "h_hat", n=4, sizes=[100], trials=2, seed=5)


CLI = os.environ.get("MOMENTINFO_CLI")


@pytest.mark.skipif(CLI is None or not os.path.exists(CLI or ""), reason="CLI path not provided")
class TestCli:
    def test_pmmse_rational(self):
        out = subprocess.run(
            [CLI, "pmmse-rational", "--n", "5", "--moments", "rademacher"],
            capture_output=True, text=True, check=True,
        )
        assert "den:" in out.stdout
        assert "d_n = 15" in out.stdout

    def test_entropy_roundtrip(self):
        rows = mi.sample("gaussian", 2000, seed=1)
        with tempfile.NamedTemporaryFile("w", suffix=".csv", delete=False) as f:
            for r in rows:
                f.write(f"{r[0]}\n")
            path = f.name
        try:
            out = subprocess.run(
                [CLI, "entropy", "--n", "8", "--input", path],
                capture_output=True, text=True, check=True,
            )
            value = float(out.stdout.split("=")[1].split("nats")[0])
            assert value == pytest.approx(0.5 * math.log(2.0 * math.pi * math.e), abs=0.08)
        finally:
            os.unlink(path)

    def test_config_error_exit_code(self):
        out = subprocess.run(
            [CLI, "entropy", "--n", "8", "--input", "no_such_file.csv"],
            capture_output=True, text=True,
        )
        assert out.returncode == 2


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
