import math

import pytest

import hyperlap.kernel as kernel
from hyperlap.verification import (REPORT_HEADER, VerificationReport, decay_check, flux_report,
                                   flux_unit, kernel_profile, radial_harmonicity, radial_profile,
                                   run_all, singularity_match, singularity_residual, sphere_area)

GRID = tuple(0.5 + 0.25 * i for i in range(19))


def test_report_pass_flag():
    assert VerificationReport("x", 3, 1.0, [1.0], 1e-7, 1e-6).passed
    assert not VerificationReport("x", 3, 1.0, [1.0], 2e-6, 1e-6).passed
    assert VerificationReport("x", 3, 1.0, [1.0], 1e-6, 1e-6).passed
    assert not VerificationReport("x", 3, 1.0, [1.0], math.inf, 1e-6).passed


def test_report_line_format():
    line = VerificationReport("flux", 4, 0.5, (1.0,), 1.25e-9, 1e-6).to_line()
    assert line == "flux,4,0.5,1.250000e-09,1.0e-06,pass"
    assert len(line.split(",")) == len(REPORT_HEADER.split(","))


def test_radial_profile_is_smooth_across_branch_switch():
    # the profile switches evaluator where sech^2 rho = 0.995; no visible seam
    rho0 = math.acosh(1 / math.sqrt(0.995))
    for d in (2, 5, 12):
        left, right = radial_profile(d, rho0 - 1e-9), radial_profile(d, rho0 + 1e-9)
        slope = -math.sinh(rho0) ** (1 - d)
        assert abs((right - left) / 2e-9 - slope) < 1e-5 * abs(slope)


def test_harmonicity_d3():
    rep = radial_harmonicity(3, 1.0, GRID, 1e-4)
    assert rep.passed and rep.max_residual < 1e-6


def test_harmonicity_log_coth():
    # log coth(r/2) = log1p(2 / expm1(r)), written so rounding stays relative
    f = lambda r: math.log1p(2 / math.expm1(r))
    assert radial_harmonicity(2, 1.0, GRID, 1e-4, f=f).max_residual < 1e-6


def test_harmonicity_constant_function():
    assert radial_harmonicity(4, 1.0, GRID, 1e-4, f=lambda r: 3.0).max_residual == 0.0


def test_harmonicity_detects_non_harmonic_profile():
    rep = radial_harmonicity(3, 1.0, GRID, 1e-4, f=lambda r: math.exp(-r))
    assert not rep.passed


@pytest.mark.parametrize("h, grid", [(1e-2, GRID), (1e-6, GRID), (1e-4, (5e-4,))])
def test_harmonicity_preconditions(h, grid):
    with pytest.raises(ValueError):
        radial_harmonicity(3, 1.0, grid, h)


def test_sphere_area():
    assert abs(sphere_area(2) - 2 * math.pi) < 1e-15
    assert abs(sphere_area(3) - 4 * math.pi) < 1e-14


def test_flux_examples():
    assert abs(flux_unit(3, 1.0, 1.0) - 1) < 1e-6
    assert abs(flux_unit(2, 5.0, 0.2) - 1) < 1e-6
    values = [flux_unit(3, 1.0, r) for r in (0.1, 1.0, 5.0)]
    assert max(values) - min(values) < 1e-8


def test_flux_precondition():
    with pytest.raises(ValueError):
        flux_unit(3, 1.0, 1e-7)


def test_flux_detects_wrong_normalization():
    wrong = lambda rho: 1.1 * kernel_profile(5, 1.0)(rho)
    assert abs(flux_unit(5, 1.0, 1.0, wrong) - 1.1) < 1e-6
    assert flux_report(5, 1.0).passed


def test_singularity_examples():
    for d in range(3, 13):
        ratio_dev = singularity_residual(d, 1.0, 1e-3)
        assert ratio_dev < 1e-2
    assert abs(singularity_residual(2, 1.0, 1e-3)) < 1e-3
    for d in range(2, 13):
        rep = singularity_match(d, 2.0)
        assert rep.passed, rep.to_line()


def test_decay_examples():
    rep = decay_check(2, 1.0)
    assert rep.passed and rep.max_residual < 1e-12
    assert decay_check(5, 1.0).max_residual < 1e-40


def test_decay_flags_non_monotone(monkeypatch):
    import hyperlap.verification as v
    monkeypatch.setattr(v, "kernel_profile", lambda d, R: lambda rho: 1.0)
    assert v.decay_check(3, 1.0).max_residual == math.inf


def test_run_all_deterministic():
    first = [r.to_line() for r in run_all(4, 2.0)]
    assert first == [r.to_line() for r in run_all(4, 2.0)]
    assert [line.split(",")[0] for line in first] == ["harmonicity", "flux", "singularity", "decay"]


def test_negated_constant_fails_flux(monkeypatch):
    real = kernel.normalization_constant
    monkeypatch.setattr(kernel, "normalization_constant", lambda d: -real(d))
    rep = flux_report(3, 1.0)
    assert not rep.passed
