"""Built-in invariant suite: determinism, coverage, tolerance control."""

import re

import pytest

from spinwire.errors import InvalidDimensionError
from spinwire.verify import CheckResult, run_verification

EXPECTED_CHECKS = {
    "spectral_reconstruction",
    "propagator_vs_expm",
    "unitarity_group_symmetry",
    "homogeneous_closed_form",
    "engineered_spectrum_linear",
    "engineered_mirror_profile",
    "polarization_vs_oracle",
    "slater_vs_oracle",
    "mixed_overlap_vs_oracle",
    "logical_channels_vs_oracle",
    "autocorrelation_vs_oracle",
    "dq_parity_rule",
    "engineered_fidelity_mirror",
    "homogeneous_logical_closed_forms",
    "mqc_vs_analytic",
    "mqc_support_and_conservation",
    "purity_preservation",
    "commutation_and_gauge",
    "implant_timing",
    "serde_and_disorder",
}


def test_suite_passes_and_covers_everything():
    report = run_verification(max_n=6, seed=1)
    assert report.passed
    names = [c.name for c in report.checks]
    assert len(names) == len(set(names))
    assert set(names) == EXPECTED_CHECKS
    for check in report.checks:
        assert check.deviation <= check.tolerance


def test_max_n_bounds():
    with pytest.raises(InvalidDimensionError):
        run_verification(max_n=3)
    with pytest.raises(InvalidDimensionError):
        run_verification(max_n=13)


def test_report_is_deterministic():
    a = run_verification(max_n=5, seed=42).to_json()
    b = run_verification(max_n=5, seed=42).to_json()
    assert a == b
    c = run_verification(max_n=5, seed=43).to_json()
    assert c != a  # different draws, different recorded inputs


def test_blanket_tolerance_override():
    report = run_verification(max_n=5, seed=0, tolerance=0.0)
    assert not report.passed
    assert all(c.tolerance == 0.0 for c in report.checks)
    loose = run_verification(max_n=5, seed=0, tolerance=10.0)
    assert loose.passed


def test_check_line_format():
    ok = CheckResult("alpha", 1.25e-12, 1e-10, True, {})
    assert ok.line() == "ok   alpha: deviation 1.250e-12 (tol 1.0e-10)"
    bad = CheckResult("beta", 2.0, 1e-10, False, {})
    assert bad.line().startswith("FAIL beta:")
    for check in run_verification(max_n=5, seed=0).checks:
        assert re.fullmatch(
            r"(ok  |FAIL) [a-z_]+: deviation \d\.\d{3}e[+-]\d{2,3} \(tol \d\.\de[+-]\d{2,3}\)",
            check.line(),
        )
