"""Shared fixtures plus the acceptance-criteria summary printer.

Tests in test_acceptance.py carry an ``acceptance(number=..., title=...)``
marker; after the run one PASS/FAIL line per criterion is printed so the
acceptance state is readable without digging through the pytest output.
"""

import math

import pytest

from spdckit.quantities import CrystalSpec, WaveTriple, derive_focus_params

_ACCEPTANCE: dict[int, tuple[str, bool]] = {}


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "acceptance(number, title): one shipped acceptance criterion"
    )


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number = marker.kwargs["number"]
    title = marker.kwargs["title"]
    if report.when == "call":
        _ACCEPTANCE[number] = (title, report.passed)
    elif report.failed:
        # Setup/teardown error counts as a failed criterion.
        _ACCEPTANCE[number] = (title, False)


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        title, ok = _ACCEPTANCE[number]
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"criterion {number:2d}: {status}  {title}")


@pytest.fixture(scope="session")
def ref_waves() -> WaveTriple:
    """Type-II 800 nm pair triple with the bundled PPKTP index set."""
    return WaveTriple.from_wavelengths(800e-9, 800e-9, 1.844, 1.757, 1.964)


@pytest.fixture(scope="session")
def ref_crystal(ref_waves) -> CrystalSpec:
    """10 mm crystal poled for kappa = -3 at the reference triple."""
    length = 1e-2
    poling = 2.0 * math.pi / (ref_waves.k_minus0 + 3.0 / length)
    return CrystalSpec(length=length, d_eff=2.4e-12, poling_period=poling)


@pytest.fixture(scope="session")
def ref_fp(ref_waves, ref_crystal):
    """zeta_R = 0.18 focus of the reference configuration."""
    return derive_focus_params(ref_waves, ref_crystal, 0.18 * ref_crystal.length)
