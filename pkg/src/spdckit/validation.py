"""Independent cross-checks of the main computational routes.

Every oracle here recomputes a package quantity by a genuinely different
method: closed forms, direct Fresnel beam propagation on a radial grid,
a thin-crystal plane-wave rate formula, and the Boyd-Kleinman focusing
constant. None of them use the package quadrature engine; integration in
this module is plain trapezoid sums or scipy.quad, so a defect in the main
integrator cannot cancel out of the comparison.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import classical, filters, modebasis, overlap, quantum
from .optimizer import optimize_focus
from .quantities import (
    C_LIGHT,
    EPS0,
    CrystalSpec,
    FocusParams,
    WaveTriple,
    derive_focus_params,
)

__all__ = [
    "OracleReport",
    "closed_form_upsilon_kappa0",
    "oracle_upsilon_closed_form",
    "oracle_reduction_vs_direct",
    "oracle_fresnel_self_test",
    "oracle_dfg_fresnel",
    "oracle_dfg_thin_crystal",
    "ling_comparator",
    "boyd_kleinman_report",
    "run_all_oracles",
]


@dataclass(frozen=True)
class OracleReport:
    """One main-route value against its independently computed twin."""

    name: str
    description: str
    main_value: float
    oracle_value: float
    rel_diff: float
    tolerance: float
    passed: bool


def _report(
    name: str, description: str, main: float, oracle: float, tol: float
) -> OracleReport:
    rel = abs(main - oracle) / max(abs(oracle), 1e-300)
    return OracleReport(
        name=name,
        description=description,
        main_value=float(main),
        oracle_value=float(oracle),
        rel_diff=float(rel),
        tolerance=float(tol),
        passed=bool(rel <= tol),
    )


# A representative type-II configuration used by several oracles: equal
# 800 nm signal/idler wavelengths with distinct indices, 1 cm crystal.
_N_S, _N_I, _N_P = 1.844, 1.757, 1.964
_LAMBDA = 800e-9
_D_EFF = 2.4e-12
_LENGTH = 1e-2


def _reference_waves() -> WaveTriple:
    return WaveTriple.from_wavelengths(_LAMBDA, _LAMBDA, _N_S, _N_I, _N_P)


def closed_form_upsilon_kappa0(zeta_r: float) -> float:
    """Upsilon(0, zeta_r, 0) = log[(1/2 - i zeta_r)/(-1/2 - i zeta_r)] / (2 pi i).

    Direct antiderivative of 1/((z - i zeta_r)(i zeta_r)) ... the kappa = 0,
    r_k = 0 integrand collapses to a single pole and integrates to a log.
    """
    ratio = (0.5 - 1j * zeta_r) / (-0.5 - 1j * zeta_r)
    value = cmath.log(ratio) / (2.0j * math.pi)
    return value.real


def oracle_upsilon_closed_form(zeta_r: float = 0.5) -> OracleReport:
    fp = FocusParams(kappa=0.0, zeta_r=zeta_r, r_k=0.0)
    main = overlap.upsilon(fp).value.real
    return _report(
        f"upsilon-closed-form-{zeta_r:g}",
        "adaptive quadrature vs log antiderivative at kappa=0, r_k=0",
        main,
        closed_form_upsilon_kappa0(zeta_r),
        1e-9,
    )


def oracle_reduction_vs_direct() -> OracleReport:
    """Reduced 1D sum-frequency overlap against the direct 3D integral."""
    waves = _reference_waves()
    z_r = 0.18 * _LENGTH
    # Poling tuned for kappa = -3 so the check runs at a generic point.
    q = waves.k_minus0 + 3.0 / _LENGTH
    crystal = CrystalSpec(length=_LENGTH, d_eff=_D_EFF, poling_period=2.0 * math.pi / q)
    fp = derive_focus_params(waves, crystal, z_r)
    main = overlap.i_sfg_gaussian(waves, crystal, fp).abs_sq
    oracle = overlap.i_sfg_direct3d(waves, crystal, fp).abs_sq
    return _report(
        "sfg-reduction-vs-3d",
        "reduced single-integral |I_SFG|^2 vs direct 3D quadrature",
        main,
        oracle,
        1e-6,
    )


def _fresnel_plane_total(
    k_p: float,
    k_collected: float,
    k_gen: float,
    q_poling: float,
    length: float,
    z_r: float,
    n_slices: int,
    r_points: int,
    r_max_factor: float,
) -> float:
    """Plane integral of the generated field propagated slice by slice.

    The crystal is cut into slices; each slice's source profile (pump mode
    times conjugated collection mode) is sent through the exact paraxial
    Fresnel kernel to a plane at z0 = L/2 + 5 z_R, where the radial Gaussian
    integral has a closed form. The plane integral of |field|^2 equals the
    all-mode Parseval total, and is independent of z0 by unitarity.
    """
    z0 = 0.5 * length + 5.0 * z_r
    dz = length / n_slices
    z_mid = (np.arange(n_slices) + 0.5) * dz - 0.5 * length
    # The generated fundamental mode waist at the output plane sets the
    # radial extent that must be resolved.
    w_out = math.sqrt(2.0 * (z0**2 + z_r**2) / (k_gen * z_r))
    r = np.linspace(0.0, r_max_factor * w_out, r_points)
    field = np.zeros(r_points, dtype=complex)
    amp = math.sqrt(k_p * k_collected) * z_r / math.pi
    for zp in z_mid:
        d_prop = z0 - zp
        q = zp - 1j * z_r
        q_bar = zp + 1j * z_r
        a = -1j * (k_p / (2.0 * q) - k_collected / (2.0 * q_bar) + k_gen / (2.0 * d_prop))
        b = k_gen * r / d_prop
        carrier = cmath.exp(1j * ((k_p - k_collected - q_poling) * zp + k_gen * d_prop))
        coef = dz * (k_gen / (1j * d_prop)) * amp / (q * q_bar) * carrier / (2.0 * a)
        field += coef * np.exp(1j * k_gen * r**2 / (2.0 * d_prop)) * np.exp(-(b**2) / (4.0 * a))
    return float(np.trapezoid(2.0 * math.pi * r * np.abs(field) ** 2, r))


def oracle_fresnel_self_test() -> OracleReport:
    """Propagate a unit-norm collection mode with the same kernel; power = 1."""
    k_b = 2.0 * math.pi * _N_I / _LAMBDA
    z_r = 1.8e-3
    z0 = 5.0 * z_r
    w_out = math.sqrt(2.0 * (z0**2 + z_r**2) / (k_b * z_r))
    r = np.linspace(0.0, 16.0 * w_out, 40001)
    q_b = -1j * z_r  # source slice at z = 0
    a = -1j * k_b * (1.0 / (2.0 * q_b) + 1.0 / (2.0 * z0))
    b = k_b * r / z0
    coef = (k_b / (1j * z0)) * math.sqrt(k_b * z_r / math.pi) / q_b / (2.0 * a)
    field = coef * np.exp(1j * k_b * r**2 / (2.0 * z0)) * np.exp(-(b**2) / (4.0 * a))
    total = float(np.trapezoid(2.0 * math.pi * r * np.abs(field) ** 2, r))
    return _report(
        "fresnel-propagator-self-test",
        "Fresnel kernel applied to a normalized mode keeps unit power",
        total,
        1.0,
        1e-6,
    )


def oracle_dfg_fresnel(
    zeta_r: float = 0.18,
    kappa: float = -3.0,
    n_slices: int = 400,
    r_points: int = 4000,
    r_max_factor: float = 12.0,
) -> OracleReport:
    """Mode-sum |I_DFG|^2 total against direct Fresnel propagation.

    The oracle side doubles its grids and requires self-consistency before
    it is trusted.
    """
    waves = _reference_waves()
    q = waves.k_minus0 - kappa / _LENGTH
    if q <= 0:
        raise ValueError("kappa too large for a positive poling wavenumber here")
    crystal = CrystalSpec(length=_LENGTH, d_eff=_D_EFF, poling_period=2.0 * math.pi / q)
    z_r = zeta_r * _LENGTH
    fp = derive_focus_params(waves, crystal, z_r)
    main = modebasis.i_dfg_sq(waves, crystal, fp).total

    args = (
        waves.pump.wavenumber,
        waves.signal.wavenumber,
        waves.idler.wavenumber,
        crystal.qpm_wavenumber,
        _LENGTH,
        z_r,
    )
    coarse = _fresnel_plane_total(*args, n_slices, r_points, r_max_factor)
    fine = _fresnel_plane_total(*args, 2 * n_slices, 2 * r_points, r_max_factor)
    if abs(fine - coarse) > 1e-3 * abs(fine):
        raise ValueError(
            f"Fresnel oracle not converged: {coarse!r} vs {fine!r} after doubling"
        )
    return _report(
        "dfg-parseval-vs-fresnel",
        "Laguerre-Gauss Parseval total vs propagated plane integral",
        main,
        fine,
        1e-3,
    )


def oracle_dfg_thin_crystal(zeta_r: float = 2000.0) -> OracleReport:
    """Thin-crystal limit: |I_DFG|^2 -> L^2 k_p k_s / (pi z_R (k_p + k_s))."""
    waves = _reference_waves()
    q = waves.k_minus0  # kappa = 0 exactly
    crystal = CrystalSpec(length=_LENGTH, d_eff=_D_EFF, poling_period=2.0 * math.pi / q)
    z_r = zeta_r * _LENGTH
    fp = derive_focus_params(waves, crystal, z_r)
    main = modebasis.i_dfg_sq(waves, crystal, fp).total
    k_p = waves.pump.wavenumber
    k_s = waves.signal.wavenumber
    oracle = _LENGTH**2 * k_p * k_s / (math.pi * z_r * (k_p + k_s))
    return _report(
        "dfg-thin-crystal-limit",
        "mode-sum total vs single-slice closed form at very loose focus",
        main,
        oracle,
        1e-4,
    )


def ling_comparator(zeta_r: float = 50.0, gamma: float = 2.0 * math.pi * 2e6) -> OracleReport:
    """Loose-focus pair rate against a thin-crystal plane-wave rate formula.

    The oracle route never touches the focusing integral: it uses the
    thin-crystal overlap Phi with waists sqrt(2 z_R / k_m), a plane-wave
    spectral rate density, and its own trapezoid filter integral. Agreement
    is O(1/zeta_R), so it is only meaningful at loose focus (zeta_r >= 50)
    and exact phase matching.
    """
    if zeta_r < 50.0:
        raise ValueError("comparator is only valid at loose focus (zeta_r >= 50)")
    waves = _reference_waves()
    q = waves.k_minus0  # kappa = 0: the plane-wave route assumes it
    crystal = CrystalSpec(length=_LENGTH, d_eff=_D_EFF, poling_period=2.0 * math.pi / q)
    z_r = zeta_r * _LENGTH
    fp = derive_focus_params(waves, crystal, z_r)
    pump_power = 1e-3
    flt = filters.LorentzianFilter(gamma=gamma)

    i_sfg = overlap.i_sfg_gaussian(waves, crystal, fp)
    q_sfg = classical.q_sfg(waves, crystal, i_sfg.abs_sq)
    gamma_eff = filters.gamma_eff_pair(flt, flt)
    main = quantum.pair_rate(waves, pump_power, q_sfg, gamma_eff)

    k_p = waves.pump.wavenumber
    k_s = waves.signal.wavenumber
    k_i = waves.idler.wavenumber
    w_s = waves.signal.angular_frequency
    w_i = waves.idler.angular_frequency
    n_p = waves.pump.refractive_index
    n_s = waves.signal.refractive_index
    n_i = waves.idler.refractive_index
    # Thin-crystal overlap of three Gaussians with waists sqrt(2 z_R / k_m),
    # mode amplitudes alpha^2 = 2 / (pi W^2) = k / (pi z_R).
    inv_w_sq = (k_p + k_s + k_i) / (2.0 * z_r)
    phi = _LENGTH * math.pi / inv_w_sq
    mode_factor_sq = (
        (k_p / (math.pi * z_r)) * (k_s / (math.pi * z_r)) * (k_i / (math.pi * z_r)) * phi**2
    )
    rate_density = (
        w_s * w_i * _D_EFF**2 / (math.pi * C_LIGHT**3 * EPS0 * n_p * n_s * n_i)
    ) * pump_power * mode_factor_sq
    omega = np.linspace(-300.0 * gamma, 300.0 * gamma, 240001)
    t_product = flt.transmission(omega) * flt.transmission(-omega)
    oracle = rate_density * float(np.trapezoid(t_product, omega))
    return _report(
        f"ling-rate-equivalence-{zeta_r:g}",
        "focused pair rate vs plane-wave spectral density at loose focus",
        main,
        oracle,
        1e-3,
    )


def boyd_kleinman_report() -> OracleReport:
    """Focusing optimum against the Boyd-Kleinman constant h_max = 1.0679.

    The merit zeta_R |Upsilon|^2 maps onto the classic second-harmonic
    focusing function as h = 2 pi^2 zeta_R |Upsilon|^2 at r_k = 0, whose
    tabulated maximum is 1.0679 near xi = L / (2 z_R) = 2.84.
    """
    result = optimize_focus(0.0, restarts=2, rel_tol=1e-8)
    h = 2.0 * math.pi**2 * result.best_objective
    return _report(
        "boyd-kleinman-hmax",
        "2 pi^2 max(zeta_R |Upsilon|^2) vs tabulated h_max",
        h,
        1.0679,
        1e-3,
    )


def run_all_oracles() -> list[OracleReport]:
    """Every oracle at its default configuration; all are expected to pass."""
    return [
        oracle_upsilon_closed_form(0.18),
        oracle_upsilon_closed_form(0.5),
        oracle_upsilon_closed_form(2.0),
        oracle_reduction_vs_direct(),
        oracle_fresnel_self_test(),
        oracle_dfg_fresnel(),
        oracle_dfg_thin_crystal(),
        ling_comparator(),
        boyd_kleinman_report(),
    ]
