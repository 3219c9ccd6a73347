"""Absolute pair rates, singles rates and heralding efficiency.

The emission rates of a narrow-band down-conversion source follow from the
classical conversion efficiencies of the reverse processes:

    pairs:   W2 = Gamma_eff (omega_i omega_s / 4 omega_p^2) P Q_SFG,
    singles: W1_s = (omega_s / 4 omega_i) Gamma_eff_s P Q_DFG(signal arm),

and the heralding efficiency eta_s = W2 / W1_s collapses to
(Gamma_eff / Gamma_eff_s) |I_SFG|^2 / |I_DFG|^2, which conditional_efficiency
computes directly so the two routes can be checked against each other.

Degenerate (single-field) variants: W2 = Gamma_eff P Q_SHG / 16 and
W1 = Gamma_eff_s P Q_APG / 4. Note these are genuinely different processes,
not limits of the two-field formulas: at equal overlap magnitude and
Q_SFG = 4 Q_SHG, the two-field pair rate is four times the single-field one.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import classical, filters, modebasis, overlap
from .quantities import C_LIGHT, EPS0, HBAR, CrystalSpec, FocusParams, WaveTriple

__all__ = [
    "CorrelationScale",
    "OverlapBundle",
    "SourceReport",
    "pair_rate",
    "singles_rate",
    "conditional_efficiency",
    "correlation_amplitude_sq",
    "compute_overlaps",
    "evaluate_source",
]


def _check_nonneg(**kwargs: float) -> None:
    for name, value in kwargs.items():
        if value < 0:
            raise ValueError(f"{name} must be >= 0")


def pair_rate(
    waves: WaveTriple, pump_power: float, q_conversion: float, gamma_eff: float
) -> float:
    """Two-photon coincidence rate W2 [1/s].

    q_conversion is Q_SFG [1/W] for a two-field source, Q_SHG for a
    degenerate one; gamma_eff the joint collection linewidth [rad/s].
    """
    _check_nonneg(pump_power=pump_power, q_conversion=q_conversion, gamma_eff=gamma_eff)
    if waves.degenerate:
        return gamma_eff * pump_power * q_conversion / 16.0
    w_s = waves.signal.angular_frequency
    w_i = waves.idler.angular_frequency
    w_p = waves.pump.angular_frequency
    return gamma_eff * (w_i * w_s / (4.0 * w_p**2)) * pump_power * q_conversion


def singles_rate(
    waves: WaveTriple,
    pump_power: float,
    q_generation: float,
    gamma_eff_single: float,
    collected: str = "signal",
) -> float:
    """Single-arm detection rate W1 [1/s] behind that arm's filter.

    q_generation is the arm's total difference-frequency efficiency
    (Q_DFG over the full idler basis for signal singles, and vice versa),
    or Q_APG for the degenerate process.
    """
    _check_nonneg(
        pump_power=pump_power,
        q_generation=q_generation,
        gamma_eff_single=gamma_eff_single,
    )
    if collected not in ("signal", "idler"):
        raise ValueError("collected must be 'signal' or 'idler'")
    if waves.degenerate:
        return 0.25 * gamma_eff_single * pump_power * q_generation
    w_s = waves.signal.angular_frequency
    w_i = waves.idler.angular_frequency
    ratio = w_s / (4.0 * w_i) if collected == "signal" else w_i / (4.0 * w_s)
    return ratio * gamma_eff_single * pump_power * q_generation


def conditional_efficiency(
    gamma_eff: float,
    gamma_eff_single: float,
    i_sfg_sq: float,
    i_dfg_sq: float,
    degenerate: bool = False,
) -> float:
    """Probability of collecting the partner photon given a detection.

    eta = (gamma_eff / gamma_eff_single) * |I_SFG|^2 / |I_DFG|^2, an
    independent route to pair_rate / singles_rate (the identity is pinned
    to 1e-12 in the tests). The degenerate process carries an extra 1/4 so
    the identity with its rate formulas survives.
    """
    if i_dfg_sq <= 0 or gamma_eff_single <= 0:
        raise ValueError("singles denominator must be positive")
    _check_nonneg(gamma_eff=gamma_eff, i_sfg_sq=i_sfg_sq)
    eta = (gamma_eff / gamma_eff_single) * (i_sfg_sq / i_dfg_sq)
    return 0.25 * eta if degenerate else eta


@dataclass(frozen=True)
class CorrelationScale:
    """Scale factors tying the correlation amplitude to absolute rates.

    a_sq is the squared two-photon amplitude |A|^2; w2_prefactor turns
    |f(tau)|^2 [1/s^2] into the coincidence density W2(tau) [1/s^2] via
    W2(tau) = w2_prefactor * |f(tau)|^2, so that Int W2(tau) dtau equals
    the pair rate (Gamma_eff = 4 Int |f|^2 dtau).
    """

    a_sq: float
    w2_prefactor: float


def correlation_amplitude_sq(
    waves: WaveTriple, pump_power: float, q_sfg_value: float
) -> CorrelationScale:
    """Two-photon amplitude |A|^2 and the |f|^2 -> W2(tau) prefactor."""
    _check_nonneg(pump_power=pump_power, q_sfg_value=q_sfg_value)
    w_s = waves.signal.angular_frequency
    w_i = waves.idler.angular_frequency
    w_p = waves.pump.angular_frequency
    n_s = waves.signal.refractive_index
    n_i = waves.idler.refractive_index
    a_sq = (
        HBAR**2
        * w_i**2
        * w_s**2
        / (4.0 * C_LIGHT**2 * EPS0**2 * n_s * n_i * w_p**2)
        * pump_power
        * q_sfg_value
    )
    w2_prefactor = (w_s * w_i / w_p**2) * pump_power * q_sfg_value
    return CorrelationScale(a_sq=a_sq, w2_prefactor=w2_prefactor)


@dataclass(frozen=True)
class OverlapBundle:
    """Geometry-dependent overlap magnitudes, cacheable across filter sweeps.

    For a degenerate source the two arms coincide: both DFG sums hold the
    average-parametric-gain total |I_APG|^2.
    """

    i_sfg_sq: float
    i_dfg_sq_signal_arm: float  # idler-basis sum; controls signal singles
    i_dfg_sq_idler_arm: float  # signal-basis sum; controls idler singles


def compute_overlaps(
    waves: WaveTriple,
    crystal: CrystalSpec,
    fp: FocusParams,
    basis_order: int = modebasis.DEFAULT_MAX_ORDER,
    quad_tol: float = 1e-9,
) -> OverlapBundle:
    """Evaluate |I_SFG|^2 and both arms' mode-sum totals for one geometry."""
    i_sfg = overlap.i_sfg_gaussian(waves, crystal, fp, quad_tol=quad_tol)
    if waves.degenerate:
        apg = modebasis.i_apg_sq(
            waves,
            crystal,
            fp,
            basis=modebasis.default_basis(waves, crystal, fp, "signal", basis_order),
            quad_tol=quad_tol,
        )
        return OverlapBundle(i_sfg.abs_sq, apg.total, apg.total)
    sum_signal_arm = modebasis.i_dfg_sq(
        waves,
        crystal,
        fp,
        basis=modebasis.default_basis(waves, crystal, fp, "idler", basis_order),
        quad_tol=quad_tol,
    )
    sum_idler_arm = modebasis.i_dfg_sq(
        waves,
        crystal,
        fp,
        basis=modebasis.default_basis(waves, crystal, fp, "signal", basis_order),
        quad_tol=quad_tol,
    )
    return OverlapBundle(i_sfg.abs_sq, sum_signal_arm.total, sum_idler_arm.total)


@dataclass(frozen=True)
class SourceReport:
    """Everything computed for one source configuration.

    Rates are None for an arm whose filter is Unfiltered (its singles rate
    is unbounded in the narrow-band model). narrowband_ok is None unless a
    phase-matching bandwidth estimate was supplied; the package does not
    estimate it, it only compares when told.
    """

    pair_rate_w2: float
    singles_rate_signal: float | None
    singles_rate_idler: float | None
    eta_signal: float | None
    eta_idler: float | None
    gamma_eff: float
    gamma_eff_s: float | None
    gamma_eff_i: float | None
    pump_power: float
    efficiencies: classical.EfficiencyReport
    overlaps: OverlapBundle
    narrowband_ok: bool | None = None

    def __post_init__(self) -> None:
        for eta in (self.eta_signal, self.eta_idler):
            if eta is not None and not 0.0 < eta <= 1.0 + 1e-9:
                raise ValueError(f"heralding efficiency {eta} outside (0, 1]")
        for singles in (self.singles_rate_signal, self.singles_rate_idler):
            if singles is not None and self.pair_rate_w2 > singles * (1.0 + 1e-9):
                raise ValueError("pair rate exceeds a singles rate")


def evaluate_source(
    waves: WaveTriple,
    crystal: CrystalSpec,
    fp: FocusParams,
    filter_s: filters.FilterSpec,
    filter_i: filters.FilterSpec,
    pump_power: float,
    *,
    basis_order: int = modebasis.DEFAULT_MAX_ORDER,
    quad_tol: float = 1e-9,
    pm_bandwidth: float | None = None,
    overlaps: OverlapBundle | None = None,
) -> SourceReport:
    """Full pipeline: overlaps, efficiencies, linewidths, rates, heralding.

    Precomputed overlaps may be passed in when only powers or filters vary
    (that is what the sweep engine does).
    """
    if pump_power < 0:
        raise ValueError("pump_power must be >= 0")
    if overlaps is None:
        overlaps = compute_overlaps(waves, crystal, fp, basis_order, quad_tol)

    gamma_eff = filters.gamma_eff_pair(filter_s, filter_i)

    def arm_gamma(flt: filters.FilterSpec) -> float | None:
        return None if isinstance(flt, filters.Unfiltered) else filters.gamma_eff_single(flt)

    gamma_s = arm_gamma(filter_s)
    gamma_i = arm_gamma(filter_i)

    if waves.degenerate:
        q_conv = classical.q_shg(waves, crystal, overlaps.i_sfg_sq)
        q_signal_arm = classical.q_apg(waves, crystal, overlaps.i_dfg_sq_signal_arm)
        q_idler_arm = classical.q_apg(waves, crystal, overlaps.i_dfg_sq_idler_arm)
        report = classical.EfficiencyReport(
            q_shg=q_conv,
            q_apg=q_signal_arm,
            inputs={"i_sfg_sq": overlaps.i_sfg_sq, "i_apg_sq": overlaps.i_dfg_sq_signal_arm},
        )
    else:
        q_conv = classical.q_sfg(waves, crystal, overlaps.i_sfg_sq)
        q_signal_arm = classical.q_dfg(
            waves, crystal, overlaps.i_dfg_sq_signal_arm, generated="idler"
        )
        q_idler_arm = classical.q_dfg(
            waves, crystal, overlaps.i_dfg_sq_idler_arm, generated="signal"
        )
        report = classical.EfficiencyReport(
            q_sfg=q_conv,
            q_dfg_signal_arm=q_signal_arm,
            q_dfg_idler_arm=q_idler_arm,
            inputs={
                "i_sfg_sq": overlaps.i_sfg_sq,
                "i_dfg_sq_signal_arm": overlaps.i_dfg_sq_signal_arm,
                "i_dfg_sq_idler_arm": overlaps.i_dfg_sq_idler_arm,
            },
        )

    w2 = pair_rate(waves, pump_power, q_conv, gamma_eff)

    w1_s = eta_s = None
    if gamma_s is not None:
        w1_s = singles_rate(waves, pump_power, q_signal_arm, gamma_s, collected="signal")
        eta_s = conditional_efficiency(
            gamma_eff,
            gamma_s,
            overlaps.i_sfg_sq,
            overlaps.i_dfg_sq_signal_arm,
            degenerate=waves.degenerate,
        )
    w1_i = eta_i = None
    if gamma_i is not None:
        w1_i = singles_rate(waves, pump_power, q_idler_arm, gamma_i, collected="idler")
        eta_i = conditional_efficiency(
            gamma_eff,
            gamma_i,
            overlaps.i_sfg_sq,
            overlaps.i_dfg_sq_idler_arm,
            degenerate=waves.degenerate,
        )

    return SourceReport(
        pair_rate_w2=w2,
        singles_rate_signal=w1_s,
        singles_rate_idler=w1_i,
        eta_signal=eta_s,
        eta_idler=eta_i,
        gamma_eff=gamma_eff,
        gamma_eff_s=gamma_s,
        gamma_eff_i=gamma_i,
        pump_power=pump_power,
        efficiencies=report,
        overlaps=overlaps,
        narrowband_ok=None if pm_bandwidth is None else bool(gamma_eff <= pm_bandwidth),
    )
