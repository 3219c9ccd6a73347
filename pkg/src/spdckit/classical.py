"""Classical conversion efficiencies Q [1/W] from overlap magnitudes.

Each efficiency is a pure function of the wave triple, the crystal and a
dimensionless overlap magnitude |I|^2 computed elsewhere; nothing here re-runs
quadrature, so sweep engines can cache the expensive part. The degenerate
(single-field) process carries an amplitude factor 1/2, hence efficiencies
a factor 4 below the non-degenerate formulas at equal overlap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .quantities import C_LIGHT, EPS0, CrystalSpec, WaveTriple

__all__ = ["EfficiencyReport", "q_sfg", "q_shg", "q_dfg", "q_apg"]


@dataclass(frozen=True)
class EfficiencyReport:
    """Conversion efficiencies of one configuration, each [1/W] when present."""

    q_sfg: float | None = None
    q_shg: float | None = None
    q_dfg_signal_arm: float | None = None  # controls the signal singles rate
    q_dfg_idler_arm: float | None = None
    q_apg: float | None = None
    inputs: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        for name in ("q_sfg", "q_shg", "q_dfg_signal_arm", "q_dfg_idler_arm", "q_apg"):
            v = getattr(self, name)
            if v is not None and v < 0:
                raise ValueError(f"{name} must be >= 0")


def _check_overlap(i_sq: float) -> None:
    if i_sq < 0:
        raise ValueError("overlap magnitude |I|^2 must be >= 0")


def q_sfg(waves: WaveTriple, crystal: CrystalSpec, i_sfg_sq: float) -> float:
    """Sum-frequency efficiency Q_SFG = P_pump / (P_signal P_idler) [1/W].

    Q_SFG = 2 omega_p^2 d^2 |I_SFG|^2 / (c^3 eps0 n_p n_s n_i).
    """
    _check_overlap(i_sfg_sq)
    if waves.degenerate:
        raise ValueError("degenerate configuration: use q_shg")
    w_p = waves.pump.angular_frequency
    n_prod = (
        waves.pump.refractive_index
        * waves.signal.refractive_index
        * waves.idler.refractive_index
    )
    return 2.0 * w_p**2 * crystal.d_eff**2 * i_sfg_sq / (C_LIGHT**3 * EPS0 * n_prod)


def q_shg(waves: WaveTriple, crystal: CrystalSpec, i_shg_sq: float) -> float:
    """Second-harmonic efficiency Q_SHG = P_2w / P_w^2 [1/W].

    Q_SHG = omega_p^2 d^2 |I_SHG|^2 / (2 c^3 eps0 n_p n_s^2): the single
    driving field halves the conversion amplitude, so this is q_sfg / 4 at
    equal overlap and matched indices.
    """
    _check_overlap(i_shg_sq)
    if not waves.degenerate:
        raise ValueError("q_shg needs a degenerate configuration")
    w_p = waves.pump.angular_frequency
    n_p = waves.pump.refractive_index
    n_s = waves.signal.refractive_index
    return w_p**2 * crystal.d_eff**2 * i_shg_sq / (2.0 * C_LIGHT**3 * EPS0 * n_p * n_s**2)


def q_dfg(
    waves: WaveTriple,
    crystal: CrystalSpec,
    i_dfg_sq: float,
    generated: str = "idler",
) -> float:
    """Difference-frequency efficiency Q_DFG = P_generated / (P_pump P_seed) [1/W].

    Q_DFG = 2 omega_gen^2 d^2 |I_DFG|^2 / (c^3 eps0 n_s n_i n_p), with
    omega_gen the generated (unseeded) arm: 'idler' when the signal is
    seeded and vice versa.
    """
    _check_overlap(i_dfg_sq)
    if waves.degenerate:
        raise ValueError("degenerate configuration: use q_apg")
    if generated == "idler":
        w_gen = waves.idler.angular_frequency
    elif generated == "signal":
        w_gen = waves.signal.angular_frequency
    else:
        raise ValueError("generated must be 'signal' or 'idler'")
    n_prod = (
        waves.pump.refractive_index
        * waves.signal.refractive_index
        * waves.idler.refractive_index
    )
    return 2.0 * w_gen**2 * crystal.d_eff**2 * i_dfg_sq / (C_LIGHT**3 * EPS0 * n_prod)


def q_apg(waves: WaveTriple, crystal: CrystalSpec, i_apg_sq: float) -> float:
    """Average parametric gain Q_APG [1/W], degenerate analogue of q_dfg.

    Q_APG = 2 omega_s^2 d^2 |I_APG|^2 / (c^3 eps0 n_s^2 n_p).
    """
    _check_overlap(i_apg_sq)
    if not waves.degenerate:
        raise ValueError("q_apg needs a degenerate configuration")
    w_s = waves.signal.angular_frequency
    n_p = waves.pump.refractive_index
    n_s = waves.signal.refractive_index
    return 2.0 * w_s**2 * crystal.d_eff**2 * i_apg_sq / (C_LIGHT**3 * EPS0 * n_p * n_s**2)
