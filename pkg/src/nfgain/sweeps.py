"""Parameter sweeps over element count, aperture size, and distance.

Each sweep row carries the gain under all three models plus the matching
closed-form limits, so convergence is visible in the raw CSV without any
postprocessing.  CSV output is byte-deterministic: fixed column order, 17
significant digits, '.' decimal separator, '\\n' line endings, header first.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .closed_forms import cap_asymptotic, ula_asymptotic, upa_asymptotic
from .config import ScenarioConfig
from .discrete import far_field_gain, spd_gain_sum
from .geometry import UserPosition
from .quadrature import QuadratureSpec, cap_gain_integral

CSV_COLUMNS = (
    "var_name",
    "var_value",
    "gain_eva",
    "gain_rad",
    "gain_far",
    "limit_eva",
    "limit_rad",
    "ratio_db",
)

_RATIO_DB_SLACK = 1e-9


@dataclass(frozen=True)
class SweepRecord:
    """One row of a convergence or ratio sweep."""

    var_name: str
    var_value: float
    gain_eva: float
    gain_rad: float
    gain_far: float
    limit_eva: float
    limit_rad: float
    ratio_db: float

    def __post_init__(self) -> None:
        for name in ("gain_eva", "gain_rad", "gain_far", "limit_eva", "limit_rad"):
            if not getattr(self, name) >= 0.0:
                raise ValueError(f"{name} must be >= 0, got {getattr(self, name)!r}")
        expected = 10.0 * math.log10(self.gain_eva / self.gain_rad)
        if abs(self.ratio_db - expected) > _RATIO_DB_SLACK:
            raise ValueError(
                f"ratio_db {self.ratio_db!r} inconsistent with gains "
                f"(expected {expected!r})"
            )


def make_record(
    var_name: str,
    var_value: float,
    gain_eva: float,
    gain_rad: float,
    gain_far: float,
    limit_eva: float,
    limit_rad: float,
) -> SweepRecord:
    return SweepRecord(
        var_name=var_name,
        var_value=var_value,
        gain_eva=gain_eva,
        gain_rad=gain_rad,
        gain_far=gain_far,
        limit_eva=limit_eva,
        limit_rad=limit_rad,
        ratio_db=10.0 * math.log10(gain_eva / gain_rad),
    )


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def format_csv(records: Iterable[SweepRecord]) -> str:
    lines = [",".join(CSV_COLUMNS)]
    for rec in records:
        lines.append(
            ",".join(
                [
                    rec.var_name,
                    _fmt(rec.var_value),
                    _fmt(rec.gain_eva),
                    _fmt(rec.gain_rad),
                    _fmt(rec.gain_far),
                    _fmt(rec.limit_eva),
                    _fmt(rec.limit_rad),
                    _fmt(rec.ratio_db),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[SweepRecord]:
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != ",".join(CSV_COLUMNS):
        raise ValueError("missing or malformed CSV header row")
    records = []
    for line in lines[1:]:
        parts = line.split(",")
        if len(parts) != len(CSV_COLUMNS):
            raise ValueError(f"malformed CSV row: {line!r}")
        records.append(
            SweepRecord(
                var_name=parts[0],
                var_value=float(parts[1]),
                gain_eva=float(parts[2]),
                gain_rad=float(parts[3]),
                gain_far=float(parts[4]),
                limit_eva=float(parts[5]),
                limit_rad=float(parts[6]),
                ratio_db=float(parts[7]),
            )
        )
    return records


def validate_csv(text: str) -> list[SweepRecord]:
    """Re-parse emitted CSV and re-run the record invariants."""
    return parse_csv(text)


def odd_log_steps(lo: int, hi: int, steps: int) -> list[int]:
    """Odd integers, roughly log-spaced, deduplicated, increasing."""
    if lo < 1 or hi < lo or steps < 1:
        raise ValueError(f"bad sweep range lo={lo}, hi={hi}, steps={steps}")
    raw = np.geomspace(max(lo, 1), hi, steps)
    out: list[int] = []
    for v in raw:
        m = int(round(v))
        m = m + 1 if m % 2 == 0 else m
        m = min(max(m, 1), hi if hi % 2 == 1 else hi - 1)
        if not out or m > out[-1]:
            out.append(m)
    return out


def log_space(lo: float, hi: float, steps: int) -> list[float]:
    if not (lo > 0.0 and hi >= lo and steps >= 1):
        raise ValueError(f"bad sweep range lo={lo}, hi={hi}, steps={steps}")
    if steps == 1:
        return [lo]
    return [float(v) for v in np.geomspace(lo, hi, steps)]


def elements_sweep(
    config: ScenarioConfig, m_lo: int, m_hi: int, steps: int
) -> list[SweepRecord]:
    """Gain versus element count for a planar (m x m) or linear (m x 1) array."""
    config.validate_kind()
    if config.array_kind == "cap":
        raise ValueError("elements sweep requires a discrete array kind")
    linear = config.array_kind == "spd_ula"
    user = config.user()
    medium = config.medium()
    if linear:
        limit_eva = ula_asymptotic(user, medium, config.d, config.element_area, True).value
        limit_rad = ula_asymptotic(user, medium, config.d, config.element_area, False).value
    else:
        limit_eva = upa_asymptotic(user, medium, config.mu_oc, True).value
        limit_rad = upa_asymptotic(user, medium, config.mu_oc, False).value

    records = []
    for m in odd_log_steps(m_lo, m_hi, steps):
        array = config.spd_array(m, 1 if linear else m)
        records.append(
            make_record(
                var_name="elements",
                var_value=float(array.m_total),
                gain_eva=spd_gain_sum(array, user, medium, include_reactive=True),
                gain_rad=spd_gain_sum(array, user, medium, include_reactive=False),
                gain_far=far_field_gain(array, user, medium),
                limit_eva=limit_eva,
                limit_rad=limit_rad,
            )
        )
    return records


def _cap_far_field(area: float, user: UserPosition, factor: float) -> float:
    # Planar-wave model for a continuous aperture: constant field over the
    # aperture, projected area Psi * area.
    return factor * user.cosines.big_psi * area / (4.0 * math.pi * user.r**2)


def aperture_sweep(
    config: ScenarioConfig,
    area_lo: float,
    area_hi: float,
    steps: int,
    spec: QuadratureSpec | None = None,
) -> tuple[list[SweepRecord], bool]:
    """Gain versus aperture area for a square continuous aperture.

    Returns the records and a flag that is False when any quadrature failed
    to reach its tolerance (rows are still recorded).
    """
    user = config.user()
    medium = config.medium()
    limit_eva = cap_asymptotic(user, medium, True).value
    limit_rad = cap_asymptotic(user, medium, False).value

    records = []
    all_converged = True
    for area in log_space(area_lo, area_hi, steps):
        side = math.sqrt(area)
        aperture = config.cap_aperture(side, side)
        eva = cap_gain_integral(aperture, user, medium, spec, include_reactive=True)
        rad = cap_gain_integral(aperture, user, medium, spec, include_reactive=False)
        all_converged = all_converged and eva.converged and rad.converged
        records.append(
            make_record(
                var_name="aperture",
                var_value=area,
                gain_eva=eva.value,
                gain_rad=rad.value,
                gain_far=_cap_far_field(area, user, medium.radiation_factor),
                limit_eva=limit_eva,
                limit_rad=limit_rad,
            )
        )
    return records, all_converged


def ratio_sweep(
    config: ScenarioConfig,
    area_lo: float,
    area_hi: float,
    steps: int,
    distances: Iterable[float],
    spec: QuadratureSpec | None = None,
) -> tuple[list[SweepRecord], bool]:
    """Reactive/radiating gain ratio versus aperture area, one series per distance.

    The ratio is the quotient of the two aperture integrals; the prefactors
    cancel, so it is also the discrete-array ratio at matched aperture.
    """
    medium = config.medium()
    records = []
    all_converged = True
    for r in distances:
        user = UserPosition(r=float(r), theta=config.theta, phi=config.phi)
        limit_eva = cap_asymptotic(user, medium, True).value
        limit_rad = cap_asymptotic(user, medium, False).value
        series = f"aperture[r={_fmt(float(r))}]"
        for area in log_space(area_lo, area_hi, steps):
            side = math.sqrt(area)
            aperture = config.cap_aperture(side, side)
            eva = cap_gain_integral(aperture, user, medium, spec, include_reactive=True)
            rad = cap_gain_integral(aperture, user, medium, spec, include_reactive=False)
            all_converged = all_converged and eva.converged and rad.converged
            records.append(
                make_record(
                    var_name=series,
                    var_value=area,
                    gain_eva=eva.value,
                    gain_rad=rad.value,
                    gain_far=_cap_far_field(area, user, medium.radiation_factor),
                    limit_eva=limit_eva,
                    limit_rad=limit_rad,
                )
            )
    return records, all_converged
