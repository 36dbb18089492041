"""Annual PV-generation and household-load time series.

Profiles are regular-interval average-power series (kW) covering one
representative non-leap year (8760 hours), hourly by default with
quarter-hour supported. Everything here is deterministic: the same inputs
always produce bit-identical series, and every synthesis or scaling
operation conserves its target energy to well below 1e-6 relative.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from datetime import datetime
from functools import lru_cache
from typing import Iterable

import numpy as np

from .errors import (
    IncompatibleProfilesError,
    InvalidShapeError,
    MalformedRowError,
    NegativePowerError,
    NonUniformStepError,
)

HOURS_PER_YEAR = 8760.0
DAYS_PER_YEAR = 365
DAYS_IN_MONTH = (31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31)

# Day 0 of the representative year is a Monday; weekday numbering follows
# datetime.weekday() (0 = Monday .. 6 = Sunday).
FIRST_WEEKDAY = 0

PROFILE_CSV_HEADER = "timestamp,power_kw"

_NORM_TOL = 1e-9


class ProfileKind(enum.Enum):
    PV = "pv"
    LOAD = "load"


@dataclass(frozen=True)
class TimeSeriesProfile:
    """A one-year power series at a constant step.

    Attributes
    ----------
    step_hours:
        Duration of each step in hours (1.0 and 0.25 are the usual values).
    values:
        Average power in kW per step, non-negative, read-only.
    kind:
        Whether the series is PV generation or household load.
    year_energy_kwh:
        Cached total energy, sum(values) * step_hours.
    """

    step_hours: float
    values: np.ndarray
    kind: ProfileKind
    year_energy_kwh: float = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if self.step_hours <= 0.0:
            raise ValueError(f"step_hours must be positive, got {self.step_hours}")
        values = np.array(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0:
            raise ValueError("values must be a non-empty 1-D sequence")
        if not np.all(np.isfinite(values)):
            raise ValueError("values must be finite")
        if np.any(values < 0.0):
            raise NegativePowerError("profile values must be non-negative")
        span = values.size * self.step_hours
        if abs(span - HOURS_PER_YEAR) > self.step_hours + 1e-9:
            raise ValueError(
                f"profile must cover one year: {values.size} steps of "
                f"{self.step_hours} h span {span:.2f} h, expected ~{HOURS_PER_YEAR:.0f} h"
            )
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "year_energy_kwh", float(values.sum() * self.step_hours))

    def __len__(self) -> int:
        return int(self.values.size)

    @property
    def steps_per_day(self) -> int:
        return int(round(24.0 / self.step_hours))


def _check_weights(name: str, weights: Iterable[float], arity: int) -> tuple[float, ...]:
    w = tuple(float(x) for x in weights)
    if len(w) != arity:
        raise InvalidShapeError(f"{name} must have {arity} entries, got {len(w)}")
    if any(x < 0.0 for x in w):
        raise InvalidShapeError(f"{name} must be non-negative")
    total = sum(w)
    if abs(total - 1.0) > _NORM_TOL:
        raise InvalidShapeError(f"{name} must sum to 1 (got {total!r})")
    return w


@dataclass(frozen=True)
class LoadShapeParams:
    """Intraday and seasonal weights for household load synthesis.

    weekday_weights / weekend_weights hold one normalized weight per step of
    the day (24 entries for hourly, 96 for quarter-hour); monthly_weights
    split the annual energy over the twelve months.
    """

    weekday_weights: tuple[float, ...]
    weekend_weights: tuple[float, ...]
    monthly_weights: tuple[float, ...]
    weekend_days: frozenset[int] = frozenset({5, 6})

    def __post_init__(self) -> None:
        arity = len(tuple(self.weekday_weights))
        if arity not in (24, 96):
            raise InvalidShapeError(f"intraday weights must have 24 or 96 entries, got {arity}")
        object.__setattr__(
            self, "weekday_weights", _check_weights("weekday_weights", self.weekday_weights, arity)
        )
        object.__setattr__(
            self, "weekend_weights", _check_weights("weekend_weights", self.weekend_weights, arity)
        )
        object.__setattr__(
            self, "monthly_weights", _check_weights("monthly_weights", self.monthly_weights, 12)
        )
        days = frozenset(int(d) for d in self.weekend_days)
        if not all(0 <= d <= 6 for d in days):
            raise InvalidShapeError("weekend_days must be weekday indices in 0..6")
        object.__setattr__(self, "weekend_days", days)

    @property
    def step_hours(self) -> float:
        return 24.0 / len(self.weekday_weights)


@dataclass(frozen=True)
class PvShapeParams:
    """Monthly energy split plus a simple daylight model for PV synthesis.

    Within each month the intraday generation follows a half-sine bell
    between that month's sunrise and sunset, sharpened by bell_exponent,
    and is zero outside daylight. Monthly totals follow monthly_weights.
    """

    monthly_weights: tuple[float, ...]
    sunrise_hours: tuple[float, ...]
    sunset_hours: tuple[float, ...]
    bell_exponent: float = 2.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "monthly_weights", _check_weights("monthly_weights", self.monthly_weights, 12)
        )
        sunrise = tuple(float(x) for x in self.sunrise_hours)
        sunset = tuple(float(x) for x in self.sunset_hours)
        if len(sunrise) != 12 or len(sunset) != 12:
            raise InvalidShapeError("sunrise_hours and sunset_hours must each have 12 entries")
        for m, (sr, ss) in enumerate(zip(sunrise, sunset)):
            if not (0.0 <= sr < ss <= 24.0):
                raise InvalidShapeError(
                    f"month {m + 1}: need 0 <= sunrise < sunset <= 24, got ({sr}, {ss})"
                )
        object.__setattr__(self, "sunrise_hours", sunrise)
        object.__setattr__(self, "sunset_hours", sunset)
        if not self.bell_exponent > 0.0:
            raise InvalidShapeError("bell_exponent must be positive")


@dataclass(frozen=True)
class ProfileShapes:
    """Bundle of the load and PV shape parameters used by a scenario run."""

    load: LoadShapeParams
    pv: PvShapeParams

    @property
    def step_hours(self) -> float:
        return self.load.step_hours


def _normalized(raw: Iterable[float]) -> tuple[float, ...]:
    arr = np.asarray(tuple(raw), dtype=float)
    return tuple((arr / arr.sum()).tolist())


def _monthly_weights_from_intensity(intensity: Iterable[float]) -> tuple[float, ...]:
    # Energy share per month is intensity (per-day level) times month length.
    arr = np.asarray(tuple(intensity), dtype=float) * np.asarray(DAYS_IN_MONTH, dtype=float)
    return tuple((arr / arr.sum()).tolist())


# Generic residential intraday shape: double peak on working days (morning
# ramp plus a dominant evening peak), flatter and later on weekends.
_WEEKDAY_RAW = (
    0.55, 0.50, 0.48, 0.47, 0.50, 0.60,
    0.90, 1.30, 1.20, 0.95, 0.85, 0.90,
    1.00, 0.95, 0.85, 0.85, 0.95, 1.20,
    1.50, 1.70, 1.65, 1.45, 1.10, 0.75,
)
_WEEKEND_RAW = (
    0.65, 0.58, 0.54, 0.52, 0.54, 0.60,
    0.70, 0.90, 1.10, 1.15, 1.15, 1.15,
    1.20, 1.15, 1.05, 1.00, 1.05, 1.15,
    1.30, 1.40, 1.35, 1.25, 1.00, 0.80,
)
# Seasonal load level (relative daily energy): winter heating and summer
# cooling both push consumption up in Mediterranean households.
_LOAD_MONTH_INTENSITY = (1.14, 1.05, 0.98, 0.90, 0.86, 0.95, 1.12, 1.14, 0.94, 0.90, 0.99, 1.16)

# Relative daily PV yield per month and a coarse daylight window, both
# representative of mid-Mediterranean latitudes.
_PV_MONTH_INTENSITY = (0.55, 0.70, 0.90, 1.05, 1.20, 1.30, 1.35, 1.25, 1.05, 0.85, 0.60, 0.50)
_SUNRISE_HOURS = (7.6, 7.1, 6.4, 5.6, 5.0, 4.8, 5.0, 5.5, 6.1, 6.7, 7.2, 7.6)
_SUNSET_HOURS = (17.2, 17.9, 18.5, 19.1, 19.7, 20.1, 20.0, 19.4, 18.6, 17.8, 17.1, 16.9)

_DEFAULT_LOAD_SHAPE = LoadShapeParams(
    weekday_weights=_normalized(_WEEKDAY_RAW),
    weekend_weights=_normalized(_WEEKEND_RAW),
    monthly_weights=_monthly_weights_from_intensity(_LOAD_MONTH_INTENSITY),
)
_DEFAULT_PV_SHAPE = PvShapeParams(
    monthly_weights=_monthly_weights_from_intensity(_PV_MONTH_INTENSITY),
    sunrise_hours=_SUNRISE_HOURS,
    sunset_hours=_SUNSET_HOURS,
)
_DEFAULT_SHAPES = ProfileShapes(load=_DEFAULT_LOAD_SHAPE, pv=_DEFAULT_PV_SHAPE)


def default_load_shape() -> LoadShapeParams:
    return _DEFAULT_LOAD_SHAPE


def default_pv_shape() -> PvShapeParams:
    return _DEFAULT_PV_SHAPE


def default_shapes() -> ProfileShapes:
    return _DEFAULT_SHAPES


def month_of_day() -> np.ndarray:
    """Month index (0..11) for each day of the representative year."""
    return np.repeat(np.arange(12), DAYS_IN_MONTH)


def month_step_slices(step_hours: float) -> list[slice]:
    """Step-index slice of each month for a profile at the given step."""
    per_day = int(round(24.0 / step_hours))
    bounds = np.concatenate(([0], np.cumsum(DAYS_IN_MONTH))) * per_day
    return [slice(int(bounds[m]), int(bounds[m + 1])) for m in range(12)]


def parse_profile_csv(text: str, kind: ProfileKind = ProfileKind.LOAD) -> TimeSeriesProfile:
    """Parse a ``timestamp,power_kw`` CSV document into a profile.

    Timestamps must be ISO-8601, strictly increasing at a constant step;
    gaps and duplicates are rejected. The step is inferred from the first
    two rows.
    """
    lines = text.splitlines()
    while lines and not lines[-1].strip():
        lines.pop()
    if not lines:
        raise MalformedRowError("empty profile document")
    header = lines[0].strip().lstrip("﻿")
    if header != PROFILE_CSV_HEADER:
        raise MalformedRowError(
            f"expected header '{PROFILE_CSV_HEADER}', got '{header}'"
        )
    if len(lines) < 3:
        raise MalformedRowError("need at least two data rows to infer the step")

    times: list[datetime] = []
    powers: list[float] = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 2:
            raise MalformedRowError(f"line {lineno}: expected 2 fields, got {len(parts)}")
        ts_text, power_text = parts[0].strip(), parts[1].strip()
        try:
            ts = datetime.fromisoformat(ts_text)
        except ValueError as exc:
            raise MalformedRowError(f"line {lineno}: bad timestamp '{ts_text}'") from exc
        try:
            power = float(power_text)
        except ValueError as exc:
            raise MalformedRowError(f"line {lineno}: bad power '{power_text}'") from exc
        if not np.isfinite(power):
            raise MalformedRowError(f"line {lineno}: power must be finite")
        if power < 0.0:
            raise NegativePowerError(f"line {lineno}: negative power {power}")
        times.append(ts)
        powers.append(power)

    step_seconds = (times[1] - times[0]).total_seconds()
    if step_seconds <= 0.0:
        raise NonUniformStepError("timestamps must be strictly increasing")
    for i in range(1, len(times)):
        delta = (times[i] - times[i - 1]).total_seconds()
        if delta <= 0.0:
            raise NonUniformStepError(f"row {i + 2}: timestamps not strictly increasing")
        if abs(delta - step_seconds) > 1e-6:
            raise NonUniformStepError(
                f"row {i + 2}: step {delta} s differs from inferred {step_seconds} s"
            )
    return TimeSeriesProfile(
        step_hours=step_seconds / 3600.0, values=np.asarray(powers), kind=kind
    )


def synthesize_load_profile(
    annual_kwh: float, shape: LoadShapeParams | None = None
) -> TimeSeriesProfile:
    """Build a deterministic household load profile summing to annual_kwh.

    Each month receives its monthly_weights share of the annual energy,
    split equally over the month's days; each day is shaped by the weekday
    or weekend intraday weights.
    """
    if shape is None:
        shape = _DEFAULT_LOAD_SHAPE
    if annual_kwh <= 0.0:
        raise ValueError(f"annual_kwh must be positive, got {annual_kwh}")
    return _synthesize_load(float(annual_kwh), shape)


@lru_cache(maxsize=64)
def _synthesize_load(annual_kwh: float, shape: LoadShapeParams) -> TimeSeriesProfile:
    step = shape.step_hours
    weekday = np.asarray(shape.weekday_weights)
    weekend = np.asarray(shape.weekend_weights)
    months = month_of_day()
    day_index = np.arange(DAYS_PER_YEAR)
    is_weekend = np.isin((day_index + FIRST_WEEKDAY) % 7, sorted(shape.weekend_days))
    monthly = np.asarray(shape.monthly_weights)
    days_in_month = np.asarray(DAYS_IN_MONTH, dtype=float)
    day_energy = annual_kwh * monthly[months] / days_in_month[months]
    day_shape = np.where(is_weekend[:, None], weekend[None, :], weekday[None, :])
    energy = day_shape * day_energy[:, None]
    return TimeSeriesProfile(
        step_hours=step, values=(energy / step).ravel(), kind=ProfileKind.LOAD
    )


def synthesize_pv_profile(
    kwp: float,
    annual_yield_kwh_per_kwp: float,
    shape: PvShapeParams | None = None,
    step_hours: float = 1.0,
) -> TimeSeriesProfile:
    """Build a deterministic PV profile with total energy kwp * yield.

    Generation follows a half-sine bell between each month's sunrise and
    sunset and is exactly zero on steps with no daylight overlap; monthly
    energies match the shape's monthly_weights.
    """
    if shape is None:
        shape = _DEFAULT_PV_SHAPE
    if kwp <= 0.0:
        raise ValueError(f"kwp must be positive, got {kwp}")
    if annual_yield_kwh_per_kwp <= 0.0:
        raise ValueError(
            f"annual_yield_kwh_per_kwp must be positive, got {annual_yield_kwh_per_kwp}"
        )
    per_day = 24.0 / step_hours
    if abs(per_day - round(per_day)) > 1e-9:
        raise ValueError(f"step_hours must divide 24 h, got {step_hours}")
    return _synthesize_pv(float(kwp), float(annual_yield_kwh_per_kwp), shape, float(step_hours))


@lru_cache(maxsize=512)
def _synthesize_pv(
    kwp: float, annual_yield: float, shape: PvShapeParams, step_hours: float
) -> TimeSeriesProfile:
    per_day = int(round(24.0 / step_hours))
    starts = np.arange(per_day) * step_hours
    ends = starts + step_hours
    day_weights = np.zeros((12, per_day))
    for m in range(12):
        sunrise, sunset = shape.sunrise_hours[m], shape.sunset_hours[m]
        lo = np.maximum(starts, sunrise)
        hi = np.minimum(ends, sunset)
        overlap = np.clip(hi - lo, 0.0, None)
        frac = np.clip((0.5 * (lo + hi) - sunrise) / (sunset - sunrise), 0.0, 1.0)
        bell = np.sin(np.pi * frac) ** shape.bell_exponent
        weights = np.where(overlap > 0.0, bell * overlap, 0.0)
        day_weights[m] = weights / weights.sum()
    months = month_of_day()
    monthly = np.asarray(shape.monthly_weights)
    days_in_month = np.asarray(DAYS_IN_MONTH, dtype=float)
    day_energy = kwp * annual_yield * monthly / days_in_month
    energy = day_weights[months] * day_energy[months][:, None]
    return TimeSeriesProfile(
        step_hours=step_hours, values=(energy / step_hours).ravel(), kind=ProfileKind.PV
    )


def scale_to_annual(profile: TimeSeriesProfile, annual_kwh: float) -> TimeSeriesProfile:
    """Rescale a profile so its yearly energy equals annual_kwh."""
    if annual_kwh <= 0.0:
        raise ValueError(f"annual_kwh must be positive, got {annual_kwh}")
    if profile.year_energy_kwh <= 0.0:
        raise ValueError("cannot rescale a profile with zero energy")
    factor = annual_kwh / profile.year_energy_kwh
    return TimeSeriesProfile(
        step_hours=profile.step_hours, values=profile.values * factor, kind=profile.kind
    )


def align(
    pv: TimeSeriesProfile, load: TimeSeriesProfile
) -> tuple[TimeSeriesProfile, TimeSeriesProfile]:
    """Bring two profiles onto a common step and length.

    When the steps differ by an integer factor the coarser series is
    replicated down to the finer step at the same kW, which preserves
    energy exactly. Non-integer step ratios are rejected.
    """
    if pv.step_hours == load.step_hours:
        if len(pv) != len(load):
            raise IncompatibleProfilesError(
                f"equal steps but different lengths ({len(pv)} vs {len(load)})"
            )
        return pv, load
    fine, coarse = (pv, load) if pv.step_hours < load.step_hours else (load, pv)
    ratio = coarse.step_hours / fine.step_hours
    k = round(ratio)
    if k < 2 or abs(ratio - k) > 1e-9:
        raise IncompatibleProfilesError(
            f"step ratio {ratio!r} is not an integer "
            f"({coarse.step_hours} h vs {fine.step_hours} h)"
        )
    expanded = TimeSeriesProfile(
        step_hours=fine.step_hours, values=np.repeat(coarse.values, k), kind=coarse.kind
    )
    if len(expanded) != len(fine):
        raise IncompatibleProfilesError(
            f"profiles cover different spans ({len(expanded)} vs {len(fine)} fine steps)"
        )
    return (fine, expanded) if fine is pv else (expanded, fine)
