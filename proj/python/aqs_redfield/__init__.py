"""Bloch-Redfield dynamics of two-level adiabatic search (C++ core)."""

from ._core import (
    ConfigError,
    DomainError,
    IoError,
    NumericalError,
    OhmicBath,
    Problem,
    Schedule,
    StructuredBath,
    calibrate_schedule,
    correlation,
    gap_table,
    integrate,
    linear_time,
    make_grover,
    make_schedule,
    make_single_site,
    rates,
    schedule_s,
    schedule_sdot,
    spectral_density,
    sweep_detuning,
    sweep_total_time,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
