"""Spiking-network anomaly detection for univariate time series."""

from ._vacuum_spiker import *  # noqa: F401,F403
from ._vacuum_spiker import VacuumSpikerError

__version__ = "0.1.0"
