"""q-series, eta-quotient and Hecke-operator tools for the t-core analogue bbar_t(n)."""

from .qseries import (
    TruncatedSeries,
    abar_series,
    bbar_series,
    ct_series,
    euler_f,
    make_constant,
)
from .etaq import EtaQuotient, family_B, family_F, family_H, modularity_report

__all__ = [
    "EtaQuotient",
    "TruncatedSeries",
    "abar_series",
    "bbar_series",
    "ct_series",
    "euler_f",
    "family_B",
    "family_F",
    "family_H",
    "make_constant",
    "modularity_report",
]

__version__ = "0.1.0"
