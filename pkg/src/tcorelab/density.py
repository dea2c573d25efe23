"""Residue-class counts of coefficient sequences, and a brute scan for
Ramanujan-type congruences bbar_t(A n + B) = 0 (mod M).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import numpy as np

from . import qseries
from .qseries import TruncatedSeries

DEFAULT_CHECKPOINTS = (10**3, 10**4, 10**5, 10**6)


class DensityError(ValueError):
    pass


@dataclass(frozen=True)
class DensityReport:
    """#{0 <= n <= X : a(n) = r mod M} at each checkpoint X.

    Ratios divide by X + 1, the number of indices counted.
    """

    modulus: int
    residue: int
    checkpoints: tuple[int, ...]
    counts: tuple[int, ...]

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, x + 1) for c, x in zip(self.counts, self.checkpoints))

    def rows(self, digits: int = 8) -> list[tuple[int, int, str]]:
        return [(x, c, f"{float(r):.{digits}f}") for x, c, r in zip(self.checkpoints, self.counts, self.ratios)]

    def to_csv(self) -> str:
        lines = ["X,count,ratio"]
        lines.extend(f"{x},{c},{r}" for x, c, r in self.rows())
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "residue": self.residue,
            "checkpoints": list(self.checkpoints),
            "counts": list(self.counts),
            "ratios": [f"{r.numerator}/{r.denominator}" for r in self.ratios],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "DensityReport":
        return cls(int(data["modulus"]), int(data["residue"]),
                   tuple(int(x) for x in data["checkpoints"]), tuple(int(c) for c in data["counts"]))


def _residues(series: TruncatedSeries, modulus: int, upto: int) -> np.ndarray:
    if modulus < 1:
        raise DensityError("modulus must be positive")
    if series.modulus and series.modulus % modulus:
        raise DensityError(f"series modulus {series.modulus} is not a multiple of {modulus}")
    c = series.coeffs[:upto]
    if series.modulus and series.modulus < qseries.FAST_MODULUS_LIMIT:
        return np.mod(c, modulus)
    return np.array([int(x) % modulus for x in c], dtype=np.int64)


def density_report(series: TruncatedSeries, modulus: int, residue: int, checkpoints) -> DensityReport:
    checkpoints = tuple(sorted(int(x) for x in checkpoints))
    if not checkpoints:
        raise DensityError("need at least one checkpoint")
    if checkpoints[0] < 0:
        raise DensityError("checkpoints must be nonnegative")
    if checkpoints[-1] >= series.trunc:
        raise DensityError(f"checkpoint {checkpoints[-1]} is beyond the truncation {series.trunc}")
    if not 0 <= residue < modulus:
        raise DensityError(f"residue {residue} outside [0, {modulus})")
    hits = _residues(series, modulus, checkpoints[-1] + 1) == residue
    running = np.cumsum(hits, dtype=np.int64)
    return DensityReport(modulus, residue, checkpoints, tuple(int(running[x]) for x in checkpoints))


def bbar_density(t: int, modulus: int, residue: int = 0, checkpoints=DEFAULT_CHECKPOINTS,
                 crosscheck: bool = True) -> DensityReport:
    series = qseries.bbar_series(t, max(checkpoints) + 1, modulus, crosscheck=crosscheck)
    return density_report(series, modulus, residue, checkpoints)


def save_golden(report: DensityReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2) + "\n")


def load_golden(path: str | Path) -> DensityReport:
    return DensityReport.from_dict(json.loads(Path(path).read_text()))


@dataclass(frozen=True)
class ScanResult:
    t: int
    modulus: int
    nmax: int
    progressions: tuple[tuple[int, int], ...]

    @property
    def label(self) -> str:
        return f"candidates verified up to n = {self.nmax}; not proved"

    def to_dict(self) -> dict:
        return {
            "t": self.t,
            "modulus": self.modulus,
            "nmax": self.nmax,
            "status": self.label,
            "progressions": [{"A": a, "B": b} for a, b in self.progressions],
        }


def congruence_scan(t: int, modulus: int, amax: int, nmax: int,
                    series: TruncatedSeries | None = None) -> ScanResult:
    """All (A, B), 0 <= B < A <= amax, with bbar_t(A n + B) = 0 mod M for 0 <= n <= nmax."""
    if amax < 1 or nmax < 0:
        raise DensityError("need amax >= 1 and nmax >= 0")
    need = amax * nmax + amax
    if series is None:
        series = qseries.bbar_series(t, need, modulus, crosscheck=False)
    elif series.trunc < need:
        raise DensityError(f"series has {series.trunc} coefficients, scan needs {need}")
    zero = _residues(series, modulus, need) == 0
    found = []
    for a in range(1, amax + 1):
        for b in range(a):
            if zero[b : a * nmax + b + 1 : a].all():
                found.append((a, b))
    return ScanResult(t, modulus, nmax, tuple(found))
