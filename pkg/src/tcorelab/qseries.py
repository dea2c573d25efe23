"""Truncated power series in q over Z or Z/MZ.

A :class:`TruncatedSeries` knows the coefficients of q^0 .. q^(T-1) and
nothing beyond.  Products and quotients truncate to the shorter operand.
Residue arithmetic for moduli below 2**31 runs through compiled kernels;
exact arithmetic and larger moduli use Python integers.

The Euler products f_n = (q^n; q^n)_inf are built from the pentagonal
number theorem, and the theta functions phi(-q), psi(-q), f(-q) are
built both as sparse sums and as eta products and compared.
"""

from __future__ import annotations

import builtins
from typing import Iterable, Mapping

import numpy as np

from . import _kernels

MODULUS_LIMIT = 1 << 62
FAST_MODULUS_LIMIT = 1 << 31


class SeriesError(ValueError):
    """Invalid series construction or arithmetic."""


class ConsistencyError(RuntimeError):
    """Two independent constructions of the same series disagree."""


def _check_modulus(modulus: int) -> int:
    modulus = int(modulus)
    if modulus < 0:
        raise SeriesError(f"modulus must be nonnegative, got {modulus}")
    if modulus >= MODULUS_LIMIT:
        raise SeriesError(f"modulus {modulus} does not fit in 62 bits")
    return modulus


class TruncatedSeries:
    """Coefficients a(0), ..., a(T-1) of a power series in q.

    ``modulus == 0`` means exact integer coefficients; otherwise every
    coefficient is a residue in ``[0, modulus)``.  Instances are immutable.
    """

    __slots__ = ("_c", "modulus")

    def __init__(self, coeffs: Iterable[int] | np.ndarray, modulus: int = 0):
        modulus = _check_modulus(modulus)
        if modulus:
            if isinstance(coeffs, np.ndarray) and coeffs.dtype == np.int64:
                arr = np.mod(coeffs, modulus)
            else:
                arr = np.array([int(c) % modulus for c in coeffs], dtype=np.int64)
        else:
            src = coeffs.tolist() if isinstance(coeffs, np.ndarray) else coeffs
            vals = [int(c) for c in src]
            arr = np.empty(len(vals), dtype=object)
            arr[:] = vals
        if arr.ndim != 1 or arr.shape[0] < 1:
            raise SeriesError("a truncated series needs at least one coefficient")
        arr.flags.writeable = False
        self._c = arr
        self.modulus = modulus

    @classmethod
    def _wrap(cls, arr: np.ndarray, modulus: int) -> "TruncatedSeries":
        # trusted constructor: arr already reduced and of the right dtype
        obj = object.__new__(cls)
        arr.flags.writeable = False
        obj._c = arr
        obj.modulus = modulus
        return obj

    @property
    def trunc(self) -> int:
        return self._c.shape[0]

    @property
    def coeffs(self) -> np.ndarray:
        return self._c

    def __len__(self) -> int:
        return self.trunc

    def __getitem__(self, n):
        if isinstance(n, slice):
            return [int(c) for c in self._c[n]]
        return int(self._c[n])

    def tolist(self) -> list[int]:
        return [int(c) for c in self._c]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.modulus == other.modulus
            and self.trunc == other.trunc
            and self.tolist() == other.tolist()
        )

    __hash__ = None

    def __repr__(self) -> str:
        head = self.tolist()[:8]
        more = ", ..." if self.trunc > 8 else ""
        return f"TruncatedSeries({head}{more}, modulus={self.modulus}, trunc={self.trunc})"

    def nonzero_terms(self) -> tuple[np.ndarray, list[int]]:
        """Exponents and values of the nonzero coefficients."""
        idx = np.flatnonzero(self._c != 0)
        return idx, [int(self._c[i]) for i in idx]

    def nnz(self) -> int:
        return int(np.count_nonzero(self._c != 0))

    def truncate(self, trunc: int) -> "TruncatedSeries":
        if trunc < 1 or trunc > self.trunc:
            raise SeriesError(f"cannot truncate a series of length {self.trunc} to {trunc}")
        return TruncatedSeries._wrap(self._c[:trunc].copy(), self.modulus)

    def reduce(self, modulus: int) -> "TruncatedSeries":
        """Reduce mod ``modulus``; it must divide the current modulus."""
        modulus = _check_modulus(modulus)
        if modulus == 0:
            if self.modulus:
                raise SeriesError("cannot lift residues back to exact integers")
            return self
        if self.modulus and self.modulus % modulus:
            raise SeriesError(f"{modulus} does not divide {self.modulus}")
        if self.modulus:
            return TruncatedSeries._wrap(np.mod(self._c, modulus), modulus)
        return TruncatedSeries(self._c, modulus)

    def signed(self) -> list[int]:
        """Coefficients as symmetric residues (exact coefficients unchanged)."""
        if not self.modulus:
            return self.tolist()
        half = self.modulus // 2
        return [c - self.modulus if c > half else c for c in self.tolist()]

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, other)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return add(self, negate(other))

    def __neg__(self) -> "TruncatedSeries":
        return negate(self)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return mul(self, other)

    def __truediv__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return div(self, other)

    def __pow__(self, e: int) -> "TruncatedSeries":
        return pow(self, e)


def _same_modulus(a: TruncatedSeries, b: TruncatedSeries) -> int:
    if a.modulus != b.modulus:
        raise SeriesError(f"modulus mismatch: {a.modulus} vs {b.modulus}")
    return a.modulus


def _from_object(arr: np.ndarray, modulus: int) -> TruncatedSeries:
    if modulus:
        return TruncatedSeries._wrap(np.array([int(c) % modulus for c in arr], dtype=np.int64), modulus)
    return TruncatedSeries._wrap(arr, 0)


def _fast(modulus: int) -> bool:
    return 0 < modulus < FAST_MODULUS_LIMIT


def make_constant(c: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    if trunc < 1:
        raise SeriesError("trunc must be positive")
    coeffs = [0] * trunc
    coeffs[0] = c
    return TruncatedSeries(coeffs, modulus)


def from_terms(terms: Mapping[int, int], trunc: int, modulus: int = 0) -> TruncatedSeries:
    """Series with the given {exponent: coefficient} entries; exponents past
    the truncation are dropped."""
    coeffs = [0] * trunc
    for e, c in terms.items():
        if e < 0:
            raise SeriesError("negative exponent")
        if e < trunc:
            coeffs[e] += c
    return TruncatedSeries(coeffs, modulus)


def add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    modulus = _same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    out = a.coeffs[:trunc] + b.coeffs[:trunc]
    if modulus:
        out = np.mod(out, modulus)
    return TruncatedSeries._wrap(out, modulus)


def negate(a: TruncatedSeries) -> TruncatedSeries:
    out = -a.coeffs
    if a.modulus:
        out = np.mod(out, a.modulus)
    return TruncatedSeries._wrap(out, a.modulus)


def scalar_mul(a: TruncatedSeries, c: int) -> TruncatedSeries:
    if a.modulus:
        c %= a.modulus
        if _fast(a.modulus):
            return TruncatedSeries._wrap(np.mod(a.coeffs * c, a.modulus), a.modulus)
        return _from_object(a.coeffs.astype(object) * c, a.modulus)
    return TruncatedSeries._wrap(a.coeffs * c, 0)


def mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Cauchy product, truncated at the shorter operand.  The factor with
    fewer nonzero coefficients drives the loop."""
    modulus = _same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    sa, sb = a.nnz(), b.nnz()
    sparse, dense = (a, b) if sa <= sb else (b, a)
    idx, vals = sparse.nonzero_terms()
    idx = idx[idx < trunc]
    vals = vals[: len(idx)]
    if _fast(modulus):
        out = _kernels.sparse_mul(
            idx.astype(np.int64),
            np.array(vals, dtype=np.int64),
            np.ascontiguousarray(dense.coeffs[:trunc]),
            trunc,
            modulus,
            _kernels.safe_chunk(modulus),
        )
        return TruncatedSeries._wrap(out, modulus)
    d = dense.coeffs[:trunc].astype(object)
    out = np.zeros(trunc, dtype=object)
    for s, v in zip(idx.tolist(), vals):
        out[s:] += v * d[: trunc - s]
        if modulus:
            out[s:] %= modulus
    return _from_object(out, modulus)


def _unit_inverse(c: int, modulus: int) -> int:
    if modulus:
        try:
            return builtins.pow(c, -1, modulus)
        except ValueError:
            raise SeriesError(f"constant term {c} is not a unit mod {modulus}") from None
    if c not in (1, -1):
        raise SeriesError(f"constant term {c} is not a unit in Z")
    return c


def div(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    """Quotient a/b; b must have an invertible constant term.  Cost is
    trunc times the number of nonzero coefficients of b."""
    modulus = _same_modulus(a, b)
    trunc = min(a.trunc, b.trunc)
    inv0 = _unit_inverse(int(b.coeffs[0]), modulus)
    idx, vals = b.nonzero_terms()
    keep = [(int(s), v) for s, v in zip(idx.tolist(), vals) if 0 < s < trunc]
    if _fast(modulus):
        bidx = np.array([s for s, _ in keep], dtype=np.int64)
        negval = np.array([(-v) % modulus for _, v in keep], dtype=np.int64)
        out = _kernels.sparse_div(
            np.ascontiguousarray(a.coeffs[:trunc]),
            bidx,
            negval,
            inv0,
            trunc,
            modulus,
            _kernels.safe_chunk(modulus),
        )
        return TruncatedSeries._wrap(out, modulus)
    num = a.coeffs[:trunc].tolist()
    out = [0] * trunc
    for n in range(trunc):
        acc = num[n]
        for s, v in keep:
            if s > n:
                break
            acc -= v * out[n - s]
        acc *= inv0
        out[n] = acc % modulus if modulus else acc
    arr = np.empty(trunc, dtype=object)
    arr[:] = out
    if modulus:
        return TruncatedSeries._wrap(arr.astype(np.int64), modulus)
    return TruncatedSeries._wrap(arr, 0)


def pow(a: TruncatedSeries, e: int) -> TruncatedSeries:  # noqa: A001
    """a**e by binary exponentiation."""
    if e < 0:
        raise SeriesError("negative exponent; use div")
    result = make_constant(1, a.trunc, a.modulus)
    base = a
    while e:
        if e & 1:
            result = mul(result, base)
        e >>= 1
        if e:
            base = mul(base, base)
    return result


def scale_exponents(a: TruncatedSeries, d: int, trunc: int | None = None) -> TruncatedSeries:
    """Substitute q -> q^d.  The result is known up to d*a.trunc, optionally
    capped at ``trunc``."""
    if d < 1:
        raise SeriesError("scale factor must be positive")
    full = d * a.trunc
    trunc = full if trunc is None else min(trunc, full)
    out = np.zeros(trunc, dtype=a.coeffs.dtype)
    src = a.coeffs[: (trunc - 1) // d + 1]
    out[: d * len(src) : d] = src
    return TruncatedSeries._wrap(out, a.modulus)


def shift(a: TruncatedSeries, k: int, trunc: int | None = None) -> TruncatedSeries:
    """Multiply by q^k (k >= 0), truncating at ``trunc`` (default a.trunc + k)."""
    if k < 0:
        raise SeriesError("negative shift")
    trunc = a.trunc + k if trunc is None else min(trunc, a.trunc + k)
    out = np.zeros(trunc, dtype=a.coeffs.dtype)
    if trunc > k:
        out[k:] = a.coeffs[: trunc - k]
    return TruncatedSeries._wrap(out, a.modulus)


# --- Euler products and theta functions -------------------------------------


def pentagonal_terms(nscale: int, trunc: int) -> dict[int, int]:
    """{exponent: sign} of sum_j (-1)^j q^(nscale*j(3j-1)/2), exponents < trunc."""
    terms = {0: 1}
    j = 1
    while True:
        e1 = nscale * j * (3 * j - 1) // 2
        if e1 >= trunc:
            break
        sign = -1 if j & 1 else 1
        terms[e1] = sign
        e2 = nscale * j * (3 * j + 1) // 2
        if e2 < trunc:
            terms[e2] = sign
        j += 1
    return terms


def euler_f(nscale: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """f_n = prod_{j>=1} (1 - q^(n j)) from the pentagonal number theorem."""
    if nscale < 1:
        raise SeriesError("nscale must be positive")
    return from_terms(pentagonal_terms(nscale, trunc), trunc, modulus)


def euler_f_product(nscale: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """f_n by multiplying out the factors (1 - q^(n j)) one at a time.

    Quadratic in ``trunc``; kept as an independent reference for
    :func:`euler_f`.
    """
    if nscale < 1:
        raise SeriesError("nscale must be positive")
    out = np.zeros(trunc, dtype=np.int64 if modulus else object)
    out[0] = 1
    for step in range(nscale, trunc, nscale):
        out[step:] = out[step:] - out[: trunc - step]
        if modulus:
            out %= modulus
    return TruncatedSeries(out, modulus)


def invert_euler(nscale: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """1/f_n via the pentagonal recurrence."""
    return div(make_constant(1, trunc, modulus), euler_f(nscale, trunc, modulus))


def partition_series(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """sum p(n) q^n."""
    return invert_euler(1, trunc, modulus)


def _mul_by_power(acc: TruncatedSeries, f: TruncatedSeries, e: int) -> TruncatedSeries:
    if e <= 0:
        return acc
    if e == 1:
        return mul(acc, f)
    fe = pow(f, e)
    if fe.nnz() < e * f.nnz():
        return mul(acc, fe)
    for _ in range(e):
        acc = mul(acc, f)
    return acc


def _div_by_power(acc: TruncatedSeries, f: TruncatedSeries, e: int) -> TruncatedSeries:
    if e <= 0:
        return acc
    if e == 1:
        return div(acc, f)
    fe = pow(f, e)
    if fe.nnz() < e * f.nnz():
        return div(acc, fe)
    for _ in range(e):
        acc = div(acc, f)
    return acc


def merge_exponents(pairs: Iterable[tuple[int, int]]) -> dict[int, int]:
    """Sum exponents of equal bases and drop the ones that cancel."""
    merged: dict[int, int] = {}
    for d, r in pairs:
        merged[d] = merged.get(d, 0) + r
    return {d: r for d, r in sorted(merged.items()) if r}


def euler_quotient(exponents: Mapping[int, int], trunc: int, modulus: int = 0) -> TruncatedSeries:
    """prod_d f_d^(r_d) for a finite map d -> r_d (negative r_d divide)."""
    acc = make_constant(1, trunc, modulus)
    for d, r in sorted(exponents.items()):
        if r > 0:
            acc = _mul_by_power(acc, euler_f(d, trunc, modulus), r)
    for d, r in sorted(exponents.items()):
        if r < 0:
            acc = _div_by_power(acc, euler_f(d, trunc, modulus), -r)
    return acc


def phi_neg_sum(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """sum_{n in Z} (-1)^n q^(n^2)."""
    terms = {0: 1}
    n = 1
    while n * n < trunc:
        terms[n * n] = 2 * (-1) ** n
        n += 1
    return from_terms(terms, trunc, modulus)


def psi_neg_sum(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """sum_{j in Z} (-1)^j q^(j(2j-1)), i.e. f(-q, -q^3) expanded."""
    terms = {0: 1}
    j = 1
    while j * (2 * j - 1) < trunc:
        sign = -1 if j & 1 else 1
        terms[j * (2 * j - 1)] = sign
        if j * (2 * j + 1) < trunc:
            terms[j * (2 * j + 1)] = sign
        j += 1
    return from_terms(terms, trunc, modulus)


def _agree(a: TruncatedSeries, b: TruncatedSeries, what: str) -> TruncatedSeries:
    if a != b:
        bad = next(n for n in range(a.trunc) if a[n] != b[n])
        raise ConsistencyError(f"{what}: sum and product forms differ at q^{bad}")
    return b


def phi_neg(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """phi(-q) = f_1^2 / f_2."""
    prod = euler_quotient({1: 2, 2: -1}, trunc, modulus)
    return _agree(phi_neg_sum(trunc, modulus), prod, "phi(-q)")


def psi_neg(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """psi(-q) = f_1 f_4 / f_2."""
    prod = euler_quotient({1: 1, 2: -1, 4: 1}, trunc, modulus)
    return _agree(psi_neg_sum(trunc, modulus), prod, "psi(-q)")


def f_neg(trunc: int, modulus: int = 0) -> TruncatedSeries:
    """f(-q) = f_1; the pentagonal sum is checked against the raw product."""
    return _agree(euler_f(1, trunc, modulus), euler_f_product(1, trunc, modulus), "f(-q)")


# --- generating functions of the t-core analogues ----------------------------


def ct_exponents(t: int) -> dict[int, int]:
    return merge_exponents([(t, t), (1, -1)])


def abar_exponents(t: int) -> dict[int, int]:
    return merge_exponents([(2, 1), (t, 2 * t), (1, -2), (2 * t, -t)])


def bbar_exponents(t: int) -> dict[int, int]:
    return merge_exponents([(2, 1), (t, t), (4 * t, t), (1, -1), (4, -1), (2 * t, -t)])


def ct_series(t: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """c_t(n): number of t-core partitions, from f_t^t / f_1."""
    if t < 2:
        raise SeriesError("t-cores need t >= 2")
    return euler_quotient(ct_exponents(t), trunc, modulus)


def abar_series(t: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """Coefficients of phi^t(-q^t)/phi(-q) = f_2 f_t^(2t) / (f_1^2 f_(2t)^t)."""
    if t < 1:
        raise SeriesError("t must be positive")
    return euler_quotient(abar_exponents(t), trunc, modulus)


def bbar_theta_form(t: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """psi^t(-q^t)/psi(-q) from the sparse theta sums."""
    psi_t = scale_exponents(psi_neg_sum((trunc - 1) // t + 1, modulus), t, trunc)
    acc = make_constant(1, trunc, modulus)
    for _ in range(t):
        acc = mul(acc, psi_t)
    return div(acc, psi_neg_sum(trunc, modulus))


def bbar_series(t: int, trunc: int, modulus: int = 0, crosscheck: bool = True) -> TruncatedSeries:
    """Coefficients of psi^t(-q^t)/psi(-q) = f_2 f_t^t f_(4t)^t / (f_1 f_4 f_(2t)^t).

    With ``crosscheck`` the eta-product result is compared against the
    theta-sum construction and a mismatch raises :class:`ConsistencyError`.
    """
    if t < 1:
        raise SeriesError("t must be positive")
    prod = euler_quotient(bbar_exponents(t), trunc, modulus)
    if crosscheck:
        _agree(bbar_theta_form(t, trunc, modulus), prod, f"bbar_{t}")
    return prod


GENERATORS = {"ct": ct_series, "abar": abar_series, "bbar": bbar_series}


def dump_csv(series: TruncatedSeries, t: int) -> str:
    """Coefficient dump: a ``# t=.. modulus=.. trunc=..`` header then ``n,coefficient`` lines."""
    lines = [f"# t={t} modulus={series.modulus} trunc={series.trunc}"]
    lines.extend(f"{n},{c}" for n, c in enumerate(series.tolist()))
    return "\n".join(lines) + "\n"


def load_csv(text: str) -> tuple[int, TruncatedSeries]:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    header = dict(kv.split("=") for kv in lines[0].lstrip("#").split())
    coeffs = []
    for n, ln in enumerate(lines[1:]):
        idx, c = ln.split(",")
        if int(idx) != n:
            raise SeriesError(f"row {n} carries index {idx}")
        coeffs.append(int(c))
    series = TruncatedSeries(coeffs, int(header["modulus"]))
    if series.trunc != int(header["trunc"]):
        raise SeriesError("row count does not match the trunc header")
    return int(header["t"]), series
