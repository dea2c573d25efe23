"""Hecke operators T_p on truncated q-expansions, and nilpotency experiments
on the weight 2^(k-1)+1 form F(1,1,k) modulo powers of 2.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np
from sympy import isprime

from . import etaq, qseries
from .qseries import TruncatedSeries


class HeckeError(ValueError):
    pass


@dataclass(frozen=True)
class HeckeForm:
    series: TruncatedSeries
    weight: int
    character_kernel: int
    level: int

    def __post_init__(self):
        if self.weight < 1:
            raise HeckeError(f"weight must be positive, got {self.weight}")
        if self.level < 1:
            raise HeckeError(f"level must be positive, got {self.level}")

    @property
    def modulus(self) -> int:
        return self.series.modulus

    @classmethod
    def from_eta(cls, eq: etaq.EtaQuotient, trunc: int, modulus: int = 0) -> "HeckeForm":
        return cls(
            series=etaq.q_expansion(eq, trunc, modulus),
            weight=etaq.integral_weight(eq),
            character_kernel=etaq.character_kernel(eq),
            level=eq.level,
        )


def apply_Tp(f: HeckeForm, p: int) -> HeckeForm:
    """a(n) -> a(pn) + chi(p) p^(weight-1) a(n/p); keeps floor(T/p) terms."""
    if not isprime(p):
        raise HeckeError(f"{p} is not prime")
    if f.level % p == 0:
        raise HeckeError(f"T_{p} needs p coprime to the level {f.level}")
    trunc = f.series.trunc // p
    if trunc < 1:
        raise HeckeError(f"truncation {f.series.trunc} is too short for T_{p}")
    mod = f.modulus
    chi = etaq.kronecker(f.character_kernel, p)
    if mod:
        scale = chi * pow(p, f.weight - 1, mod) % mod
    else:
        scale = chi * p ** (f.weight - 1)
    a = f.series.coeffs
    if 0 < mod < qseries.FAST_MODULUS_LIMIT:
        out = a[: p * trunc : p].copy()
        lower = a[: (trunc - 1) // p + 1]
        out[::p] = (out[::p] + scale * lower) % mod
    else:
        out = a[: p * trunc : p].astype(object)
        out[::p] += scale * a[: (trunc - 1) // p + 1].astype(object)
        if mod:
            out = np.array([int(c) % mod for c in out], dtype=np.int64)
    series = TruncatedSeries._wrap(out, mod) if mod else TruncatedSeries(out, 0)
    return HeckeForm(series, f.weight, f.character_kernel, f.level)


def apply_chain(f: HeckeForm, primes) -> HeckeForm:
    for p in primes:
        f = apply_Tp(f, p)
    return f


@dataclass(frozen=True)
class ChainStep:
    prime: int
    trunc: int
    nonzero_count: int
    first_nonzero_exponent: int | None

    def to_dict(self) -> dict:
        return {
            "prime": self.prime,
            "trunc": self.trunc,
            "nonzeroCount": self.nonzero_count,
            "firstNonzeroExponent": self.first_nonzero_exponent,
        }


@dataclass(frozen=True)
class NilpotencyResult:
    """Outcome of an annihilation-depth search.

    ``depth`` is the smallest c for which every c-element subset of the
    primes kills the form within truncation, or None.  ``exhausted`` is set
    when the search stopped because the surviving truncation fell below
    ``min_terms`` before any depth was confirmed.
    """

    depth: int | None
    exhausted: bool
    modulus: int
    primes: tuple[int, ...]
    steps: tuple[ChainStep, ...]
    min_terms: int
    checked: dict = field(default_factory=dict)

    @property
    def verdict(self) -> str:
        if self.depth is not None:
            return f"annihilated at depth {self.depth}"
        if self.exhausted:
            return "not annihilated: truncation exhausted"
        return "not annihilated by the supplied primes"

    def to_dict(self) -> dict:
        return {
            "modulus": self.modulus,
            "primes": list(self.primes),
            "steps": [s.to_dict() for s in self.steps],
            "annihilatedAtDepth": self.depth,
            "truncationExhausted": self.exhausted,
            "verdict": self.verdict,
        }


def _first_nonzero(s: TruncatedSeries) -> int | None:
    nz = np.flatnonzero(s.coeffs != 0)
    return int(nz[0]) if nz.size else None


def annihilation_depth(f: HeckeForm, primes, min_terms: int = 50) -> NilpotencyResult:
    """Smallest c such that T_{q_1} ... T_{q_c} kills f for every choice of c
    distinct primes from ``primes``, judged on the coefficients that survive
    truncation.  Operators at distinct primes commute, so subsets suffice.
    """
    primes = tuple(primes)
    if len(set(primes)) != len(primes):
        raise HeckeError("primes must be distinct")
    for p in primes:
        if math.gcd(p, 6) != 1:
            raise HeckeError(f"{p} is not coprime to 6")
    steps = []
    cur = f
    for p in primes:
        if cur.series.trunc // p < 1:
            break
        cur = apply_Tp(cur, p)
        steps.append(ChainStep(p, cur.series.trunc, cur.series.nnz(), _first_nonzero(cur.series)))

    checked: dict = {}
    for c in range(len(primes) + 1):
        subsets = list(itertools.combinations(primes, c))
        if f.series.trunc // max(math.prod(s) for s in subsets) < min_terms:
            return NilpotencyResult(None, True, f.modulus, primes, tuple(steps), min_terms, checked)
        killed = all(apply_chain(f, s).series.nnz() == 0 for s in subsets)
        checked[c] = killed
        if killed:
            return NilpotencyResult(c, False, f.modulus, primes, tuple(steps), min_terms, checked)
    return NilpotencyResult(None, False, f.modulus, primes, tuple(steps), min_terms, checked)


def f11k_form(k: int, v: int, trunc: int) -> HeckeForm:
    """F(1,1,k) expanded mod 2^v."""
    if v < 1:
        raise HeckeError("v must be positive")
    return HeckeForm.from_eta(etaq.family_F(1, 1, k), trunc, 2**v)


def nilpotency_search(k: int, v: int, primes, trunc: int, min_terms: int = 50) -> NilpotencyResult:
    return annihilation_depth(f11k_form(k, v, trunc), primes, min_terms)


@dataclass(frozen=True)
class CongruenceCheck:
    primes: tuple[int, ...]
    modulus: int
    tested: int
    counterexamples: tuple[int, ...]

    @property
    def vacuous(self) -> bool:
        return self.tested == 0

    @property
    def passed(self) -> bool:
        return not self.vacuous and not self.counterexamples

    def to_dict(self) -> dict:
        return {
            "primes": list(self.primes),
            "modulus": self.modulus,
            "tested": self.tested,
            "vacuous": self.vacuous,
            "passed": self.passed,
            "counterexamples": list(self.counterexamples),
        }


def theorem7_arguments(q_list, nmax: int, ns=None) -> list[tuple[int, int]]:
    """(n, index) pairs with gcd(n, Q) = 1 and index = (Q n - 24)/24 a
    nonnegative integer, Q = prod q_list."""
    big_q = math.prod(q_list)
    ns = range(1, nmax + 1) if ns is None else [n for n in ns if 1 <= n <= nmax]
    out = []
    for n in ns:
        if math.gcd(n, big_q) != 1:
            continue
        num = big_q * n - 24
        if num >= 0 and num % 24 == 0:
            out.append((n, num // 24))
    return out


def verify_theorem7_instance(q_list, v: int, nmax: int, trunc: int | None = None, ns=None,
                             coefficients: TruncatedSeries | None = None) -> CongruenceCheck:
    """Check bbar_3((Q n - 24)/24) = 0 mod 2^v at every admissible n <= nmax.

    ``coefficients`` replaces the bbar_3 series (it must be reduced mod 2^v
    or exact); otherwise bbar_3 is computed mod 2^v to the needed length.
    """
    q_list = tuple(q_list)
    if len(set(q_list)) != len(q_list):
        raise HeckeError("primes must be distinct")
    for q in q_list:
        if not isprime(q) or math.gcd(q, 6) != 1:
            raise HeckeError(f"{q} is not a prime coprime to 6")
    if v < 1:
        raise HeckeError("v must be positive")
    mod = 2**v
    args = theorem7_arguments(q_list, nmax, ns)
    need = max((i for _, i in args), default=0) + 1
    if coefficients is None:
        if trunc is not None and trunc < need:
            raise HeckeError(f"truncation {trunc} is below the {need} coefficients required")
        coefficients = qseries.bbar_series(3, max(need, trunc or 0), mod, crosscheck=False)
    elif coefficients.trunc < need:
        raise HeckeError(f"supplied series has {coefficients.trunc} < {need} coefficients")
    bad = tuple(n for n, i in args if coefficients[i] % mod)
    return CongruenceCheck(q_list, mod, len(args), bad)
