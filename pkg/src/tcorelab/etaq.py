"""Eta-quotients prod_{delta | N} eta(delta z)^(r_delta).

Weight, the two 24-divisibility level conditions, the quadratic Nebentypus
character and the orders of vanishing at cusps are computed with exact
rational arithmetic.  :func:`expand` turns a quotient into a q-series.

The constructors at the bottom build the auxiliary quotients E, G, A and
the combined quotients F, H, B whose expansions are congruent to shifted
copies of the bbar_t generating function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from sympy import divisors, factorint, isprime
from sympy.functions.combinatorial.numbers import kronecker_symbol

from . import qseries
from .qseries import TruncatedSeries

MAX_LEVEL_MULTIPLIER = 24


class EtaError(ValueError):
    """Parameter-domain or well-formedness violation."""


class LevelError(EtaError):
    """No admissible level multiplier exists."""


@dataclass(frozen=True)
class EtaQuotient:
    level: int
    terms: tuple[tuple[int, int], ...]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        if self.level < 1:
            raise EtaError(f"level must be positive, got {self.level}")
        merged = qseries.merge_exponents(self.terms)
        for delta in merged:
            if delta < 1 or self.level % delta:
                raise EtaError(f"eta({delta}z) does not divide level {self.level}")
        object.__setattr__(self, "terms", tuple(merged.items()))

    @classmethod
    def of(cls, exponents: Mapping[int, int] | Iterable[tuple[int, int]], level: int | None = None, name: str = ""):
        pairs = list(exponents.items()) if isinstance(exponents, Mapping) else list(exponents)
        if level is None:
            level = math.lcm(*[d for d, r in pairs if r]) if any(r for _, r in pairs) else 1
        return cls(level, tuple(pairs), name)

    @property
    def exponents(self) -> dict[int, int]:
        return dict(self.terms)

    def with_level(self, level: int) -> "EtaQuotient":
        return EtaQuotient(level, self.terms, self.name)

    def power(self, e: int) -> "EtaQuotient":
        return EtaQuotient(self.level, tuple((d, r * e) for d, r in self.terms), self.name and f"{self.name}^{e}")

    def __mul__(self, other: "EtaQuotient") -> "EtaQuotient":
        return EtaQuotient.of(self.terms + other.terms, math.lcm(self.level, other.level))

    def __str__(self) -> str:
        body = " ".join(f"eta({d}z)^{r}" for d, r in self.terms) or "1"
        return f"{self.name + ' = ' if self.name else ''}{body} [N={self.level}]"


def weight(eq: EtaQuotient) -> Fraction:
    return Fraction(sum(r for _, r in eq.terms), 2)


def level_sums(eq: EtaQuotient, level: int | None = None) -> tuple[int, int]:
    """(sum delta*r_delta, sum (N/delta)*r_delta)."""
    n = eq.level if level is None else level
    return (
        sum(d * r for d, r in eq.terms),
        sum((n // d) * r for d, r in eq.terms),
    )


def check_level_conditions(eq: EtaQuotient) -> tuple[bool, bool]:
    a, b = level_sums(eq)
    return a % 24 == 0, b % 24 == 0


def minimal_level(eq: EtaQuotient, base: int | None = None) -> int:
    """Smallest N = base*M, 1 <= M <= 24, satisfying both level conditions.

    Both conditions depend on M only modulo 24, so no larger M can help.
    """
    base = eq.level if base is None else base
    if any(base % d for d, _ in eq.terms):
        raise EtaError(f"base level {base} is not a multiple of every delta")
    for mult in range(1, MAX_LEVEL_MULTIPLIER + 1):
        a, b = level_sums(eq, base * mult)
        if a % 24 == 0 and b % 24 == 0:
            return base * mult
    raise LevelError(f"no multiplier M <= {MAX_LEVEL_MULTIPLIER} satisfies the level conditions for {eq}")


def integral_weight(eq: EtaQuotient) -> int:
    w = weight(eq)
    if w.denominator != 1:
        raise EtaError(f"weight {w} is not an integer")
    return int(w)


def squarefree_kernel(exponents: Mapping[int, int], sign: int = 1) -> int:
    """Squarefree part of sign * prod base^e (e may be negative)."""
    odd: dict[int, int] = {}
    for base, e in exponents.items():
        for p, k in factorint(base).items():
            odd[p] = odd.get(p, 0) + k * e
    kernel = -1 if sign < 0 else 1
    for p, k in sorted(odd.items()):
        if k % 2:
            kernel *= p
    return kernel


def character_kernel(eq: EtaQuotient) -> int:
    """D with chi(d) = (D/d): squarefree part of (-1)^weight * prod delta^r."""
    ell = integral_weight(eq)
    return squarefree_kernel(eq.exponents, -1 if ell % 2 else 1)


def kronecker(a: int, n: int) -> int:
    return int(kronecker_symbol(a, n))


def character_eval(eq: EtaQuotient, d: int) -> int:
    if math.gcd(d, eq.level) != 1:
        raise EtaError(f"character undefined at {d}: not coprime to level {eq.level}")
    return kronecker(character_kernel(eq), d)


def cusp_order(eq: EtaQuotient, d: int) -> Fraction:
    """Order of vanishing at a cusp c/d of Gamma_0(N); depends only on d."""
    n = eq.level
    if d < 1 or n % d:
        raise EtaError(f"{d} does not divide the level {n}")
    total = sum(
        Fraction(math.gcd(d, delta) ** 2 * r, math.gcd(d, n // d) * d * delta)
        for delta, r in eq.terms
    )
    return Fraction(n, 24) * total


@dataclass(frozen=True)
class ModularityReport:
    weight: Fraction
    level: int
    condition_a: bool
    condition_b: bool
    character_kernel: int | None
    cusp_orders: tuple[tuple[int, Fraction], ...]
    holomorphic: bool

    @property
    def is_modular_form(self) -> bool:
        """Integral weight, both level conditions, holomorphic at all cusps."""
        return (
            self.weight.denominator == 1
            and self.weight > 0
            and self.condition_a
            and self.condition_b
            and self.holomorphic
        )

    def to_dict(self) -> dict:
        return {
            "weight": str(self.weight),
            "level": str(self.level),
            "conditionA": self.condition_a,
            "conditionB": self.condition_b,
            "characterKernel": None if self.character_kernel is None else str(self.character_kernel),
            "cusps": [
                {"d": str(d), "orderNum": str(o.numerator), "orderDen": str(o.denominator)}
                for d, o in self.cusp_orders
            ],
            "holomorphic": self.holomorphic,
        }


def modularity_report(eq: EtaQuotient) -> ModularityReport:
    w = weight(eq)
    a, b = check_level_conditions(eq)
    kernel = character_kernel(eq) if w.denominator == 1 else None
    orders = tuple((d, cusp_order(eq, d)) for d in divisors(eq.level))
    return ModularityReport(
        weight=w,
        level=eq.level,
        condition_a=a,
        condition_b=b,
        character_kernel=kernel,
        cusp_orders=orders,
        holomorphic=all(o >= 0 for _, o in orders),
    )


@dataclass(frozen=True)
class EtaExpansion:
    """eta-quotient = q^(offset24/24) * series."""

    offset24: int
    series: TruncatedSeries

    @property
    def leading_exponent(self) -> Fraction:
        return Fraction(self.offset24, 24)

    def integer_series(self, trunc: int | None = None) -> TruncatedSeries:
        """Coefficients at integer exponents 0 .. trunc-1."""
        if self.offset24 % 24:
            raise EtaError(f"q^({self.offset24}/24) is not an integral power")
        off = self.offset24 // 24
        if off < 0:
            raise EtaError("expansion has a pole at infinity")
        full = self.series.trunc + off
        trunc = full if trunc is None else trunc
        if trunc > full:
            raise EtaError(f"expansion only known to q^{full - 1}")
        if off >= trunc:
            return qseries.make_constant(0, trunc, self.series.modulus)
        return qseries.shift(self.series, off, trunc)


def expand(eq: EtaQuotient, trunc: int, modulus: int = 0) -> EtaExpansion:
    return EtaExpansion(
        offset24=level_sums(eq)[0],
        series=qseries.euler_quotient(eq.exponents, trunc, modulus),
    )


def q_expansion(eq: EtaQuotient, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """Integer-exponent expansion known through q^(trunc-1)."""
    off24 = level_sums(eq)[0]
    if off24 % 24 or off24 < 0:
        raise EtaError(f"leading exponent {Fraction(off24, 24)} is not a nonnegative integer")
    rel = max(1, trunc - off24 // 24)
    return expand(eq, rel, modulus).integer_series(trunc)


# --- the families -------------------------------------------------------------


def _check_alpha_m(alpha: int, m: int) -> None:
    if alpha < 0:
        raise EtaError(f"alpha must be nonnegative, got {alpha}")
    if m < 1 or math.gcd(m, 6) != 1:
        raise EtaError(f"m must be a positive integer coprime to 6, got {m}")


def _check_k(k: int) -> None:
    if k < 1:
        raise EtaError(f"k must be positive, got {k}")


def _finish(pairs, base: int, level: int | None, name: str) -> EtaQuotient:
    eq = EtaQuotient.of(pairs, base, name)
    if level is None:
        return eq.with_level(minimal_level(eq))
    if level % base:
        raise EtaError(f"level {level} is not a multiple of {base}")
    return eq.with_level(level)


def family_E(alpha: int, m: int) -> EtaQuotient:
    """eta^2(2^4 3^(alpha+1) m z) / eta(2^5 3^(alpha+1) m z)."""
    _check_alpha_m(alpha, m)
    x = 16 * 3 ** (alpha + 1) * m
    return _finish([(x, 2), (2 * x, -1)], 2 * x, None, f"E({alpha},{m})")


def family_G(alpha: int, m: int) -> EtaQuotient:
    """eta^3(2^5 3^(alpha+1) m z) / eta(2^5 3^(alpha+2) m z)."""
    _check_alpha_m(alpha, m)
    y = 32 * 3 ** (alpha + 1) * m
    return _finish([(y, 3), (3 * y, -1)], 3 * y, None, f"G({alpha},{m})")


def _check_prime(p: int) -> None:
    if not isprime(p) or p < 5:
        raise EtaError(f"{p} is not a prime >= 5")


def family_A(p: int, a: int) -> EtaQuotient:
    """eta^(p^a)(24z) / eta(24 p^a z)."""
    _check_prime(p)
    if a < 1:
        raise EtaError(f"exponent a must be positive, got {a}")
    q = p**a
    return _finish([(24, q), (24 * q, -1)], 24 * q, None, f"A({p},{a})")


def family_F(alpha: int, m: int, k: int, level: int | None = None) -> EtaQuotient:
    """bbar_(3^alpha m) quotient times E(alpha, m)^(2^k).

    The level defaults to the smallest admissible multiple of 2^5 3^(alpha+1) m.
    """
    _check_alpha_m(alpha, m)
    _check_k(k)
    a = 3**alpha * m
    x = 8 * 3 ** (alpha + 1) * m
    pairs = [(24, -1), (48, 1), (96, -1), (x, a), (2 * x, 2 ** (k + 1) - a), (4 * x, a - 2**k)]
    return _finish(pairs, 4 * x, level, f"F({alpha},{m},{k})")


def family_H(alpha: int, m: int, k: int, level: int | None = None) -> EtaQuotient:
    """bbar_(3^alpha m) quotient times G(alpha, m)^(3^k)."""
    _check_alpha_m(alpha, m)
    _check_k(k)
    a = 3**alpha * m
    x = 8 * 3 ** (alpha + 1) * m
    y = 4 * x
    pairs = [
        (24, -1), (48, 1), (96, -1),
        (x, a), (2 * x, -a), (y, 3 ** (k + 1) + a), (3 * y, -(3**k)),
    ]
    return _finish(pairs, 3 * y, level, f"H({alpha},{m},{k})")


def normalize_prime_powers(primes: Mapping[int, int] | Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    pairs = list(primes.items()) if isinstance(primes, Mapping) else [tuple(x) for x in primes]
    seen = set()
    for p, a in pairs:
        _check_prime(p)
        if a < 1:
            raise EtaError(f"exponent of {p} must be positive, got {a}")
        if p in seen:
            raise EtaError(f"prime {p} listed twice")
        seen.add(p)
    if not pairs:
        raise EtaError("need at least one prime")
    return pairs


def t_from_primes(primes) -> int:
    return math.prod(p**a for p, a in normalize_prime_powers(primes))


def family_B(primes, i: int, k: int, level: int | None = None) -> EtaQuotient:
    """bbar_t quotient times A_i^(p_i^k), t = prod p_j^(a_j).

    ``primes`` is a sequence of (p, a) pairs (or a {p: a} map); ``i`` is the
    1-based index of the prime whose power is used.
    """
    pairs_pa = normalize_prime_powers(primes)
    _check_k(k)
    if not 1 <= i <= len(pairs_pa):
        raise EtaError(f"index {i} outside 1..{len(pairs_pa)}")
    t = math.prod(p**a for p, a in pairs_pa)
    p, a = pairs_pa[i - 1]
    pairs = [
        (24, p ** (a + k) - 1), (48, 1), (96, -1),
        (24 * t, t), (48 * t, -t), (96 * t, t), (24 * p**a, -(p**k)),
    ]
    return _finish(pairs, 96 * t, level, f"B({i},{k},{t})")


def bbar_offset(t: int) -> int:
    """Leading exponent 3(t^2 - 1) of the shifted bbar_t series."""
    return 3 * (t * t - 1)


def shifted_bbar(t: int, trunc: int, modulus: int = 0) -> TruncatedSeries:
    """sum_n bbar_t(n) q^(24n + 3(t^2-1)), known through q^(trunc-1)."""
    off = bbar_offset(t)
    rel = max(1, (trunc - 1 - off) // 24 + 1)
    base = qseries.bbar_series(t, rel, modulus, crosscheck=False)
    spread = qseries.scale_exponents(base, 24)
    if off >= trunc:
        return qseries.make_constant(0, trunc, modulus)
    return qseries.shift(spread, off, trunc)


FAMILIES = {"E", "G", "A", "F", "H", "B"}
