"""Brute-force partitions and Ferrers-Young hook numbers.

This is a test oracle for the t-core generating function, so it is kept
deliberately naive: enumerate every partition, compute every hook.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

MAX_ENUMERATE = 60
MAX_COUNT = 40


class GuardError(ValueError):
    pass


@dataclass(frozen=True)
class PartitionDiagram:
    parts: tuple[int, ...]

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise ValueError(f"parts must be positive: {parts}")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError(f"parts must be non-increasing: {parts}")
        object.__setattr__(self, "parts", parts)

    @property
    def n(self) -> int:
        return sum(self.parts)

    def conjugate(self) -> "PartitionDiagram":
        if not self.parts:
            return self
        return PartitionDiagram(
            tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0]))
        )


def partitions_of(n: int) -> Iterator[PartitionDiagram]:
    """All partitions of n, lexicographically descending."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if n > MAX_ENUMERATE:
        raise GuardError(f"refusing to enumerate partitions of {n} > {MAX_ENUMERATE}")

    def rec(remaining: int, largest: int, prefix: list[int]):
        if remaining == 0:
            yield PartitionDiagram(tuple(prefix))
            return
        for part in range(min(remaining, largest), 0, -1):
            prefix.append(part)
            yield from rec(remaining - part, part, prefix)
            prefix.pop()

    yield from rec(n, n, [])


def hook_numbers(d: PartitionDiagram) -> list[list[int]]:
    """Hook lengths H(i, j) = parts[i] - j + conj[j] - i - 1 (0-based i, j)."""
    conj = d.conjugate().parts
    return [
        [row - j + conj[j] - i - 1 for j in range(row)]
        for i, row in enumerate(d.parts)
    ]


def is_t_core(d: PartitionDiagram, t: int) -> bool:
    if t < 2:
        raise ValueError("t must be at least 2")
    return all(h % t for row in hook_numbers(d) for h in row)


def count_t_cores(n: int, t: int) -> int:
    if n > MAX_COUNT:
        raise GuardError(f"refusing to count t-cores of {n} > {MAX_COUNT}")
    return sum(1 for d in partitions_of(n) if is_t_core(d, t))


def t_core_table(nmax: int, ts) -> dict[int, list[int]]:
    """{t: [c_t(0), ..., c_t(nmax)]}, computing each partition's hooks once."""
    if nmax > MAX_COUNT:
        raise GuardError(f"refusing to count t-cores beyond n = {MAX_COUNT}")
    ts = list(ts)
    table = {t: [0] * (nmax + 1) for t in ts}
    for n in range(nmax + 1):
        for d in partitions_of(n):
            hooks = [h for row in hook_numbers(d) for h in row]
            for t in ts:
                if all(h % t for h in hooks):
                    table[t][n] += 1
    return table
