"""Dominant weights of U(n) as plain integer tuples."""

from __future__ import annotations

from fractions import Fraction
from itertools import groupby
from math import prod
from typing import NamedTuple, Sequence

Weight = tuple[int, ...]


class NotDominant(ValueError):
    def __init__(self, index: int, entries: Sequence[int]):
        self.index = index
        super().__init__(
            f"weight {tuple(entries)} is not non-increasing at index {index}"
        )


class LengthMismatch(ValueError):
    pass


class GroupedWeight(NamedTuple):
    values: tuple[int, ...]  # strictly decreasing
    multiplicities: tuple[int, ...]

    def expand(self) -> Weight:
        return tuple(v for v, k in zip(self.values, self.multiplicities) for _ in range(k))

    def blocks(self) -> list[range]:
        """Coordinate ranges occupied by each distinct value."""
        out, start = [], 0
        for k in self.multiplicities:
            out.append(range(start, start + k))
            start += k
        return out


def validate(seq: Sequence[int]) -> Weight:
    entries = tuple(int(e) for e in seq)
    if len(entries) == 0:
        raise ValueError("a weight needs at least one entry")
    for i in range(len(entries) - 1):
        if entries[i] < entries[i + 1]:
            raise NotDominant(i, entries)
    return entries


def parse_weight(text: str) -> Weight:
    """Parse ``"3,1,-2"`` into a validated weight."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        return validate([int(p) for p in parts])
    except ValueError as exc:
        if isinstance(exc, NotDominant):
            raise
        raise ValueError(f"cannot parse weight {text!r}: {exc}") from None


def check_lengths(*weights: Sequence[int]) -> int:
    n = len(weights[0])
    for w in weights[1:]:
        if len(w) != n:
            raise LengthMismatch(f"weights of lengths {n} and {len(w)}")
    return n


def group(lam: Sequence[int]) -> GroupedWeight:
    runs = [(v, len(list(g))) for v, g in groupby(lam)]
    return GroupedWeight(tuple(v for v, _ in runs), tuple(k for _, k in runs))


def is_strongly_dominant(lam: Sequence[int]) -> bool:
    return all(a > b for a, b in zip(lam, lam[1:]))


def is_scalar(lam: Sequence[int]) -> bool:
    return len(set(lam)) == 1


def interlaces_below(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """True iff lam_1 >= mu_1 >= lam_2 >= mu_2 >= ... >= lam_n >= mu_n.

    Equivalently lam/mu is a horizontal strip, so that tau_mu occurs in
    tau_lam tensored with the dual of Sym^k, k = sum(lam - mu).
    """
    n = check_lengths(lam, mu)
    if any(lam[i] < mu[i] for i in range(n)):
        return False
    return all(mu[i] >= lam[i + 1] for i in range(n - 1))


def weyl_dimension(lam: Sequence[int]) -> int:
    n = len(lam)
    num = prod(lam[i] - lam[j] + j - i for i in range(n) for j in range(i + 1, n))
    den = prod(j - i for i in range(n) for j in range(i + 1, n))
    d = Fraction(num, den)
    assert d.denominator == 1
    return int(d)


def shift(lam: Sequence[int], c: int) -> Weight:
    return tuple(x + c for x in lam)
