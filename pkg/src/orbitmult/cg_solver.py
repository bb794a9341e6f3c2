"""Exact Corwin-Greenleaf multiplicity n(O_(lam,alpha), O_mu) for U(n) x H_n.

For the generic form (U_lam, 0, alpha) the intersection with pr^{-1}(O_mu) is
governed by the set of z with spec(diag(lam) + (alpha/2) z z*) = mu. Its
characteristic polynomial factors as

    P(x) = prod_t (x - l_t)^(n_t - 1) * Q(x),
    Q(x) = prod_t (x - l_t) - (alpha/2) sum_t c_t prod_{s != t} (x - l_s),

where l_t are the distinct entries of lam (multiplicity n_t) and c_t the
squared norm of z on block t. Matching P with prod_k (x - mu_k) pins c
uniquely, and the stabilizer of U_lam acts transitively on the solutions,
so n is 0 or 1.
"""

from __future__ import annotations

import enum
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Optional, Sequence, Union

import numpy as np

from orbitmult import exact
from orbitmult.weights import (
    Weight,
    check_lengths,
    group,
    is_scalar,
    is_strongly_dominant,
    validate,
)

INFINITE = math.inf
"""Reserved multiplicity value; never produced for generic orbits."""

Rational = Union[Fraction, int, str]


class ZeroAlpha(ValueError):
    pass


class NotScalarLambda(ValueError):
    pass


class Path(str, enum.Enum):
    THEOREM3_SYSTEM = "Theorem3System"
    THEOREM4_SCALAR = "Theorem4Scalar"
    GENERAL_GROUPED = "GeneralGrouped"


def as_rational(alpha: Rational) -> Fraction:
    if isinstance(alpha, float):
        raise TypeError("alpha must be an exact rational, got a float")
    a = Fraction(alpha)
    if a == 0:
        raise ZeroAlpha("alpha must be nonzero")
    return a


def fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Witness:
    """Sparse z with z[index] = sqrt(radicand); other coordinates vanish."""

    n: int
    entries: tuple[tuple[Fraction, int], ...] = ()

    def to_complex(self) -> np.ndarray:
        z = np.zeros(self.n, dtype=complex)
        for radicand, idx in self.entries:
            z[idx] = math.sqrt(radicand)
        return z

    def squared_norms(self) -> list[Fraction]:
        out = [Fraction(0)] * self.n
        for radicand, idx in self.entries:
            out[idx] = radicand
        return out

    def to_json(self) -> list[dict]:
        return [{"radicand": fmt_rational(r), "index": i} for r, i in self.entries]


@dataclass(frozen=True)
class CGResult:
    multiplicity: Union[int, float]
    path: Path
    group_norms: Optional[tuple[Fraction, ...]] = None
    witness: Optional[Witness] = None
    diagnostics: str = ""

    def to_json(self) -> dict:
        n = self.multiplicity
        return {
            "n": "inf" if n == INFINITE else int(n),
            "path": self.path.value,
            "c": None if self.group_norms is None else [fmt_rational(c) for c in self.group_norms],
            "witness": None if self.witness is None else self.witness.to_json(),
            "diagnostics": self.diagnostics,
        }


def paper_system(lam: Sequence[int], mu: Sequence[int]) -> tuple[list[list[int]], list[int]]:
    """B[i][j] = prod_{k != j} (mu_i - lam_k),  V[i] = prod_k (mu_i - lam_k)."""
    n = check_lengths(lam, mu)
    B = [[prod(mu[i] - lam[k] for k in range(n) if k != j) for j in range(n)] for i in range(n)]
    V = [prod(mu[i] - lam[k] for k in range(n)) for i in range(n)]
    return B, V


def residual_spectrum(lam: Sequence[int], mu: Sequence[int]) -> Optional[list[int]]:
    """mu minus the n_t - 1 copies of each lam value forced into any spectrum."""
    g = group(lam)
    pool = Counter(mu)
    for v, k in zip(g.values, g.multiplicities):
        if pool[v] < k - 1:
            return None
        pool[v] -= k - 1
    return sorted(pool.elements(), reverse=True)


def solve_group_norms(lam: Sequence[int], mu: Sequence[int], alpha: Rational) -> Optional[list[Fraction]]:
    """Unique candidate block norms c_t, or None when mu misses a forced value.

    c_t = -(2/alpha) prod_{r in R} (l_t - r) / prod_{s != t} (l_t - l_s),
    from Q(l_t) = prod_r (l_t - r). Entries may be negative.
    """
    a = as_rational(alpha)
    check_lengths(lam, mu)
    g = group(lam)
    rest = residual_spectrum(lam, mu)
    if rest is None:
        return None
    vals = g.values
    out = []
    for t, lt in enumerate(vals):
        num = prod(Fraction(lt - r) for r in rest)
        den = prod(Fraction(lt - ls) for s, ls in enumerate(vals) if s != t)
        out.append(-2 / a * num / den)
    return out


def solve_paper_system(lam: Sequence[int], mu: Sequence[int], alpha: Rational) -> list[Fraction]:
    """Solve (alpha/2) B c = V exactly; raises exact.SingularMatrix when det B = 0."""
    a = as_rational(alpha)
    B, V = paper_system(lam, mu)
    return [2 / a * x for x in exact.solve(B, V)]


def witness(lam: Sequence[int], alpha: Rational, mu: Sequence[int]) -> Optional[Witness]:
    c = solve_group_norms(lam, mu, alpha)
    if c is None or any(ct < 0 for ct in c):
        return None
    return _witness_from_norms(lam, c)


def _witness_from_norms(lam: Sequence[int], c: Sequence[Fraction]) -> Witness:
    blocks = group(lam).blocks()
    entries = tuple((ct, blk.start) for ct, blk in zip(c, blocks) if ct != 0)
    return Witness(len(lam), entries)


def _path(lam: Weight, mu: Weight) -> Path:
    if is_strongly_dominant(lam):
        B, _ = paper_system(lam, mu)
        if exact.determinant(B) != 0:
            return Path.THEOREM3_SYSTEM
    if is_scalar(lam):
        return Path.THEOREM4_SCALAR
    return Path.GENERAL_GROUPED


def cg_multiplicity(lam: Sequence[int], alpha: Rational, mu: Sequence[int]) -> CGResult:
    lam, mu = validate(lam), validate(mu)
    check_lengths(lam, mu)
    a = as_rational(alpha)
    path = _path(lam, mu)
    c = solve_group_norms(lam, mu, a)
    if c is None:
        g = group(lam)
        return CGResult(
            0, path,
            diagnostics=f"mu lacks forced eigenvalues: needs each of {list(g.values)} "
            f"at least {[k - 1 for k in g.multiplicities]} times",
        )
    if any(ct < 0 for ct in c):
        return CGResult(
            0, path,
            diagnostics="candidate block norms " + ", ".join(fmt_rational(x) for x in c)
            + " include a negative entry",
        )
    return CGResult(
        1, path, tuple(c), _witness_from_norms(lam, c),
        diagnostics="single orbit of the stabilizer of U_lam on a product of spheres",
    )


def secular_polynomial_at(lam: Sequence[int], alpha: Rational, c: Sequence[Fraction], x) -> Fraction:
    """P(x) in grouped form: prod_t (x-l_t)^n_t - (alpha/2) sum_t c_t (x-l_t)^(n_t-1) prod_{s!=t} (x-l_s)^n_s."""
    a = as_rational(alpha)
    g = group(lam)
    x = Fraction(x)
    vals, mults = g.values, g.multiplicities
    if len(c) != len(vals):
        raise ValueError(f"expected {len(vals)} block norms, got {len(c)}")
    lead = prod((x - v) ** k for v, k in zip(vals, mults))
    pert = sum(
        Fraction(ct) * (x - vals[t]) ** (mults[t] - 1)
        * prod((x - vals[s]) ** mults[s] for s in range(len(vals)) if s != t)
        for t, ct in enumerate(c)
    )
    return lead - a / 2 * pert


def paper_necessary_condition(lam, alpha: Rational, mu, c) -> bool:
    """Do all mu_k annihilate the secular polynomial? Necessary, not sufficient."""
    return all(secular_polynomial_at(lam, alpha, c, m) == 0 for m in mu)


def theorem4_paper_form(lam: Sequence[int], alpha: Rational, mu: Sequence[int]) -> bool:
    """The literal two-block classification for scalar lam = (a, ..., a).

    alpha > 0: mu = (b^p, a^q) with b > a; alpha < 0: mu = (a^p, b^q) with a > b;
    p, q >= 1 and p + q = n. A non-sorted mu never matches.
    """
    if not is_scalar(lam):
        raise NotScalarLambda(f"{tuple(lam)} is not a multiple of (1, ..., 1)")
    al = as_rational(alpha)
    check_lengths(lam, mu)
    a = lam[0]
    if any(x < y for x, y in zip(mu, mu[1:])):
        return False
    g = group(mu)
    if len(g.values) != 2:
        return False
    hi, lo = g.values
    if al > 0:
        return lo == a and hi > a
    return hi == a and lo < a
