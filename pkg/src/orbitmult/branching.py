"""Restriction of pi_(lam, alpha) to K = U(n) through the Fock model.

The Fock space splits as the sum over k of degree-k homogeneous polynomials,
a K-type of highest weight (0, ..., 0, -k). Tensoring tau_lam with it follows
the dual Pieri rule: constituents are the nu obtained from lam by removing a
horizontal strip of size k, each once.
"""

from __future__ import annotations

import csv
import enum
import io
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

import numpy as np

from orbitmult.cg_solver import Rational, as_rational, cg_multiplicity, theorem4_paper_form
from orbitmult.weights import (
    Weight,
    check_lengths,
    interlaces_below,
    is_scalar,
    validate,
    weyl_dimension,
)


class Convention(str, enum.Enum):
    PAPER_FOCK = "paper"
    """tau_(0,...,0,-k) in degree k for both signs of alpha."""
    CONJUGATE_FOCK = "conjugate"
    """tau_(k,0,...,0) in degree k when alpha < 0."""


class DegeneratePhases(ValueError):
    pass


def _sign(alpha_sign) -> int:
    if isinstance(alpha_sign, str):
        if alpha_sign in ("+", "pos", "positive"):
            return 1
        if alpha_sign in ("-", "neg", "negative"):
            return -1
        raise ValueError(f"alpha sign must be '+' or '-', got {alpha_sign!r}")
    if alpha_sign == 0:
        raise ValueError("alpha sign must be nonzero")
    return 1 if alpha_sign > 0 else -1


def _uses_conjugate(sign: int, convention: Convention) -> bool:
    return Convention(convention) is Convention.CONJUGATE_FOCK and sign < 0


def tensor_with_dual_sym(lam: Sequence[int], k: int) -> list[Weight]:
    """Constituents of tau_lam (x) tau_(0,...,0,-k), sorted descending."""
    if k < 0:
        raise ValueError("k must be non-negative")
    lam = tuple(lam)
    n = len(lam)
    out: list[Weight] = []

    def rec(i: int, prefix: tuple[int, ...], left: int):
        if i == n - 1:
            out.append(prefix + (lam[i] - left,))
            return
        for removed in range(min(left, lam[i] - lam[i + 1]) + 1):
            rec(i + 1, prefix + (lam[i] - removed,), left - removed)

    rec(0, (), k)
    return sorted(out, reverse=True)


def tensor_with_sym(lam: Sequence[int], k: int) -> list[Weight]:
    """Constituents of tau_lam (x) tau_(k,0,...,0): add a horizontal strip of size k."""
    neg = tuple(-x for x in reversed(lam))
    return sorted((tuple(-x for x in reversed(nu)) for nu in tensor_with_dual_sym(neg, k)), reverse=True)


def branching_multiplicity(lam, mu, alpha_sign=1, convention: Convention = Convention.PAPER_FOCK) -> int:
    check_lengths(lam, mu)
    if _uses_conjugate(_sign(alpha_sign), convention):
        return int(interlaces_below(mu, lam))
    return int(interlaces_below(lam, mu))


def fock_degree(lam, mu, alpha_sign=1, convention: Convention = Convention.PAPER_FOCK) -> int:
    """Degree k of the Fock summand that would carry tau_mu."""
    d = sum(lam) - sum(mu)
    return -d if _uses_conjugate(_sign(alpha_sign), convention) else d


@dataclass(frozen=True)
class BranchingTable:
    lam: Weight
    alpha_sign: int
    convention: Convention
    rows: tuple[tuple[int, tuple[Weight, ...]], ...]

    def to_json(self) -> dict:
        return {
            "lambda": list(self.lam),
            "alpha_sign": "+" if self.alpha_sign > 0 else "-",
            "convention": self.convention.value,
            "rows": [
                {"k": k, "constituents": [{"nu": list(nu), "dim": weyl_dimension(nu)} for nu in nus]}
                for k, nus in self.rows
            ],
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["k", "nu", "dim"])
        for k, nus in self.rows:
            for nu in nus:
                w.writerow([k, ",".join(map(str, nu)), weyl_dimension(nu)])
        return buf.getvalue()


def branch_table(lam, alpha_sign=1, convention: Convention = Convention.PAPER_FOCK, k_max: int = 0) -> BranchingTable:
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    lam = validate(lam)
    sign = _sign(alpha_sign)
    convention = Convention(convention)
    step = tensor_with_sym if _uses_conjugate(sign, convention) else tensor_with_dual_sym
    rows = tuple((k, tuple(step(lam, k))) for k in range(k_max + 1))
    return BranchingTable(lam, sign, convention, rows)


@dataclass(frozen=True)
class Comparison:
    mu: Weight
    n: int
    m: int
    agree: bool
    """m != 0 implies n != 0."""
    paper_form_flag: bool | None = None
    """For scalar lam and mu != lam: True when the literal scalar-lam classification disagrees with n."""


def compare_n_m(lam, alpha: Rational, mu_set: Iterable[Sequence[int]], convention: Convention = Convention.PAPER_FOCK) -> list[Comparison]:
    lam = validate(lam)
    a = as_rational(alpha)
    out = []
    for mu in mu_set:
        mu = validate(mu)
        n = int(cg_multiplicity(lam, a, mu).multiplicity)
        m = branching_multiplicity(lam, mu, 1 if a > 0 else -1, convention)
        flag = None
        if is_scalar(lam) and mu != lam:
            flag = theorem4_paper_form(lam, a, mu) != (n != 0)
        out.append(Comparison(mu, n, m, (m == 0) or (n != 0), flag))
    return out


def dominant_box(n: int, lo: int, hi: int) -> list[Weight]:
    """All dominant n-tuples with entries in [lo, hi], descending lexicographic."""
    return sorted((tuple(reversed(c)) for c in combinations_with_replacement(range(lo, hi + 1), n)), reverse=True)


def comparisons_to_csv(rows: Sequence[Comparison]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["mu", "n", "m", "agree", "paper_form_flag"])
    for r in rows:
        flag = "na" if r.paper_form_flag is None else str(r.paper_form_flag).lower()
        w.writerow([",".join(map(str, r.mu)), r.n, r.m, str(r.agree).lower(), flag])
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Character identity for the degree-k Fock summand
# ---------------------------------------------------------------------------

def complete_homogeneous(xs: Sequence[complex], k: int) -> complex:
    """h_k(xs): sum of all degree-k monomials, one term per monomial."""
    total = 0j
    for combo in combinations_with_replacement(range(len(xs)), k):
        term = 1 + 0j
        for j in combo:
            term *= xs[j]
        total += term
    return total


def weyl_character(nu: Sequence[int], xs: Sequence[complex]) -> complex:
    """det(x_j^(nu_i + n - i)) / det(x_j^(n - i)) as a ratio of alternants."""
    n = len(nu)
    xs = np.asarray(xs, dtype=complex)
    num = np.array([[x ** (nu[i] + n - 1 - i) for x in xs] for i in range(n)])
    den = np.array([[x ** (n - 1 - i) for x in xs] for i in range(n)])
    return complex(np.linalg.det(num) / np.linalg.det(den))


def _vandermonde(xs) -> complex:
    v = 1 + 0j
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            v *= xs[i] - xs[j]
    return v


def fock_character_check(n: int, k: int, phases: Sequence[float], nudge: float = 0.05) -> tuple[complex, complex]:
    """(trace of A on degree-k polynomials, character of tau_(0,...,0,-k)) at A = diag(e^{i theta}).

    A acts by p(z) -> p(A^{-1} z), so the trace is h_k(e^{-i theta}). When two
    phases (nearly) coincide, all phases are nudged apart by ``nudge * j``
    before both sides are evaluated.
    """
    if n < 1 or k < 0 or len(phases) != n:
        raise ValueError("need n >= 1, k >= 0 and n phases")
    theta = np.asarray(phases, dtype=float)
    xs = np.exp(1j * theta)
    if abs(_vandermonde(xs)) < 1e-8:
        theta = theta + nudge * np.arange(n)
        xs = np.exp(1j * theta)
        if abs(_vandermonde(xs)) < 1e-12:
            raise DegeneratePhases("Weyl denominator vanishes even after perturbation")
    trace = complete_homogeneous(np.exp(-1j * theta), k)
    char = weyl_character((0,) * (n - 1) + (-k,), xs)
    return trace, char
