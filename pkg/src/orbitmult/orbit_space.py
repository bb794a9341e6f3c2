"""Numeric model of g* for G = U(n) x H_n.

Skew-Hermitian elements of u(n) are carried by their Hermitian
representative S, with U = iS. A linear form (U, u, x) is stored as
``LinearForm(S, u, x)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

TOL_HERM = 1e-10
TOL_UNITARY = 1e-10
TOL_MEMBERSHIP = 1e-8


class DimensionMismatch(ValueError):
    pass


class ZeroCentralParameter(ValueError):
    pass


def _vec(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    if z.ndim != 1 or z.size == 0:
        raise DimensionMismatch("expected a non-empty vector")
    return z


def _scale(m: np.ndarray) -> float:
    return max(1.0, float(np.abs(m).max(initial=0.0)))


@dataclass(frozen=True)
class LinearForm:
    S: np.ndarray
    u: np.ndarray
    x: float

    def __post_init__(self):
        S = np.asarray(self.S, dtype=complex)
        u = _vec(self.u)
        if S.shape != (u.size, u.size):
            raise DimensionMismatch(f"S has shape {S.shape} but u has length {u.size}")
        if np.abs(S - S.conj().T).max() > TOL_HERM * _scale(S):
            raise ValueError("S is not Hermitian")
        object.__setattr__(self, "S", S)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "x", float(self.x))

    @property
    def n(self) -> int:
        return self.u.size

    @classmethod
    def generic(cls, lam: Sequence[int], alpha: float) -> "LinearForm":
        """The form (U_lam, 0, alpha) attached to pi_(lam, alpha)."""
        n = len(lam)
        return cls(np.diag(np.asarray(lam, dtype=float)), np.zeros(n), alpha)

    def to_json(self) -> dict:
        return {
            "S": [[[float(v.real), float(v.imag)] for v in row] for row in self.S],
            "u": [[float(v.real), float(v.imag)] for v in self.u],
            "x": self.x,
        }

    @classmethod
    def from_json(cls, data: dict) -> "LinearForm":
        S = np.array([[complex(re, im) for re, im in row] for row in data["S"]])
        u = np.array([complex(re, im) for re, im in data["u"]])
        return cls(S, u, data["x"])


@dataclass(frozen=True)
class GroupElement:
    k: np.ndarray
    z: np.ndarray
    t: float = 0.0

    def __post_init__(self):
        k = np.asarray(self.k, dtype=complex)
        z = _vec(self.z)
        if k.shape != (z.size, z.size):
            raise DimensionMismatch(f"k has shape {k.shape} but z has length {z.size}")
        if np.abs(k.conj().T @ k - np.eye(z.size)).max() > TOL_UNITARY:
            raise ValueError("k is not unitary")
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "t", float(self.t))

    @classmethod
    def identity(cls, n: int) -> "GroupElement":
        return cls(np.eye(n), np.zeros(n), 0.0)

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        kz = self.k @ other.z
        return GroupElement(
            self.k @ other.k,
            self.z + kz,
            self.t + other.t - 0.5 * np.vdot(self.z, kz).imag,
        )


def cross_product(z, w) -> np.ndarray:
    """Hermitian S(z, w) = (w z* + z w*)/2, so that z x w = i S(z, w)."""
    z, w = _vec(z), _vec(w)
    if z.size != w.size:
        raise DimensionMismatch(f"lengths {z.size} and {w.size}")
    return 0.5 * (np.outer(w, z.conj()) + np.outer(z, w.conj()))


def moment_map(z) -> np.ndarray:
    z = _vec(z)
    return np.outer(z, z.conj())


def coadjoint_action(g: GroupElement, phi: LinearForm) -> LinearForm:
    """Ad*(k,z,t)(U,u,x) = (k U k* + z x (ku) + (x/2) z x z, ku + xz, x)."""
    if g.z.size != phi.n:
        raise DimensionMismatch(f"group element on C^{g.z.size}, form on C^{phi.n}")
    ku = g.k @ phi.u
    S = g.k @ phi.S @ g.k.conj().T + cross_product(g.z, ku) + (phi.x / 2) * moment_map(g.z)
    S = 0.5 * (S + S.conj().T)
    return LinearForm(S, ku + phi.x * g.z, phi.x)


def spectrum(S) -> np.ndarray:
    """Sorted-descending eigenvalues of a Hermitian matrix."""
    return np.linalg.eigvalsh(np.asarray(S, dtype=complex))[::-1]


def generic_orbit_invariant(phi: LinearForm) -> tuple[np.ndarray, float]:
    """(spec(S - uu*/(2x)), x): constant along a generic G-orbit."""
    if phi.x == 0:
        raise ZeroCentralParameter("generic orbits need x != 0")
    reduced = phi.S - np.outer(phi.u, phi.u.conj()) / (2 * phi.x)
    return spectrum(reduced), phi.x


def k_orbit_contains(S, mu: Sequence[int], tol: float = TOL_MEMBERSHIP) -> bool:
    S = np.asarray(S, dtype=complex)
    if S.shape != (len(mu), len(mu)):
        return False
    diff = np.abs(spectrum(S) - np.asarray(mu, dtype=float))
    return bool(diff.max() <= tol * _scale(S))
