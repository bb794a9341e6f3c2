"""Floating-point verification path.

Everything here is deliberately independent of the exact solver: spectra come
from a cyclic complex Jacobi eigensolver written against plain numpy arrays
(no LAPACK call), and the randomized search only ever asks that eigensolver
whether a sampled ``diag(lam) + (alpha/2) z z*`` has the target spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import islice
from typing import Iterator, Optional, Sequence

import numpy as np

from orbitmult.weights import group

GRID_STEP = 0.25
_CHUNK = 4096
_POLISH_STARTS = 8
_POLISH_ITERS = 40


class NotConverged(RuntimeError):
    pass


@dataclass(frozen=True)
class OracleConfig:
    tol: float = 1e-8
    max_sweeps: int = 64
    seed: int = 0

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.max_sweeps < 1:
            raise ValueError("max_sweeps must be at least 1")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")


def make_rng(seed: int, call_index: int = 0) -> np.random.Generator:
    """Generator for one call; (seed, call_index) pins the stream."""
    return np.random.default_rng([int(seed), int(call_index)])


# ---------------------------------------------------------------------------
# Jacobi eigensolver
# ---------------------------------------------------------------------------

def _offdiag_norm(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt((np.abs(a[..., mask]) ** 2).sum(axis=-1))


def jacobi_eigh_batch(
    mats: np.ndarray, max_sweeps: int = 64, vectors: bool = True
) -> tuple[np.ndarray, Optional[np.ndarray]]:
    """Cyclic Jacobi on a stack of Hermitian matrices of shape (B, n, n).

    Returns unsorted eigenvalues (B, n) and, if requested, the accumulated
    unitary Q with ``mats = Q diag(w) Q*``.
    """
    a = np.array(mats, dtype=complex, copy=True)
    if a.ndim != 3 or a.shape[1] != a.shape[2]:
        raise ValueError("expected a stack of square matrices")
    nb, n, _ = a.shape
    q = np.broadcast_to(np.eye(n, dtype=complex), a.shape).copy() if vectors else None
    scale = np.maximum(1.0, np.abs(a).max(axis=(1, 2))) if nb else np.ones(0)
    thresh = 1e-14 * scale
    for _ in range(max_sweeps):
        live = _offdiag_norm(a) > thresh
        if not live.any():
            break
        idx = np.nonzero(live)[0]
        sub = a[idx]
        qs = q[idx] if vectors else None
        for p in range(n - 1):
            for r in range(p + 1, n):
                _rotate(sub, qs, p, r)
        a[idx] = sub
        if vectors:
            q[idx] = qs
    else:
        if (_offdiag_norm(a) > thresh).any():
            raise NotConverged(f"Jacobi did not converge in {max_sweeps} sweeps")
    w = np.einsum("...ii->...i", a).real.copy()
    return w, q


def _rotate(a: np.ndarray, q: Optional[np.ndarray], p: int, r: int) -> None:
    app = a[:, p, p].real
    arr = a[:, r, r].real
    w = a[:, p, r]
    aw = np.abs(w)
    active = aw > 1e-300
    safe_aw = np.where(active, aw, 1.0)
    phase = np.where(active, w / safe_aw, 1.0)
    theta = (arr - app) / (2.0 * safe_aw)
    sgn = np.where(theta >= 0, 1.0, -1.0)
    t = sgn / (np.abs(theta) + np.hypot(1.0, theta))
    t = np.where(active, t, 0.0)
    c = 1.0 / np.sqrt(1.0 + t * t)
    s = t * c
    ph = np.conj(phase)
    g = np.empty((a.shape[0], 2, 2), dtype=complex)
    g[:, 0, 0] = c
    g[:, 0, 1] = s
    g[:, 1, 0] = -s * ph
    g[:, 1, 1] = c * ph
    cols = [p, r]
    a[:, :, cols] = a[:, :, cols] @ g
    a[:, cols, :] = np.conj(np.swapaxes(g, 1, 2)) @ a[:, cols, :]
    a[:, p, r] = 0.0
    a[:, r, p] = 0.0
    a[:, p, p] = a[:, p, p].real
    a[:, r, r] = a[:, r, r].real
    if q is not None:
        q[:, :, cols] = q[:, :, cols] @ g


def _check_hermitian(m: np.ndarray, tol: float = 1e-9) -> None:
    scale = max(1.0, float(np.abs(m).max(initial=0.0)))
    if np.abs(m - m.conj().T).max(initial=0.0) > tol * scale:
        raise ValueError("matrix is not Hermitian")


def jacobi_eigh(m, cfg: OracleConfig | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues sorted descending and the matching unitary Q (columns)."""
    cfg = cfg or OracleConfig()
    m = np.asarray(m, dtype=complex)
    _check_hermitian(m)
    w, q = jacobi_eigh_batch(m[None], cfg.max_sweeps)
    order = np.argsort(-w[0], kind="stable")
    return w[0][order], q[0][:, order]


def hermitian_eigenvalues(m, cfg: OracleConfig | None = None) -> np.ndarray:
    return jacobi_eigh(m, cfg)[0]


def sorted_spectra(mats: np.ndarray, max_sweeps: int = 64) -> np.ndarray:
    w, _ = jacobi_eigh_batch(mats, max_sweeps, vectors=False)
    return -np.sort(-w, axis=1)


# ---------------------------------------------------------------------------
# Random unitaries
# ---------------------------------------------------------------------------

def box_muller(rng: np.random.Generator, size: int) -> np.ndarray:
    """Standard normals from uniform draws via the Box-Muller transform."""
    half = (size + 1) // 2
    u1 = 1.0 - rng.random(half)  # in (0, 1]
    u2 = rng.random(half)
    rad = np.sqrt(-2.0 * np.log(u1))
    out = np.concatenate([rad * np.cos(2 * np.pi * u2), rad * np.sin(2 * np.pi * u2)])
    return out[:size]


def complex_gaussians(rng: np.random.Generator, shape) -> np.ndarray:
    size = int(np.prod(shape))
    g = box_muller(rng, 2 * size)
    return (g[:size] + 1j * g[size:]).reshape(shape) / math.sqrt(2.0)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Approximately Haar unitary by Gram-Schmidt on complex Gaussian columns."""
    if n < 1:
        raise ValueError("n must be positive")
    g = complex_gaussians(rng, (n, n))
    u = np.zeros((n, n), dtype=complex)
    for j in range(n):
        v = g[:, j].copy()
        for _ in range(2):  # second pass restores orthogonality lost to rounding
            for i in range(j):
                v -= np.vdot(u[:, i], v) * u[:, i]
        u[:, j] = v / np.linalg.norm(v)
    return u


# ---------------------------------------------------------------------------
# Membership and search
# ---------------------------------------------------------------------------

def perturbed_matrix(lam: Sequence[float], alpha: float, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return np.diag(np.asarray(lam, dtype=float)).astype(complex) + (alpha / 2) * np.outer(z, z.conj())


def verify_membership(lam, alpha: float, z, mu, cfg: OracleConfig | None = None) -> bool:
    cfg = cfg or OracleConfig()
    if not (len(lam) == len(mu) == len(z)):
        raise ValueError("lam, z and mu must have the same length")
    spec = hermitian_eigenvalues(perturbed_matrix(lam, float(alpha), z), cfg)
    return bool(np.all(np.abs(spec - np.asarray(mu, dtype=float)) <= cfg.tol))


def _quarter_grid(m: int, total_quarters: int) -> Iterator[tuple[int, ...]]:
    """Non-negative integer (m-1)-tuples with sum <= total_quarters, lexicographic."""
    if m == 1:
        yield ()
        return

    def rec(prefix: tuple[int, ...], left: int, slots: int):
        if slots == 0:
            yield prefix
            return
        for v in range(left + 1):
            yield from rec(prefix + (v,), left - v, slots - 1)

    yield from rec((), total_quarters, m - 1)


class _Sampler:
    def __init__(self, lam, alpha, mu, cfg, rng):
        self.lam = np.asarray(lam, dtype=float)
        self.mu = np.asarray(mu, dtype=float)
        self.alpha = float(alpha)
        self.cfg = cfg
        self.rng = rng
        self.blocks = group(tuple(lam)).blocks()
        self.n = len(lam)

    def directions(self, count: int) -> np.ndarray:
        """Unit vectors in each group's coordinate block, shape (count, m, n)."""
        d = np.zeros((count, len(self.blocks), self.n), dtype=complex)
        for t, blk in enumerate(self.blocks):
            g = complex_gaussians(self.rng, (count, len(blk)))
            g /= np.linalg.norm(g, axis=1, keepdims=True)
            d[:, t, blk.start:blk.stop] = g
        return d

    def vectors(self, norms: np.ndarray, dirs: np.ndarray) -> np.ndarray:
        return np.einsum("bt,btj->bj", np.sqrt(np.maximum(norms, 0.0)), dirs)

    def residuals(self, z: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        mats = np.zeros((z.shape[0], self.n, self.n), dtype=complex)
        mats[:, range(self.n), range(self.n)] = self.lam
        mats += (self.alpha / 2) * z[:, :, None] * z.conj()[:, None, :]
        diff = sorted_spectra(mats, self.cfg.max_sweeps) - self.mu
        return diff, np.abs(diff).max(axis=1)


def randomized_search(
    lam: Sequence[int],
    alpha: float,
    mu: Sequence[int],
    budget: int,
    cfg: OracleConfig | None = None,
    call_index: int = 0,
) -> Optional[np.ndarray]:
    """Look for z with spec(diag(lam) + (alpha/2) z z*) == mu, numerically.

    Group norms (squared lengths of z on each block of equal lam entries) run
    over a grid of step 1/4 whose total is pinned by the trace,
    sum(mu) - sum(lam) = (alpha/2)|z|^2; directions inside each block are
    random. If no grid point lands within ``cfg.tol``, the best few are
    polished by Gauss-Newton on the norms. Every spectrum costs one unit of
    ``budget``. Returns the first passing z, or None.
    """
    cfg = cfg or OracleConfig()
    if budget < 1:
        raise ValueError("budget must be at least 1")
    if len(lam) != len(mu):
        raise ValueError("lam and mu must have the same length")
    alpha = float(alpha)
    if alpha == 0:
        raise ValueError("alpha must be nonzero")
    rng = make_rng(cfg.seed, call_index)
    s = _Sampler(lam, alpha, mu, cfg, rng)
    m = len(s.blocks)

    total = 2.0 * (float(sum(mu)) - float(sum(lam))) / alpha
    if total < -1e-12:
        return None
    total = max(total, 0.0)
    quarters = int(math.floor(total / GRID_STEP + 1e-9))

    spent = 0
    best: list[tuple[float, np.ndarray, np.ndarray]] = []
    grid = _quarter_grid(m, quarters)
    while spent < budget:
        chunk = list(islice(grid, min(_CHUNK, budget - spent)))
        if not chunk:
            break
        head = np.asarray(chunk, dtype=float).reshape(len(chunk), m - 1) * GRID_STEP
        last = total - head.sum(axis=1, keepdims=True)
        norms = np.hstack([head, np.maximum(last, 0.0)])
        dirs = s.directions(len(chunk))
        z = s.vectors(norms, dirs)
        _, res = s.residuals(z)
        spent += len(chunk)
        hit = np.nonzero(res <= cfg.tol)[0]
        if hit.size:
            return z[hit[0]]
        keep = np.argsort(res, kind="stable")[:_POLISH_STARTS]
        best.extend((float(res[i]), norms[i], dirs[i]) for i in keep)
        best.sort(key=lambda item: item[0])
        del best[_POLISH_STARTS:]

    if best:
        norms = np.stack([b[1] for b in best])
        dirs = np.stack([b[2] for b in best])
        return _polish(s, norms, dirs, budget - spent)
    return None


def _polish(s: _Sampler, norms: np.ndarray, dirs: np.ndarray, budget: int) -> Optional[np.ndarray]:
    """Projected Gauss-Newton on the group norms of several starts at once.

    The Jacobian is a forward finite difference. A start is dropped once its
    residual stops shrinking, which is what happens when no solution is near.
    """
    k, m = norms.shape
    c = norms.astype(float).copy()
    h = 1e-7
    live = np.ones(k, dtype=bool)
    prev = np.full(k, np.inf)
    for it in range(_POLISH_ITERS):
        idx = np.nonzero(live)[0]
        cost = idx.size * (m + 1)
        if idx.size == 0 or cost > budget:
            break
        budget -= cost
        probes = np.repeat(c[idx, None, :], m + 1, axis=1)
        probes[:, 1:, :] += h * np.eye(m)
        pdirs = np.repeat(dirs[idx, None], m + 1, axis=1)
        z = s.vectors(probes.reshape(-1, m), pdirs.reshape((-1,) + dirs.shape[1:]))
        diff, res = s.residuals(z)
        diff = diff.reshape(idx.size, m + 1, -1)
        res = res.reshape(idx.size, m + 1)[:, 0]
        hit = np.nonzero(res <= s.cfg.tol)[0]
        if hit.size:
            return z.reshape(idx.size, m + 1, -1)[hit[0], 0]
        jac = np.swapaxes(diff[:, 1:, :] - diff[:, :1, :], 1, 2) / h  # (k, n, m)
        step = -np.einsum("kmn,kn->km", np.linalg.pinv(jac), diff[:, 0, :])
        stalled = (it >= 3) & (res > 0.5 * prev[idx])
        prev[idx] = res
        ok = np.all(np.isfinite(step), axis=1) & ~stalled
        c[idx] = np.where(ok[:, None], np.maximum(c[idx] + step, 0.0), c[idx])
        live[idx[~ok]] = False
    return None
