"""Hermitian eigensolving, phase scans and anti-crossing localization.

Dense decomposition below DENSE_CUTOFF, Krylov extremal solver above. Every
result carries residual norms and is checked against the residual bound
before being returned.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import sqrt

import numpy as np
from scipy.sparse.linalg import ArpackNoConvergence, eigsh

from .errors import (
    BracketingError,
    ConvergenceError,
    DomainError,
    NumericalIntegrityError,
)
from .fock import build_basis
from .model import HermitianOperator, RingParams, build_site_hamiltonian

DENSE_CUTOFF = 5000
RESIDUAL_RTOL = 1e-10
DEGENERACY_RTOL = 1e-9  # eigenvalues closer than this (times scale) count as equal


@dataclass(frozen=True)
class SpectrumResult:
    """Lowest-k eigenpairs with residual norms, eigenvalues ascending."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray = field(repr=False)  # column i pairs with eigenvalue i
    residuals: np.ndarray

    @property
    def scale(self) -> float:
        return max(1.0, float(np.max(np.abs(self.eigenvalues))))

    def ground_subspace(self, rtol: float = 1e-11) -> np.ndarray:
        """Columns spanning the (possibly degenerate) lowest eigenspace."""
        w = self.eigenvalues
        mask = w - w[0] <= rtol * self.scale
        return self.eigenvectors[:, mask]


def _fix_phases(vecs: np.ndarray) -> np.ndarray:
    # largest-magnitude component made real positive, for reproducible output
    out = vecs.copy()
    for i in range(out.shape[1]):
        j = int(np.argmax(np.abs(out[:, i])))
        ph = out[j, i]
        if abs(ph) > 0:
            out[:, i] *= np.conj(ph) / abs(ph)
    return out


def lowest_eigenpairs(
    H: HermitianOperator,
    k: int,
    method: str = "auto",
    maxiter: int | None = None,
) -> SpectrumResult:
    """k lowest eigenpairs of a Hermitian operator.

    method 'auto' picks dense for dimension <= DENSE_CUTOFF and the iterative
    solver above; 'dense' and 'iterative' force a path (the pair is used as a
    mutual-agreement oracle in tests). Degenerate subspaces come back with an
    orthonormal but otherwise arbitrary basis.
    """
    dim = H.dimension
    if not 1 <= k <= dim:
        raise DomainError(f"k={k} out of range for dimension {dim}")
    if method not in ("auto", "dense", "iterative"):
        raise DomainError(f"unknown method {method!r}")
    if method == "auto":
        method = "dense" if dim <= DENSE_CUTOFF else "iterative"
    if method == "dense":
        w, v = np.linalg.eigh(H.toarray())
        w, v = w[:k], v[:, :k]
    else:
        if k >= dim:
            raise DomainError(
                f"iterative solver needs k < dimension, got k={k}, dim={dim}"
            )
        try:
            w, v = eigsh(H.matrix, k=k, which="SA", maxiter=maxiter)
        except ArpackNoConvergence as e:
            niter = maxiter if maxiter is not None else dim * 10
            raise ConvergenceError(
                f"iterative eigensolver converged {len(e.eigenvalues)}/{k} "
                f"eigenpairs within {niter} iterations",
                iterations=niter,
            ) from e
        order = np.argsort(w)
        w, v = w[order], v[:, order]
    v = _fix_phases(v)
    res = np.array(
        [np.linalg.norm(H.matrix @ v[:, i] - w[i] * v[:, i]) for i in range(k)]
    )
    result = SpectrumResult(eigenvalues=w, eigenvectors=v, residuals=res)
    bound = RESIDUAL_RTOL * result.scale
    if np.any(res > bound):
        raise NumericalIntegrityError(
            f"eigenpair residual {res.max():.3e} exceeds bound {bound:.3e}"
        )
    return result


@dataclass(frozen=True)
class PhaseScan:
    """Lowest-k levels on a phase grid, gap = E1 - E0 per point."""

    phis: np.ndarray
    levels: np.ndarray = field(repr=False)  # shape (len(phis), k)
    gaps: np.ndarray = field(repr=False)


def _params_at_phi(params: RingParams, phi: float) -> RingParams:
    return RingParams(
        M=params.M, N=params.N, U=params.U, J=params.J, phi=(phi,) * params.M
    )


def phase_scan(
    params: RingParams, phi_grid, k: int, workers: int | None = None
) -> PhaseScan:
    """Lowest-k levels versus the (uniform) twist phase.

    Grid points are independent; they run on a thread pool (the dense solver
    releases the GIL) with deterministic output ordering.
    """
    phis = np.asarray(list(phi_grid), dtype=float)
    if phis.size == 0:
        raise DomainError("empty phase grid")
    if np.any(np.diff(phis) < 0):
        raise DomainError("phase grid must be ascending")
    basis = build_basis(params.M, params.N)

    def solve(phi):
        H = build_site_hamiltonian(_params_at_phi(params, phi), basis)
        try:
            return lowest_eigenpairs(H, k).eigenvalues
        except (ConvergenceError, NumericalIntegrityError) as e:
            raise type(e)(f"phi={phi:.12g}: {e}") from e

    with ThreadPoolExecutor(max_workers=workers) as pool:
        levels = np.array(list(pool.map(solve, phis)))
    gaps = levels[:, 1] - levels[:, 0] if k >= 2 else np.zeros(len(phis))
    return PhaseScan(phis=phis, levels=levels, gaps=gaps)


def find_anticrossing(
    params: RingParams,
    bracket: tuple = (np.pi / 3 - 0.3, np.pi / 3 + 0.3),
    tol: float = 1e-6,
):
    """Golden-section minimization of the two-level gap over the twist phase.

    The bracket must contain a single local minimum; a midpoint probe that
    fails to undercut both ends raises BracketingError. Returns
    (phi_star, gap at phi_star).
    """
    a, b = float(bracket[0]), float(bracket[1])
    if not b > a:
        raise DomainError(f"invalid bracket {bracket}")
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    basis = build_basis(params.M, params.N)

    def gap(phi):
        H = build_site_hamiltonian(_params_at_phi(params, phi), basis)
        w = lowest_eigenpairs(H, 2).eigenvalues
        return float(w[1] - w[0])

    fa, fb = gap(a), gap(b)
    mid = 0.5 * (a + b)
    fmid = gap(mid)
    if fmid > fa or fmid > fb:
        raise BracketingError(
            f"gap at bracket midpoint {mid:.6g} ({fmid:.6g}) is not below both "
            f"ends ({fa:.6g}, {fb:.6g}); no interior minimum bracketed"
        )
    invphi = (sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    fc, fd = gap(c), gap(d)
    while b - a > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - invphi * (b - a)
            fc = gap(c)
        else:
            a, c, fc = c, d, fd
            d = a + invphi * (b - a)
            fd = gap(d)
    phi_star = 0.5 * (a + b)
    return phi_star, gap(phi_star)
