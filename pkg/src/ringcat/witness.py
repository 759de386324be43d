"""Variational separability witness over product condensates.

The separable class is all N atoms in one single-particle mode,
psi(u) = (sum_i u_i a_i^dag)^N |0> / sqrt(N!) with sum |u_i|^2 = 1. Its
energy has the closed form

    E(u) = -2 N sum_i J_i Re(e^{i phi_i} u_i^* u_{i+1})
           + U N (N - 1) sum_i |u_i|^4,

which is validated against the explicit Fock-space expectation (the
independent oracle kept in this module on purpose). A positive margin
E_sep_min - E_ground certifies entanglement of the exact ground state
relative to the product-condensate class.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import ContractError, DomainError, NumericalIntegrityError, OptimizationError
from .fock import FockBasis, build_basis, sector_creation_matrices
from .model import RingParams, build_site_hamiltonian
from .spectrum import lowest_eigenpairs

NORMALIZATION_TOL = 1e-10
_NM_OPTIONS = {"xatol": 1e-9, "fatol": 1e-12, "maxfev": 10_000}


@dataclass(frozen=True)
class SeparableAnsatz:
    """Normalized condensate amplitudes with the global phase fixed."""

    amplitudes: np.ndarray = field(repr=False)

    @classmethod
    def from_amplitudes(cls, u) -> "SeparableAnsatz":
        u = np.asarray(u, dtype=complex).copy()
        nrm = np.linalg.norm(u)
        if nrm == 0:
            raise DomainError("zero amplitude vector")
        u /= nrm
        # gauge: first nonzero amplitude made real non-negative
        j = int(np.argmax(np.abs(u) > 1e-14))
        ph = u[j]
        u *= np.conj(ph) / abs(ph)
        return cls(amplitudes=u)

    @property
    def M(self) -> int:
        return len(self.amplitudes)


def _amplitudes_of(ansatz) -> np.ndarray:
    u = ansatz.amplitudes if isinstance(ansatz, SeparableAnsatz) else np.asarray(
        ansatz, dtype=complex
    )
    if abs(np.linalg.norm(u) - 1.0) > NORMALIZATION_TOL:
        raise ContractError(
            f"ansatz norm {np.linalg.norm(u):.12f} deviates from 1 beyond "
            f"{NORMALIZATION_TOL}"
        )
    return u


def separable_energy(ansatz, params: RingParams) -> float:
    """Closed-form condensate energy E(u)."""
    u = _amplitudes_of(ansatz)
    if len(u) != params.M:
        raise DomainError(f"ansatz has {len(u)} amplitudes, ring has M={params.M}")
    N = params.N
    hop = sum(
        params.J[i] * (np.exp(1j * params.phi[i]) * np.conj(u[i]) * u[(i + 1) % params.M]).real
        for i in range(params.M)
    )
    quart = float(np.sum(np.abs(u) ** 4))
    return float(-2.0 * N * hop + params.U * N * (N - 1) * quart)


def condensate_vector(ansatz, basis: FockBasis) -> np.ndarray:
    """Explicit Fock-space vector of (sum_i u_i a_i^dag)^N |0> / sqrt(N!)."""
    u = _amplitudes_of(ansatz)
    if len(u) != basis.M:
        raise DomainError(f"ansatz has {len(u)} amplitudes, basis has M={basis.M}")
    chain = sector_creation_matrices(basis.M, basis.N)
    v = np.ones(1, dtype=complex)
    for n in range(basis.N):
        v = sum(u[j] * (chain[n][j] @ v) for j in range(basis.M))
        v /= np.sqrt(n + 1)  # stepwise 1/sqrt(N!) keeps the walk normalized
    return v


def separable_energy_fock(ansatz, params: RingParams, basis: FockBasis) -> float:
    """Independent oracle: <psi(u)|H|psi(u)> with psi built explicitly."""
    v = condensate_vector(ansatz, basis)
    H = build_site_hamiltonian(params, basis)
    return float(np.vdot(v, H.matrix @ v).real)


def _params_to_u(x: np.ndarray, M: int) -> np.ndarray:
    """Hyperspherical magnitudes (M-1 angles) plus M-1 relative phases."""
    thetas, phases = x[: M - 1], x[M - 1 :]
    mags = np.ones(M)
    for i, t in enumerate(thetas):
        mags[i] *= np.cos(t)
        mags[i + 1 :] *= np.sin(t)
    u = mags.astype(complex)
    u[1:] *= np.exp(1j * phases)
    return u


def _u_to_params(u: np.ndarray) -> np.ndarray:
    mags = np.abs(u)
    thetas = []
    rem = 1.0
    for i in range(len(u) - 1):
        c = np.clip(mags[i] / np.sqrt(rem) if rem > 0 else 1.0, -1.0, 1.0)
        t = np.arccos(c)
        thetas.append(t)
        rem = max(rem - mags[i] ** 2, 0.0)
    phases = np.angle(u[1:] / u[0]) if abs(u[0]) > 1e-14 else np.angle(u[1:])
    return np.concatenate([thetas, phases])


@dataclass(frozen=True)
class WitnessReport:
    """Exact ground energy vs. best separable energy found."""

    e_ground: float
    e_sep_min: float
    margin: float
    certified: bool
    argmin: SeparableAnsatz
    seed: int
    restarts_converged: int


def minimize_separable_energy(
    params: RingParams,
    restarts: int = 32,
    seed: int = 0,
    workers: int | None = None,
) -> WitnessReport:
    """Multistart simplex descent of E(u) over the condensate manifold.

    2M-2 free real parameters (normalization and global phase are fixed by
    the parameterization). Start points are drawn once from a seeded
    generator, so the report is deterministic for a given seed; restarts run
    independently and the reduction takes the lowest energy (ties broken by
    start index).
    """
    if restarts < 1:
        raise DomainError(f"restarts must be >= 1, got {restarts}")
    M = params.M
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal((restarts, M)) + 1j * rng.standard_normal((restarts, M))
    starts = [_u_to_params(r / np.linalg.norm(r)) for r in raw]

    def objective(x):
        return separable_energy(_params_to_u(x, M), params)

    def run(x0):
        return minimize(objective, x0, method="Nelder-Mead", options=_NM_OPTIONS)

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run, starts))
    converged = [r for r in results if r.success]
    if not converged:
        raise OptimizationError(
            f"no converged restart out of {restarts} "
            f"(maxfev={_NM_OPTIONS['maxfev']})"
        )
    best = min(converged, key=lambda r: r.fun)
    argmin = SeparableAnsatz.from_amplitudes(_params_to_u(best.x, M))
    e_sep = separable_energy(argmin, params)

    basis = build_basis(M, params.N)
    H = build_site_hamiltonian(params, basis)
    spec = lowest_eigenpairs(H, 1)
    e0 = float(spec.eigenvalues[0])
    scale = spec.scale
    if e_sep < e0 - 1e-9 * scale:
        raise NumericalIntegrityError(
            f"separable energy {e_sep} undercuts the ground energy {e0}; "
            "variational bound violated"
        )
    margin = e_sep - e0
    threshold = 1e-6 * max(abs(e0), params.U, params.mean_J)
    return WitnessReport(
        e_ground=e0,
        e_sep_min=e_sep,
        margin=margin,
        certified=bool(margin > threshold),
        argmin=argmin,
        seed=seed,
        restarts_converged=len(converged),
    )
