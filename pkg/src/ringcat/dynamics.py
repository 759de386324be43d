"""Time-dependent ramps and static J/U scans.

Time is measured in units of hbar/U, so Hamiltonians are built with U = 1
and the schedule's J endpoints are J/U values. Within each time step the
Hamiltonian is frozen at the midpoint parameters and the state advanced by
the exact exponential propagator from a full Hermitian eigendecomposition
(paper-scale dimensions are small, so this is cheaper than it sounds and
removes integrator-order questions; the step-halving test still guards the
midpoint-freezing error).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError, DomainError, NumericalIntegrityError
from .fock import FockBasis, build_basis
from .flow import flow_fock_vector
from .model import RingParams, build_site_hamiltonian, phase_from_angular_momentum
from .spectrum import lowest_eigenpairs

NORM_DRIFT_TOL = 1e-8
GROUND_DEGENERACY_RTOL = 1e-11
J_PROFILES = ("constant", "linear", "exponential")


@dataclass(frozen=True)
class Segment:
    """One schedule segment: a J/U profile at a fixed twist phase."""

    duration: float  # units hbar/U
    j_profile: str
    j_start: float
    j_end: float
    phi: float

    def __post_init__(self):
        if self.duration <= 0:
            raise DomainError(f"segment duration must be positive, got {self.duration}")
        if self.j_profile not in J_PROFILES:
            raise DomainError(
                f"j_profile must be one of {J_PROFILES}, got {self.j_profile!r}"
            )
        if self.j_start < 0 or self.j_end < 0:
            raise DomainError("J/U must stay non-negative")
        if self.j_profile == "constant" and self.j_start != self.j_end:
            raise DomainError("constant profile requires j_start == j_end")
        if self.j_profile == "exponential" and (self.j_start <= 0 or self.j_end <= 0):
            raise DomainError("exponential profile requires positive endpoints")

    def j_at(self, frac: float) -> float:
        if self.j_profile == "constant":
            return self.j_start
        if self.j_profile == "linear":
            return self.j_start + (self.j_end - self.j_start) * frac
        return self.j_start * (self.j_end / self.j_start) ** frac


@dataclass(frozen=True)
class RampSchedule:
    segments: tuple
    steps_per_segment: int = 64

    def __post_init__(self):
        object.__setattr__(self, "segments", tuple(self.segments))
        if not self.segments:
            raise DomainError("schedule needs at least one segment")
        if self.steps_per_segment < 1:
            raise DomainError("steps_per_segment must be >= 1")

    @property
    def total_duration(self) -> float:
        return sum(s.duration for s in self.segments)


@dataclass(frozen=True)
class EvolutionTrace:
    """Per-step diagnostics; row 0 is the initial state at t = 0."""

    times: np.ndarray
    norm_errors: np.ndarray
    gs_overlaps: np.ndarray
    cat_fidelities: np.ndarray
    energies: np.ndarray
    final_state: np.ndarray = field(repr=False)


def _bond_factors(params: RingParams) -> np.ndarray:
    Jbar = params.mean_J
    if Jbar <= 0:
        return np.ones(params.M)
    return np.asarray(params.J) / Jbar


def _ground_overlap(w, v, psi, scale) -> float:
    # projection onto the full (possibly degenerate) lowest eigenspace
    mask = w - w[0] <= GROUND_DEGENERACY_RTOL * scale
    amps = v[:, mask].conj().T @ psi
    return float(np.sum(np.abs(amps) ** 2))


def evolve(
    params_template: RingParams, schedule: RampSchedule, initial: np.ndarray
) -> EvolutionTrace:
    """Propagate a state through a ramp schedule.

    The template fixes M, N and the relative bond factors J_i / mean(J); the
    schedule fixes J/U and phi over time. Diagnostics per step use the
    midpoint eigendecomposition, except the last row which is evaluated at
    the exact end-of-schedule parameters. Ground-state overlap projects onto
    the full (possibly degenerate) lowest eigenspace.
    """
    if params_template.U <= 0:
        raise DomainError("schedules are parameterized by J/U; template needs U > 0")
    basis = build_basis(params_template.M, params_template.N)
    psi = np.asarray(initial, dtype=complex).copy()
    if psi.shape != (basis.dimension,):
        raise DomainError(
            f"initial state has shape {psi.shape}, basis dimension is {basis.dimension}"
        )
    if abs(np.linalg.norm(psi) - 1.0) > 1e-6:
        raise ContractError(f"initial state norm {np.linalg.norm(psi):.8f} is not 1")
    factors = _bond_factors(params_template)
    M, N = params_template.M, params_template.N
    # cat reference amplitudes against the zero-flow and clockwise modes
    f_a = flow_fock_vector(basis, (N,) + (0,) * (M - 1))
    f_b = flow_fock_vector(basis, (0, N) + (0,) * (M - 2))

    def ring(j_over_u, phi):
        return RingParams(
            M=M, N=N, U=1.0, J=tuple(j_over_u * factors), phi=(phi,) * M
        )

    def hamiltonian(j_over_u, phi):
        return build_site_hamiltonian(ring(j_over_u, phi), basis).toarray()

    def sample(t, psi, w, v, H):
        nerr = abs(np.linalg.norm(psi) - 1.0)
        if nerr > NORM_DRIFT_TOL:
            raise NumericalIntegrityError(
                f"norm drift {nerr:.3e} at t={t:.6g} exceeds {NORM_DRIFT_TOL}"
            )
        scale = max(1.0, float(np.max(np.abs(w))))
        ov = _ground_overlap(w, v, psi, scale)
        c1, c2 = np.vdot(f_a, psi), np.vdot(f_b, psi)
        fid = min(1.0, (abs(c1) + abs(c2)) ** 2 / 2.0)
        en = float(np.vdot(psi, H @ psi).real)
        times.append(t)
        norm_errors.append(nerr)
        gs_overlaps.append(ov)
        cat_fidelities.append(fid)
        energies.append(en)

    times, norm_errors, gs_overlaps, cat_fidelities, energies = [], [], [], [], []
    seg0 = schedule.segments[0]
    H0 = hamiltonian(seg0.j_at(0.0), seg0.phi)
    w0, v0 = np.linalg.eigh(H0)
    sample(0.0, psi, w0, v0, H0)

    t = 0.0
    nseg = len(schedule.segments)
    for si, seg in enumerate(schedule.segments):
        dt = seg.duration / schedule.steps_per_segment
        for s in range(schedule.steps_per_segment):
            frac_mid = (s + 0.5) / schedule.steps_per_segment
            H = hamiltonian(seg.j_at(frac_mid), seg.phi)
            w, v = np.linalg.eigh(H)
            psi = v @ (np.exp(-1j * w * dt) * (v.conj().T @ psi))
            t += dt
            last = si == nseg - 1 and s == schedule.steps_per_segment - 1
            if last:
                # final diagnostics against the exact end-of-schedule H
                H = hamiltonian(seg.j_at(1.0), seg.phi)
                w, v = np.linalg.eigh(H)
            sample(t, psi, w, v, H)
    return EvolutionTrace(
        times=np.array(times),
        norm_errors=np.array(norm_errors),
        gs_overlaps=np.array(gs_overlaps),
        cat_fidelities=np.array(cat_fidelities),
        energies=np.array(energies),
        final_state=psi,
    )


def ground_state_representative(
    spec, basis: FockBasis, reference: np.ndarray | None = None
) -> np.ndarray:
    """Deterministic ground vector when the lowest level is degenerate.

    Exactly at a crossing the solver returns an arbitrary mixture within the
    degenerate subspace. The representative returned here is the unit vector
    of that subspace with maximal overlap against a reference (default: the
    all-atoms-zero-flow state), which is the branch connected to phases just
    below the crossing.
    """
    P = spec.ground_subspace()
    if P.shape[1] == 1:
        return P[:, 0]
    if reference is None:
        reference = flow_fock_vector(basis, (basis.N,) + (0,) * (basis.M - 1))
    coef = P.conj().T @ reference
    nrm = np.linalg.norm(coef)
    if nrm < 1e-12:
        return P[:, 0]
    return P @ (coef / nrm)


def cat_scan_static(
    params_template: RingParams,
    j_over_u_grid,
    phi: float,
    workers: int | None = None,
    k: int = 6,
):
    """Ground-state cat fidelity and gap across a J/U grid at fixed phase.

    Returns rows (j_over_u, cat_fidelity, theta_opt, gap). Degenerate ground
    levels use the deterministic representative above; otherwise exactly at
    a crossing the reported fidelity would depend on solver noise.
    """
    grid = np.asarray(list(j_over_u_grid), dtype=float)
    if grid.size == 0:
        raise DomainError("empty J/U grid")
    if np.any(grid < 0) or np.any(np.diff(grid) < 0):
        raise DomainError("J/U grid must be ascending and non-negative")
    if params_template.U <= 0:
        raise DomainError("J/U scan needs U > 0 in the template")
    basis = build_basis(params_template.M, params_template.N)
    factors = _bond_factors(params_template)
    M, N = params_template.M, params_template.N
    f_a = flow_fock_vector(basis, (N,) + (0,) * (M - 1))
    f_b = flow_fock_vector(basis, (0, N) + (0,) * (M - 2))
    kk = min(k, basis.dimension)

    def point(j):
        params = RingParams(M=M, N=N, U=1.0, J=tuple(j * factors), phi=(phi,) * M)
        spec = lowest_eigenpairs(build_site_hamiltonian(params, basis), kk)
        gap = float(spec.eigenvalues[min(1, kk - 1)] - spec.eigenvalues[0])
        psi = ground_state_representative(spec, basis, f_a)
        c1, c2 = np.vdot(f_a, psi), np.vdot(f_b, psi)
        fid = min(1.0, (abs(c1) + abs(c2)) ** 2 / 2.0)
        theta = float(np.angle(c2) - np.angle(c1))
        theta = (theta + np.pi) % (2.0 * np.pi) - np.pi
        return float(j), float(fid), theta, gap

    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(point, grid))


def _cosine_points(j0: float, j1: float, chunks: int) -> np.ndarray:
    x = np.linspace(0.0, 1.0, chunks + 1)
    return j0 + (j1 - j0) * (1.0 - np.cos(np.pi * x)) / 2.0


def _ramp_segments(j0, j1, duration, phi, shape, chunks):
    if shape == "linear":
        return [Segment(duration, "linear", j0, j1, phi)]
    pts = _cosine_points(j0, j1, chunks)
    return [
        Segment(duration / chunks, "linear", a, b, phi)
        for a, b in zip(pts[:-1], pts[1:])
    ]


def protocol_schedule(
    target_j_over_u: float,
    durations=(50.0, 50.0, 50.0),
    rot_phase: float | None = None,
    M: int = 3,
    ramp_shape: str = "smooth",
    smooth_chunks: int = 32,
    steps_per_segment: int = 64,
) -> RampSchedule:
    """Three-stage preparation schedule.

    Stage 1 ramps J/U from the target down to 0 at zero phase; stage 2 holds
    J = 0 while the twist jumps to the half-quantum phase (the J = 0
    Hamiltonian is phase independent, so the jump is exact); stage 3 ramps
    J/U back up at the twisted phase. Ramp stages default to a raised-cosine
    profile discretized into linear chunks: a plain linear ramp at the same
    duration leaves measurably more excitation behind at the end of stage 3,
    where the gap is smallest.
    """
    if len(durations) != 3 or any(d <= 0 for d in durations):
        raise DomainError(f"need three positive stage durations, got {durations}")
    if ramp_shape not in ("smooth", "linear"):
        raise DomainError(f"ramp_shape must be 'smooth' or 'linear', got {ramp_shape!r}")
    if target_j_over_u <= 0:
        raise DomainError("target J/U must be positive")
    phi_rot = phase_from_angular_momentum(0.5, M) if rot_phase is None else rot_phase
    segs = []
    segs += _ramp_segments(
        target_j_over_u, 0.0, durations[0], 0.0, ramp_shape, smooth_chunks
    )
    segs.append(Segment(durations[1], "constant", 0.0, 0.0, phi_rot))
    segs += _ramp_segments(
        0.0, target_j_over_u, durations[2], phi_rot, ramp_shape, smooth_chunks
    )
    return RampSchedule(segments=tuple(segs), steps_per_segment=steps_per_segment)


def preparation_protocol(
    params_template: RingParams,
    durations=(50.0, 50.0, 50.0),
    target_j_over_u: float | None = None,
    ramp_shape: str = "smooth",
    smooth_chunks: int = 32,
    steps_per_segment: int = 64,
) -> EvolutionTrace:
    """Run the three-stage protocol from the untwisted ground state.

    The target J/U defaults to mean(J)/U of the template. The initial state
    is the exact ground state at the target coupling and zero phase.
    """
    if params_template.U <= 0:
        raise DomainError("protocol needs U > 0 in the template")
    target = (
        params_template.mean_J / params_template.U
        if target_j_over_u is None
        else float(target_j_over_u)
    )
    schedule = protocol_schedule(
        target,
        durations=durations,
        M=params_template.M,
        ramp_shape=ramp_shape,
        smooth_chunks=smooth_chunks,
        steps_per_segment=steps_per_segment,
    )
    basis = build_basis(params_template.M, params_template.N)
    factors = _bond_factors(params_template)
    start = RingParams(
        M=params_template.M,
        N=params_template.N,
        U=1.0,
        J=tuple(target * factors),
        phi=(0.0,) * params_template.M,
    )
    spec = lowest_eigenpairs(build_site_hamiltonian(start, basis), 1)
    return evolve(params_template, schedule, spec.eigenvectors[:, 0])
