"""Twisted ring-lattice Hamiltonians on the fixed-N Fock basis.

The site-basis Hamiltonian is

    H = -sum_i J_i (e^{i phi_i} a_i^dag a_{i+1} + h.c.) + U sum_i a_i^dag2 a_i^2

with bond i connecting site i to site (i+1) mod M. Note the interaction is
the literal U a^dag2 a^2 convention, i.e. energy U n(n-1) per site, not the
more common U/2 n(n-1). Positive phi multiplies the clockwise hop a_i^dag
a_{i+1}, so a positive twist favours clockwise flow.

For the uniform 3-site ring the same operator is also built directly in the
flow-mode representation; the two constructions serve as mutual oracles.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin, sqrt

import numpy as np
from scipy import sparse

from .errors import DomainError, UnsupportedConfigurationError
from .fock import FockBasis, build_basis

HERMITICITY_RTOL = 1e-12


@dataclass(frozen=True)
class RingParams:
    """Ring geometry and couplings.

    J and phi are per-bond lists of length M; a uniform ring has all J equal
    and all phi equal. U is the on-site interaction, energy U n(n-1) per site.
    """

    M: int
    N: int
    U: float
    J: tuple
    phi: tuple

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(float(j) for j in self.J))
        object.__setattr__(self, "phi", tuple(float(p) for p in self.phi))
        if self.M < 2:
            raise DomainError(f"need at least 2 sites, got M={self.M}")
        if self.N < 1:
            raise DomainError(f"need at least 1 atom, got N={self.N}")
        if len(self.J) != self.M or len(self.phi) != self.M:
            raise DomainError(
                f"J and phi must have length M={self.M}, "
                f"got {len(self.J)} and {len(self.phi)}"
            )
        if self.U < 0:
            raise DomainError(f"U must be non-negative, got {self.U}")

    @classmethod
    def uniform(cls, M: int, N: int, U: float, J: float, phi: float) -> "RingParams":
        return cls(M=M, N=N, U=U, J=(J,) * M, phi=(phi,) * M)

    @property
    def is_uniform(self) -> bool:
        return len(set(self.J)) == 1 and len(set(self.phi)) == 1

    @property
    def mean_J(self) -> float:
        return float(np.mean(self.J))


@dataclass(frozen=True)
class HermitianOperator:
    """Sparse Hermitian matrix on the fixed-N Fock space."""

    dimension: int
    matrix: sparse.csr_matrix = field(repr=False)

    def toarray(self) -> np.ndarray:
        return self.matrix.toarray()

    def hermiticity_defect(self) -> float:
        """max |H - H^dag| element, relative to max |H| (0 for H = 0)."""
        diff = (self.matrix - self.matrix.getH()).tocoo()
        scale = abs(self.matrix).max() if self.matrix.nnz else 0.0
        if scale == 0.0:
            return 0.0 if diff.nnz == 0 else float(abs(diff.data).max())
        return float(abs(diff.data).max() / scale) if diff.nnz else 0.0


def _finalize(dim: int, rows, cols, vals) -> HermitianOperator:
    # coordinate-list semantics: duplicates are summed on finalization
    H = sparse.coo_matrix((vals, (rows, cols)), shape=(dim, dim), dtype=complex).tocsr()
    op = HermitianOperator(dimension=dim, matrix=H)
    defect = op.hermiticity_defect()
    if defect > HERMITICITY_RTOL:
        raise DomainError(f"built operator is not Hermitian (defect {defect:.3e})")
    return op


def _check_basis(params: RingParams, basis: FockBasis):
    if basis.M != params.M or basis.N != params.N:
        raise DomainError(
            f"basis built for (M={basis.M}, N={basis.N}) but params have "
            f"(M={params.M}, N={params.N})"
        )


def build_site_hamiltonian(params: RingParams, basis: FockBasis) -> HermitianOperator:
    """Assemble the twisted Hamiltonian in the site-occupation basis.

    The hop moving one atom from site i+1 to site i carries
    -J_i e^{i phi_i} sqrt((n_i + 1) n_{i+1}); the diagonal carries
    U sum_i n_i (n_i - 1).
    """
    _check_basis(params, basis)
    M = params.M
    rows, cols, vals = [], [], []
    for c, s in enumerate(basis.states):
        diag = params.U * sum(n * (n - 1) for n in s)
        if diag != 0.0:
            rows.append(c)
            cols.append(c)
            vals.append(diag)
        for i in range(M):
            ip = (i + 1) % M
            if s[ip] == 0:
                continue
            t = list(s)
            t[i] += 1
            t[ip] -= 1
            r = basis.index[tuple(t)]
            amp = -params.J[i] * np.exp(1j * params.phi[i]) * sqrt((s[i] + 1) * s[ip])
            rows.append(r)
            cols.append(c)
            vals.append(amp)
            rows.append(c)
            cols.append(r)
            vals.append(np.conj(amp))
    return _finalize(basis.dimension, rows, cols, vals)


def build_flow_hamiltonian_3site(
    params: RingParams, basis: FockBasis
) -> HermitianOperator:
    """Assemble the same Hamiltonian directly on flow-mode occupations.

    Valid for uniform 3-site rings only. Basis tuples are read as
    (N_alpha, N_beta, N_gamma), the occupations of the zero-flow, clockwise
    and anticlockwise modes. Kinetic part is diagonal,

        -J [ (2 n_a - n_b - n_c) cos phi + sqrt(3) (n_b - n_c) sin phi ],

    and the interaction carries prefactors U/3 {1, 4, 2}: weight 1 on
    sum_k n_k (n_k - 1), weight 4 on the mode density-density products, and
    weight 2 on the momentum-conserving pair exchanges
    (a^2 b^dag c^dag, b^2 c^dag a^dag, c^2 a^dag b^dag) plus conjugates.
    """
    _check_basis(params, basis)
    if params.M != 3:
        raise UnsupportedConfigurationError(
            f"flow-representation builder supports M=3 only, got M={params.M}"
        )
    if not params.is_uniform:
        raise UnsupportedConfigurationError(
            "flow-representation builder requires uniform bonds "
            f"(J={params.J}, phi={params.phi})"
        )
    J = params.J[0]
    phi = params.phi[0]
    U3 = params.U / 3.0
    rows, cols, vals = [], [], []
    # the three pair exchanges move two quanta out of one mode into the
    # other two; each conserves total quasi-momentum mod 3
    pair_moves = [(0, 1, 2), (1, 2, 0), (2, 0, 1)]
    for c, s in enumerate(basis.states):
        na, nb, nc = s
        kin = -J * ((2 * na - nb - nc) * cos(phi) + sqrt(3.0) * (nb - nc) * sin(phi))
        inter = U3 * (
            sum(n * (n - 1) for n in s) + 4.0 * (na * nb + nb * nc + nc * na)
        )
        rows.append(c)
        cols.append(c)
        vals.append(kin + inter)
        for src, d1, d2 in pair_moves:
            if s[src] < 2:
                continue
            t = list(s)
            t[src] -= 2
            t[d1] += 1
            t[d2] += 1
            r = basis.index[tuple(t)]
            amp = 2.0 * U3 * sqrt(s[src] * (s[src] - 1) * t[d1] * t[d2])
            rows.append(r)
            cols.append(c)
            vals.append(amp)
            rows.append(c)
            cols.append(r)
            vals.append(amp)
    return _finalize(basis.dimension, rows, cols, vals)


def quasi_momentum_operator(basis: FockBasis) -> HermitianOperator:
    """Diagonal operator K = sum_k k n_k on flow-mode occupations.

    Conserved mod M by uniform rings; bond asymmetry couples states whose K
    differs, which is what lets a single atom change its momentum.
    """
    diag = np.array(
        [sum(k * n for k, n in enumerate(s)) for s in basis.states], dtype=float
    )
    H = sparse.diags(diag, format="csr").astype(complex)
    return HermitianOperator(dimension=basis.dimension, matrix=H)


def phase_from_angular_momentum(L_over_hbar: float, M: int) -> float:
    """Twist phase per bond for a ring stirred with angular momentum L.

    phi = 2 pi L / (M hbar); half a flow quantum per particle (L = hbar/2)
    on three sites gives pi/3, the anti-crossing point.
    """
    return 2.0 * pi * L_over_hbar / M


def build_for(
    M: int, N: int, U: float, J: float, phi: float, bond_factors=None,
    dim_cap: int | None = None,
):
    """Convenience: params + basis + site Hamiltonian in one call.

    bond_factors are multiplicative factors on the base J per bond, so U/J
    stays well-defined through the base value.
    """
    factors = (1.0,) * M if bond_factors is None else tuple(bond_factors)
    if len(factors) != M:
        raise DomainError(f"bond_factors must have length M={M}")
    params = RingParams(
        M=M, N=N, U=U, J=tuple(J * f for f in factors), phi=(phi,) * M
    )
    kwargs = {} if dim_cap is None else {"dim_cap": dim_cap}
    basis = build_basis(M, N, **kwargs)
    return params, basis, build_site_hamiltonian(params, basis)
