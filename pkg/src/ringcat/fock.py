"""Fixed-particle-number bosonic Fock basis for M lattice sites.

States are occupation tuples (n_0, ..., n_{M-1}) with sum N, enumerated in
lexicographic descending order so that (N, 0, ..., 0) comes first. The same
combinatorial basis doubles as the flow-mode occupation basis: a tuple is
then read as mode occupations (N_alpha, N_beta, ...) instead of site ones.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb, sqrt

from scipy import sparse

from .errors import DomainError, SizingError

DEFAULT_DIMENSION_CAP = 200_000


@dataclass(frozen=True)
class OccupationState:
    """Occupation numbers per site (or per flow mode)."""

    occupations: tuple

    def __post_init__(self):
        occ = tuple(int(n) for n in self.occupations)
        object.__setattr__(self, "occupations", occ)
        if any(n < 0 for n in occ):
            raise DomainError(f"negative occupation in {occ}")

    @property
    def total(self) -> int:
        return sum(self.occupations)


@dataclass(frozen=True, eq=False)
class FockBasis:
    """Complete fixed-N basis with a deterministic ordering and index lookup."""

    M: int
    N: int
    states: tuple
    index: dict = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.states)

    def state_of(self, i: int) -> tuple:
        return self.states[i]

    def index_of(self, state) -> int:
        return index_of(self, state)


def dimension(M: int, N: int) -> int:
    """Stars-and-bars count of N bosons on M sites."""
    return comb(N + M - 1, M - 1)


def _enumerate_descending(M: int, N: int):
    # lexicographic descending: leading site takes the largest count first
    if M == 1:
        yield (N,)
        return
    for n0 in range(N, -1, -1):
        for rest in _enumerate_descending(M - 1, N - n0):
            yield (n0,) + rest


def build_basis(M: int, N: int, dim_cap: int = DEFAULT_DIMENSION_CAP) -> FockBasis:
    """Enumerate all occupation tuples of N atoms on M sites.

    Raises SizingError when the dimension binomial(N+M-1, M-1) exceeds
    dim_cap, naming the offending dimension.
    """
    if M < 2:
        raise DomainError(f"need at least 2 sites, got M={M}")
    if N < 1:
        raise DomainError(f"need at least 1 atom, got N={N}")
    dim = dimension(M, N)
    if dim > dim_cap:
        raise SizingError(
            f"basis dimension {dim} for (M={M}, N={N}) exceeds cap {dim_cap}"
        )
    states = tuple(_enumerate_descending(M, N))
    index = {s: i for i, s in enumerate(states)}
    return FockBasis(M=M, N=N, states=states, index=index)


def index_of(basis: FockBasis, state) -> int:
    """Position of an occupation tuple in the basis ordering."""
    if isinstance(state, OccupationState):
        state = state.occupations
    state = tuple(int(n) for n in state)
    if len(state) != basis.M:
        raise DomainError(f"state length {len(state)} != M={basis.M}")
    if sum(state) != basis.N:
        raise DomainError(f"state {state} sums to {sum(state)}, expected N={basis.N}")
    try:
        return basis.index[state]
    except KeyError:
        raise DomainError(f"state {state} not in basis") from None


def sector_creation_matrices(M: int, N: int, dim_cap: int = DEFAULT_DIMENSION_CAP):
    """Per-sector site creation operators a_j^dag.

    Returns chains[n][j]: a sparse matrix mapping the n-atom sector to the
    (n+1)-atom sector, for n = 0..N-1 and site j. Sector 0 is the vacuum
    (dimension 1). Used to assemble many-body mode vectors and condensate
    states without ever leaving fixed-N sectors.
    """
    sectors = []
    # sector n=0 basis is the single vacuum tuple (0,...,0)
    low_states = ((0,) * M,)
    for n in range(N):
        high_dim = dimension(M, n + 1)
        if high_dim > dim_cap:
            raise SizingError(
                f"sector dimension {high_dim} for (M={M}, n={n + 1}) exceeds cap {dim_cap}"
            )
        high_states = tuple(_enumerate_descending(M, n + 1))
        high_index = {s: i for i, s in enumerate(high_states)}
        mats = []
        for j in range(M):
            rows, cols, vals = [], [], []
            for c, s in enumerate(low_states):
                t = list(s)
                t[j] += 1
                rows.append(high_index[tuple(t)])
                cols.append(c)
                vals.append(sqrt(t[j]))
            mats.append(
                sparse.csr_matrix(
                    (vals, (rows, cols)), shape=(high_dim, len(low_states))
                )
            )
        sectors.append(mats)
        low_states = high_states
    return sectors
