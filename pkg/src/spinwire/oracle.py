"""Dense brute-force reference implementations.

Everything here works on full 2^n x 2^n matrices with no structure
exploited, so results are trustworthy but exponentially expensive. The
module exists to cross-check the analytic paths; a size budget (default
n <= 10, hard cap 12, overridable through SPINWIRE_ORACLE_MAX_N within
the cap) keeps accidental large requests from exhausting memory.

Basis convention: site 1 is the most significant bit of the basis
label, bit value 1 marks an excitation (spin down), so Z_1 on two sites
is diag(1, 1, -1, -1).
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from .chain import ChainSpec
from .errors import (
    IndexOutOfRangeError,
    InvalidConfigurationError,
    InvalidDimensionError,
    OracleSizeError,
    UnsupportedModelError,
)
from .pauli import DeviationState, PauliString, parse_string_label

__all__ = [
    "HARD_CAP",
    "OracleBudget",
    "oracle_budget",
    "require_within_budget",
    "pauli_string_to_dense",
    "deviation_to_dense",
    "excitation_operator",
    "basis_index",
    "build_hamiltonian",
    "evolve_unitary",
    "evolve_deviation",
    "trace_overlap",
    "total_z",
    "staggered_z",
    "collective_rotation_diag",
    "similarity_transform",
    "similarity_residual",
]

HARD_CAP = 12
_DEFAULT_MAX_N = 10
_ENV_VAR = "SPINWIRE_ORACLE_MAX_N"

_PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


@dataclass(frozen=True)
class OracleBudget:
    """Size limit for dense computations."""

    max_n: int

    def __post_init__(self) -> None:
        if not isinstance(self.max_n, int) or isinstance(self.max_n, bool):
            raise InvalidConfigurationError(
                f"budget max_n must be int, got {self.max_n!r}"
            )
        if self.max_n < 2:
            raise InvalidConfigurationError(
                f"budget max_n must be >= 2, got {self.max_n}"
            )

    @property
    def effective_max_n(self) -> int:
        return min(self.max_n, HARD_CAP)


def oracle_budget() -> OracleBudget:
    """Budget from the environment (SPINWIRE_ORACLE_MAX_N), default 10."""
    raw = os.environ.get(_ENV_VAR)
    if raw is None:
        return OracleBudget(_DEFAULT_MAX_N)
    try:
        value = int(raw)
    except ValueError as exc:
        raise InvalidConfigurationError(
            f"{_ENV_VAR} must be an integer, got {raw!r}"
        ) from exc
    if value < 2:
        raise InvalidConfigurationError(f"{_ENV_VAR} must be >= 2, got {value}")
    return OracleBudget(value)


def require_within_budget(n: int, budget: OracleBudget | None = None) -> int:
    """Validate a dense request of n sites against the budget."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool):
        raise InvalidDimensionError(f"chain length must be int, got {n!r}")
    if n < 1:
        raise InvalidDimensionError(f"chain length must be >= 1, got {n}")
    limit = (budget or oracle_budget()).effective_max_n
    if n > limit:
        raise OracleSizeError(
            f"dense oracle limited to n <= {limit} (requested n={n}); "
            f"raise {_ENV_VAR} up to {HARD_CAP} if you really need this"
        )
    return int(n)


# -- operator construction ---------------------------------------------------


def _kron_all(mats: Iterable[np.ndarray]) -> np.ndarray:
    return functools.reduce(np.kron, mats)


def pauli_string_to_dense(
    n: int, string: str | PauliString, budget: OracleBudget | None = None
) -> np.ndarray:
    """Dense matrix of a Pauli string.

    ``string`` is either a length-n label like ``"XIZ"`` or a sparse
    tuple of (site, letter) pairs with 1-based sites.
    """
    require_within_budget(n, budget)
    if isinstance(string, str):
        if len(string) != n:
            raise InvalidConfigurationError(
                f"label length {len(string)} does not match n={n}"
            )
        sparse = parse_string_label(string)
    else:
        sparse = tuple(string)
    letters = ["I"] * n
    for site, letter in sparse:
        if not 1 <= site <= n:
            raise IndexOutOfRangeError(f"site {site} outside 1..{n}")
        if letter not in _PAULI:
            raise InvalidConfigurationError(f"unknown Pauli letter {letter!r}")
        letters[site - 1] = letter
    return _kron_all(_PAULI[letter] for letter in letters)


def deviation_to_dense(
    state: DeviationState, budget: OracleBudget | None = None
) -> np.ndarray:
    """Dense matrix of a symbolic deviation state."""
    require_within_budget(state.n, budget)
    out = np.zeros((2**state.n, 2**state.n), dtype=complex)
    for weight, sites in state.terms:
        out += weight * pauli_string_to_dense(state.n, sites, budget)
    return out


def basis_index(n: int, sites: Sequence[int]) -> int:
    """Computational-basis label of excitations on ``sites`` (1-based)."""
    idx = 0
    for s in sites:
        if not 1 <= s <= n:
            raise IndexOutOfRangeError(f"site {s} outside 1..{n}")
        bit = 1 << (n - int(s))
        if idx & bit:
            raise InvalidConfigurationError(f"duplicate site {s}")
        idx |= bit
    return idx


def excitation_operator(
    n: int,
    blocks: Mapping[tuple[tuple[int, ...], tuple[int, ...]], complex],
    budget: OracleBudget | None = None,
) -> np.ndarray:
    """Dense sum of |ket><bra| blocks given as site tuples."""
    require_within_budget(n, budget)
    out = np.zeros((2**n, 2**n), dtype=complex)
    for (ket, bra), weight in blocks.items():
        out[basis_index(n, ket), basis_index(n, bra)] += weight
    return out


def build_hamiltonian(spec: ChainSpec, budget: OracleBudget | None = None) -> np.ndarray:
    """Dense Hamiltonian of a chain spec.

    xx:      sum_j d_j (X_j X_{j+1} + Y_j Y_{j+1}) / 2
    dq:      sum_j d_j (X_j X_{j+1} - Y_j Y_{j+1}) / 2
    dipolar: sum_{j<l} d_jl [Z_j Z_l - (X_j X_l + Y_j Y_l) / 2]
    """
    n = require_within_budget(spec.n, budget)
    dim = 2**n
    h = np.zeros((dim, dim), dtype=complex)

    def two_site(a: int, b: int, letter: str) -> np.ndarray:
        return pauli_string_to_dense(n, ((a, letter), (b, letter)), budget)

    if spec.model in ("xx", "dq"):
        sign = 1.0 if spec.model == "xx" else -1.0
        for j, d in enumerate(spec.couplings, start=1):
            h += d / 2.0 * (two_site(j, j + 1, "X") + sign * two_site(j, j + 1, "Y"))
        return h
    if spec.model != "dipolar":
        raise UnsupportedModelError(f"unknown model {spec.model!r}")
    mat = spec.coupling_matrix()
    for j in range(1, n + 1):
        for l in range(j + 1, n + 1):
            d = mat[j - 1, l - 1]
            if d == 0.0:
                continue
            h += d * (
                two_site(j, l, "Z")
                - 0.5 * (two_site(j, l, "X") + two_site(j, l, "Y"))
            )
    return h


# -- evolution and traces -----------------------------------------------------


def evolve_unitary(h: np.ndarray, t: float) -> np.ndarray:
    """exp(-i h t) by full diagonalisation."""
    energies, vectors = np.linalg.eigh(h)
    return (vectors * np.exp(-1j * energies * t)) @ vectors.conj().T


def evolve_deviation(h: np.ndarray, rho: np.ndarray, t: float) -> np.ndarray:
    """Heisenberg-picture free evolution U rho U^dag."""
    u = evolve_unitary(h, t)
    return u @ rho @ u.conj().T


def trace_overlap(a: np.ndarray, b: np.ndarray) -> complex:
    """Normalised trace Tr[a b] / dim."""
    if a.shape != b.shape or a.shape[0] != a.shape[1]:
        raise InvalidDimensionError("operands must be equal square matrices")
    return complex(np.trace(a @ b) / a.shape[0])


def total_z(n: int, budget: OracleBudget | None = None) -> np.ndarray:
    """Diagonal matrix of sum_j Z_j."""
    require_within_budget(n, budget)
    labels = np.arange(2**n)
    popcount = np.array([bin(x).count("1") for x in labels])
    return np.diag((n - 2 * popcount).astype(complex))


def staggered_z(n: int, budget: OracleBudget | None = None) -> np.ndarray:
    """Diagonal matrix of sum_j (-1)^(j+1) Z_j."""
    require_within_budget(n, budget)
    out = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(1, n + 1):
        out += (-1) ** (j + 1) * pauli_string_to_dense(n, ((j, "Z"),), budget)
    return out


def collective_rotation_diag(n: int, phi: float, budget: OracleBudget | None = None) -> np.ndarray:
    """Diagonal of exp(-i phi sum_j Z_j / 2) as a vector."""
    require_within_budget(n, budget)
    labels = np.arange(2**n)
    popcount = np.array([bin(x).count("1") for x in labels])
    return np.exp(-0.5j * phi * (n - 2 * popcount))


# -- model equivalence ---------------------------------------------------------


def similarity_transform(n: int, budget: OracleBudget | None = None) -> np.ndarray:
    """Product of X on odd sites, the gauge linking the two models.

    Every bond (j, j+1) has exactly one odd endpoint, so conjugation
    leaves X_j X_{j+1} alone and flips the sign of Y_j Y_{j+1}, mapping
    H_xx onto H_dq with identical couplings.
    """
    require_within_budget(n, budget)
    sparse = tuple((j, "X") for j in range(1, n + 1, 2))
    return pauli_string_to_dense(n, sparse, budget)


def similarity_residual(n: int, couplings: Sequence[float], budget: OracleBudget | None = None) -> float:
    """Max-norm residual of the staggered-gauge equivalence.

    Conjugating H_xx by X on every odd site flips the sign of each
    Y_j Y_{j+1} bond term exactly once, turning H_xx(d) into H_dq(d):
    the two models are gauge copies of each other and share all
    polarisation dynamics up to the staggered sign.
    """
    spec_xx = ChainSpec(n, "xx", tuple(couplings))
    spec_dq = ChainSpec(n, "dq", tuple(couplings))
    u = similarity_transform(n, budget)
    hx = build_hamiltonian(spec_xx, budget)
    hd = build_hamiltonian(spec_dq, budget)
    return float(np.max(np.abs(u @ hx @ u - hd)))
