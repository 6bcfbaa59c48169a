"""Symmetric-subspace machinery: Dicke states, symmetrization projectors,
post-selected projection with success probability."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .statekit import Ket, _check_capacity, apply


class VanishingProjectionError(Exception):
    """Raised when the post-selected component of a state is (near-)zero."""


@dataclass(frozen=True)
class DickeLabel:
    """n-qubit permutation-symmetric state with k qubits excited to |phi_perp>."""

    n: int
    k: int

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if not 0 <= self.k <= self.n:
            raise ValueError(f"k={self.k} out of range for n={self.n}")


@dataclass(frozen=True)
class SymProjector:
    n: int
    matrix: np.ndarray


def dicke_state(label, basis=None):
    """Normalized symmetric state with the given excitation count.

    ``basis`` is a 2x2 matrix whose columns define {|phi>, |phi_perp>};
    default is the computational basis.
    """
    n, k = label.n, label.k
    amps = np.zeros(2 ** n, dtype=complex)
    for excited in combinations(range(n), k):
        idx = sum(1 << (n - 1 - q) for q in excited)
        amps[idx] = 1.0
    amps /= np.sqrt(comb(n, k))
    ket = Ket(n, amps)
    if basis is not None:
        for q in range(n):
            ket = apply(basis, [q], ket)
    return ket


def symmetric_projector(n, basis=None):
    """Projector onto the (n+1)-dimensional symmetric subspace of n qubits.

    Built as the sum of Dicke outer products; the resulting matrix is
    independent of the defining basis pair.
    """
    _check_capacity(n)
    dim = 2 ** n
    mat = np.zeros((dim, dim), dtype=complex)
    for k in range(n + 1):
        v = dicke_state(DickeLabel(n, k), basis).amplitudes
        mat += np.outer(v, v.conj())
    return SymProjector(n, mat)


def project_and_postselect(state, subset):
    """Apply the symmetrizer to the subset qubits and post-select.

    Returns (unnormalized projected state, success probability, normalized
    projected state). The success probability is the squared norm of the
    projected state before renormalization.
    """
    proj = symmetric_projector(len(subset))
    projected = apply(proj.matrix, subset, state)
    success = projected.norm_sq
    if success < 1e-14:
        raise VanishingProjectionError(
            f"projection onto the symmetric subspace vanished (norm^2={success:.3e})"
        )
    return projected, success, projected.normalized()


def concatenation_defect(P):
    """Max-norm defect of Pi^{2P-1} (Pi^P x I^{P-1}) = Pi^{2P-1} as dense matrices."""
    if P < 1:
        raise ValueError("P must be >= 1")
    n = 2 * P - 1
    _check_capacity(n)
    big = symmetric_projector(n).matrix
    if P == 1:
        small = np.eye(2, dtype=complex)
    else:
        small = np.kron(symmetric_projector(P).matrix, np.eye(2 ** (P - 1)))
    return float(np.max(np.abs(big @ small - big)))
