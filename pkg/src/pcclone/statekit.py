"""Dense complex linear algebra for multi-qubit pure states and density operators.

Conventions: qubit 0 is the most significant bit of the basis-state index,
so ``|q0 q1 ... q_{n-1}>`` maps to index ``sum(q_i * 2**(n-1-i))``.
Unnormalized kets are legal values (they arise after projective post-selection).
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

EQ_TOL = 1e-12       # entrywise / overlap equality
SPECTRAL_TOL = 1e-10  # eigenvalue positivity slack

DEFAULT_MAX_QUBITS = 24


class CapacityError(Exception):
    """Raised when an operation would exceed the qubit capacity cap."""


def max_qubits():
    """Capacity cap on total qubit count; override with PCCLONE_MAX_QUBITS."""
    return int(os.environ.get("PCCLONE_MAX_QUBITS", DEFAULT_MAX_QUBITS))


def _check_capacity(n):
    cap = max_qubits()
    if n > cap:
        raise CapacityError(f"{n} qubits exceeds capacity cap of {cap}")


# Pauli matrices
SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_Z = np.array([[1, 0], [0, -1]], dtype=complex)
IDENTITY2 = np.eye(2, dtype=complex)


@dataclass(frozen=True)
class Ket:
    """Pure state on ``num_qubits`` qubits, possibly unnormalized."""

    num_qubits: int
    amplitudes: np.ndarray
    norm_sq: float = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2 ** self.num_qubits,):
            raise ValueError(
                f"expected {2 ** self.num_qubits} amplitudes, got {amps.shape}"
            )
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)
        object.__setattr__(self, "norm_sq", float(np.vdot(amps, amps).real))

    def normalized(self):
        if self.norm_sq < 1e-14:
            raise ValueError("cannot normalize a (near-)zero vector")
        return Ket(self.num_qubits, self.amplitudes / np.sqrt(self.norm_sq))

    def overlap(self, other):
        """<self|other>."""
        return complex(np.vdot(self.amplitudes, other.amplitudes))


@dataclass(frozen=True)
class DensityOp:
    """Density operator on ``num_qubits`` qubits."""

    num_qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        mat = np.asarray(self.matrix, dtype=complex)
        dim = 2 ** self.num_qubits
        if mat.shape != (dim, dim):
            raise ValueError(f"expected {dim}x{dim} matrix, got {mat.shape}")
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "matrix", mat)

    @property
    def trace(self):
        return float(np.trace(self.matrix).real)


class BellKind(Enum):
    PhiPlus = "phi+"
    PhiMinus = "phi-"
    PsiPlus = "psi+"
    PsiMinus = "psi-"


class PlaneId(Enum):
    """Equatorial plane of the Bloch sphere.

    Each plane fixes a canonical basis pair {|psi>, |psi_perp>}, the Pauli
    realizing the in-plane NOT, and the Bell ancilla selecting this plane in
    the direct-symmetrization cloner.
    """

    XZ = "xz"
    YZ = "yz"
    XY = "xy"

    @property
    def basis(self):
        """2x2 matrix whose columns are the canonical {|psi>, |psi_perp>}."""
        s = 1 / np.sqrt(2)
        if self is PlaneId.XZ:
            # |R> = (|0> - i|1>)/sqrt2, |L> = (|0> + i|1>)/sqrt2
            return np.array([[s, s], [-1j * s, 1j * s]], dtype=complex)
        if self is PlaneId.YZ:
            return np.array([[s, s], [s, -s]], dtype=complex)
        return np.eye(2, dtype=complex)

    @property
    def flip_pauli(self):
        """Pauli whose action is the NOT gate on this plane's states."""
        return {PlaneId.XZ: SIGMA_Y, PlaneId.YZ: SIGMA_X, PlaneId.XY: SIGMA_Z}[self]

    @property
    def orientation(self):
        """Sign making exp(-i s*angle*sigma/2) advance the canonical phase.

        The XZ pair {|R>, |L>} lists the -1 eigenvector of sigma_Y first, so
        its orientation is reversed relative to the other two planes.
        """
        return -1 if self is PlaneId.XZ else 1

    @property
    def bell_kind(self):
        """Bell ancilla selecting this plane in the symmetrization cloner.

        Fixed by the identity (I x sigma_flip)|psi-> = Bell: the ancilla is
        the plane's NOT gate applied to half a singlet.
        """
        return {
            PlaneId.XZ: BellKind.PhiPlus,
            PlaneId.YZ: BellKind.PhiMinus,
            PlaneId.XY: BellKind.PsiPlus,
        }[self]


@dataclass(frozen=True)
class PhaseRotation:
    """Rotation about the plane's normal axis advancing the equatorial phase.

    Realizes exp(-i s*angle*sigma/2) with s the plane's orientation, so that
    equatorial_state(plane, theta) maps to equatorial_state(plane,
    theta + angle) up to a global phase for every plane.
    """

    plane: PlaneId
    angle: float

    @property
    def matrix(self):
        half = self.plane.orientation * self.angle / 2
        return np.cos(half) * IDENTITY2 - 1j * np.sin(half) * self.plane.flip_pauli


def equatorial_state(plane, phase):
    """(|psi> + e^{i phase}|psi_perp>)/sqrt2 in the plane's canonical basis."""
    b = plane.basis
    amps = (b[:, 0] + np.exp(1j * phase) * b[:, 1]) / np.sqrt(2)
    return Ket(1, amps)


def equatorial_orthogonal(plane, phase):
    """The in-plane orthogonal partner (|psi> - e^{i phase}|psi_perp>)/sqrt2."""
    b = plane.basis
    amps = (b[:, 0] - np.exp(1j * phase) * b[:, 1]) / np.sqrt(2)
    return Ket(1, amps)


def basis_state(num_qubits, index):
    amps = np.zeros(2 ** num_qubits, dtype=complex)
    amps[index] = 1.0
    return Ket(num_qubits, amps)


def bell_state(which):
    s = 1 / np.sqrt(2)
    table = {
        BellKind.PhiPlus: [s, 0, 0, s],
        BellKind.PhiMinus: [s, 0, 0, -s],
        BellKind.PsiPlus: [0, s, s, 0],
        BellKind.PsiMinus: [0, s, -s, 0],
    }
    return Ket(2, np.array(table[which], dtype=complex))


def tensor(a, b):
    """Kronecker product; qubit indices of b shift up by a.num_qubits."""
    n = a.num_qubits + b.num_qubits
    _check_capacity(n)
    return Ket(n, np.kron(a.amplitudes, b.amplitudes))


def tensor_all(kets):
    out = kets[0]
    for k in kets[1:]:
        out = tensor(out, k)
    return out


def _as_axes(state):
    return state.amplitudes.reshape((2,) * state.num_qubits)


def apply(op, target_qubits, state):
    """Apply ``op`` to the listed qubits (identity elsewhere)."""
    n = state.num_qubits
    k = len(target_qubits)
    op = np.asarray(op, dtype=complex)
    if op.shape != (2 ** k, 2 ** k):
        raise ValueError(f"operator shape {op.shape} does not match {k} targets")
    if len(set(target_qubits)) != k:
        raise ValueError("target qubits must be distinct")
    if any(q < 0 or q >= n for q in target_qubits):
        raise IndexError("target qubit out of range")
    psi = np.moveaxis(_as_axes(state), target_qubits, range(k))
    shape = psi.shape
    psi = op @ psi.reshape(2 ** k, -1)
    psi = np.moveaxis(psi.reshape(shape), range(k), target_qubits)
    return Ket(n, psi.reshape(-1))


def permute_qubits(state, order):
    """Reorder qubits so new qubit i is the old qubit order[i]."""
    n = state.num_qubits
    if sorted(order) != list(range(n)):
        raise ValueError("order must be a permutation of all qubit indices")
    psi = _as_axes(state).transpose(order)
    return Ket(n, psi.reshape(-1))


def outer(ket):
    """|psi><psi| as a DensityOp (ket need not be normalized)."""
    v = ket.amplitudes
    return DensityOp(ket.num_qubits, np.outer(v, v.conj()))


def partial_trace(rho_or_ket, keep):
    """Reduced density operator on the kept qubits (in the listed order)."""
    if not keep:
        raise ValueError("keep must be nonempty")
    n = rho_or_ket.num_qubits
    if len(set(keep)) != len(keep) or any(q < 0 or q >= n for q in keep):
        raise IndexError("invalid keep list")
    k = len(keep)
    if isinstance(rho_or_ket, Ket):
        psi = np.moveaxis(_as_axes(rho_or_ket), keep, range(k))
        m = psi.reshape(2 ** k, -1)
        return DensityOp(k, m @ m.conj().T)
    mat = rho_or_ket.matrix.reshape((2,) * (2 * n))
    row = np.moveaxis(mat, keep, range(k))
    col = np.moveaxis(row, [n + q for q in keep], range(k, 2 * k))
    red = col.reshape(2 ** k, 2 ** k, 2 ** (n - k), 2 ** (n - k))
    return DensityOp(k, np.einsum("ijmm->ij", red))


def fidelity(rho, target):
    """<target|rho|target>; target must be normalized."""
    if rho.num_qubits != target.num_qubits:
        raise ValueError("dimension mismatch between rho and target")
    if abs(target.norm_sq - 1) > 1e-10:
        raise ValueError("target must be normalized")
    val = complex(np.vdot(target.amplitudes, rho.matrix @ target.amplitudes))
    if abs(val.imag) > 1e-12 * max(1.0, abs(val.real)):
        raise ValueError(f"fidelity has imaginary residue {val.imag}")
    return float(val.real)


def phase_rotate(rot, state, qubits):
    """Apply the plane rotation to each listed qubit."""
    out = state
    for q in qubits:
        out = apply(rot.matrix, [q], out)
    return out


def same_up_to_phase(a, b, tol=EQ_TOL):
    """Global-phase-insensitive equality of two normalized kets."""
    return abs(a.overlap(b)) ** 2 >= 1 - tol


def trace_distance(rho_a, rho_b):
    eigs = np.linalg.eigvalsh(rho_a.matrix - rho_b.matrix)
    return float(np.abs(eigs).sum() / 2)
