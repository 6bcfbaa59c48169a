"""Truncated two-mode bosonic simulator for the collinear type-II amplifier.

The two modes are the orthogonal polarizations of a single spatial mode.
States are stored as amplitude vectors indexed by the photon pair (m, n)
with 0 <= m, n <= cutoff; ``mode_basis`` is either the string "HV" or a float
phase phi tagging the rotated pair {phi, phi_perp} with
a_phi = (a_H + e^{-i phi} a_V)/sqrt2 (dagger convention as in the rotated
Hamiltonian form). Units: the coupling chi*hbar is set to 1, so "gain" is
the dimensionless interaction time chi*t.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import comb, factorial, sqrt

import numpy as np

from .statekit import Ket, partial_trace
from .symmetry import DickeLabel, dicke_state


class CutoffOverflowError(Exception):
    """Evolution pushed significant population onto the truncation boundary."""


@dataclass(frozen=True)
class FockVec:
    """Truncated two-mode state; amplitudes indexed by (m, n) row-major."""

    cutoff: int
    amplitudes: np.ndarray
    mode_basis: object = "HV"

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        dim = (self.cutoff + 1) ** 2
        if amps.shape != (dim,):
            raise ValueError(f"expected {dim} amplitudes, got {amps.shape}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    @property
    def norm_sq(self):
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def amplitude(self, m, n):
        return complex(self.amplitudes[m * (self.cutoff + 1) + n])


@dataclass(frozen=True)
class BosonOp:
    cutoff: int
    matrix: np.ndarray


def fock_state(cutoff, m, n, mode_basis="HV"):
    amps = np.zeros((cutoff + 1) ** 2, dtype=complex)
    amps[m * (cutoff + 1) + n] = 1.0
    return FockVec(cutoff, amps, mode_basis)


def _destroy(cutoff):
    return np.diag(np.sqrt(np.arange(1, cutoff + 1)), k=1).astype(complex)


def mode_operators(cutoff):
    """(a1, a2) annihilation matrices on the two-mode truncated space."""
    a = _destroy(cutoff)
    eye = np.eye(cutoff + 1)
    return np.kron(a, eye), np.kron(eye, a)


def build_hamiltonian(cutoff, phi=None):
    """Pair-creation Hamiltonian i a_H^dag a_V^dag + h.c. (chi*hbar = 1).

    With ``phi`` given, builds instead the algebraically equivalent rotated
    form (1/2) i e^{-i phi} (a_phi^dag^2 - e^{2i phi} a_phiperp^dag^2) + h.c.
    out of composite mode operators; U(1) invariance makes the two matrices
    agree away from the truncation boundary.
    """
    if cutoff < 3:
        raise ValueError("cutoff must be >= 3 to hold the 3-photon sector")
    a1, a2 = mode_operators(cutoff)
    if phi is None:
        h = 1j * (a1.conj().T @ a2.conj().T)
        return BosonOp(cutoff, h + h.conj().T)
    aphi_d = (a1.conj().T + np.exp(1j * phi) * a2.conj().T) / sqrt(2)
    aperp_d = (-np.exp(-1j * phi) * a1.conj().T + a2.conj().T) / sqrt(2)
    h = 0.5j * np.exp(-1j * phi) * (
        aphi_d @ aphi_d - np.exp(2j * phi) * aperp_d @ aperp_d
    )
    return BosonOp(cutoff, h + h.conj().T)


def hamiltonian_in_rotated_modes(cutoff, phi):
    """The same Hamiltonian written on amplitudes in the {phi, phi_perp} basis:
    (1/2) i e^{-i phi}(a1^dag^2 - e^{2i phi} a2^dag^2) + h.c. with standard ops."""
    if cutoff < 3:
        raise ValueError("cutoff must be >= 3 to hold the 3-photon sector")
    a1, a2 = mode_operators(cutoff)
    h = 0.5j * np.exp(-1j * phi) * (
        a1.conj().T @ a1.conj().T - np.exp(2j * phi) * a2.conj().T @ a2.conj().T
    )
    return BosonOp(cutoff, h + h.conj().T)


def _hamiltonian_for(state):
    if state.mode_basis == "HV":
        return build_hamiltonian(state.cutoff)
    return hamiltonian_in_rotated_modes(state.cutoff, float(state.mode_basis))


def _boundary_population(cutoff, amps):
    grid = np.abs(amps.reshape(cutoff + 1, cutoff + 1)) ** 2
    return float(grid[cutoff, :].sum() + grid[:, cutoff].sum() - grid[cutoff, cutoff])


def evolve(state, gain, order):
    """Truncated Taylor expansion of exp(-i gain H) applied to the state.

    Returns (evolved FockVec, remainder) where the remainder is the norm of
    the first dropped series term, an upper estimate of the truncation error.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    if abs(gain) > 0.5:
        warnings.warn("perturbative series is unreliable for |gain| > 0.5")
    h = _hamiltonian_for(state).matrix
    term = state.amplitudes.copy()
    acc = term.copy()
    for j in range(1, order + 1):
        term = (-1j * gain / j) * (h @ term)
        acc = acc + term
    remainder = float(np.linalg.norm((-1j * gain / (order + 1)) * (h @ term)))
    if _boundary_population(state.cutoff, acc) > 1e-8:
        raise CutoffOverflowError(
            "series pushed population onto the truncation boundary; raise the cutoff"
        )
    return FockVec(state.cutoff, acc, state.mode_basis), remainder


def first_order_output(phase, cutoff=6):
    """Coefficient of gain^1 for an injected |phi>-polarized photon.

    The injected state is |1,0> in the rotated {phi, phi_perp} basis; the
    first-order term lives entirely in the 3-photon sector with amplitude
    ratio (3,0):(1,2) = sqrt6 : -sqrt2 e^{2i phi} up to one global factor.
    """
    if cutoff < 3:
        raise ValueError("cutoff must be >= 3")
    injected = fock_state(cutoff, 1, 0, mode_basis=float(phase))
    h = hamiltonian_in_rotated_modes(cutoff, phase).matrix
    return FockVec(cutoff, -1j * (h @ injected.amplitudes), float(phase))


def change_mode_basis(state, new_basis):
    """Re-express a FockVec in another polarization mode pair.

    Exact linear map obtained by binomially re-expanding products of creation
    operators; photon-number conserving and unitary on every sector that fits
    under the cutoff.
    """
    # o^dag = M_old a^dag and b^dag = M_new a^dag  =>  o^dag = M_old M_new^dag b^dag
    m = _mode_matrix(state.mode_basis) @ _mode_matrix(new_basis).conj().T
    c = state.cutoff
    dim = (c + 1) ** 2
    out = np.zeros(dim, dtype=complex)
    for mm in range(c + 1):
        for nn in range(c + 1):
            amp = state.amplitudes[mm * (c + 1) + nn]
            if amp == 0:
                continue
            if mm + nn > c:
                raise ValueError(
                    "basis change requires total photon number <= cutoff"
                )
            out += amp * _reexpand(c, mm, nn, m)
    return FockVec(c, out, new_basis)


def _mode_matrix(basis):
    """Rows express the basis mode creation ops over (a_H^dag, a_V^dag)."""
    if basis == "HV":
        return np.eye(2, dtype=complex)
    phi = float(basis)
    return np.array(
        [[1, np.exp(1j * phi)], [-np.exp(-1j * phi), 1]], dtype=complex
    ) / sqrt(2)


def _single_particle(basis):
    return _mode_matrix(basis).T


def _reexpand(cutoff, m, n, u):
    """(o1^dag)^m (o2^dag)^n |0> / sqrt(m! n!) over the new-mode Fock basis,
    with o_i^dag = u[i,0] b1^dag + u[i,1] b2^dag."""
    out = np.zeros((cutoff + 1) ** 2, dtype=complex)
    base = 1 / sqrt(factorial(m) * factorial(n))
    for j in range(m + 1):
        for k in range(n + 1):
            p = j + k            # photons in new mode 1
            q = m + n - p        # photons in new mode 2
            coef = (
                comb(m, j) * comb(n, k)
                * u[0, 0] ** j * u[0, 1] ** (m - j)
                * u[1, 0] ** k * u[1, 1] ** (n - k)
                * sqrt(factorial(p) * factorial(q))
            )
            out[p * (cutoff + 1) + q] += base * coef
    return out


def photon_reduced_density(state):
    """Single-photon polarization density matrix of a fixed-N Fock state.

    Maps the symmetric N-photon sector to N qubits (|m, N-m> <-> Dicke state
    with N-m excitations in the orthogonal polarization) and traces out all
    but one qubit. The qubit basis pair is the state's mode basis expressed
    over {|H>, |V>} = {|0>, |1>}.
    """
    c = state.cutoff
    sector_weight = {}
    for m in range(c + 1):
        for n in range(c + 1):
            w = abs(state.amplitude(m, n)) ** 2
            if w > 0:
                sector_weight[m + n] = sector_weight.get(m + n, 0.0) + w
    total = sum(sector_weight.values())
    if total < 1e-14:
        raise ValueError("zero state")
    big_n = max(sector_weight, key=sector_weight.get)
    off = total - sector_weight[big_n]
    if off > 1e-10 or big_n < 1:
        raise ValueError("state must be supported on a single photon-number sector N >= 1")
    basis = _single_particle(state.mode_basis)
    acc = np.zeros(2 ** big_n, dtype=complex)
    for m in range(big_n + 1):
        a = state.amplitude(m, big_n - m)
        if a != 0:
            acc += a * dicke_state(DickeLabel(big_n, big_n - m), basis).amplitudes
    ket = Ket(big_n, acc / np.linalg.norm(acc))
    return partial_trace(ket, [0])
