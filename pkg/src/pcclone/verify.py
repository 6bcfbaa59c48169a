"""Invariant suites behind the ``verify`` CLI command.

Each check returns (name, measured defect, threshold); a check passes when
the defect is at or below its threshold. Exact-arithmetic checks report a
defect of 0.0 or 1.0.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from . import statekit as sk
from . import symmetry as sym
from .angular import (
    HalfInt,
    b_coef,
    cg,
    cg_ladder,
    d_coef,
    d_coef_via_cg,
    fidelity_formula,
    gamma,
    gamma_closed_form,
)
from .cloner import covariance_defect, pqcm_scheme_a, pqcm_scheme_b, scheme_equivalence_defect
from .opa import build_hamiltonian, evolve, first_order_output, fock_state, photon_reduced_density


def _exact(flag):
    return 0.0 if flag else 1.0


def angular_checks():
    checks = []
    # CG orthogonality: sum over J of cg^2 = 1, exact
    ortho_ok = True
    for tj1 in range(0, 7):
        for tj2 in range(0, 7):
            for tm1 in range(-tj1, tj1 + 1, 2):
                for tm2 in range(-tj2, tj2 + 1, 2):
                    total = Fraction(0)
                    for tJ in range(max(abs(tj1 - tj2), abs(tm1 + tm2)), tj1 + tj2 + 1, 2):
                        total += cg(
                            HalfInt(tj1), HalfInt(tj2), HalfInt(tm1),
                            HalfInt(tm2), HalfInt(tJ), HalfInt(tm1 + tm2),
                        ).square()
                    ortho_ok &= total == 1
    checks.append(("cg orthogonality (2j <= 6) exact", _exact(ortho_ok), 0.0))

    ladder_ok = True
    for tj1 in range(0, 11):
        for tj2 in range(0, 11 - tj1):
            for tJ in range(abs(tj1 - tj2), tj1 + tj2 + 1, 2):
                for tM in range(-tJ, tJ + 1, 2):
                    for tm1 in range(-tj1, tj1 + 1, 2):
                        tm2 = tM - tm1
                        if abs(tm2) > tj2:
                            continue
                        a = cg(HalfInt(tj1), HalfInt(tj2), HalfInt(tm1),
                               HalfInt(tm2), HalfInt(tJ), HalfInt(tM))
                        b = cg_ladder(HalfInt(tj1), HalfInt(tj2), HalfInt(tm1),
                                      HalfInt(tm2), HalfInt(tJ), HalfInt(tM))
                        ladder_ok &= a == b
    checks.append(("cg closed form == ladder oracle (2j <= 10)", _exact(ladder_ok), 0.0))

    d_ok = all(
        d_coef(P, k) == d_coef_via_cg(P, k)
        for P in range(1, 21) for k in range(P)
    )
    checks.append(("d_k closed form == b_k x CG (P <= 20)", _exact(d_ok), 0.0))

    b_ok = all(
        sum((b_coef(P, k).square() for k in range(P)), Fraction(0)) == 1
        for P in range(1, 51)
    )
    checks.append(("sum b_k^2 = 1 (P <= 50)", _exact(b_ok), 0.0))

    g_ok = all(gamma(P) == gamma_closed_form(P) for P in range(1, 202))
    checks.append(("gamma(P) == closed form (P <= 201)", _exact(g_ok), 0.0))

    rel_ok = all(
        fidelity_formula("cov_odd", 1, M) - fidelity_formula("phase_estimation", 1)
        == Fraction(1, 4 * M)
        for M in range(1, 40, 2)
    )
    checks.append(("cov_odd - phase_estimation == 1/(4M)", _exact(rel_ok), 0.0))
    return checks


def symmetry_checks():
    checks = []
    rng = np.random.default_rng(7)
    for n in (2, 3, 4):
        ref = sym.symmetric_projector(n).matrix
        # random rotated basis pair
        theta, phi = rng.uniform(0, np.pi), rng.uniform(0, 2 * np.pi)
        basis = np.array(
            [[np.cos(theta), -np.exp(-1j * phi) * np.sin(theta)],
             [np.exp(1j * phi) * np.sin(theta), np.cos(theta)]]
        )
        rot = sym.symmetric_projector(n, basis).matrix
        checks.append(
            (f"projector basis independence n={n}", float(np.max(np.abs(ref - rot))), 1e-12)
        )
        worst = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                swap = _transposition(n, i, j)
                worst = max(
                    worst,
                    float(np.max(np.abs(swap @ ref - ref))),
                    float(np.max(np.abs(ref @ swap - ref))),
                )
        checks.append((f"projector permutation invariance n={n}", worst, 1e-12))
        rank = int((np.linalg.eigvalsh(ref) > 0.5).sum())
        checks.append((f"projector rank n={n} equals n+1", _exact(rank == n + 1), 0.0))

        amps = rng.normal(size=2 ** n) + 1j * rng.normal(size=2 ** n)
        psi = sk.Ket(n, amps).normalized()
        _, success, _ = sym.project_and_postselect(psi, list(range(n)))
        dicke_sum = sum(
            abs(sym.dicke_state(sym.DickeLabel(n, k)).overlap(psi)) ** 2
            for k in range(n + 1)
        )
        checks.append((f"dicke-weight vs projection prob n={n}", abs(success - dicke_sum), 1e-12))
    for P in (2, 3):
        checks.append((f"concatenation defect P={P}", sym.concatenation_defect(P), 1e-12))
    return checks


def _transposition(n, i, j):
    dim = 2 ** n
    mat = np.zeros((dim, dim))
    for idx in range(dim):
        bi = (idx >> (n - 1 - i)) & 1
        bj = (idx >> (n - 1 - j)) & 1
        swapped = idx & ~(1 << (n - 1 - i)) & ~(1 << (n - 1 - j))
        swapped |= bj << (n - 1 - i) | bi << (n - 1 - j)
        mat[swapped, idx] = 1
    return mat


def cloner_checks():
    checks = []
    phases = tuple(2 * np.pi * k / 8 for k in range(8))
    for P in (2, 3):
        M = 2 * P - 1
        opt = float(fidelity_formula("cov_odd", 1, M))
        for plane in sk.PlaneId:
            worst_fid = 0.0
            worst_pair = 0.0
            worst_offdiag = 0.0
            for theta in phases:
                for run in (pqcm_scheme_a, pqcm_scheme_b):
                    report, final = run(theta, plane, P)
                    worst_fid = max(
                        worst_fid, max(abs(f - opt) for f in report.per_clone_fidelity)
                    )
                    reds = [sk.partial_trace(final, [q]).matrix for q in range(M)]
                    for a in range(M):
                        for b in range(a + 1, M):
                            worst_pair = max(worst_pair, float(np.max(np.abs(reds[a] - reds[b]))))
                    target = sk.equatorial_state(plane, theta)
                    perp = sk.equatorial_orthogonal(plane, theta)
                    off = np.vdot(target.amplitudes, reds[0] @ perp.amplitudes)
                    worst_offdiag = max(worst_offdiag, abs(off))
            checks.append((f"per-clone fidelity optimal P={P} {plane.value}", worst_fid, 1e-10))
            checks.append((f"reduced matrices identical P={P} {plane.value}", worst_pair, 1e-10))
            checks.append((f"reduced state diagonal in-plane P={P} {plane.value}", worst_offdiag, 1e-10))
            checks.append(
                (f"covariance defect P={P} {plane.value}",
                 covariance_defect(plane, P, "A", phases[:4], phases[:4]), 1e-10)
            )
            checks.append(
                (f"scheme equivalence P={P} {plane.value}",
                 scheme_equivalence_defect(plane, P, phases), 1e-12)
            )
    return checks


def opa_checks():
    checks = []
    cutoff = 6
    h_ref = build_hamiltonian(cutoff).matrix
    below = _below_boundary_mask(cutoff)
    worst = 0.0
    for phi in (0.0, np.pi / 3, np.pi / 2, 1.2):
        h_rot = build_hamiltonian(cutoff, phi).matrix
        worst = max(worst, float(np.max(np.abs((h_rot - h_ref)[np.ix_(below, below)]))))
    checks.append(("rotated Hamiltonian form invariance", worst, 1e-12))

    worst = 0.0
    for phi in (0.0, 0.7, np.pi / 2, 2.5, 4.0, 5.5, 1.1, 3.3):
        out = first_order_output(phi, cutoff)
        ratio = out.amplitude(1, 2) / out.amplitude(3, 0)
        expected = -np.sqrt(2 / 6) * np.exp(2j * phi)
        worst = max(worst, abs(ratio - expected))
    checks.append(("first-order amplitude ratio -sqrt(1/3) e^{2i phi}", worst, 1e-10))

    out = first_order_output(0.3, cutoff)
    rho = photon_reduced_density(out)
    target = sk.Ket(1, np.array([1, np.exp(1j * 0.3)]) / np.sqrt(2))
    checks.append(("first-order reduced fidelity 5/6", abs(sk.fidelity(rho, target) - 5 / 6), 1e-9))

    # roomier cutoff: the perturbative flow from 1 photon must fit well below it
    injected = fock_state(10, 1, 0, mode_basis=0.2)
    prev = 1.0
    mono = True
    deficit = None
    for order in range(1, 13):
        evolved, _ = evolve(injected, 0.1, order)
        deficit = abs(1 - evolved.norm_sq)
        mono &= deficit <= prev + 1e-15
        prev = deficit
    checks.append(("series norm deficit monotone, order 12 deficit", deficit if mono else 1.0, 1e-10))
    return checks


def _below_boundary_mask(cutoff):
    idx = np.arange((cutoff + 1) ** 2)
    m, n = idx // (cutoff + 1), idx % (cutoff + 1)
    return m + n <= cutoff - 1


SUITES = {
    "angular": angular_checks,
    "symmetry": symmetry_checks,
    "cloner": cloner_checks,
    "opa": opa_checks,
}


def run_suite(name):
    """Yield (check name, defect, threshold, passed) rows for a suite."""
    names = list(SUITES) if name == "all" else [name]
    rows = []
    for suite in names:
        for check, defect, threshold in SUITES[suite]():
            rows.append((f"{suite}: {check}", defect, threshold, defect <= threshold))
    return rows
