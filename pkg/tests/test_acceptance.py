"""Acceptance criteria, one test per criterion.

Each test prints a single ``ACCEPTANCE <k> PASS|FAIL`` line (run pytest with
-s or read the captured output) and then asserts.  Tolerances are pinned
here, not configurable.
"""
import math
import time
from dataclasses import replace

import numpy as np
import pytest

from _oracles import jacobi_finite_sum
from pdmorse import (WEYL, AmbiguityOrdering, EigenfunctionParams, GridSpec,
                     MassModel, ReducedSystem, SignConvention, constant_mass_epsilon,
                     energy_ev, epsilon_nl, get_molecule, jacobi, make_state,
                     node_count, norm_const, norm_const_quadrature,
                     nu_consistent_state, nu_internals, ode_residual, reality_check,
                     reduce, solve_on_grid, solve_states, spectrum)
from pdmorse.catalog import REFERENCE_ENERGIES
from pdmorse.reports import oracle_compare_rows, oracle_csv
from pdmorse.units import HBAR2_EV_AMU_A2
from pdmorse.wavefn import make_z_grid

MOLECULES = (get_molecule("H2"), get_molecule("LiH"))
PDM_ETAS = (0.2, 0.4, 0.6)


def report(k: int, ok: bool, detail: str) -> None:
    print(f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_1_constant_mass_table():
    """Every eta = 0 reference cell within 0.005 eV, in under a second."""
    t0 = time.perf_counter()
    worst = 0.0
    for mol in MOLECULES:
        sys = reduce(mol, 0.0, WEYL)
        for n, ref in REFERENCE_ENERGIES[(mol.name, 0.0)].items():
            e = -sys.e_scale * constant_mass_epsilon(sys, n)
            worst = max(worst, abs(e - ref))
    elapsed = time.perf_counter() - t0
    ok = worst <= 0.005 and elapsed < 1.0
    report(1, ok, f"max |delta| = {worst:.6f} eV over 11 cells, {elapsed:.3f} s")
    assert worst <= 0.005
    assert elapsed < 1.0


def test_criterion_2_pdm_table():
    """Every eta in {0.2, 0.4, 0.6} reference cell within 0.005 eV, < 1 s."""
    t0 = time.perf_counter()
    worst = 0.0
    cells = 0
    for mol in MOLECULES:
        for eta in PDM_ETAS:
            sys = reduce(mol, eta, WEYL)
            for n, ref in REFERENCE_ENERGIES[(mol.name, eta)].items():
                worst = max(worst, abs(energy_ev(sys, n) - ref))
                cells += 1
    elapsed = time.perf_counter() - t0
    spot_h2 = energy_ev(reduce(MOLECULES[0], 0.2, WEYL), 0)
    spot_lih = energy_ev(reduce(MOLECULES[1], 0.6, WEYL), 20)
    ok = (worst <= 0.005 and elapsed < 1.0
          and abs(spot_h2 + 4.528) <= 0.005 and abs(spot_lih + 1.486) <= 0.005)
    report(2, ok, f"max |delta| = {worst:.6f} eV over {cells} cells, {elapsed:.3f} s")
    assert worst <= 0.005
    assert elapsed < 1.0


def test_criterion_3_limit_reduction():
    """max |E(eta=1e-8) - E(constant mass)| < 1e-6 eV over all table levels."""
    worst = 0.0
    for mol in MOLECULES:
        sys0 = reduce(mol, 0.0, WEYL)
        sys8 = reduce(mol, 1e-8, WEYL)
        levels = set()
        for eta in (0.0,) + PDM_ETAS:
            levels |= set(REFERENCE_ENERGIES[(mol.name, eta)])
        for n in sorted(levels):
            e_lim = energy_ev(sys8, n)
            e0 = -sys0.e_scale * constant_mass_epsilon(sys0, n)
            worst = max(worst, abs(e_lim - e0))
    ok = worst < 1e-6
    report(3, ok, f"max limit gap = {worst:.3e} eV")
    assert worst < 1e-6


def test_criterion_4_quantization_self_consistency():
    """lambda == lambda_n at every public eigenvalue, 1e-9 relative.

    The closing assignment pairs the selected k-root with tau_slope/2; the
    pi-slope pairing misses by exactly eta/2 at these roots, which is also
    asserted (it documents which pairing closes where).
    """
    worst = 0.0
    worst_pi = 0.0
    count = 0
    for mol in MOLECULES:
        for eta in (0.0,) + PDM_ETAS:
            sys = reduce(mol, eta, WEYL)
            for st in spectrum(sys):
                nu = nu_internals(sys, st.eps_nl, st.n)
                scale = max(1.0, abs(nu.lambda_n), abs(nu.k2))
                worst = max(worst, abs(nu.lambda_ - nu.lambda_n) / scale)
                worst_pi = max(worst_pi,
                               abs(nu.lambda_pi - nu.lambda_n - eta / 2.0) / scale)
                count += 1
    ok = worst < 1e-9 and worst_pi < 1e-9
    report(4, ok, f"closure defect {worst:.2e}, pi-pairing offset from eta/2 "
                  f"{worst_pi:.2e}, over {count} states")
    assert worst < 1e-9
    assert worst_pi < 1e-9


def test_criterion_5_a_tilde_identity():
    """A_tilde * eta == A to 1e-12 relative for all enumerated eta > 0 states."""
    worst = 0.0
    for mol in MOLECULES:
        for eta in PDM_ETAS:
            sys = reduce(mol, eta, WEYL)
            for st in spectrum(sys):
                worst = max(worst, abs(st.A_tilde * eta - st.A) / st.A)
    ok = worst <= 1e-12
    report(5, ok, f"max relative identity defect = {worst:.2e}")
    assert worst <= 1e-12


def test_criterion_6_ode_residual():
    """Equation residual < 1e-6 on 2048 z-points for H2 eta=0.2, n in {0,1,2}.

    States are taken at the internally consistent quantization root (the
    eigenvalue the bounded-branch eigenfunction actually solves); the
    residual at the public tabulated root is reported alongside, and the
    perturbed-eps control (eps * 1.01) must exceed 1e-3.
    """
    sys = reduce(MOLECULES[0], 0.2, WEYL)
    grid = make_z_grid(2048)
    conv = SignConvention.NORMALIZABLE
    residuals = []
    publics = []
    controls = []
    for n in (0, 1, 2):
        st = nu_consistent_state(sys, n)
        residuals.append(ode_residual(sys, st, grid, conv))
        publics.append(ode_residual(sys, make_state(sys, n), grid, conv))
        perturbed = replace(st, eps_nl=st.eps_nl * 1.01)
        controls.append(ode_residual(sys, perturbed, grid, conv))
    ok = max(residuals) < 1e-6 and min(controls) > 1e-3
    report(6, ok, f"residuals {['%.1e' % r for r in residuals]}, "
                  f"controls {['%.1e' % c for c in controls]}, "
                  f"public-root residuals {['%.1e' % p for p in publics]} (reported)")
    assert max(residuals) < 1e-6
    assert min(controls) > 1e-3


def test_criterion_7_oracle_cross_validation():
    """Shooting vs closed form at eta = 0 within 2e-3 eV (n <= 4, both
    molecules, 8001 points); particle-in-a-box within 1e-6 relative (n <= 5);
    all inside 30 s."""
    t0 = time.perf_counter()
    worst_morse = 0.0
    domains = {"H2": (-0.7, 10.0), "LiH": (-1.2, 12.0)}
    for mol in MOLECULES:
        sys = reduce(mol, 0.0, WEYL)
        mm = MassModel.for_molecule(mol, 0.0)
        x_min, x_max = domains[mol.name]
        grid = GridSpec(x_min, x_max, 8001)
        for n, e in solve_states(mm, WEYL, mol, grid, range(5)):
            exact = -sys.e_scale * constant_mass_epsilon(sys, n)
            worst_morse = max(worst_morse, abs(e - exact))

    worst_box = 0.0
    box_grid = GridSpec(0.0, 1.0, 2001)
    results = solve_on_grid(lambda x: np.zeros_like(np.asarray(x, dtype=float)),
                            lambda x: np.full_like(np.asarray(x, dtype=float), 1.0),
                            box_grid, range(6), (1e-4, 3.0), tol_ev=1e-10)
    for n, res in results:
        exact = HBAR2_EV_AMU_A2 * math.pi**2 * (n + 1) ** 2 / 2.0
        worst_box = max(worst_box, abs(res.E - exact) / exact)
    elapsed = time.perf_counter() - t0
    ok = worst_morse < 2e-3 and worst_box < 1e-6 and elapsed < 30.0
    report(7, ok, f"max Morse gap {worst_morse:.2e} eV, max box relative "
                  f"{worst_box:.2e}, {elapsed:.1f} s")
    assert worst_morse < 2e-3
    assert worst_box < 1e-6
    assert elapsed < 30.0


def test_criterion_8_domain_study_report(tmp_path):
    """oracle-compare domain study for H2 eta=0.2, n <= 2: must run and be
    deterministic; agreement is investigative, so no value gate."""
    mol = MOLECULES[0]
    rows_a = oracle_compare_rows(mol, 0.2, WEYL, 2, 4001)
    rows_b = oracle_compare_rows(mol, 0.2, WEYL, 2, 4001)
    text_a = oracle_csv(rows_a)
    text_b = oracle_csv(rows_b)
    out = tmp_path / "domain_study.csv"
    out.write_text(text_a)
    domains = sorted({r["domain"] for r in rows_a})
    ok = (text_a == text_b and len(rows_a) == 6 and len(domains) == 2
          and out.exists())
    deltas = {d: ["%.4f" % r["delta_eV"] for r in rows_a if r["domain"] == d]
              for d in domains}
    report(8, ok, f"deterministic, domains={domains}, deltas={deltas}")
    assert text_a == text_b
    assert len(rows_a) == 6
    assert len(domains) == 2


def test_criterion_9_normalization():
    """Closed-form b'_n vs quadrature within 1e-6 relative on a shallow well
    (sqrt(eps) = 0.3, A_tilde = 0.8, gamma-valid, printed convention)."""
    worst = 0.0
    for n in (0, 1):
        params = EigenfunctionParams(n=n, sqrt_eps=0.3, A_tilde=0.8,
                                     eta=1.0 - 1e-6,
                                     sign_convention=SignConvention.PRINTED)
        closed = norm_const(params)
        quad = norm_const_quadrature(params)
        worst = max(worst, abs(closed - quad) / quad)
    ok = worst < 1e-6
    report(9, ok, f"max relative normalization gap = {worst:.2e}")
    assert worst < 1e-6


def test_criterion_10_property_suites():
    """Jacobi recurrence/reflection (1000 cases), node counts, spectrum
    monotonicity, reality-condition equivalence (1000 draws): zero failures."""
    failures = []

    rng = np.random.default_rng(2024)
    for i in range(1000):
        n = int(rng.integers(0, 11))
        p = float(rng.uniform(-0.9, 5))
        q = float(rng.uniform(-0.9, 5))
        x = float(rng.uniform(-1, 1))
        direct = jacobi(n, p, q, x)
        oracle = jacobi_finite_sum(n, p, q, x)
        if abs(direct - oracle) > 2e-12 * max(1.0, abs(oracle)) + 1e-13:
            failures.append(f"jacobi recurrence case {i}")
        refl = (-1.0) ** n * jacobi(n, q, p, -x)
        if abs(direct - refl) > 1e-10 * max(1.0, abs(direct)) + 1e-12:
            failures.append(f"jacobi reflection case {i}")

    # node counts equal n on the eigenfunction's full support for every
    # tabulated eta > 0 level
    for mol in MOLECULES:
        for eta in PDM_ETAS:
            sys = reduce(mol, eta, WEYL)
            for n in REFERENCE_ENERGIES[(mol.name, eta)]:
                st = make_state(sys, n)
                counted = node_count(sys, st, SignConvention.NORMALIZABLE,
                                     domain="natural")
                if counted != n:
                    failures.append(f"nodes {mol.name} eta={eta} n={n}: {counted}")

    # spectrum monotonicity
    for mol in MOLECULES:
        for eta in (0.0,) + PDM_ETAS:
            energies = [s.E for s in spectrum(reduce(mol, eta, WEYL))]
            if not all(b > a for a, b in zip(energies, energies[1:])):
                failures.append(f"monotonicity {mol.name} eta={eta}")
            if not all(e < 0 for e in energies):
                failures.append(f"negativity {mol.name} eta={eta}")

    # reality-condition equivalence on 1000 random parameter draws
    rng = np.random.default_rng(77)
    for i in range(1000):
        o = AmbiguityOrdering(a=float(rng.uniform(-0.9, 3)),
                              alpha=float(rng.uniform(-1.5, 1.5)),
                              gamma=float(rng.uniform(-1.5, 1.5)))
        eta = float(rng.uniform(0.0, 0.999))
        v1 = float(10 ** rng.uniform(-4, 3))
        sys = ReducedSystem(v1=v1, v2=2 * v1, eta=eta, c_ord=o.c_ord,
                            c2_ord=o.c2_ord, A1=o.A1, A2=o.A2,
                            eps1=v1 - 4 * eta**2 * (o.c_ord - 0.25),
                            eps2=-eta * o.c2_ord - 2 * v1, e_scale=1.0)
        if reality_check(sys) != (sys.eps1 - eta**2 / 2 > 0):
            failures.append(f"reality equivalence draw {i}")

    ok = not failures
    report(10, ok, "zero failures" if ok else f"{len(failures)} failures: "
                                              f"{failures[:5]}")
    assert not failures
