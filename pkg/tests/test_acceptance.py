"""Acceptance criteria, one test each; every test records a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` (or this file directly) to see
the lines as they are produced; they are also repeated in the terminal summary.
"""

import time

import numpy as np
import pytest

from loopmoment import realization as rz
from loopmoment.affine import enumerate_reduced_words
from loopmoment.alg_loops import cell_check_sweep
from loopmoment.betti import compare, cp_loop_series, halve, omega_g_series, su_closed_form
from loopmoment.cartan import build_root_system, inner
from loopmoment.involution import (check_lie_involution, lattice_involution_preset,
                                   table_involution, verify_convexity)
from loopmoment.loops import (energy, residual_sweep, sample_homomorphism_loop,
                              torus_projection)
from loopmoment.moment import is_extreme, lattice_ball, moment_of_homomorphism, polytope_vertices

RESULTS = []


def record(n, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n:>2}: {detail}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_cell_counts_match_product_formula():
    t = time.perf_counter()
    verdicts = {n: compare(omega_g_series(build_root_system("A", n - 1), 20),
                           su_closed_form(n, 20), 20).verdict for n in (2, 3, 4, 5)}
    dt = time.perf_counter() - t
    ok = all(v == "equal" for v in verdicts.values()) and dt < 10
    record(1, ok, f"cell series = closed form for SU(2..5) to degree 20 {verdicts} in {dt:.2f}s")


def test_criterion_02_b4_of_su3():
    b4 = omega_g_series(build_root_system("A", 2), 20)[4]
    record(2, b4 == 2, f"b_4(Omega SU(3)) = {b4}")


def test_criterion_03_cp2_counterexample():
    rep = compare(halve(omega_g_series(build_root_system("A", 2), 40)), cp_loop_series(3, 20), 20)
    record(3, rep.discrepancy == (2, 2, 0), f"halved SU(3) vs Omega CP^2: {rep.to_json()}")


def test_criterion_04_cp1_identity():
    rep = compare(halve(omega_g_series(build_root_system("A", 1), 40)), cp_loop_series(2, 20), 20)
    record(4, rep.equal, f"halved SU(2) vs Omega CP^1 to degree 20: {rep.verdict}")


def test_criterion_05_maximal_rank_convexity():
    t = time.perf_counter()
    verdicts = {}
    extreme = True
    for label, rank in (("A", 1), ("A", 2), ("B", 2), ("G", 2)):
        rs = build_root_system(label, rank)
        rep = verify_convexity(rs, lattice_involution_preset("maximal_rank", rs), 8)
        verdicts[rs.name] = f"{rep.verdict} ({len(rep.all_vertices)} vertices)"
        ok_rs = rep.verdict == "equal" and set(rep.fixed_vertices) == set(rep.all_vertices)
        # the lattice points really are vertices of the truncated hull
        poly = polytope_vertices(rs, 8)
        extreme &= ok_rs and all(is_extreme(poly, v) for v in poly.vertices)
    dt = time.perf_counter() - t
    record(5, extreme and dt < 30, f"iota = -id, E_max = 8: {verdicts}, all extreme: {extreme}, "
                                   f"{dt:.2f}s")


def test_criterion_06_cp2_strict_containment():
    rs = build_root_system("A", 2)
    iota = lattice_involution_preset("su_n_cp", rs)
    rep = verify_convexity(rs, iota, 4)
    w = rep.witness
    ok = (rep.verdict == "strict" and w is not None
          and iota.apply(w) != tuple(-c for c in w)
          and is_extreme(polytope_vertices(rs, 4), moment_of_homomorphism(rs, w)))
    record(6, ok, f"CP^2, E_max = 4: verdict {rep.verdict}, witness {w}, "
                  f"iota(witness) = {iota.apply(w) if w else None}")


def test_criterion_07_moment_quadrature():
    worst_e = worst_p = 0.0
    count = 0
    for n in (2, 3):
        real = rz.SpecialUnitary(n)
        rs = real.root_system()
        for xi in lattice_ball(rs, 8):
            g = sample_homomorphism_loop(rs, real, xi, 1024)
            worst_e = max(worst_e, abs(energy(g) - float(inner(rs, xi, xi)) / 2))
            worst_p = max(worst_p, float(np.abs(torus_projection(g, rs, real) - xi).max()))
            count += 1
    ok = worst_e <= 1e-9 and worst_p <= 1e-9
    record(7, ok, f"{count} homomorphisms, max |E err| = {worst_e:.2e}, "
                  f"max |p err| = {worst_p:.2e}")


def test_criterion_08_compatibility_identity():
    real = rz.SpecialUnitary(2)
    rs = real.root_system()
    rows = residual_sweep(rs, real, table_involution("su", 2), 100, 64, seed=2024)
    worst = max(r.residual_compat for r in rows)
    record(8, worst <= 1e-12 and len(rows) == 100,
           f"100 loops x 8 rotations x 8 torus elements, max residual {worst:.2e}")


def test_criterion_09_conjugation_on_cells():
    total = failures = 0
    words_seen = {}
    for n in (2, 3):
        real = rz.SpecialUnitary(n)
        rs = real.root_system()
        words = enumerate_reduced_words(rs, 4)
        words_seen[rs.name] = len(words)
        xis = [(0,) * rs.rank, rs.coroot(rs.highest_root)]
        checks = cell_check_sweep(rs, real, words, xis, seed=9, n_random=50)
        total += len(checks)
        failures += sum(not c.holds for c in checks)
    record(9, failures == 0, f"reduced words {words_seen}, {total} exact checks, "
                             f"{failures} failures")


def test_criterion_10_involution_table():
    table = [("su", n) for n in (2, 3, 4)] + [("so", m) for m in range(2, 8)] + [
        ("sp", n) for n in (1, 2, 3)]
    bad = [f"{a}({n})" for a, n in table if not check_lie_involution(table_involution(a, n)).ok]
    record(10, not bad, f"{len(table)} involutions checked exactly, failing: {bad or 'none'}")


def test_criterion_11_quadrature_convergence():
    real = rz.SpecialUnitary(2)
    rs = real.root_system()
    ok = True
    errs = {}
    for xi in ((1,), (2,), (3,), (5,)):
        e = [abs(energy(sample_homomorphism_loop(rs, real, xi, n)) - float(inner(rs, xi, xi)) / 2)
             for n in (256, 512, 1024)]
        errs[xi[0]] = [f"{x:.1e}" for x in e]
        ok &= e[1] <= e[0] + 1e-12 and e[2] <= e[1] + 1e-12
    record(11, ok, f"energy errors at N = 256, 512, 1024: {errs}")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
