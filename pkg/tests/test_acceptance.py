"""One test per acceptance criterion; each records a PASS/FAIL line."""

import time

from vglab.bundles import (
    CATALOG,
    LineSum,
    build_case,
    chern_of,
    expand_to_presentation,
    NamedCase,
)
from vglab.chow import (
    ChowClass,
    chern_sym2_omega1_p2,
    chi_line,
    chow_inv,
    euler_char_p3,
    schwarzenberger_ok,
)
from vglab.cohomology import cohomology_table, h0_basis
from vglab.errors import InterpolationInconsistent
from vglab.forms import random_form
from vglab.grassmann import (
    check_embedding,
    join_map,
    plucker_interpolated,
    plucker_map,
    plucker_symbolic_det,
    quotient_line_at,
    verify_plucker_relations,
)
from vglab.interpolate import interpolate_form
from vglab.obstructions import (
    chi_contradiction_omega,
    extension_c3_p3,
    chi_three_halves_oracle,
    enumerate_unions,
    min_pa_reduced,
    omega_filter,
    abc_triples,
)
from vglab.points import derive_rng, random_points
from vglab.presentation import FreePresentation
from vglab.verify import PASS, riemann_roch, run_all, stratify

CRITERION1_CHECKS = (
    "coordinate degrees",
    "Pluecker relations",
    "base-point-free (200 samples)",
    "injective (100 samples)",
    "immersion (50 samples)",
    "splitting types (20 lines)",
)


def test_criterion_1_theorem_cases_verify(acceptance):
    t0 = time.perf_counter()
    reports = run_all(seed=0)
    elapsed = time.perf_counter() - t0
    runs = {(r.case, r.n) for r in reports}
    expected = {(c, 2) for c in ["1a", "1b", "2", "3", "4a", "4b", "4c", "4d"]} | {(c, n) for c in ["1a", "1b"] for n in (3, 4)}
    bad = []
    for r in reports:
        names = {c.name: c.status for c in r.checks}
        for need in CRITERION1_CHECKS:
            if names.get(need) != PASS:
                bad.append(f"{r.case}@P{r.n}:{need}")
        if not r.ok:
            bad.append(f"{r.case}@P{r.n}")
    ok = runs == expected and not bad and elapsed < 120
    acceptance(1, ok, f"{len(reports)} case runs, failures={bad or 'none'}, {elapsed:.1f}s (< 120s)")
    assert ok


GOLDEN = {"4a": (5, 4), "4b": (5, 4), "4c": (6, 5), "4d": (7, 6), "3": (8, 7), "2": (8, 7), "1b": (9, 8), "1a": (11, 10)}


def test_criterion_2_golden_h0_and_targets(acceptance):
    got = {}
    for cid in GOLDEN:
        pres = build_case(cid)
        h = cohomology_table(pres, [0]).h(0, 0)
        got[cid] = (h, plucker_map(pres).N)
    ok = got == GOLDEN
    acceptance(2, ok, ", ".join(f"{c}: h0={h} Gr(1,{N})" for c, (h, N) in got.items()))
    assert ok


def _split_chi_p3(a, b, m):
    return chi_line(3, a + m) + chi_line(3, b + m)


def test_criterion_3_riemann_roch(acceptance):
    mism = []
    count = 0
    for cid, info in CATALOG.items():
        for n in info.ambients:
            pres = build_case(cid, n)
            ch = pres.chern()
            table = cohomology_table(pres, range(-5, 6))
            for m in range(-5, 6):
                count += 1
                if table.chi(m) != riemann_roch(n, ch.c1, ch.c2, m):
                    mism.append((cid, n, m))
    rng = derive_rng(0, "criterion-3")
    triples = 0
    for _ in range(50):
        a, b, m = (rng.randint(-6, 6) for _ in range(3))
        if euler_char_p3(a + b, a * b, m) != _split_chi_p3(a, b, m):
            mism.append(("P3 cubic", a, b, m))
        triples += 1
    ok = not mism
    acceptance(3, ok, f"{count} (case, twist) pairs and {triples} P3 triples, mismatches={mism or 'none'}")
    assert ok


def test_criterion_4_chern_golden_numbers(acceptance):
    vals = {
        "(1+3t+6t^2)^-1": (chow_inv(ChowClass(2, (1, 3, 6))), ChowClass(2, (1, -3, 3))),
        "c(S2 Omega(1))": (chern_sym2_omega1_p2(), ChowClass(2, (1, -3, 6))),
        "t^3 coefficient": (extension_c3_p3(), 3),
        "c2(case 2)": (chern_of(NamedCase("2")).c2, 3),
        "c2(neg-c2-7)": (chern_of(NamedCase("neg-c2-7")).c2, 7),
    }
    cc = chi_contradiction_omega()
    vals["chi contradiction"] = ((cc.chi, cc.forced_h1), (5, -1))
    bad = [k for k, (got, exp) in vals.items() if got != exp]
    ok = not bad
    acceptance(4, ok, f"{len(vals)} exact values, mismatches={bad or 'none'}")
    assert ok


def test_criterion_5_obstruction_oracles(acceptance):
    checks = {}
    checks["chi_three_halves"] = all(not chi_three_halves_oracle(d).feasible for d in (2, 4, 6))
    raw = {c.components for c in enumerate_unions()}
    checks["four unions"] = raw == {
        ((2, 0), (2, 0), (2, 0)),
        ((1, 0), (2, 0), (3, 0)),
        ((1, 0), (1, 0), (1, 0), (3, 1)),
        ((1, 0), (1, 0), (4, 0)),
    }
    checks["omega filter"] = [c.components for c in omega_filter(enumerate_unions())] == [((2, 0), (2, 0), (2, 0))]
    checks["(4,2) two conics"] = [c.components for c in omega_filter(enumerate_unions(4, 2))] == [((2, 0), (2, 0))]
    checks["abc"] = abc_triples() == {(6, 2, 2), (6, 1, 3)}
    checks["min pa"] = min_pa_reduced(4) == -3
    checks["parity scan"] = all(
        schwarzenberger_ok(a, b) == ((a * b) % 2 == 0) == (euler_char_p3(a, b, 0).denominator == 1)
        for a in range(-5, 6) for b in range(-5, 6)
    )
    bad = [k for k, v in checks.items() if not v]
    ok = not bad
    acceptance(5, ok, f"{len(checks)} oracle checks, failures={bad or 'none'}")
    assert ok


def test_criterion_6_stratification(acceptance):
    rep = stratify(200, seed=0)
    type4 = rep.counts.get("4", 0)
    frac = type4 / 200
    t1 = rep.representatives["type 1 representative"]
    t3 = rep.representatives["type 3 representative"]
    ok = (
        frac >= 0.95
        and rep.h0_minus1.get("0", 0) >= type4
        and t1["type"] == 1 and t1["h0_minus1"] == 1 and t1["globally_generated"]
        and t3["type"] == 3 and t3["h0_minus1"] == 2 and not t3["globally_generated"]
        and t3.get("witness_on_degeneracy_line") is True
    )
    acceptance(6, ok, f"type 4 fraction {frac:.3f}; type 1 h0(E(-1))={t1['h0_minus1']} gg={t1['globally_generated']}; "
               f"type 3 h0(E(-1))={t3['h0_minus1']} witness {t3.get('witness')} on {t3.get('degeneracy_line')}")
    assert ok


def test_criterion_7_oracle_equivalences(acceptance):
    checks = {}
    det_cases = [c for c in CATALOG if not build_case(c).f2 and len(build_case(c).f1) == len(build_case(c).f0) - 2
                 and c not in ("type3", "type2", "special-c5")]
    sym_vs_interp = []
    quotient = []
    for cid in det_cases:
        pres = build_case(cid)
        S = h0_basis(pres)
        pm = plucker_symbolic_det(pres, S)
        sym_vs_interp.append(pm.equal_up_to_scalar(plucker_interpolated(pres, S, seed=0)))
        pts = random_points(derive_rng(0, "criterion-7", cid), 2, 50)
        quotient.append(all(quotient_line_at(pres, S, x).plucker_normalized() == pm.projective_value(x) for x in pts))
    checks["symbolic == interpolated"] = all(sym_vs_interp)
    checks["quotient line at 50 points"] = all(quotient)
    checks["join == determinant"] = all(
        plucker_symbolic_det(expand_to_presentation(LineSum((a, 3 - a), n))) == join_map(n, a, 3)
        for n in (1, 2, 3, 4) for a in (0, 1)
    )
    rng = derive_rng(0, "criterion-7-cubics")
    trips = []
    for n in (2, 3):
        for _ in range(10):
            f = random_form(rng, n + 1, 3)
            pts = random_points(rng, n, 2 * len(f.terms) + 40)
            trips.append(interpolate_form(n, 3, [(p, f.eval(p.coords)) for p in pts]) == f)
    checks["cubic round trip"] = all(trips)
    bad = [k for k, v in checks.items() if not v]
    ok = not bad
    acceptance(7, ok, f"{len(det_cases)} determinant cases, {len(trips)} cubic round trips, failures={bad or 'none'}")
    assert ok


def test_criterion_8_negative_controls(acceptance):
    emb = check_embedding(plucker_map(build_case("h0-3")), seed=0, bpf_samples=200, pairs=200, immersion_samples=50)
    collision = (not emb.injective.ok) and emb.injective.witness is not None
    pm = plucker_symbolic_det(build_case("4a"))
    perturbed_fails = not verify_plucker_relations(pm.perturbed())
    rng = derive_rng(0, "criterion-8")
    deg2 = FreePresentation(2, (0, 0, 1), (-1,), (), [[random_form(rng, 3, 1)], [random_form(rng, 3, 1)], [random_form(rng, 3, 2)]])
    try:
        plucker_interpolated(deg2, degree=3)
        raised = False
    except InterpolationInconsistent:
        raised = True
    ok = collision and perturbed_fails and raised
    acceptance(8, ok, f"h0=3 collision witness {emb.injective.witness} after {emb.injective.checked} pairs; "
               f"perturbed map rejected={perturbed_fails}; degree-3 request on c1=2 raised={raised}")
    assert ok
