"""Acceptance gate: one printed pass/fail line per criterion.

Run `pytest tests/test_acceptance.py -s` to see every line even on success;
without -s pytest shows the captured lines for failing criteria only.
"""

import contextlib
import io
import json
import time
from fractions import Fraction

import numpy as np

from mimo3way import (
    AntennaConfig,
    AntennaSplit,
    SchemeTag,
    broadcast_optimal_value,
    build_scheme,
    canonical_primal_dual,
    draw_channels,
    estimate_dof,
    genie_bound_unicast,
    null_space_basis,
    optimal_broadcast,
    optimal_unicast_bruteforce,
    optimal_unicast_closed_form,
    optimal_unicast_enumerated,
    pseudo_inverse,
    random_gaussian,
    scheme_split,
    symmetric_bound,
    unicast_optimal_value,
    verify_duality,
    verify_scheme,
)
from mimo3way.cli import main


def _line(num: int, ok: bool, detail: str) -> None:
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, f"criterion {num}: {detail}"


def _grid(n: int):
    return [
        (m1, m2, m3)
        for m1 in range(1, n + 1)
        for m2 in range(1, m1 + 1)
        for m3 in range(1, m2 + 1)
    ]


def _scheme_cases():
    cases = []
    for m1, m2, m3 in _grid(7):
        if m3 >= 3 and m1 <= m2 + m3:
            cases.append(((m1, m2, m3), SchemeTag.UNI_A))
    for m3 in range(1, 9):
        for m2 in range(m3, 9):
            for m1 in range(m2 + m3, 9):
                cases.append(((m1, m2, m3), SchemeTag.UNI_B))
    for m in _grid(7):
        cases.append((m, SchemeTag.BCAST))
    return cases


def _value(m, tag):
    if tag is SchemeTag.BCAST:
        return broadcast_optimal_value(*m)
    return unicast_optimal_value(*m)


def test_criterion_1_unicast_routes_agree():
    t0 = time.perf_counter()
    bad = []
    configs = _grid(10)
    for m in configs:
        cfg = AntennaConfig(*m)
        vals = {
            optimal_unicast_closed_form(cfg).optimal_dof,
            optimal_unicast_enumerated(cfg).optimal_dof,
            optimal_unicast_bruteforce(cfg, 3).optimal_dof,
        }
        if len(vals) != 1:
            bad.append((m, sorted(vals)))
    elapsed = time.perf_counter() - t0
    _line(
        1,
        not bad and elapsed < 30.0,
        f"closed = enumerated = brute(denom 3) on {len(configs)} configs, "
        f"{elapsed:.1f}s of 30s budget" + (f"; mismatches {bad[:3]}" if bad else ""),
    )


def test_criterion_2_broadcast_allocation():
    t0 = time.perf_counter()
    bad = []
    configs = _grid(10)
    for m in configs:
        cfg = AntennaConfig(*m)
        res = optimal_broadcast(cfg)
        in_band = res.broadcast_band is not None and res.broadcast_band.contains(cfg, res.split.tx)
        if res.optimal_dof != Fraction(m[1] + m[2]) or not in_band:
            bad.append(m)
    elapsed = time.perf_counter() - t0
    _line(
        2,
        not bad and elapsed < 5.0,
        f"broadcast dof = m2+m3 and split inside its transmit-sum band on "
        f"{len(configs)} configs, {elapsed:.1f}s of 5s budget"
        + (f"; failures {bad[:3]}" if bad else ""),
    )


def test_criterion_3_schemes_achieve_closed_form():
    t0 = time.perf_counter()
    cases = _scheme_cases()
    seeds = range(100)
    bad = []
    total_valid = 0
    for m, tag in cases:
        cfg = AntennaConfig(*m)
        want = _value(m, tag)
        split, _ = scheme_split(cfg, tag)
        valid = 0
        for seed in seeds:
            channels = draw_channels(split, seed)
            scheme = build_scheme(cfg, tag, channels, seed)
            report = verify_scheme(scheme, channels, seed=seed)
            if report.valid:
                valid += 1
                if report.achieved_dof != want:
                    bad.append((m, tag.value, seed, "dof", str(report.achieved_dof), str(want)))
        total_valid += valid
        if valid < 99:
            bad.append((m, tag.value, "valid", valid))
    elapsed = time.perf_counter() - t0
    counts = {
        tag: sum(1 for _, t in cases if t is tag)
        for tag in (SchemeTag.UNI_A, SchemeTag.UNI_B, SchemeTag.BCAST)
    }
    _line(
        3,
        not bad,
        f"{total_valid}/{len(cases) * 100} verifications valid with exact dof over "
        f"{counts[SchemeTag.UNI_A]} uni-a / {counts[SchemeTag.UNI_B]} uni-b / "
        f"{counts[SchemeTag.BCAST]} bcast configs x 100 seeds, {elapsed:.1f}s"
        + (f"; failures {bad[:3]}" if bad else ""),
    )


def test_criterion_4_duality_pair_gap_zero():
    bad = []
    checked = 0
    for m in _grid(10):
        if m[0] > m[1] + m[2]:
            continue
        cfg = AntennaConfig(*m)
        lp, v, lam = canonical_primal_dual(cfg)
        cert = verify_duality(lp, v, lam)
        checked += 1
        if not cert.is_optimal or cert.gap != 0:
            bad.append((m, cert.status.value, str(cert.gap)))
    _line(
        4,
        not bad,
        f"closed-form primal/dual pair verifies with gap exactly 0 on {checked} configs"
        + (f"; failures {bad[:3]}" if bad else ""),
    )


def test_criterion_5_empirical_slopes():
    cases = [
        ((3, 3, 3), SchemeTag.UNI_A),
        ((4, 2, 1), SchemeTag.UNI_B),
        ((5, 3, 2), SchemeTag.BCAST),
    ]
    details = []
    ok = True
    for m, tag in cases:
        t0 = time.perf_counter()
        est = estimate_dof(AntennaConfig(*m), tag, (30.0, 50.0), trials=50, seed=1234)
        elapsed = time.perf_counter() - t0
        ok = ok and est.abs_error <= 0.2 and elapsed < 60.0
        details.append(f"{tag.value}{m}: slope {est.slope:.3f} vs {est.theoretical_dof} in {elapsed:.1f}s")
    _line(5, ok, "; ".join(details) + " (tolerance 0.2, 60s per run)")


def test_criterion_6_symmetric_shortcut_matches_bound():
    bad = []
    for mt in range(0, 11):
        for mr in range(0, 11):
            split = AntennaSplit((mt, mt, mt), (mr, mr, mr))
            if symmetric_bound(mt, mr) != genie_bound_unicast(split).combined:
                bad.append((mt, mr))
    _line(
        6,
        not bad,
        "symmetric-split shortcut equals the general combined bound on 121 splits"
        + (f"; failures {bad[:3]}" if bad else ""),
    )


def _sweep_points(*argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code = main(["sweep", "--format", "json", *argv])
    assert code == 0
    return json.loads(out.getvalue())["points"]


def test_criterion_7_ratio_sweep_matches_region_formulas():
    bad = []
    boundary = 0
    points = _sweep_points() + _sweep_points("--ratio1", "1:5:1/6", "--ratio2", "1:4:1/6")
    for p in points:
        a, b = Fraction(p["m1_over_m3"]), Fraction(p["m2_over_m3"])
        want = (2 * a + b + 1) / 3 if a <= b + 1 else b + 1
        if a == b + 1:
            boundary += 1
        if Fraction(p["dof_over_m3"]) != want:
            bad.append((str(a), str(b), p["dof_over_m3"], str(want)))
    _line(
        7,
        not bad and boundary > 0,
        f"sweep output equals the two region formulas at {len(points)} grid points "
        f"({boundary} on the boundary line)" + (f"; failures {bad[:3]}" if bad else ""),
    )


def test_criterion_8_numerical_hygiene():
    worst_zf = 0.0
    for m, tag in _scheme_cases():
        cfg = AntennaConfig(*m)
        split, _ = scheme_split(cfg, tag)
        for seed in (0, 1, 2):
            channels = draw_channels(split, seed)
            scheme = build_scheme(cfg, tag, channels, seed)
            report = verify_scheme(scheme, channels, seed=seed)
            worst_zf = max(worst_zf, *(c.interference_residual for c in report.checks))

    worst_null = 0.0
    worst_penrose = 0.0
    for rows in range(1, 9):
        for cols in range(1, 9):
            for seed in (0, 1, 2):
                a = random_gaussian(rows, cols, 1000 * rows + 10 * cols + seed)
                scale = np.linalg.norm(a)
                n = null_space_basis(a)
                if n.size:
                    worst_null = max(worst_null, float(np.linalg.norm(a @ n)) / scale)
                p = pseudo_inverse(a)
                pscale = np.linalg.norm(p)
                ap, pa = a @ p, p @ a
                worst_penrose = max(
                    worst_penrose,
                    float(np.linalg.norm(a @ p @ a - a)) / scale,
                    float(np.linalg.norm(p @ a @ p - p)) / pscale,
                    float(np.linalg.norm(ap.conj().T - ap)) / max(1.0, float(np.linalg.norm(ap))),
                    float(np.linalg.norm(pa.conj().T - pa)) / max(1.0, float(np.linalg.norm(pa))),
                )
    ok = worst_zf <= 1e-10 and worst_null <= 1e-10 and worst_penrose <= 1e-10
    _line(
        8,
        ok,
        f"max residuals: zero-forcing {worst_zf:.1e}, null-space {worst_null:.1e}, "
        f"Penrose {worst_penrose:.1e} (tolerance 1e-10)",
    )
