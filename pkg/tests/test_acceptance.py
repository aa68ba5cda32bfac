"""Acceptance suite: one test per criterion, exact arithmetic, zero tolerance.

Each test prints a single PASS/FAIL line; the lines are repeated in the
terminal summary under "acceptance criteria".
"""

import time

import pytest

from conftest import random_gv, rank1_geometry, rank2_geometry, record_criterion
from qkgv.conifold import (conifold_gv_check, verify_ring_presentation, verify_small_j_t,
                           verify_small_j_t0)
from qkgv.exact import lcm_upto, verify_resummation
from qkgv.geometry import GVTable, gv_from_gw, gw_from_gv
from qkgv.jfunction import (build_jtilde, extract_qk_table, gv_from_qk, pole_report,
                            verify_expansion_lemmas, verify_fake_identity)

QUINTIC_GV = GVTable(1, {(1,): 2875, (2,): 609250, (3,): 317206375})

# every J-function built by this module, for the pole-bound criterion
BUILT = []


def build(geom, gv, cutoff, t_degree, q_order=10):
    J = build_jtilde(geom, gv, cutoff, t_degree, q_order)
    BUILT.append((f"rank {geom.h2rank}, D={cutoff}", J))
    return J


def random_tables(count, cutoff):
    """Half rank 1, half rank 2, |GV| <= 1000, deterministic seeds."""
    out = []
    for seed in range(count):
        rank = 1 + seed % 2
        geom = rank1_geometry() if rank == 1 else rank2_geometry()
        out.append((seed, geom, random_gv(rank, cutoff, 1000 + seed)))
    return out


@pytest.fixture(scope="module")
def extracted():
    """50 random tables built at D = 5, t-degree 3, with all QK data through k = 10."""
    start = time.perf_counter()
    data = []
    for seed, geom, gv in random_tables(50, 5):
        J = build(geom, gv, 5, 3, 10)
        data.append((seed, geom, gv, extract_qk_table(J, k_max=10, t_degree=3)))
    return data, time.perf_counter() - start


def test_criterion_01_resummation():
    start = time.perf_counter()
    rep = verify_resummation(8)
    elapsed = time.perf_counter() - start
    ok = rep.passed and len(rep.checks) == 24 and elapsed < 5
    assert record_criterion(1, ok, f"resummation identities p=1,2,3, r<=8: {rep.summary()}", elapsed)


def test_criterion_02_expansion_lemmas():
    start = time.perf_counter()
    failed, total = [], 0
    for rank, geom in ((1, rank1_geometry()), (2, rank2_geometry())):
        for seed in range(10):
            gv = random_gv(rank, 4, 200 + seed)
            build(geom, gv, 4, 3)
            rep = verify_expansion_lemmas(geom, gv, 4, t_degree=3)
            assert rep.echo["conductor"] == lcm_upto(4) == 12
            total += len(rep.checks)
            if not rep.passed:
                failed.append((rank, seed, rep.failures()[0].location))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 60
    assert record_criterion(2, ok, f"expansion lemmas, 20 random tables, {total} checks, "
                               f"failures={failed[:3]}", elapsed)


def test_criterion_03_fake_identity():
    start = time.perf_counter()
    cases = [(rank1_geometry(), GVTable(1, {(1,): 1})),
             (rank1_geometry(), GVTable(1, {(1,): 1, (2,): 5})),
             (rank1_geometry(), random_gv(1, 4, 31)),
             (rank2_geometry(), random_gv(2, 4, 32)),
             (rank2_geometry(), random_gv(2, 4, 33))]
    failed, total = [], 0
    for i, (geom, gv) in enumerate(cases):
        build(geom, gv, 4, 3)
        rep = verify_fake_identity(geom, gv, 4, t_degree=3, order=5)
        total += len(rep.checks)
        if not rep.passed:
            failed.append((i, rep.failures()[0].location))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 120
    assert record_criterion(3, ok, f"fake identity through (1-q)^5, D=4, t-degree 3, "
                               f"{len(cases)} tables, {total} checks, failures={failed[:3]}", elapsed)


def test_criterion_05_integrality(extracted):
    start = time.perf_counter()
    tables, setup = extracted
    bad, count = [], 0
    for seed, _, _, table in tables:
        count += len(table)
        bad += [(seed, key) for key in table.non_integral()]
        assert all(any(key[2]) for key in table.entries)
    elapsed = time.perf_counter() - start + setup
    assert record_criterion(5, not bad, f"integrality over 50 random tables, {count} invariants "
                               f"(k<=10, t-degree<=3, D=5), non-integers={len(bad)}", elapsed)


def test_criterion_06_round_trips(extracted):
    start = time.perf_counter()
    failed = []
    tables, _ = extracted
    for seed, geom, gv, table in tables:
        if gv_from_gw(gw_from_gv(gv, 5), 5) != gv:
            failed.append((seed, "gw"))
        if gv_from_qk(table, geom, 5) != gv:
            failed.append((seed, "qk"))
    elapsed = time.perf_counter() - start
    assert record_criterion(6, not failed, f"GV->GW->GV and GV->J->QK->GV on 50 random tables "
                               f"through degree 5, failures={failed[:3]}", elapsed)


def test_criterion_07_conifold_gv():
    start = time.perf_counter()
    rep = conifold_gv_check(12)
    gv = gv_from_gw(gw_from_gv(GVTable(1, {(1,): 1}), 12), 12)
    ok = rep.passed and gv.entries == {(1,): 1}
    assert record_criterion(7, ok, f"GV from GW_d = 1/d^3, d<=12: {rep.summary()}",
                            time.perf_counter() - start)


def test_criterion_08_small_j_t0():
    start = time.perf_counter()
    rep = verify_small_j_t0(4)
    elapsed = time.perf_counter() - start
    kernel = [c for c in rep.checks if c.name == "kminus-equals-kernel"]
    ok = rep.passed and len(kernel) == 8 and elapsed < 120
    assert record_criterion(8, ok, f"small J at t=0 through Q^4, K_- parts = a, b "
                               f"({len(kernel)} kernel checks): {rep.summary()}", elapsed)


def test_criterion_09_small_j_t():
    start = time.perf_counter()
    rep = verify_small_j_t(3, 2)
    elapsed = time.perf_counter() - start
    fails = [(c.name, c.location, c.witness) for c in rep.failures()]
    ok = rep.passed and elapsed < 600
    detail = f"small J at t=t1(1-P) through Q^3, t-degree 2: {rep.summary()}"
    if fails:
        detail += f"; failing: {fails}"
    assert record_criterion(9, ok, detail, elapsed)


def test_criterion_10_ring_structure():
    start = time.perf_counter()
    rep = verify_ring_presentation()
    elapsed = time.perf_counter() - start
    names = {c.name for c in rep.checks}
    ok = rep.passed and elapsed < 5 and {"basis-independent-and-spanning", "nilpotency-order-4",
                                                "q-shift-identity"} <= names
    assert record_criterion(10, ok, f"K-ring rank 6, nilpotency order 4, q-shift identity: "
                                f"{rep.summary()}", elapsed)


def test_criterion_11_quintic_fixture():
    start = time.perf_counter()
    geom = rank1_geometry(5)
    J = build(geom, QUINTIC_GV, 3, 3, 10)
    poles = pole_report(J)
    table = extract_qk_table(J, k_max=10, t_degree=3)
    checks = {
        "poles": poles.passed,
        "integrality": not table.non_integral(),
        "gw-round-trip": gv_from_gw(gw_from_gv(QUINTIC_GV, 3), 3) == QUINTIC_GV,
        "qk-round-trip": gv_from_qk(table, geom, 3) == QUINTIC_GV,
    }
    ok = all(checks.values())
    assert record_criterion(11, ok, f"quintic fixture through degree 3: {checks}",
                            time.perf_counter() - start)


def test_criterion_04_pole_bound():
    """Runs last in this module so that it sees every J built above."""
    start = time.perf_counter()
    assert len(BUILT) >= 50
    bad, worst = [], 0
    for label, J in BUILT:
        rep = pole_report(J)
        worst = max(worst, rep.data["max_order"])
        if not rep.passed:
            bad.append((label, rep.failures()[0].location))
    elapsed = time.perf_counter() - start
    ok = not bad and worst <= 3
    assert record_criterion(4, ok, f"pole orders <= 3 on all {len(BUILT)} built J-functions "
                               f"(max {worst}), violations={len(bad)}", elapsed)
