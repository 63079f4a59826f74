"""Acceptance checks 1-8, one PASS/FAIL line each.

Run with pytest, or directly: ``python3 tests/test_acceptance.py``.
"""

from __future__ import annotations

import os
import random
import sys
import time

sys.path.insert(0, os.path.dirname(__file__))

import pytest
from gmpy2 import mpq

from cremona.errors import DegenerateSpecialization, UnsupportedField
from cremona.families import (
    Family,
    conj_limit,
    family_inverse,
    family_product,
    specialize,
    verify_family,
)
from cremona.fields import prime_field
from cremona.finite import SUPPORTED_ORDERS, is_simple, pgl2_enumerate
from cremona.lingroup import TransvectionWord, diagonal_block, sl_decompose, word_length_bound
from cremona.maps import (
    CremonaMap,
    Point,
    compose,
    compose_all,
    dejonquieres_h,
    derivative_at_fixed_point,
    identity,
    linear,
    scaling_g_a,
    standard_involution,
    twoderivatives_gadget,
    verify_certificate,
)
from cremona.paths import connect

from builders import graded_formula_family, random_family, random_sl, triangular_map

STANDARD = (0, 1, -1, 2, mpq(1, 2))


def parse(text):
    return CremonaMap.parse(text)


def tail(n):
    return "".join(f" : x{i}" for i in range(3, n + 1))


def criterion_1():
    bad = []
    for lam in (2, 3, 5):
        for n in (2, 3):
            g = twoderivatives_gadget(lam, n)
            p1 = Point.of([1 if i == 1 else 0 for i in range(n + 1)])
            p2 = Point.of([1 if i == 2 else 0 for i in range(n + 1)])
            r1, r2 = conj_limit(g, p1), conj_limit(g, p2)
            want1 = parse(f"[x0 + x2 : x1 : x2{tail(n)}]")
            want2 = parse(f"[{lam}*x0 + x1 : x1 : x2{tail(n)}]")
            if specialize(r1, 0) != want1 or specialize(r2, 0) != want2:
                bad.append((lam, n, "t=0"))
            if specialize(r1, 1) != g or specialize(r2, 1) != g:
                bad.append((lam, n, "t=1"))
    return not bad, f"6 gadgets, mismatches {bad}", 5


def criterion_2():
    h = dejonquieres_h(3)
    bad = []
    for a in (2, 3):
        out = compose_all(h, scaling_g_a(a, 3), h.inverse_map())
        if not out.same_as(parse(f"[x0 : {a}*x1 : x2 : x3]")):
            bad.append(a)
    return not bad, f"a in (2, 3), mismatches {bad}", 1


def criterion_3():
    bad = []
    for lam in (2, 3, -1, mpq(1, 2)):
        lam = mpq(lam)
        want = [[lam, mpq(0)], [mpq(0), 1 / lam]]
        if TransvectionWord(2, diagonal_block(2, 1, 2, lam)).product() != want:
            bad.append(("block", lam))
    rng = random.Random(2024)
    for k in range(200):
        m = 2 if k % 2 == 0 else 3
        M = random_sl(rng, m, 10)
        w = sl_decompose(M)
        if w.product() != M or len(w) != word_length_bound(m):
            bad.append(("roundtrip", k))
    return not bad, f"4 blocks and 200 roundtrips, failures {bad[:3]}", 10


def criterion_4():
    bad = []
    for q in SUPPORTED_ORDERS:
        G = pgl2_enumerate(q)
        if G.order != q**3 - q:
            bad.append((q, "order"))
        if G.pgl_equals_psl != (q in (2, 4, 8)):
            bad.append((q, "psl"))
        if is_simple(G) != (q in (4, 8)):
            bad.append((q, "simple"))
    return not bad, f"q in {SUPPORTED_ORDERS}, failures {bad}", 60


def _connect_case(f, g):
    start = time.perf_counter()
    nu = connect(f, g).family
    ends = specialize(nu, 0).same_as(f) and specialize(nu, 1).same_as(g)
    rep = verify_family(nu, STANDARD)
    elapsed = time.perf_counter() - start
    return ends and rep.all_ok and elapsed < 120, elapsed, nu


def criterion_5():
    sigma = standard_involution(2)
    ok1, t1, nu1 = _connect_case(identity(2), sigma)
    ok2, t2, nu2 = _connect_case(sigma, twoderivatives_gadget(2, 2))
    detail = (
        f"id->sigma {t1:.1f}s (deg {nu1.x_degree}), "
        f"sigma->gadget {t2:.1f}s (deg {nu2.x_degree}), each limited to 120s"
    )
    return ok1 and ok2, detail, 240


def criterion_6():
    rng = random.Random(606)
    bad = 0
    for n in [2] * 10 + [3] * 10:
        g = triangular_map(rng, n)
        e0 = Point.of([1] + [0] * n)
        rho = conj_limit(g, e0)
        if specialize(rho, 0) != linear(derivative_at_fixed_point(g, e0)):
            bad += 1
        elif rho.components != graded_formula_family(g):
            bad += 1
    return bad == 0, f"20 triangular maps, {bad} mismatches", 30


def criterion_7():
    rng = random.Random(707)
    bad = 0
    for _ in range(50):
        nu1, nu2 = random_family(rng, 2), random_family(rng, 2)
        prod, inv = family_product(nu1, nu2), family_inverse(nu1)
        for a in rng.sample([mpq(2), mpq(-1), mpq(1, 2), mpq(3), mpq(-2, 3)], 3):
            s1, s2 = specialize(nu1, a), specialize(nu2, a)
            if specialize(prod, a) != compose(s1, s2) or specialize(inv, a) != s1.inverse_map():
                bad += 1
    return bad == 0, f"50 pairs x 3 values, {bad} mismatches", 60


def criterion_8():
    notes = []
    squares = "[x0^2 : x1^2 : x2^2]"
    claims = ["[x0 : x1 : x2]", squares, "[x1*x2 : x0*x2 : x0*x1]", "[x0^2 : x0*x1 : x0*x2]", "[x0 + x1 : x1 : x2]"]
    rng = random.Random(808)
    for _ in range(10):
        coeffs = lambda: " + ".join(f"{rng.randint(-3, 3)}*{m}" for m in ("x0^2", "x1^2", "x2^2", "x0*x1", "x1*x2"))
        claims.append(f"[{coeffs()} : {coeffs()} : {coeffs()}]")
    accepted = 0
    for c in claims:
        try:
            f = CremonaMap.parse(f"{squares} ;; inverse={c}", certify=False)
        except Exception:
            continue  # a random claim can collapse to the zero tuple
        accepted += verify_certificate(f)
    if accepted:
        notes.append("squares certified")
    F = prime_field(7)
    try:
        connect(identity(2, F), standard_involution(2, F))
        notes.append("F_7 connect accepted")
    except UnsupportedField:
        pass
    nu = conj_limit(twoderivatives_gadget(2, 2), Point.of([0, 0, 1]))
    comps, inv = str(nu).split(" ;; inverse=")
    bad = Family.parse(comps.replace("x1^2", "2*x1^2", 1) + " ;; inverse=" + inv)
    if verify_family(bad, STANDARD).all_ok:
        notes.append("corrupted family passed")
    return not notes, f"{len(claims)} claimed inverses, problems {notes}", None


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7, criterion_8]


def run_criterion(k):
    start = time.perf_counter()
    try:
        ok, detail, limit = CRITERIA[k - 1]()
    except Exception as exc:  # report, then fail
        ok, detail, limit = False, f"raised {type(exc).__name__}: {exc}", None
    elapsed = time.perf_counter() - start
    if limit is not None and elapsed >= limit:
        ok = False
        detail += f"; over the {limit}s limit"
    line = f"ACCEPTANCE {k} {'PASS' if ok else 'FAIL'} ({elapsed:.2f}s) {detail}"
    return ok, line


@pytest.mark.parametrize("k", range(1, 9))
def test_acceptance(k, capsys):
    ok, line = run_criterion(k)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [run_criterion(k) for k in range(1, 9)]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
