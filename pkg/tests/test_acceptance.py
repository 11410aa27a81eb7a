"""Acceptance criteria 1-10.  Every criterion prints a single CRITERION line with PASS or FAIL.

Arithmetic is exact, so every numeric comparison is equality.  Wall-clock limits are pinned below.
"""

import numpy as np
import pytest

from wittquiver import der1, quiver, rep
from wittquiver.ext1 import ext1, is_isomorphic, verify_cocycle
from wittquiver.gf import poly_eval, poly_roots
from wittquiver.midheight import analyze_midheight, classify_height_pm1
from wittquiver.witt import Character, default_character, witt

LIMIT_VERMA_5_7 = 10.0
LIMIT_SIMPLE_13 = 120.0
LIMIT_P17_DERIVATION = 30.0
LIMIT_P17_COCYCLE_VERMA = 300.0
LIMIT_HEIGHT1_7 = 60.0
COCYCLE_TRIALS = 1000
P_POWER_TRIALS = 1000


def _diff_note(q, e):
    d = quiver.diff(q, e)
    return "; ".join(d.lines()[:4])


def test_criterion_01_verma_quivers_both_engines(criterion):
    c = criterion(1, "Verma quivers at p=5,7 match the closed form on all ordered pairs, both engines")
    with c.timed(LIMIT_VERMA_5_7, "p=5,7 Verma sweep"):
        for p in (5, 7):
            expected = quiver.expected_quiver(p, -1, "verma")
            for engine in ("derivation", "cocycle"):
                q = quiver.build_quiver(p, -1, "verma", engine)
                c.expect(all(v == engine for v in q.provenance.values()), f"p={p} {engine}: another engine was used")
                c.expect(len(q.provenance) == p * p, f"p={p} {engine}: not every ordered pair computed")
                c.expect(not quiver.diff(q, expected), f"p={p} {engine}: {_diff_note(q, expected)}")
    c.finish()


def test_criterion_02_simple_quivers(criterion):
    c = criterion(2, "simple quivers at p=5,7,11,13 match the closed form, double arrows included")
    for p in (5, 7, 11):
        q = quiver.build_quiver(p, -1, "simple", "both")
        expected = quiver.expected_quiver(p, -1, "simple")
        c.expect(not quiver.diff(q, expected), f"p={p}: {_diff_note(q, expected)}")
        c.expect(q.mult(0, p - 1) == 2 and q.mult(p - 1, 0) == 2, f"p={p}: k+k between 0 and p-1 missing")
    with c.timed(LIMIT_SIMPLE_13, "p=13 simple quiver"):
        q13 = quiver.build_quiver(13, -1, "simple", "both")
    e13 = quiver.expected_quiver(13, -1, "simple")
    c.expect(not quiver.diff(q13, e13), f"p=13: {_diff_note(q13, e13)}")
    c.expect(q13.mult(0, 12) == 2 and q13.mult(12, 0) == 2, "p=13: k+k between 0 and 12 missing")
    for p in (7, 11, 13):
        c.expect(poly_roots([3, -10, 2], p) == [], f"p={p}: 2x^2-10x+3 unexpectedly has roots")
    c.finish()


@pytest.mark.slow
def test_criterion_03_difference_six_edges_at_p17(criterion):
    c = criterion(3, "p=17 quivers carry exactly the lam-mu=6 edges at lam in {8,14}")
    p = 17
    roots = poly_roots([3, -10, 2], p)
    c.expect(roots == [8, 14], f"roots of 2x^2-10x+3 mod 17 are {roots}")
    for lam in (8, 14):
        c.expect(poly_eval([3, -10, 2], lam, p) == 0 and (2 * lam * lam - 10 * lam + 3) % p == 0,
                 f"substitution of {lam} does not vanish")
    want = {(2, 8), (8, 14)}
    with c.timed(LIMIT_P17_DERIVATION, "derivation engine at p=17"):
        qs = {fam: quiver.build_quiver(p, -1, fam, "derivation") for fam in ("verma", "simple")}
    with c.timed(LIMIT_P17_COCYCLE_VERMA, "cocycle engine on p=17 Vermas"):
        qc = quiver.build_quiver(p, -1, "verma", "cocycle")
    qs["verma-cocycle"] = qc
    for name, q in qs.items():
        six = {(a, b) for (a, b), m in q.edges.items() if m and (b - a) % p == 6}
        c.expect(six == want, f"{name}: difference-6 edges {sorted(six)}")
        fam = "simple" if name == "simple" else "verma"
        e = quiver.expected_quiver(p, -1, fam)
        c.expect(not quiver.diff(q, e), f"{name}: {_diff_note(q, e)}")
    c.finish()


def test_criterion_04_three_way_equality(criterion):
    c = criterion(4, "cocycle Ext = restricted H^1 = ordinary H^1 on Vermas for p=5,7,11")
    for p in (5, 7, 11):
        Z = [rep.verma(p, lam) for lam in range(p)]
        bad = []
        for mu in range(p):
            for lam in range(p):
                a = ext1(Z[mu], Z[lam]).dim
                b = der1.restricted_h1(Z[lam], mu)
                h = der1.h1_weight(Z[lam], mu)
                if not a == b == h:
                    bad.append((mu, lam, a, b, h))
        c.expect(not bad, f"p={p}: (mu, lam, cocycle, restricted, ordinary) {bad[:4]}")
    c.finish()


def test_criterion_05_polynomial_identities(criterion):
    c = criterion(5, "polynomial combination identity and j=p-5 factorizations over all of F_p^2")
    ev = der1.der_poly_eval
    for p in (5, 7, 11, 13, 17):
        inv3 = pow(3, -1, p)
        comb_bad, fac_bad = [], []
        for j in range(p):
            for lam in range(p):
                lhs = (2 * (ev("p17", j, lam, p) + 2 * ev("p27", j, lam, p))
                       - 3 * (ev("p15", j, lam, p) + 2 * ev("p25", j, lam, p))) % p
                if lhs != (j * (j + 1) * (j + lam)) % p:
                    comb_bad.append((j, lam))
        j = p - 5
        for lam in range(p):
            if ev("p15", j, lam, p) != (2 * lam * (lam - 1) * (lam - 4)) % p:
                fac_bad.append(("p15", lam))
            if ev("p25", j, lam, p) != (-4 * inv3 * lam * (lam - 2) * (lam - 4)) % p:
                fac_bad.append(("p25", lam))
        c.expect(not comb_bad, f"p={p}: combination fails at {comb_bad[:4]}")
        c.expect(not fac_bad, f"p={p}: factorization fails at {fac_bad[:4]}")
    c.finish()


def test_criterion_06_height_zero(criterion):
    c = criterion(6, "height 0 quivers at p=5,7,11, Verma comparison, simples distinct, L(p-1) = L(0)")
    for p in (5, 7, 11):
        q = quiver.build_quiver(p, 0, "simple", "both")
        e = quiver.expected_quiver(p, 0)
        c.expect(not quiver.diff(q, e), f"p={p}: {_diff_note(q, e)}")
        v = quiver.delete_node(quiver.build_quiver(p, -1, "verma", "derivation"), p - 1)
        c.expect(not quiver.diff(q, v), f"p={p} vs Verma minus node {p - 1}: {_diff_note(q, v)}")
        mods = [rep.simple_height0(p, lam) for lam in range(p - 1)]
        clash = [(a, b) for a in range(p - 1) for b in range(a + 1, p - 1) if is_isomorphic(mods[a], mods[b])]
        c.expect(not clash, f"p={p}: isomorphic pairs {clash}")
        top = rep.simple_height0(p, p - 1, allow_redundant=True)
        c.expect(is_isomorphic(top, mods[0]), f"p={p}: L({p - 1}) construction not isomorphic to L(0)")
    c.finish()


def test_criterion_07_height_one(criterion):
    c = criterion(7, "height 1 quivers over F_p[xi]/(xi^p-xi-1) at p=5,7, no loops")
    for p, diffs, limit in ((5, (2, 3), None), (7, (2, 3, 4), LIMIT_HEIGHT1_7)):
        with c.timed(limit, f"p={p} height 1 quiver"):
            q = quiver.build_quiver(p, 1, "simple", "both")
        want = {(mu, lam) for mu in range(p) for lam in range(p) if (lam - mu) % p in diffs}
        got = {k for k, m in q.edges.items() if m}
        c.expect(got == want, f"p={p}: edge set differs by {sorted(got ^ want)[:6]}")
        c.expect(all(m == 1 for m in q.edges.values()), f"p={p}: multiple arrows present")
        c.expect(all(q.mult(a, a) == 0 for a in q.nodes), f"p={p}: loops present")
    c.finish()


def test_criterion_08_middle_heights_p5(criterion):
    c = criterion(8, "middle heights at p=5: Ext values for r=2,3, semisimple quotient count, induction")
    p = 5
    r2 = analyze_midheight(p, default_character(p, 2))
    c.expect((r2.ext_SS, r2.ext_LL, r2.thmA_dim) == (2, 1, 2),
             f"r=2: (ext_SS, ext_LL, thmA_dim) = {(r2.ext_SS, r2.ext_LL, r2.thmA_dim)}, want (2, 1, 2)")
    c.expect(r2.ext_LL == r2.ext_SS - 1, "r=2: lower bound not attained")
    c.expect(r2.thmC_identity and r2.dim_S == 5 and r2.dim_S ** 2 == 25, "r=2: dim u(b+/rad) = (dim S)^2 = 25 fails")
    chi3 = Character((0, 0, 0, 1, 0), p)  # chi(e_2) = 1, all else 0
    r3 = analyze_midheight(p, chi3)
    c.expect(r3.ext_LL is not None and r3.ext_LL >= r3.ext_SS - 1, "r=3: lower bound violated")
    c.expect(r3.ext_SS == 1, f"r=3: ext_SS = {r3.ext_SS}, want 1")
    c.expect(r3.ext_LL == 1, f"r=3: ext_LL = {r3.ext_LL}, want 1")
    zero = Character.zero(p)
    same = all(np.array_equal(rep.induce_from_borel(zero, lam).mats, rep.verma(p, lam).mats) for lam in range(p))
    c.expect(same, "induction from the Borel does not reproduce the Verma matrices for chi=0")
    c.finish()


def _cocycle_trials(p: int, total: int, rng) -> tuple[int, int]:
    """Spread ``total`` randomized checks over every nonzero Ext class between Vermas and simples."""
    cases = []
    for build in (rep.verma, rep.simple_restricted):
        mods = [build(p, lam) for lam in range(p)]
        for mu in range(p):
            for lam in range(p):
                res = ext1(mods[mu], mods[lam], classes=True)
                if res.classes is not None:
                    cases += [(mods[mu], mods[lam], d) for d in res.classes]
    done = ok = 0
    i = 0
    while done < total:
        S, T, d = cases[i % len(cases)]
        ok += bool(verify_cocycle(d, S, T, 1, rng))
        done += 1
        i += 1
    return ok, done


def test_criterion_09_structural_properties(criterion):
    c = criterion(9, "one block without loops, duality, module validation, randomized cocycle trials")
    for p in (5, 7, 11, 13):
        q = quiver.build_quiver(p, -1, "simple", "derivation")
        c.expect(quiver.is_connected(q), f"p={p}: simple quiver disconnected")
        c.expect(all(q.mult(a, a) == 0 for a in q.nodes), f"p={p}: self-extension present")
    for p in (5, 7):
        L = [rep.simple_restricted(p, lam) for lam in range(p)]
        D = [rep.dual(M) for M in L]
        bad = [(m, l) for m in range(p) for l in range(p) if ext1(L[m], L[l]).dim != ext1(D[l], D[m]).dim]
        c.expect(not bad, f"p={p}: duality fails at {bad[:4]}")
    rng = np.random.default_rng(20261015)
    for p in (5, 7):
        mods = [rep.verma(p, l) for l in range(p)] + [rep.simple_restricted(p, l) for l in range(p)]
        mods += [rep.simple_height0(p, l) for l in range(p - 1)] + [rep.simple_height1(p, l) for l in range(p)]
        mods += [rep.twisted_borel_module(p, l) for l in range(p)]
        invalid = [M.label for M in mods if not rep.validate(M)]
        c.expect(not invalid, f"p={p}: invalid modules {invalid}")
        ok, done = _cocycle_trials(p, COCYCLE_TRIALS, rng)
        c.expect(done == COCYCLE_TRIALS and ok == done, f"p={p}: {done - ok} of {done} cocycle trials failed")
    c.finish()


def test_criterion_10_top_height_p5(criterion):
    c = criterion(10, "height p-1 at p=5: definite verdicts, p-power check, encoded quiver")
    p = 5
    W = witt(p)
    F = W.field
    rng = np.random.default_rng(7)
    bad = 0
    for _ in range(P_POWER_TRIALS):
        x = W.random_element(rng)
        bad += not np.array_equal(W.ad(W.p_power(x)), F.matpow(W.ad(x), p))
    c.expect(bad == 0, f"ad(x^[p]) != ad(x)^p on {bad} of {P_POWER_TRIALS} samples")
    base = Character((0, 0, 0, 0, 1), p)  # chi(e_3) = 1
    chis = [base]
    first = classify_height_pm1(p, base).verdict
    sampler = np.random.default_rng(1)
    for _ in range(200):
        chi = Character(tuple(int(v) for v in sampler.integers(0, p, size=p - 1)) + (1,), p)
        if classify_height_pm1(p, chi).verdict not in (first, "mixed"):
            chis.append(chi)
            break
    c.expect(len(chis) == 2, "no second height-4 character with a definite verdict was sampled")
    for chi in chis:
        res = classify_height_pm1(p, chi)
        tag = f"chi={list(chi.values)}"
        c.expect(res.verdict in ("torus", "p-nilpotent"), f"{tag}: verdict {res.verdict}")
        if res.verdict in ("torus", "p-nilpotent"):
            q = quiver.build_quiver(p, chi=chi)
            e = quiver.expected_quiver(p, p - 1, flag=res.verdict)
            c.expect(not quiver.diff(q, e), f"{tag}: emitted quiver disagrees with the {res.verdict} case")
            c.expect(q.mult("L", "L") == {"torus": 0, "p-nilpotent": 1}[res.verdict], f"{tag}: loop count")
    c.finish()
