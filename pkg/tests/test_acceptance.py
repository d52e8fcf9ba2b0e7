"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``ACCEPTANCE <n> PASS|FAIL`` line with the key
numbers.  Run ``python tests/test_acceptance.py`` for the lines alone.
"""
from __future__ import annotations

import itertools
import sys
import time
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))
import identities as ids  # noqa: E402

from cosetbounds import LatticeDivisor as L, curve_from_name, hermitian_profile, suzuki_profile
from cosetbounds.bounds import (abz_code_bound, abz_coset_bound, chain_bound, floor_bound,
                                gamma_star_lower, goppa_bound, hermitian_closed_form,
                                hermitian_delta_counts, order_bound)
from cosetbounds.cli import oracle_bounds
from cosetbounds.coset_decoder import (build_filtration, build_witnesses, coset_decode_step,
                                       extension)
from cosetbounds.curve_model import P, Q, DivClass
from cosetbounds.delta_sets import delta_line, partition_6g, tables
from cosetbounds.gf_codes.codes import coset_distance, min_distance
from cosetbounds.gf_codes.hermitian import build_code_l, build_code_omega, hermitian_field
from cosetbounds.gf_codes.secret_sharing import duality_check, size_extremes


def report(num: int, title: str, ok: bool, detail: str, capsys=None) -> None:
    line = f"ACCEPTANCE {num} {'PASS' if ok else 'FAIL'}: {title} | {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


# -- 1 ---------------------------------------------------------------------------------

def criterion_1():
    c = hermitian_profile(3)
    fails = []
    d = {0: 0, -1: 2, -2: 4, -3: 6}
    if any(c.disc_deg[k % 4] != v for k, v in d.items()):
        fails.append("d(k)")
    if delta_line(c, L(0, 0), L(1, 2)) != [0, 3, 4, 6]:
        fails.append("Delta(0,P+2Q)")
    if delta_line(c, L(0, 0), L(1, 5)) != [0, 3, 4, 6, 7, 10]:
        fails.append("Delta(0,P+5Q)")
    K = tables(c, L(0, 0), L(0, 0), "K", {"l": 0, "i": 1}, range(-7, 5)).render()
    N = tables(c, L(0, 0), L(0, 0), "N", {"l": 0, "i": 1}, range(-7, 5)).render()
    if K != ["(-4)", "(-1)", "(2)", "(-3)", "0", "3", "6", "(1)", "4", "7", "10", "(5)"]:
        fails.append("K row")
    if N != ["0", "0", "0", "0", "1", "1", "1", "0", "1", "1", "1", "0"]:
        fails.append("N row")
    parts = partition_6g(c, L(0, 0), L(1, -1))
    want = {"N1": [-4, -3, -1], "G2": [1, 2, 5], "N2": [0, 3, 4], "G3": [6, 7, 10],
            "N3": [8, 9, 11], "G1": [-6, -5, -2]}
    if parts != want:
        fails.append("6g partition")
    return not fails, "mismatches: " + (", ".join(fails) or "none")


# -- 2 ---------------------------------------------------------------------------------

SUZUKI2_MULT = [(0, 0), (-5, 12), (-10, 24), (-3, 10), (-8, 22), (-1, 8), (-6, 20), (-11, 32),
                (-4, 18), (-9, 30), (-2, 16), (-7, 28), (-12, 40)]


def criterion_2():
    c = suzuki_profile(2)
    classes = {c.cls(L(k, l)) for k, l in SUZUKI2_MULT}
    disc_ok = len(classes) == 13 == c.period and all(
        c.in_gamma_p(L(k, l)) and c.in_gamma_q(L(k, l)) and not c.in_gamma_p(L(k, l - 1))
        and c.disc_deg[c.cls(L(k, l)).res] == k + l for k, l in SUZUKI2_MULT)
    A = c.sub(c.canonical, L(0, 13))               # K - H with H ~ 13Q
    abz = abz_code_bound(c, A, A, L(4, 2)).value
    fl = floor_bound(c, A, A, L(2, 2))
    Cf = fl.witness["C"]
    od = order_bound(c, Cf).value
    ok = disc_ok and abz == 10 and fl.value == Cf.deg + 4 and fl.value - od == 1
    return ok, (f"13 discrepancies {'match' if disc_ok else 'MISMATCH'}; abz_code={abz}; "
                f"floor={fl.value} (deg C + 4 = {Cf.deg + 4}); order={od}")


# -- 3 ---------------------------------------------------------------------------------

def criterion_3():
    c = suzuki_profile(4)
    C1 = L(55, 31)
    n0, n5 = len(delta_line(c, L(0, 0), C1)), len(delta_line(c, L(0, -5), C1))
    ch = chain_bound(c, C1)
    ends = (ch.witness["chain"][0], ch.witness["chain"][-1])
    o9 = order_bound(c, L(9, 9)).value
    C2 = L(9, 9)
    kc = c.add(c.canonical, c.cls(C2))
    window = {}
    for r in itertools.chain(range(141, 147), range(109, 115)):
        A = c.rep(c.sub(kc, c.cls(L(r, 9))))
        window[r] = abz_coset_bound(c, C2, A, L(r, 0), P, L(0, 9)).value
    o10 = order_bound(c, L(10, 9)).value
    c12 = chain_bound(c, L(12, 12)).value
    ok = (n0 == 89 and n5 == 90 and ch.value >= 90 and ends == (L(36, -5), L(307, -5))
          and o9 == 40 and window[141] == 45 and all(v == o9 + 5 for v in window.values())
          and o10 >= 50 and c12 >= 56)
    return ok, (f"#Delta {n0} vs {n5}; chain(55P+31Q)={ch.value} from {ends[0]} to {ends[1]}; "
                f"order(9P+9Q)={o9}; abz_coset window values={sorted(set(window.values()))}; "
                f"order(10P+9Q)={o10}; chain(12P+12Q)={c12}")


# -- 4 ---------------------------------------------------------------------------------

def criterion_4():
    count_bad = case_bad = n = 0
    for q in (2, 3, 4):
        c = hermitian_profile(q)
        for a in range(q + 1):
            for b in range(q + 1):
                for d in range(a - q + 1, a + 1):
                    n += 1
                    C = L(-a, d * (q + 1) - b)
                    cnt = hermitian_delta_counts(q, d, a, b)
                    if (cnt["pos"] != len(delta_line(c, L(0, 0), C))
                            or cnt["neg"] != len(delta_line(c, L(0, 0), -C))):
                        count_bad += 1
                    cos = hermitian_closed_form(q, d, a, b)
                    if any(cos.value > chain_bound(c, C, pt).value for pt in cos.witness["points"]):
                        case_bad += 1
                    dist = hermitian_closed_form(q, d, a, b, "distance")
                    if dist.witness["case"] == "1":
                        engine = goppa_bound(C)
                    else:
                        engine = max(order_bound(c, C).value,
                                     gamma_star_lower(c, C, strategy="best").value)
                    if dist.value > engine:
                        case_bad += 1
    return count_bad == 0 and case_bad == 0, (f"{n} parameter sets; count mismatches={count_bad}; "
                                              f"case bound above engine={case_bad}")


# -- 5 ---------------------------------------------------------------------------------

def criterion_5():
    q = 2
    curve = hermitian_profile(q)
    g, n = curve.genus, q ** 3 - 1
    K = curve.canonical
    violations, checked, equal, total = [], 0, 0, 0
    for deg in range(-2 * g, n + 2 * g + 1):
        for b in range(q + 1):
            G = L(deg - b, b)
            code = build_code_omega(q, G.k, G.l)
            if code.k:
                d = min_distance(code)
                vals = oracle_bounds(curve, curve.sub(G, K))
                checked += len(vals)
                total += 1
                equal += max(vals.values()) == d
                violations += [(G, m, v, d) for m, v in vals.items() if v > d]
            for pt in (P, Q):
                step = L(1, 0) if pt == P else L(0, 1)
                # Omega side: C_Omega(D, G - pt) over C_Omega(D, G)
                H = G - step
                big, small = build_code_omega(q, H.k, H.l), build_code_omega(q, G.k, G.l)
                if big.k > small.k:
                    C = curve.sub(curve.sub(G, K), curve.point_class(pt))
                    w = chain_bound(curve, C, pt).value
                    cd = coset_distance(big, small)
                    checked += 1
                    if w > cd:
                        violations.append((G, "chain_omega", pt, w, cd))
                # L side: C_L(D, G) over C_L(D, G - pt), with D ~ q^3 P - Q
                bigL, smallL = build_code_l(q, G.k, G.l), build_code_l(q, H.k, H.l)
                if bigL.k > smallL.k:
                    C = L(q ** 3 - G.k, -1 - G.l)
                    w = chain_bound(curve, C, pt).value
                    cd = coset_distance(bigL, smallL)
                    checked += 1
                    if w > cd:
                        violations.append((G, "chain_l", pt, w, cd))
    frac = equal / total if total else 0.0
    return not violations, (f"{checked} bound checks, violations={len(violations)}; best bound equals "
                            f"d on {equal}/{total} codes ({frac:.2%})")


# -- 6 ---------------------------------------------------------------------------------

def criterion_6():
    q = 2
    n_ext, bad = 0, []
    for deg in range(-2, 11):
        for b in range(q + 1):
            G = L(deg - b, b)
            for pt in (P, Q):
                ext = extension(q, G, pt)
                if ext.code.k - ext.sub.k != 1:
                    continue
                n_ext += 1
                chk = duality_check(ext.code, ext.sub)
                four = all(chk[k] for k in ("gamma_dual", "delta_dual", "gamma_primal",
                                            "delta_primal"))
                lo, hi = size_extremes(chk["qualified_dual"], ext.code.n)
                d1 = coset_distance(ext.code, ext.sub)
                d2 = coset_distance(ext.dual_big, ext.dual_small)
                if not (four and lo == d1 and hi == ext.code.n - d2):
                    bad.append((G, pt))
    return n_ext > 0 and not bad, f"{n_ext} codimension-one extensions, failures={len(bad)}"


# -- 7 ---------------------------------------------------------------------------------

def criterion_7(trials_q3: int = 10_000):
    rng = np.random.default_rng(2024)
    # q = 2: every extension with w >= 3, every weight-1 error
    q2_ext = q2_trials = q2_wrong = 0
    min_margin_slack = None
    for deg in range(-2, 12):
        for b in range(3):
            for pt in (P, Q):
                G = L(deg - b, b)
                if extension(2, G, pt).trivial:
                    continue
                ws = build_witnesses(2, G, pt)
                if ws.w < 3:
                    continue
                q2_ext += 1
                F = ws.F
                for _ in range(3):
                    c = ws.ext.code.random_word(rng)
                    truth = int(F.dot(ws.x, c))
                    for pos, val in itertools.product(range(ws.ext.code.n), range(1, F.order)):
                        y = c.copy()
                        y[pos] = F.add(y[pos], val)
                        r = coset_decode_step(ws, y, 1)
                        q2_trials += 1
                        slack = r.margin(truth) - (ws.w - 2)
                        min_margin_slack = slack if min_margin_slack is None else min(min_margin_slack, slack)
                        q2_wrong += r.value != truth
    # q = 3: full filtration of C_Omega(D, 10P) with t = 2, random weight-2 errors
    t = 2
    filt = build_filtration(3, L(10, 0), t)
    code = extension(3, L(11, 0), P).code
    F = hermitian_field(3)
    q3_wrong = 0
    for _ in range(trials_q3):
        c = code.random_word(rng)
        pos = rng.choice(code.n, 2, replace=False)
        y = c.copy()
        y[pos] = F.add(y[pos], rng.integers(1, F.order, 2))
        cur, rest = y, c
        ok = True
        for ws in filt.steps:
            truth = int(F.dot(ws.x, rest))
            r = coset_decode_step(ws, cur, t)
            slack = r.margin(truth) - (ws.w - 2 * t)
            min_margin_slack = min(min_margin_slack, slack)
            if r.value != truth:
                ok = False
                break
            peel = F.mul_t[r.label, ws.c0]
            cur, rest = F.sub(cur, peel), F.sub(rest, peel)
        ok = ok and not np.any(rest)
        q3_wrong += not ok
    ok = q2_ext > 0 and q2_wrong == 0 and q3_wrong == 0 and min_margin_slack >= 0
    return ok, (f"q=2: {q2_ext} extensions, {q2_trials} trials, wrong={q2_wrong}; "
                f"q=3: steps w={[s.w for s in filt.steps][0]}..{filt.min_w and max(s.w for s in filt.steps)}, "
                f"{trials_q3} trials, wrong={q3_wrong}; min(margin - (w - 2t))={min_margin_slack}")


# -- 8 ---------------------------------------------------------------------------------

def criterion_8(n: int = 1000):
    out = {}
    for name in ids.BUILTIN:
        out[name] = ids.run_all(curve_from_name(name), n, seed=1)
    bad = {k: v for k, v in out.items() if v}
    detail = "; ".join(f"{k}: {sum(v.values())} violations" for k, v in out.items())
    return not bad, f"{n} instances per curve; {detail}"


CRITERIA = [
    (1, "Hermitian q=3 profile, delta sets, K/N table, 6g partition", criterion_1),
    (2, "Suzuki q0=2 discrepancies, ABZ for codes, floor vs order", criterion_2),
    (3, "Suzuki q0=4 line counts, chains, order and ABZ coset values", criterion_3),
    (4, "Hermitian closed forms against enumeration and engines", criterion_4),
    (5, "Bound soundness against exact distances, Hermitian q=2", criterion_5),
    (6, "Secret-sharing access structures, Hermitian q=2", criterion_6),
    (7, "Majority coset decoding", criterion_7),
    (8, "Randomized identity suites on all built-in curves", criterion_8),
]


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_acceptance(num, title, fn, capsys):
    t0 = time.perf_counter()
    ok, detail = fn()
    report(num, title, ok, f"{detail} ({time.perf_counter() - t0:.1f}s)", capsys)
    assert ok, detail


if __name__ == "__main__":
    for num, title, fn in CRITERIA:
        t0 = time.perf_counter()
        ok, detail = fn()
        report(num, title, ok, f"{detail} ({time.perf_counter() - t0:.1f}s)")
