"""Acceptance criteria 1-7, each at exact equality.

Every test prints one PASS/FAIL line.  Run standalone for just the summary:

    python3 tests/test_acceptance.py
"""

import sys
import time
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from checks import beta_squared_failures, cartan_mismatches  # noqa: E402
from oracles import binom_big  # noqa: E402
from thomcob.bockstein import bockstein_cohomology, reconstruct_integral  # noqa: E402
from thomcob.cellular import (  # noqa: E402
    euler_characteristic,
    incidence_edges,
    integral_homology_so,
    mod2_consistency,
    boundary_matrices,
)
from thomcob.fpalg import add, multiply, parse_element  # noqa: E402
from thomcob.liegroups import build_group  # noqa: E402
from thomcob.steenrod import apply_word, binom_mod_p, verify_an_divisibility  # noqa: E402
from thomcob.thom import DEFAULT_INSTANCES, multiplier_bound, surjectivity_scan  # noqa: E402

TABLE1 = {
    "SO(4)": ("yes", None), "SO(5)": ("no", 3), "SO(8)": ("no", 3), "SO(10)": ("no", 3),
    "Spin(6)": ("yes", None), "Spin(7)": ("no", 3), "Spin(10)": ("no", 3),
    "Ss(4)": ("yes", None), "Ss(8)": ("no", 3), "Ss(12)": ("no", 7), "Ss(16)": ("no", 3),
    "PSO(4)": ("yes", None), "PSO(6)": ("yes", None), "PSO(8)": ("no", 3),
    "PSO(10)": ("no", 7), "PSO(12)": ("no", 7), "PSO(16)": ("no", 3),
    "Sp(2)": ("yes", None), "Sp(3)": ("yes", None),
    # 2^{r+1} - 1 with r = 1 is 3
    "PSp(2)": ("no", 3), "PSp(3)": ("yes", None), "PSp(4)": ("no", 7),
    "SU(4)": ("yes", None), "SUq(4,2)": ("no", 3), "SUq(4,4)": ("yes", None),
    "SUq(9,3)": ("yes", None),
    "G2": ("no", 3), "F4": ("no", 3), "E6": ("no", 3), "E6ad": ("no", 3),
    "E7": ("no", 3), "E7ad": ("no", 3), "E8": ("no", 3),
}

SO5_EDGES = {
    ((), (1,)): 0, ((1,), (2,)): 2, ((2,), (2, 1)): 0, ((2,), (3,)): 0,
    ((2, 1), (3, 1)): 0, ((3,), (3, 1)): 0, ((3,), (4,)): 2, ((3, 1), (3, 2)): -2,
    ((3, 1), (4, 1)): 2, ((4,), (4, 1)): 0, ((3, 2), (3, 2, 1)): 0, ((3, 2), (4, 2)): 2,
    ((4, 1), (4, 2)): 2, ((3, 2, 1), (4, 2, 1)): 2, ((4, 2), (4, 2, 1)): 0,
    ((4, 2), (4, 3)): 0, ((4, 2, 1), (4, 3, 1)): 0, ((4, 3), (4, 3, 1)): 0,
    ((4, 3, 1), (4, 3, 2)): -2, ((4, 3, 2), (4, 3, 2, 1)): 0,
}


def criterion_1():
    start = time.perf_counter()
    wrong = []
    for spec in DEFAULT_INSTANCES:
        row = surjectivity_scan(build_group(spec))
        if (row.surjective, row.min_degree) != TABLE1[spec]:
            wrong.append(f"{spec}: {row.surjective}/{row.min_degree}")
    elapsed = time.perf_counter() - start
    ok = not wrong and elapsed < 300 and len(DEFAULT_INSTANCES) == 33
    detail = f"33 groups in {elapsed:.1f}s; PSp(2) fails at 2^(r+1)-1 = 3 (r = 1)"
    return ok, detail + (f"; mismatches {wrong}" if wrong else "")


def _value(spec, p, word, text):
    pres, table = build_group(spec).data[p]
    r = apply_word(pres, table, word, parse_element(pres, text))
    return pres, r


def criterion_2():
    bad = []
    cases = [
        ("SO(5)", 2, "Sq3", "u1^3 + u3", "u1^6"),
        ("Ss(8)", 2, "Sq3", "v^3 + u3", "v^6 + u3^2"),
        ("E7", 3, "Q1", "x3", "-x8"),
        ("E8", 2, "Sq4", "x23 + x5*x9^2", "x27 + x9^3"),
    ]
    for spec, p, word, arg, expected in cases:
        pres, r = _value(spec, p, word, arg)
        if r.tainted or r.value != parse_element(pres, expected):
            bad.append(spec)
    pres, r = _value("PSO(10)", 2, "Sq7", "u7 + u2^2*u3")
    u7 = pres.gen("u7")
    expected = add(pres, multiply(pres, u7, u7), parse_element(pres, "u2^4*u3^2"))
    if r.tainted or r.value != expected:
        bad.append("PSO(10)")
    return not bad, "five worked values, untainted" + (f"; wrong {bad}" if bad else "")


def criterion_3():
    pres, table = build_group("E8").data[2]
    e15 = ["x15 + x3^2*x9", "x15 + x3^2*x9 + x3^5", "x15 + x5^3", "x15 + x5^3 + x3^5"]
    ok15 = 0
    for text in e15:
        r = apply_word(pres, table, "Sq1,Sq2,Sq4,Sq8", parse_element(pres, text))
        ok15 += (not r.tainted) and not r.value.is_zero()
    bases = ["x27 + x5^2*x17", "x27 + x9^3"]
    extra = ["x3^3*x9^2", "x3^9", "x3^6*x9 + x3^4*x5^3", "x3^4*x15 + x3^4*x5^3"]
    x15sq = tuple(2 if n == "x15" else 0 for n in pres.names)
    ok27 = total27 = 0
    for base in bases:
        for coeffs in product((0, 1), repeat=len(extra)):
            text = " + ".join([base] + [x for x, c in zip(extra, coeffs) if c])
            # Sq3 = Sq1 Sq2
            r = apply_word(pres, table, "Sq1,Sq2", parse_element(pres, text))
            total27 += 1
            ok27 += (not r.tainted) and r.value.terms.get(x15sq) == 1
    ok = ok15 == 4 and ok27 == total27 == 32
    return ok, f"degree 15: {ok15}/4 nonzero; degree 27: {ok27}/{total27} keep x15^2"


def criterion_4():
    g = build_group("SO(5)")
    bh = bockstein_cohomology(g, 2, 3)
    pres = g.presentation(2)
    ok_bh = (bh.dimension == 1 and not bh.image_basis
             and bh.representatives[0] == parse_element(pres, "u1^3 + u3"))
    pat = reconstruct_integral(build_group("PSO(6)"), 2)
    pso6 = {
        0: "Z", 3: "Z", 8: "Z", 15: "Z", 2: "Z/2^>=2", 14: "Z/2^>=2",
        4: "Z/2", 6: "Z/2", 11: "Z/2", 5: "Z + Z/2", 10: "Z + Z/2", 12: "Z + Z/2",
        9: "Z/2^>=2 + Z/2", 7: "Z + Z/2^>=2 + Z/2",
    }
    ok_pso6 = [pat.describe(n) for n in range(16)] == [pso6.get(n, "0") for n in range(16)]
    so4 = reconstruct_integral(build_group("SO(4)"), 2)
    ok_so4 = [so4.describe(n) for n in range(7)] == ["Z", "0", "Z/2", "Z^2", "0", "Z/2", "Z"]
    return ok_bh and ok_pso6 and ok_so4, f"BH^3(SO(5)) {ok_bh}, PSO(6) {ok_pso6}, SO(4) {ok_so4}"


def _d_squared_zero(n):
    levels, mats = boundary_matrices(n)
    for k in range(2, len(levels)):
        a, b = mats[k - 1], mats[k]
        for i in range(len(a)):
            for j in range(len(levels[k])):
                if sum(a[i][t] * b[t][j] for t in range(len(b))):
                    return False
    return True


def criterion_5():
    edges = {(lo.indices, hi.indices): c for lo, hi, c in incidence_edges(5)}
    ok_edges = edges == SO5_EDGES
    ok_d2 = all(_d_squared_zero(n) for n in range(1, 11))
    hom = integral_homology_so(5)
    ok_h = (hom[7].free_rank, hom[7].torsion, hom[0].free_rank, hom[0].torsion) == (1, [], 1, [])
    ok_mod2 = all(r.ok for n in range(3, 9) for r in mod2_consistency(n))
    ok_chi = all(euler_characteristic(n) == 0 for n in range(2, 11))
    ok = ok_edges and ok_d2 and ok_h and ok_mod2 and ok_chi
    return ok, (f"edges {len(edges)}/20 {ok_edges}, d^2 {ok_d2}, H_7/H_0 {ok_h}, "
                f"mod 2 {ok_mod2}, chi {ok_chi}")


def criterion_6():
    b = multiplier_bound(build_group("SO(5)"), 3)
    free = [s for s in DEFAULT_INSTANCES if build_group(s).torsion_free]
    ones = all(multiplier_bound(build_group(s), d) == 1
               for s in free for d in range(build_group(s).dim + 1))
    return b % 2 == 0 and ones and bool(free), f"SO(5) degree 3 bound {b}; torsion-free {free} all 1"


def criterion_7():
    notes = []
    beta_bad = {s: beta_squared_failures(s)[0] for s in DEFAULT_INSTANCES}
    ok_beta = not any(beta_bad.values())
    notes.append(f"beta^2 {ok_beta}")
    cartan_ok = True
    for s in DEFAULT_INSTANCES:
        for p in build_group(s).primes:
            bad, _ = cartan_mismatches(s, p, n_pairs=1000)
            cartan_ok = cartan_ok and not bad
    notes.append(f"Cartan {cartan_ok}")
    ok_lucas = all(binom_mod_p(j, k, p) == binom_big(j, k, p)
                   for p in (2, 3, 5) for j in range(65) for k in range(65))
    notes.append(f"Lucas {ok_lucas}")
    ok_top = all(build_group(s).presentation(p).top_degree == build_group(s).dim
                 for s in DEFAULT_INSTANCES for p in build_group(s).primes)
    notes.append(f"top degree {ok_top}")
    ok_div = all(verify_an_divisibility(p, r, 200).status == "PASS" for p in (2, 3, 5) for r in (2, 3, 4))
    notes.append(f"divisibility {ok_div}")
    return ok_beta and cartan_ok and ok_lucas and ok_top and ok_div, ", ".join(notes)


CRITERIA = [
    (1, "surjectivity table", criterion_1),
    (2, "worked operation values", criterion_2),
    (3, "E8 candidate chains", criterion_3),
    (4, "Bockstein and integral reconstruction", criterion_4),
    (5, "cellular oracle", criterion_5),
    (6, "multiplier bounds", criterion_6),
    (7, "property suites", criterion_7),
]


def report(num, name, fn):
    ok, detail = fn()
    line = f"criterion {num} ({name}): {'PASS' if ok else 'FAIL'} - {detail}"
    return ok, line


@pytest.mark.parametrize("num, name, fn", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(num, name, fn, capsys):
    ok, line = report(num, name, fn)
    with capsys.disabled():
        print("\n" + line)
    assert ok, line


if __name__ == "__main__":
    results = [report(*c) for c in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(ok for ok, _ in results) else 1)
