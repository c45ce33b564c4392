"""Acceptance gate: ten end-to-end criteria with stated runtime budgets.

Each test prints exactly one PASS/FAIL line (bypassing pytest capture)
so the acceptance status is readable straight off the run log.  Two
criteria are asserted in computationally amended form; the amendments
are flagged on their lines and documented in the project notes.
"""
import itertools
import random
import sys
import time
from math import factorial

from brauer.diagrams import (
    Diagram,
    compose,
    corank,
    from_permutation,
    identity,
    involution,
    mul,
    perm_from_cycles,
    perm_identity,
    rank,
    stable_rank,
)
from brauer.green import (
    all_diagrams,
    all_permutations,
    brauer_order,
    left_cups,
    r_class_count_of_corank,
    related,
)
from brauer.canonical import (
    ParamTable,
    alpha,
    build_canonical,
    check_presentation,
    extract_params,
    mult_map_fiber,
    param_slots,
    phi_recursion,
    is_canonical,
    random_xy_table,
    verify_cross_section,
)
from brauer.classify import (
    classify,
    conjugate,
    enumerate_all,
    enumerate_all_backtracking,
    enumerate_canonical,
    find_isomorphism,
    predicted_stabilizer,
    stabilizer,
)
from brauer.hd import (
    chain_d_section,
    d_from_is,
    h_class_count,
    h_cross_section_check,
    idempotents,
    verify_d_cross_section,
)


def _report(num, title, failures, t0, note=""):
    status = "PASS" if not failures else "FAIL"
    extra = f" [{note}]" if note else ""
    line = f"ACCEPTANCE {num} ({title}): {status} ({time.time() - t0:.1f}s){extra}\n"
    sys.__stdout__.write(line)
    sys.__stdout__.flush()
    assert not failures, failures


def _random_diagram(n, rng):
    points = list(range(2 * n))
    rng.shuffle(points)
    partner = [0] * (2 * n)
    for i in range(0, 2 * n, 2):
        partner[points[i]] = points[i + 1]
        partner[points[i + 1]] = points[i]
    return Diagram(n, partner)


def test_criterion_1_monoid_sanity():
    t0 = time.time()
    failures = []
    for n in range(1, 7):
        count = sum(1 for _ in all_diagrams(n))
        if count != brauer_order(n):
            failures.append(f"|B_{n}| = {count}")
    elems3 = list(all_diagrams(3))
    for a, b, c in itertools.product(elems3, repeat=3):
        left = compose(mul(a, b), c)
        right = compose(a, mul(b, c))
        if left.product != right.product:
            failures.append(f"associativity broke at n=3: {a} {b} {c}")
            break
    rng = random.Random(2024)
    for n in range(4, 9):
        for _ in range(2500):
            a, b, c = (_random_diagram(n, rng) for _ in range(3))
            if mul(mul(a, b), c) != mul(a, mul(b, c)):
                failures.append(f"associativity broke at n={n}")
                break
    _report(1, "monoid sanity", failures, t0)
    assert time.time() - t0 < 10


def test_criterion_2_green_oracles():
    t0 = time.time()
    failures = []
    for n in range(1, 5):
        elems = list(all_diagrams(n))
        perms = [from_permutation(s) for s in all_permutations(n)]
        r_set = {a: frozenset(mul(a, s) for s in perms) for a in elems}
        l_set = {a: frozenset(mul(s, a) for s in perms) for a in elems}
        d_set = {
            a: frozenset(mul(p, t) for p in l_set[a] for t in perms) for a in elems
        }
        for a in elems:
            for b in elems:
                checks = (
                    (related(a, b, "R"), b in r_set[a]),
                    (related(a, b, "L"), b in l_set[a]),
                    (related(a, b, "H"), b in r_set[a] and b in l_set[a]),
                    (related(a, b, "D"), b in d_set[a]),
                )
                if any(got != want for got, want in checks):
                    failures.append(f"n={n}: {a} vs {b}")
    _report(2, "Green relation oracles", failures, t0)
    assert time.time() - t0 < 60


def test_criterion_3_canonical_construction():
    t0 = time.time()
    failures = []
    rng = random.Random(7)
    per_n = {n: enumerate_canonical(n) for n in range(4, 8)}
    per_n[8] = [
        build_canonical(8, ParamTable.regular(8)),
        build_canonical(8, ParamTable.alternating(8)),
    ]
    for n, sections in per_n.items():
        for cs in sections:
            report = verify_cross_section(n, cs, "R", full=True)
            if not report.ok:
                failures.append(f"n={n}: {report.summary()}")
            for k in range(n // 2 + 1):
                if len(cs.stratum(k)) != r_class_count_of_corank(n, 2 * k):
                    failures.append(f"n={n}: stratum {k} size")
        cs = sections[0]
        for k in range(n // 2 + 1):
            stratum = cs.stratum(k)
            for d in rng.sample(stratum, min(20, len(stratum))):
                if mult_map_fiber(cs, d) != factorial(k):
                    failures.append(f"n={n}: fiber at corank {2 * k}")
    # spot value: the corank-6 member with three leading cups at n=7
    reg7 = build_canonical(7, ParamTable.regular(7))
    target = reg7.get(((1, 2), (3, 4), (5, 6)))
    if mult_map_fiber(reg7, target) != 6:
        failures.append("corank-6 fiber at n=7 is not 6")
    _report(3, "canonical construction", failures, t0)
    assert time.time() - t0 < 300


def test_criterion_4_canonical_counts():
    t0 = time.time()
    failures = []
    expected = {4: 2, 5: 8, 6: 16, 7: 8}
    for n, want in expected.items():
        got = len(enumerate_canonical(n))
        if got != want:
            failures.append(f"n={n}: {got} != {want}")
    _report(4, "canonical counts, exhaustive tables", failures, t0)
    assert time.time() - t0 < 600


def test_criterion_5_full_classification():
    t0 = time.time()
    failures = []
    for n, want in ((1, 1), (2, 1), (3, 3), (4, 12)):
        got = len(enumerate_all_backtracking(n))
        if got != want:
            failures.append(f"backtracking n={n}: {got} != {want}")
    bt4 = {cs.sort_key() for cs in enumerate_all_backtracking(4)}
    orb4 = {cs.sort_key() for cs in enumerate_all(4)}
    if bt4 != orb4:
        failures.append("strategies disagree at n=4")
    for n, want in ((5, 240), (6, 1440)):
        got = len(enumerate_all(n))
        if got != want:
            failures.append(f"orbit strategy n={n}: {got} != {want}")
    report7 = classify(7)
    if report7.total != 5040:
        failures.append(f"n=7 total {report7.total}")
    sizes = sorted(o["size"] for o in report7.orbits)
    if sizes != [2520, 2520]:
        failures.append(f"n=7 orbit sizes {sizes}")
    _report(5, "full classification counts", failures, t0)
    assert time.time() - t0 < 900


def test_criterion_6_stabilizers():
    t0 = time.time()
    failures = []
    # the order-2 prediction holds for n = 4, 6, 7 and for the four
    # parameter tables at n = 5 whose slots depend only on the family;
    # the other four n=5 sections provably have trivial stabilizer
    for n in (4, 6, 7):
        pred = set(predicted_stabilizer(n))
        for cs in enumerate_canonical(n):
            got = set(stabilizer(cs, exhaustive=(n <= 6)))
            if got != pred or len(got) != 2:
                failures.append(f"n={n}, bits {extract_params(cs).bits()}")
    pred5 = set(predicted_stabilizer(5))
    for cs in enumerate_canonical(5):
        bits = extract_params(cs).bits()
        got = set(stabilizer(cs, exhaustive=True))
        uniform = bits[0] == bits[1]  # both non-family slots agree
        want = pred5 if uniform else {perm_identity(5)}
        if got != want:
            failures.append(f"n=5, bits {bits}: order {len(got)}")
    _report(6, "stabilizers", failures, t0,
            note="amended at n=5: four sections have trivial stabilizer")
    assert time.time() - t0 < 300


def test_criterion_7_isomorphism():
    t0 = time.time()
    failures = []
    for n in (6, 7):
        reg = build_canonical(n, ParamTable.regular(n))
        alt = build_canonical(n, ParamTable.alternating(n))
        if find_isomorphism(reg, alt).found:
            failures.append(f"regular ~ alternating at n={n}")
        sigma = perm_from_cycles(n, [(1, 3, 2), (4, n)])
        if not find_isomorphism(reg, conjugate(reg, sigma)).found:
            failures.append(f"conjugate pair failed at n={n}")
    # n=5: the 8 canonical sections fall into 3 isomorphism classes
    # coinciding with their conjugacy classes, not a single class
    secs = {extract_params(cs).bits(): cs for cs in enumerate_canonical(5)}
    classes = [["000", "111"], ["001", "110"], ["010", "011", "100", "101"]]
    for group in classes:
        for x, y in itertools.combinations(group, 2):
            if not find_isomorphism(secs[x], secs[y]).found:
                failures.append(f"n=5: {x} !~ {y} inside a class")
    for g1, g2 in itertools.combinations(classes, 2):
        if find_isomorphism(secs[g1[0]], secs[g2[0]]).found:
            failures.append(f"n=5: {g1[0]} ~ {g2[0]} across classes")
    _report(7, "isomorphism search", failures, t0,
            note="amended at n=5: three isomorphism classes, not one")
    assert time.time() - t0 < 600


def test_criterion_8_recursion_and_presentation():
    t0 = time.time()
    failures = []
    rng = random.Random(13)
    sections = {n: enumerate_canonical(n) for n in (5, 6, 7)}
    sections[8] = [
        build_canonical(8, ParamTable.regular(8)),
        build_canonical(8, ParamTable.alternating(8)),
        build_canonical(8, random_xy_table(8, rng)),
    ]
    for n, secs in sections.items():
        for cs in secs:
            down = phi_recursion(cs)
            if not (is_canonical(down)
                    and verify_cross_section(n - 2, down, "R", full=True).ok):
                failures.append(f"projection failed from n={n}")
    for n in (5, 6, 7):
        for pt in (ParamTable.regular(n), ParamTable.alternating(n)):
            if not check_presentation(build_canonical(n, pt)).ok:
                failures.append(f"presentation violations at n={n}")
    # the generator relations that pin down the free parameters, verbatim
    for cs in sections[6]:
        g = cs.generators()
        rels = [((1, 3), (1, 2), (2, 4), (1, 2)),
                ((2, 3), (1, 2), (1, 4), (1, 2)),
                ((1, 2), (1, 2), (3, 4), (1, 2))]
        for a, b, c, d in rels:
            if mul(g[a], g[b]) != mul(g[c], g[d]):
                failures.append(f"n=6 relation {a}{b}={c}{d}")
    for cs in sections[7]:
        g = cs.generators()
        rels = [((2, 3), (2, 3), (4, 5), (2, 3)),
                ((2, 4), (1, 2), (1, 5), (1, 2)),
                ((1, 4), (1, 2), (2, 5), (1, 2)),
                ((3, 5), (2, 3), (2, 4), (2, 3)),
                ((3, 4), (2, 3), (2, 5), (2, 3)),
                ((1, 5), (1, 3), (3, 4), (1, 3)),
                ((1, 3), (2, 3), (4, 5), (1, 3))]
        for a, b, c, d in rels:
            if mul(g[a], g[b]) != mul(g[c], g[d]):
                failures.append(f"n=7 relation {a}{b}={c}{d}")
    _report(8, "recursion and presentation", failures, t0)
    assert time.time() - t0 < 120


def test_criterion_9_h_and_d_sections():
    t0 = time.time()
    failures = []
    rep3 = h_cross_section_check(3)
    if not (rep3.exists and set(rep3.section) == set(idempotents(3))
            and len(rep3.section) == h_class_count(3)):
        failures.append("n=3 existence/uniqueness")
    rep4 = h_cross_section_check(4)
    if rep4.exists or "H-related" not in rep4.certificate:
        failures.append("n=4 nonexistence certificate")
    for n in range(4, 9):
        chain = chain_d_section(n // 2)
        lifted = d_from_is(chain, n)
        ok, msg = verify_d_cross_section(n, lifted)
        if not ok:
            failures.append(f"n={n}: {msg}")
        by_rank = dict(zip((f.rank() for f in chain), lifted))
        for f in chain:
            for g in chain:
                image = by_rank[f.mul(g).rank()]
                if mul(by_rank[f.rank()], by_rank[g.rank()]) != image:
                    failures.append(f"lift not multiplicative at n={n}")
    _report(9, "H and D cross-sections", failures, t0)
    assert time.time() - t0 < 60


def test_criterion_10_property_suites():
    t0 = time.time()
    failures = []
    rng = random.Random(4242)
    for _ in range(500):
        n = rng.choice((3, 5, 7, 8))
        a, b = _random_diagram(n, rng), _random_diagram(n, rng)
        if involution(mul(a, b)) != mul(involution(b), involution(a)):
            failures.append("mirror anti-automorphism")
        if corank(mul(a, b)) > corank(a) + corank(b):
            failures.append("corank subadditivity")
        if corank(a) % 2:
            failures.append("corank parity")
        if stable_rank(a) > rank(a):
            failures.append("stable rank bound")
    for n in (7, 8, 9):
        for _ in range(10):
            pt = random_xy_table(n, rng)
            if extract_params(build_canonical(n, pt)) != pt:
                failures.append(f"parameter round trip at n={n}")
        # staggered law: a product's level-l tail value is the xor of
        # the factors' values at levels l and l+1
        slots = param_slots(n)
        for _ in range(100):
            pt = ParamTable(n, {s: rng.random() < 0.5 for s in slots})
            i, j, l = rng.choice(slots)
            deeper = [(s, t) for (s, t, m) in slots if (n - t) // 2 >= l + 1]
            if not deeper:
                continue
            s, t = rng.choice(deeper)
            prod = mul(alpha(n, i, j, pt), alpha(n, s, t, pt))
            p = prod.partner[n - 2 * l]  # partner of left point n-2l+1
            got = {2 * n - 2 * l - 4: False, 2 * n - 2 * l - 3: True}.get(p)
            if got != pt.flipped(i, j, l) ^ pt.flipped(s, t, l + 1):
                failures.append(f"staggered law at n={n}")
    _report(10, "property suites", failures, t0)
    assert time.time() - t0 < 60
