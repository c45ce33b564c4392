"""Tests for conjugation, orbits, enumeration, and isomorphism search."""
import json
import random
from math import factorial

import pytest

from brauer.diagrams import (
    mul,
    perm_from_cycles,
    perm_identity,
    perm_mul,
    rank,
)
from brauer.canonical import (
    ParamTable,
    build_canonical,
    extract_params,
    verify_cross_section,
)
from brauer.classify import (
    canonical_count,
    classify,
    conjugate,
    cross_section_count,
    enumerate_all,
    enumerate_all_backtracking,
    enumerate_canonical,
    find_isomorphism,
    l_cross_section,
    predicted_stabilizer,
    stabilizer,
)


def random_perm(n, rng):
    word = list(range(n))
    rng.shuffle(word)
    return tuple(word)


def test_conjugate_identity_and_action_law():
    cs = build_canonical(5, ParamTable.regular(5))
    assert conjugate(cs, perm_identity(5)) == cs
    rng = random.Random(31)
    for _ in range(10):
        s, t = random_perm(5, rng), random_perm(5, rng)
        assert conjugate(conjugate(cs, s), t) == conjugate(cs, perm_mul(s, t))
        assert verify_cross_section(5, conjugate(cs, s), "R", full=True).ok


def test_n3_conjugates_cover_everything():
    cs = build_canonical(3)
    others = {
        conjugate(cs, perm_from_cycles(3, [(1, 2)])).sort_key(),
        conjugate(cs, perm_from_cycles(3, [(1, 3)])).sort_key(),
        cs.sort_key(),
    }
    assert {c.sort_key() for c in enumerate_all(3)} == others


def test_stabilizer_small():
    cs2 = build_canonical(2)
    assert set(stabilizer(cs2)) == {(0, 1), (1, 0)}  # all of S_2
    cs4 = build_canonical(4, ParamTable.regular(4))
    assert set(stabilizer(cs4)) == set(predicted_stabilizer(4))
    assert predicted_stabilizer(4) == [
        perm_identity(4),
        perm_from_cycles(4, [(3, 4), (1, 2)]),
    ]


def test_stabilizer_pruned_matches_exhaustive():
    for pt in (ParamTable.regular(6), ParamTable.alternating(6)):
        cs = build_canonical(6, pt)
        assert set(stabilizer(cs, exhaustive=True)) == set(
            stabilizer(cs, exhaustive=False)
        )


def test_enumerate_canonical_counts():
    for n in range(1, 7):
        assert len(enumerate_canonical(n)) == canonical_count(n)


def test_enumerate_all_small():
    for n in (1, 2, 3, 4):
        assert len(enumerate_all(n)) == cross_section_count(n)
        bt = {cs.sort_key() for cs in enumerate_all_backtracking(n)}
        assert bt == {cs.sort_key() for cs in enumerate_all(n)}


def test_enumerate_all_members_verify():
    for cs in enumerate_all(4):
        assert verify_cross_section(4, cs, "R", full=True).ok


def test_classify_small():
    for n in (3, 4, 5):
        report = classify(n)
        assert report.total == cross_section_count(n)
        for orbit in report.orbits:
            assert orbit["size"] * orbit["stabilizer_order"] == factorial(n)
        payload = json.loads(report.to_json())
        assert payload["total"] == report.total
        assert payload["orbit_count"] == len(report.orbits)


def test_l_cross_section():
    cs = build_canonical(5, ParamTable.regular(5))
    ls = l_cross_section(cs)
    assert ls.kind == "L"
    assert verify_cross_section(5, ls, "L", full=True).ok
    assert l_cross_section(ls) == cs
    cs2 = build_canonical(2)
    assert set(l_cross_section(cs2)) == set(cs2)  # both members mirror-symmetric


def test_iso_conjugate_pairs_found():
    rng = random.Random(41)
    for n in (4, 5, 6):
        cs = build_canonical(n, ParamTable.regular(n))
        other = conjugate(cs, random_perm(n, rng))
        result = find_isomorphism(cs, other)
        assert result.found
        m = result.mapping
        assert all(m[mul(x, y)] == mul(m[x], m[y]) for x in m for y in m)
        assert len(set(m.values())) == len(m)


def test_iso_rejects_size_mismatch():
    a = build_canonical(4, ParamTable.regular(4))
    b = build_canonical(5, ParamTable.regular(5))
    assert not find_isomorphism(a, b).found


def test_iso_regular_vs_alternating_n6():
    reg = build_canonical(6, ParamTable.regular(6))
    alt = build_canonical(6, ParamTable.alternating(6))
    assert not find_isomorphism(reg, alt).found
    assert not find_isomorphism(alt, reg).found


def test_iso_result_json():
    cs = build_canonical(4, ParamTable.regular(4))
    found = find_isomorphism(cs, cs)
    payload = json.loads(found.to_json())
    assert payload["found"] and len(payload["mapping"]) == len(cs)
