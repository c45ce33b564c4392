"""Tests for H-cross-section existence and D-cross-section lifting."""
import itertools

import pytest

from brauer.diagrams import PartialInjection, format_diagram, identity, mul, rank
from brauer.green import all_diagrams, left_cups, right_cups
from brauer.hd import (
    chain_d_section,
    d_from_is,
    format_partial_injection,
    h_class_count,
    h_cross_section_check,
    idempotents,
    parse_is_section,
    parse_partial_injection,
    verify_d_cross_section,
)


def test_idempotents_small():
    assert idempotents(1) == [identity(1)]
    e2 = idempotents(2)
    assert len(e2) == 2 and identity(2) in e2
    assert len(idempotents(3)) == h_class_count(3) == 10


def test_h_exists_small():
    for n in (1, 2, 3):
        report = h_cross_section_check(n)
        assert report.exists
        section = report.section
        assert len(section) == h_class_count(n)
        # one element per H-class and closed
        keys = {(left_cups(d), right_cups(d)) for d in section}
        assert len(keys) == len(section)
        members = set(section)
        for a in section:
            for b in section:
                assert mul(a, b) in members


def test_h_unique_n3():
    # brute force: the corank-2 H-classes are singletons, so a section is
    # the 9 corank-2 elements plus one permutation; only the identity
    # keeps the set closed
    elems = list(all_diagrams(3))
    corank2 = [d for d in elems if rank(d) == 1]
    assert len(corank2) == 9
    perms = [d for d in elems if rank(d) == 3]
    closed_choices = []
    for p in perms:
        members = set(corank2) | {p}
        if all(mul(a, b) in members for a in members for b in members):
            closed_choices.append(p)
    assert closed_choices == [identity(3)]


def test_h_nonexistence_n4():
    report = h_cross_section_check(4)
    assert not report.exists
    assert "H-related" in report.certificate
    report5 = h_cross_section_check(5)
    assert not report5.exists and "embeds" in report5.certificate


def test_chain_d_section():
    chain = chain_d_section(3)
    assert [f.rank() for f in chain] == [0, 1, 2, 3]
    for f, g in itertools.product(chain, chain):
        assert f.mul(g) == chain[min(f.rank(), g.rank())]


def test_d_from_is_examples():
    lifted = d_from_is(chain_d_section(2), 4)
    texts = sorted(format_diagram(d) for d in lifted)
    assert "{1,2},{3,4},{1',2'},{3',4'}" in texts  # empty map image
    assert format_diagram(identity(4)) in texts   # full identity image
    ok, msg = verify_d_cross_section(4, lifted)
    assert ok, msg


def test_d_pipeline_all_n():
    for n in range(2, 9):
        section = d_from_is(chain_d_section(n // 2), n)
        ok, msg = verify_d_cross_section(n, section)
        assert ok, (n, msg)
        assert len(section) == n // 2 + 1


def test_d_from_is_errors():
    with pytest.raises(ValueError):
        d_from_is(chain_d_section(2), 6)  # wrong m
    incomplete = chain_d_section(2)[:-1]
    with pytest.raises(ValueError):
        d_from_is(incomplete, 4)


def test_verify_d_cross_section_failures():
    ok, msg = verify_d_cross_section(4, [identity(4)])
    assert not ok and "ranks" in msg


def test_partial_injection_text_round_trip():
    f = PartialInjection(4, {1: 3, 2: 2})
    text = format_partial_injection(f)
    assert parse_partial_injection(text) == f
    section = chain_d_section(2)
    blob = "\n\n".join(format_partial_injection(s) for s in section)
    assert parse_is_section(blob) == section
    with pytest.raises(ValueError):
        parse_partial_injection("1 -> 2")
