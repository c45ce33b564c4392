"""H-cross-sections (existence and uniqueness) and D-cross-sections.

An H-cross-section picks one element from every H-class and must be
closed under composition; a D-cross-section picks one per D-class,
i.e. one element per rank.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .diagrams import (
    Diagram,
    PartialInjection,
    embed_is,
    identity,
    mul,
    rank,
)
from .green import all_diagrams, left_cups, right_cups


def idempotents(n: int) -> list[Diagram]:
    """All idempotent diagrams on n strands (n small)."""
    return [d for d in all_diagrams(n) if mul(d, d) == d]


def h_class_count(n: int) -> int:
    """Number of H-classes: pairs (left cups, right cups) of equal size."""
    from math import comb
    from .green import double_factorial

    return sum(
        (comb(n, 2 * k) * double_factorial(k)) ** 2 for k in range(n // 2 + 1)
    )


@dataclass
class HSectionReport:
    """Existence answer for H-cross-sections at a given n."""

    n: int
    exists: bool
    section: list[Diagram] | None = None
    certificate: str = ""


def h_cross_section_check(n: int) -> HSectionReport:
    """Decide whether an H-cross-section exists on n strands.

    For n <= 3 the idempotents form one, and it is the only one: any
    H-cross-section contains an idempotent power of each member, and an
    H-class contains at most one idempotent, forcing every member to be
    idempotent.  For n = 4 none exists: the monoid generated by the
    idempotents already contains two distinct H-related elements, yet
    any H-cross-section would have to contain all idempotents and stay
    closed.  For n > 4 the n = 4 obstruction persists, since diagrams
    acting only on four fixed strands (straight lines elsewhere)
    multiply exactly as in the four-strand monoid and H-relatedness is
    preserved by the embedding.
    """
    if n <= 3:
        section = idempotents(n)
        assert len(section) == h_class_count(n)
        return HSectionReport(n, True, section,
                              "the idempotents form the unique H-cross-section")
    pair = _idempotent_closure_h_collision(4)
    a, b = pair
    cert = (
        "no H-cross-section: it would contain every idempotent "
        "(one per H-class of an idempotent, by taking idempotent powers), "
        f"but the idempotents of the 4-strand monoid generate both {a!r} "
        f"and {b!r}, which are distinct and H-related"
    )
    if n > 4:
        cert += (
            "; the same collision embeds on any larger strand count by "
            "adding straight lines"
        )
    return HSectionReport(n, False, None, cert)


def _idempotent_closure_h_collision(n: int) -> tuple[Diagram, Diagram]:
    """Two distinct H-related elements in the idempotent-generated monoid."""
    gens = idempotents(n)
    seen: dict[tuple, dict] = {}
    closure = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                p = mul(x, g)
                if p not in closure:
                    closure.add(p)
                    new.append(p)
        frontier = new
    by_h: dict[tuple, Diagram] = {}
    for d in closure:
        key = (left_cups(d), right_cups(d))
        if key in by_h and by_h[key] != d:
            return by_h[key], d
        by_h[key] = d
    raise AssertionError(f"idempotent closure at n={n} hit no H-collision")


# --- D-cross-sections ------------------------------------------------------


def chain_d_section(m: int) -> list[PartialInjection]:
    """The D-cross-section of IS_m made of the chain of partial identities.

    e_k is the identity on {1..k}; e_j e_k = e_min(j,k), so the set is
    closed, and rank(e_k) = k picks one element per D-class.
    """
    return [
        PartialInjection(m, {i: i for i in range(1, k + 1)}) for k in range(m + 1)
    ]


def d_from_is(gamma: list[PartialInjection], n: int) -> list[Diagram]:
    """Lift a D-cross-section of IS_m to one of the diagram monoid.

    Requires m = n // 2.  A rank-k partial injection embeds as a
    diagram of rank 2k (plus one for the straight leftover strand when
    n is odd), so the lift covers every rank of the right parity, and
    the embedding is a homomorphism, so closure carries over.
    """
    m = n // 2
    if any(s.m != m for s in gamma):
        raise ValueError(f"need a section of IS_{m} for n={n}")
    by_rank = {s.rank(): s for s in gamma}
    if sorted(by_rank) != list(range(m + 1)):
        raise ValueError("need exactly one element of each rank 0..m")
    return [embed_is(by_rank[k], n) for k in range(m + 1)]


def verify_d_cross_section(n: int, section: list[Diagram]) -> tuple[bool, str]:
    """Check one element per rank and closure under composition."""
    ranks = sorted(rank(d) for d in section)
    want = [r for r in range(n + 1) if (n - r) % 2 == 0]
    if ranks != want:
        return False, f"ranks {ranks} != expected {want}"
    members = set(section)
    for a in section:
        for b in section:
            if mul(a, b) not in members:
                return False, f"not closed: {a!r} * {b!r}"
    return True, "OK"


# --- text I/O for partial injections ---------------------------------------


def parse_partial_injection(text: str) -> PartialInjection:
    """Parse the 'dom: m' header plus 'k -> v' lines format."""
    lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("dom:"):
        raise ValueError("missing 'dom: <m>' header")
    m = int(lines[0].split(":", 1)[1])
    mapping = {}
    for ln in lines[1:]:
        k, v = (int(p) for p in ln.split("->"))
        mapping[k] = v
    return PartialInjection(m, mapping)


def format_partial_injection(sigma: PartialInjection) -> str:
    lines = [f"dom: {sigma.m}"]
    lines += [f"{k} -> {v}" for k, v in sorted(sigma.mapping.items())]
    return "\n".join(lines)


def parse_is_section(text: str) -> list[PartialInjection]:
    """Parse several injections separated by blank lines."""
    chunks = [c for c in text.strip().split("\n\n") if c.strip()]
    return [parse_partial_injection(c) for c in chunks]
