"""Classification of cross-sections: conjugation, stabilizers, orbits,
enumeration, and isomorphism testing.

Every cross-section stays a cross-section after conjugating all of its
members by a fixed permutation, so the symmetric group acts on the set
of cross-sections and the classification problem reduces to orbits.
The canonical ones form a convenient set of orbit representatives.
"""
from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field

from .diagrams import (
    Diagram,
    conjugate_diagram,
    from_permutation,
    identity,
    mul,
    perm_cycle_notation,
    perm_from_cycles,
    perm_identity,
    perm_inverse,
)
from .green import (
    PartialMatching,
    all_permutations,
    left_cups,
    partial_matchings,
    r_class_count,
    right_cups,
)
from .canonical import (
    BuildConflict,
    CrossSection,
    ParamTable,
    all_param_tables,
    build_canonical,
    frak_A,
    is_canonical,
    verify_cross_section,
)
from math import factorial


def conjugate(cs: CrossSection, sigma) -> CrossSection:
    """Conjugate every member by sigma (a 0-based permutation word)."""
    key_of = left_cups if cs.kind == "R" else right_cups
    elements = {}
    for d in cs:
        image = conjugate_diagram(d, sigma)
        elements[key_of(image)] = image
    return CrossSection(cs.n, elements, cs.kind)


def l_cross_section(cs: CrossSection) -> CrossSection:
    """Mirror an R-kind cross-section into an L-kind one (or back)."""
    from .diagrams import involution

    kind = "L" if cs.kind == "R" else "R"
    key_of = right_cups if kind == "L" else left_cups
    elements = {}
    for d in cs:
        image = involution(d)
        elements[key_of(image)] = image
    return CrossSection(cs.n, elements, kind)


def predicted_stabilizer(n: int) -> list[tuple[int, ...]]:
    """{id, w}: w swaps n-1 with n and each adjacent pair of frak_A."""
    cycles = [(n - 1, n)] + [list(p) for p in frak_A(n)]
    w = perm_from_cycles(n, cycles)
    return [perm_identity(n)] if w == perm_identity(n) else [perm_identity(n), w]


def stabilizer(cs: CrossSection, exhaustive: bool | None = None) -> list[tuple[int, ...]]:
    """All permutations fixing the cross-section setwise under conjugation.

    Searches all n! permutations when exhaustive (the default for
    n <= 6).  For larger canonical sections the search is restricted to
    permutations preserving the trailing-pair structure: a stabilizing
    permutation must send canonical corank-2 members to canonical ones,
    which forces it to permute the pairs {n-1, n}, {n-3, n-2}, ...
    among themselves in place.
    """
    n = cs.n
    if exhaustive is None:
        exhaustive = n <= 6
    if exhaustive:
        candidates = all_permutations(n)
    else:
        if not is_canonical(cs):
            raise ValueError("pruned stabilizer search needs a canonical section")
        candidates = _pair_preserving(n)
    found = []
    for sigma in candidates:
        if all(conjugate_diagram(d, sigma) in cs for d in cs):
            found.append(sigma)
    return found


def _pair_preserving(n: int):
    """Permutations acting on the pairs {n-1,n}, {n-3,n-2}, ... in place.

    Each pair is either fixed pointwise or swapped; any leftover low
    point is fixed.  These are the only permutations that can stabilize
    a canonical cross-section: conjugation must fix the trailing-cup
    key ((n-1, n),), hence the set {n-1, n}, and then by descending
    induction every deeper trailing pair.
    """
    pairs = [(n - 2 * t - 1, n - 2 * t) for t in range((n + 1) // 2 - 1, -1, -1)
             if n - 2 * t - 1 >= 1]
    for flips in itertools.product((False, True), repeat=len(pairs)):
        cycles = [p for p, f in zip(pairs, flips) if f]
        yield perm_from_cycles(n, cycles)


def enumerate_canonical(n: int) -> list[CrossSection]:
    """All canonical cross-sections, by exhausting parameter tables.

    For n <= 3 the section is unique and parameter-free.
    """
    if n <= 3:
        return [build_canonical(n)]
    sections = []
    for pt in all_param_tables(n):
        try:
            cs = build_canonical(n, pt)
        except BuildConflict:
            continue
        if verify_cross_section(n, cs, "R", full=False).ok:
            sections.append(cs)
    return sections


def canonical_count(n: int) -> int:
    """Predicted number of canonical cross-sections."""
    if n <= 3:
        return 1
    if n == 4:
        return 2
    if n == 5:
        return 8
    if n == 6:
        return 16
    return 2 ** (n // 2)


def cross_section_count(n: int) -> int:
    """Predicted total number of cross-sections of each kind."""
    if n <= 2:
        return 1
    table = {3: 3, 4: 12, 5: 240, 6: 1440}
    return table.get(n, factorial(n))


@dataclass
class OrbitReport:
    """Orbit decomposition of the cross-sections under conjugation."""

    n: int
    kind: str
    total: int
    orbits: list[dict] = field(default_factory=list)
    # each orbit dict: representative (text), size, stabilizer_order,
    # stabilizer (cycle strings)

    def to_json(self) -> str:
        return json.dumps(
            {
                "n": self.n,
                "kind": self.kind,
                "total": self.total,
                "orbit_count": len(self.orbits),
                "orbits": self.orbits,
            },
            indent=2,
        )


def classify(n: int) -> OrbitReport:
    """Orbits of cross-sections under conjugation, from canonical seeds.

    Every cross-section is conjugate to a canonical one, so expanding
    the orbit of each canonical section covers everything; orbit sizes
    follow from the orbit-stabilizer count.
    """
    seeds = enumerate_canonical(n)
    seen_sections: set[bytes] = set()
    report = OrbitReport(n, "R", 0)
    for cs in seeds:
        if cs.sort_key() in seen_sections:
            continue
        orbit = _orbit_of(cs)
        seen_sections.update(orbit)
        stab = stabilizer(cs, exhaustive=(n <= 6))
        report.orbits.append(
            {
                "representative": cs.to_text(),
                "size": len(orbit),
                "stabilizer_order": len(stab),
                "stabilizer": [perm_cycle_notation(s) for s in stab],
            }
        )
    report.total = sum(o["size"] for o in report.orbits)
    return report


def _orbit_of(cs: CrossSection) -> set[bytes]:
    orbit = set()
    for sigma in all_permutations(cs.n):
        orbit.add(conjugate(cs, sigma).sort_key())
    return orbit


def enumerate_all(n: int) -> list[CrossSection]:
    """Every R-kind cross-section, via orbits of the canonical ones.

    Feasible up to about n = 7 (n! conjugates per canonical seed).
    """
    out: dict[bytes, CrossSection] = {}
    for cs in enumerate_canonical(n):
        for sigma in all_permutations(n):
            image = conjugate(cs, sigma)
            out.setdefault(image.sort_key(), image)
    return list(out.values())


def enumerate_all_backtracking(n: int) -> list[CrossSection]:
    """Every R-kind cross-section by direct search; independent of the
    canonical construction, so usable as an oracle for small n.

    Picks one element per R-class, corank-0 first (forced to be the
    identity: the corank-0 member is a group element and an idempotent
    power of it lies in the section, which pins it to the identity),
    pruning partial choices that already violate closure.
    """
    from .green import all_diagrams

    keys = sorted(partial_matchings(n), key=len)
    assert keys[0] == ()
    by_key: dict[PartialMatching, list[Diagram]] = {k: [] for k in keys}
    for d in all_diagrams(n):
        by_key[left_cups(d)].append(d)

    results = []
    chosen: dict[PartialMatching, Diagram] = {(): identity(n)}

    def closed_so_far(new: Diagram) -> bool:
        for other in chosen.values():
            for x, y in ((new, other), (other, new), (new, new)):
                prod = mul(x, y)
                key = left_cups(prod)
                if key in chosen and chosen[key] != prod:
                    return False
        return True

    def extend(idx: int):
        if idx == len(keys):
            results.append(CrossSection(n, dict(chosen), "R"))
            return
        key = keys[idx]
        for cand in by_key[key]:
            if closed_so_far(cand):
                chosen[key] = cand
                extend(idx + 1)
                del chosen[key]

    extend(1)
    return [cs for cs in results if verify_cross_section(n, cs, "R", full=True).ok]


# --- isomorphism -----------------------------------------------------------


@dataclass
class IsoResult:
    found: bool
    mapping: dict[Diagram, Diagram] | None = None

    def to_json(self) -> str:
        from .diagrams import format_diagram

        data = {"found": self.found}
        if self.mapping is not None:
            data["mapping"] = {
                format_diagram(a): format_diagram(b)
                for a, b in sorted(
                    self.mapping.items(), key=lambda kv: kv[0].partner
                )
            }
        return json.dumps(data, indent=2)


def _profiles(cs: CrossSection) -> dict[Diagram, tuple]:
    """Abstract invariants of each member: power behaviour, ideal sizes.

    These depend only on the multiplication table, so any isomorphism
    must match them; diagram rank is deliberately not used, because for
    small n an isomorphism need not preserve it.
    """
    members = list(cs)
    left_ideal = {d: set() for d in members}
    right_ideal = {d: set() for d in members}
    for x in members:
        for y in members:
            p = mul(x, y)
            right_ideal[x].add(p)
            left_ideal[y].add(p)
    profiles = {}
    for d in members:
        powers = []
        seen = {}
        p = d
        while p not in seen:
            seen[p] = len(powers)
            powers.append(p)
            p = mul(p, d)
        index = seen[p]
        period = len(powers) - index
        profiles[d] = (
            index,
            period,
            mul(d, d) == d,
            len(right_ideal[d]),
            len(left_ideal[d]),
        )
    return profiles


def find_isomorphism(a: CrossSection, b: CrossSection) -> IsoResult:
    """Search for a monoid isomorphism between two cross-sections.

    The corank-2 members of a generate everything above corank 0, so an
    isomorphism is determined by where they go.  Their images are not
    assumed to have corank 2: candidates are filtered only by abstract
    invariants (power index and period, idempotency, principal ideal
    sizes), the search backtracks with pairwise-product consistency,
    and a complete assignment is accepted only if the induced map is a
    bijection respecting the full multiplication table.  An exhausted
    search therefore certifies non-isomorphism.
    """
    if a.n != b.n or len(a) != len(b):
        return IsoResult(False)
    gens_a = a.stratum(1)
    prof_a = _profiles(a)
    prof_b = _profiles(b)
    if sorted(prof_a.values()) != sorted(prof_b.values()):
        return IsoResult(False)

    inv_b: dict[tuple, list[Diagram]] = {}
    for g, prof in prof_b.items():
        inv_b.setdefault(prof, []).append(g)
    _invariants = lambda cs, g: (prof_a if cs is a else prof_b)[g]

    assign: dict[Diagram, Diagram] = {}
    used: set[Diagram] = set()
    # partial product map: every product of assigned generators must be
    # mapped consistently and injectively, which prunes hard because
    # distinct generator pairs often share a product
    pmap: dict[Diagram, Diagram] = {}
    pmap_inv: dict[Diagram, Diagram] = {}

    def try_products(g: Diagram, h: Diagram):
        """Record the products of (g, h) with all assigned pairs.

        Returns the list of newly recorded product pairs, or None on a
        conflict (in which case nothing new is left behind).
        """
        added = []
        for g2, h2 in list(assign.items()) + [(g, h)]:
            for x, y, u, v in ((g, g2, h, h2), (g2, g, h2, h)):
                pa = mul(x, y)
                pb = mul(u, v)
                old = pmap.get(pa)
                if old is None:
                    if pb in pmap_inv:
                        break
                    pmap[pa] = pb
                    pmap_inv[pb] = pa
                    added.append(pa)
                elif old != pb:
                    break
            else:
                continue
            for pa in added:
                del pmap_inv[pmap.pop(pa)]
            return None
        return added

    def extend(idx: int):
        if idx == len(gens_a):
            return _extend_to_all(a, b, assign)
        g = gens_a[idx]
        for h in inv_b[_invariants(a, g)]:
            if h in used:
                continue
            added = try_products(g, h)
            if added is None:
                continue
            assign[g] = h
            used.add(h)
            mapping = extend(idx + 1)
            if mapping is not None:
                return mapping
            del assign[g]
            used.discard(h)
            for pa in added:
                del pmap_inv[pmap.pop(pa)]
        return None

    mapping = extend(0)
    if mapping is None:
        return IsoResult(False)
    return IsoResult(True, mapping)


def _extend_to_all(a: CrossSection, b: CrossSection, gen_map):
    """Grow a generator bijection to a full map by products; verify it."""
    mapping: dict[Diagram, Diagram] = {identity(a.n): identity(b.n)}
    mapping.update(gen_map)
    frontier = list(mapping)
    gens = list(gen_map)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                px = mul(x, g)
                py = mul(mapping[x], gen_map[g])
                if px in mapping:
                    if mapping[px] != py:
                        return None
                else:
                    mapping[px] = py
                    new.append(px)
        frontier = new
    if len(mapping) != len(a):
        return None
    if len(set(mapping.values())) != len(mapping):
        return None
    members_a = list(mapping)
    for x in members_a:
        for y in members_a:
            if mapping[mul(x, y)] != mul(mapping[x], mapping[y]):
                return None
    return mapping
