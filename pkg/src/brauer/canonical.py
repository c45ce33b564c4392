"""Canonical R-cross-sections: parameter tables, generators, construction.

A cross-section picks one diagram from every R-class (keyed by left
cups) and is closed under composition.  A canonical one additionally has
all its corank-2k elements carry the fixed trailing right cups
{(n-2k+1)', (n-2k+2)'}, ..., {(n-1)', n'}.

Such a cross-section is determined by its corank-2 elements: for every
pair i < j there is a unique corank-2 member with left cup {i, j}.  Its
shape is forced except for a chain of binary "tail" orientations, one
per shifted tail block; those orientations form the parameter table.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Sequence

from .diagrams import Diagram, compose, format_diagram, identity, mul, parse_diagram
from .green import (
    PartialMatching,
    left_cups,
    partial_matchings,
    r_class_count_of_corank,
    right_cups,
)


class BuildConflict(ValueError):
    """Raised when a parameter table does not generate a cross-section."""


def frak_A(n: int) -> tuple[tuple[int, int], ...]:
    """The adjacent pairs (n-3, n-2), (n-5, n-4), ... with positive entries."""
    pairs = []
    t = 1
    while n - 2 * t - 1 >= 1:
        pairs.append((n - 2 * t - 1, n - 2 * t))
        t += 1
    return tuple(pairs)


def param_slots(n: int) -> list[tuple[int, int, int]]:
    """All tail slots (i, j, l): 1 <= i < j < n-1, 1 <= l <= (n-j)//2."""
    return [
        (i, j, l)
        for j in range(2, n - 1)
        for i in range(1, j)
        for l in range(1, (n - j) // 2 + 1)
    ]


class ParamTable:
    """Binary tail orientations for the corank-2 generators.

    entries[(i, j, l)] is False for the straight orientation (the tail
    block {n-2l+1, n-2l+2} joins {(n-2l-1)', (n-2l)'} without a twist)
    and True for the twisted one.  The slot set is exactly param_slots(n);
    looking up a nonexistent slot is an error.
    """

    def __init__(self, n: int, entries: Mapping[tuple[int, int, int], bool]):
        slots = param_slots(n)
        if set(entries) != set(slots):
            extra = set(entries) - set(slots)
            missing = set(slots) - set(entries)
            raise ValueError(
                f"bad slot set for n={n}: extra={sorted(extra)}, missing={sorted(missing)}"
            )
        self.n = n
        self.entries = {slot: bool(entries[slot]) for slot in slots}

    def __eq__(self, other):
        return (
            isinstance(other, ParamTable)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.n, tuple(sorted(self.entries.items()))))

    def __repr__(self):
        return f"ParamTable({self.n}, {self.bits()!r})"

    def flipped(self, i: int, j: int, l: int) -> bool:
        return self.entries[(i, j, l)]

    def bits(self) -> str:
        return "".join("1" if self.entries[s] else "0" for s in param_slots(self.n))

    @classmethod
    def from_bits(cls, n: int, bits: str) -> "ParamTable":
        slots = param_slots(n)
        if len(bits) != len(slots):
            raise ValueError(f"expected {len(slots)} bits for n={n}, got {len(bits)}")
        return cls(n, {s: b == "1" for s, b in zip(slots, bits)})

    @classmethod
    def regular(cls, n: int) -> "ParamTable":
        return cls(n, {s: False for s in param_slots(n)})

    @classmethod
    def alternating(cls, n: int) -> "ParamTable":
        """Twisted on every slot except the adjacent pairs of frak_A."""
        in_a = set(frak_A(n))
        return cls(
            n, {(i, j, l): (i, j) not in in_a for (i, j, l) in param_slots(n)}
        )

    @classmethod
    def from_xy(cls, n: int, x: Sequence[bool], y: Sequence[bool]) -> "ParamTable":
        """Table with value x_l on frak_A slots and y_l elsewhere.

        Requires x_l XOR x_{l+1} == y_l XOR y_{l+1} wherever all four exist.
        """
        if len(x) != max(0, (n - 2) // 2) or len(y) != max(0, (n - 3) // 2):
            raise ValueError(
                f"need {(n - 2) // 2} x values and {(n - 3) // 2} y values for n={n}"
            )
        for l in range(min(len(x), len(y)) - 1):
            if (x[l] ^ x[l + 1]) != (y[l] ^ y[l + 1]):
                raise ValueError(f"x/y compatibility fails between levels {l+1},{l+2}")
        in_a = set(frak_A(n))
        return cls(
            n,
            {
                (i, j, l): (x[l - 1] if (i, j) in in_a else y[l - 1])
                for (i, j, l) in param_slots(n)
            },
        )

    def to_text(self) -> str:
        return "\n".join(
            f"({i},{j},{l})={1 if v else 0}" for (i, j, l), v in sorted(self.entries.items())
        )

    @classmethod
    def from_text(cls, n: int, text: str) -> "ParamTable":
        """Parse either 'x=<bits> y=<bits>' or explicit '(i,j,l)=0|1' lines."""
        stripped = text.strip()
        if stripped.startswith("x="):
            parts = dict(tok.split("=", 1) for tok in stripped.split())
            x = [c == "1" for c in parts.get("x", "")]
            y = [c == "1" for c in parts.get("y", "")]
            return cls.from_xy(n, x, y)
        entries = {}
        for line in stripped.splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            lhs, rhs = line.split("=")
            i, j, l = (int(p) for p in lhs.strip().strip("()").split(","))
            entries[(i, j, l)] = rhs.strip() == "1"
        return cls(n, entries)


def all_param_tables(n: int) -> Iterator[ParamTable]:
    """All 2^#slots tables, in bit order."""
    slots = param_slots(n)
    for values in itertools.product((False, True), repeat=len(slots)):
        yield ParamTable(n, dict(zip(slots, values)))


def random_xy_table(n: int, rng: random.Random) -> ParamTable:
    """A uniformly random valid x/y table."""
    lx, ly = max(0, (n - 2) // 2), max(0, (n - 3) // 2)
    x = [rng.random() < 0.5 for _ in range(lx)]
    # the compatibility law fixes y's increments to x's increments
    y = [rng.random() < 0.5]
    for l in range(1, ly):
        y.append(y[-1] ^ x[l - 1] ^ x[l] if l < lx else rng.random() < 0.5)
    return ParamTable.from_xy(n, x, y[:ly] if ly else [])


# --- generators ------------------------------------------------------------


def beta(n: int, i: int) -> Diagram:
    """The corank-2i idempotent with i trailing adjacent cups on both sides."""
    if not 0 <= i <= n // 2:
        raise ValueError(f"need 0 <= i <= {n // 2}, got {i}")
    partner = [-1] * (2 * n)
    for j in range(n - 2 * i):
        partner[j] = n + j
        partner[n + j] = j
    for j in range(n - 2 * i, n, 2):
        partner[j] = j + 1
        partner[j + 1] = j
        partner[n + j] = n + j + 1
        partner[n + j + 1] = n + j
    return Diagram(n, partner)


def alpha(n: int, i: int, j: int, params: ParamTable | None = None) -> Diagram:
    """The corank-2 generator with left cup {i, j} and right cup {(n-1)', n'}.

    For j <= n-2 the tail orientations are read from params; for
    j in {n-1, n} the element is the forced idempotent and params is
    not consulted.
    """
    if not 1 <= i < j <= n:
        raise ValueError(f"need 1 <= i < j <= n, got ({i}, {j})")
    partner = [-1] * (2 * n)

    def link(x, y):
        partner[x] = y
        partner[y] = x

    def line(s, t):  # 1-based: s joined to t'
        link(s - 1, n + t - 1)

    link(i - 1, j - 1)              # left cup {i, j}
    link(2 * n - 2, 2 * n - 1)      # right cup {(n-1)', n'}

    if j >= n - 1:
        for s in range(1, n - 1):
            if s != i:
                line(s, s)
        if (i, j) != (n - 1, n):
            jbar = (n - 1) + n - j   # the other one of {n-1, n}
            line(jbar, i)
        return Diagram(n, partner)

    if params is None:
        raise ValueError(f"alpha({n},{i},{j}) needs a parameter table")
    if params.n != n:
        raise ValueError(f"parameter table is for n={params.n}, not {n}")

    if (n - j) % 2 == 0:
        tail_count = (n - j) // 2
        for s in range(1, j - 1):
            if s != i:
                line(s, s)
        if i < j - 1:
            line(j - 1, i)
    else:
        tail_count = (n - j - 1) // 2
        for s in range(1, j):
            if s != i:
                line(s, s)
        line(j + 1, i)

    for l in range(1, tail_count + 1):
        if params.flipped(i, j, l):
            line(n - 2 * l + 2, n - 2 * l - 1)
            line(n - 2 * l + 1, n - 2 * l)
        else:
            line(n - 2 * l + 2, n - 2 * l)
            line(n - 2 * l + 1, n - 2 * l - 1)

    return Diagram(n, partner)


def tail_value(a: Diagram, l: int) -> bool:
    """Read tail orientation l off a corank-2 generator (False=straight)."""
    n = a.n
    p = a.partner[n - 2 * l + 1]  # partner of left point n-2l+2
    if p == 2 * n - 2 * l - 1:    # (n-2l)'
        return False
    if p == 2 * n - 2 * l - 2:    # (n-2l-1)'
        return True
    raise ValueError(f"diagram has no tail block at level {l}")


# --- cross-sections --------------------------------------------------------


class CrossSection:
    """One diagram per R-class (or L-class), closed under composition.

    elements maps the class key (left cups for kind 'R', right cups for
    kind 'L') to the chosen diagram.
    """

    def __init__(self, n: int, elements: Mapping[PartialMatching, Diagram],
                 kind: str = "R"):
        if kind not in ("R", "L"):
            raise ValueError(f"kind must be 'R' or 'L', got {kind!r}")
        self.n = n
        self.kind = kind
        self.elements = dict(elements)
        self._frozen = frozenset(self.elements.values())

    def __len__(self):
        return len(self.elements)

    def __iter__(self) -> Iterator[Diagram]:
        return iter(self.elements.values())

    def __contains__(self, a: Diagram) -> bool:
        return a in self._frozen

    def __eq__(self, other):
        return (
            isinstance(other, CrossSection)
            and self.n == other.n
            and self.kind == other.kind
            and self._frozen == other._frozen
        )

    def __hash__(self):
        return hash((self.n, self.kind, self._frozen))

    def __repr__(self):
        return f"<CrossSection kind={self.kind} n={self.n} size={len(self)}>"

    def key_of(self, a: Diagram) -> PartialMatching:
        return left_cups(a) if self.kind == "R" else right_cups(a)

    def get(self, key: PartialMatching) -> Diagram:
        return self.elements[key]

    def stratum(self, k: int) -> list[Diagram]:
        """All members of corank 2k, sorted by class key."""
        return [
            self.elements[key]
            for key in sorted(key for key in self.elements if len(key) == k)
        ]

    def generators(self) -> dict[tuple[int, int], Diagram]:
        """The corank-2 members, keyed by their left cup (for kind 'R')."""
        return {key[0]: d for key, d in self.elements.items() if len(key) == 1}

    def sort_key(self) -> bytes:
        """Canonical serialized identity, used for deduplication."""
        return b"|".join(sorted(bytes(d.partner) for d in self._frozen))

    def to_text(self) -> str:
        head = f"n={self.n} kind={self.kind}"
        body = [format_diagram(self.elements[key]) for key in sorted(self.elements)]
        return "\n".join([head] + body)

    @classmethod
    def from_text(cls, text: str) -> "CrossSection":
        lines = [ln.strip() for ln in text.strip().splitlines() if ln.strip()]
        if not lines or not lines[0].startswith("n="):
            raise ValueError("missing 'n=<N> kind=<R|L>' header")
        fields = dict(tok.split("=", 1) for tok in lines[0].split())
        n = int(fields["n"])
        kind = fields.get("kind", "R")
        elements = {}
        for ln in lines[1:]:
            d = parse_diagram(ln, n)
            key = left_cups(d) if kind == "R" else right_cups(d)
            if key in elements:
                raise ValueError(f"two elements share the class key {key}")
            elements[key] = d
        return cls(n, elements, kind)


def gamma_stratum(n: int, params: ParamTable | None, k: int) -> list[Diagram]:
    """The generators usable at depth k: alpha(i, j) with j <= n - 2(k-1)."""
    return [
        alpha(n, i, j, params)
        for j in range(2, n - 2 * (k - 1) + 1)
        for i in range(1, j)
    ]


def build_canonical(n: int, params: ParamTable | None = None) -> CrossSection:
    """Generate the canonical cross-section determined by a parameter table.

    Strata are built as Lambda_k = Lambda_{k-1} * Gamma_k, deduplicated
    by left-cup key.  Raises BuildConflict if two products with the same
    key disagree or a stratum has the wrong size, which signals an
    invalid table.  (Surviving the build does not by itself certify a
    cross-section; see verify_cross_section.)
    """
    if n <= 3:
        params = None if n <= 3 else params
    elif params is None:
        raise ValueError(f"a parameter table is required for n={n}")
    elements: dict[PartialMatching, Diagram] = {(): identity(n)}
    layer = [identity(n)]
    for k in range(1, n // 2 + 1):
        gamma = gamma_stratum(n, params, k)
        new: dict[PartialMatching, Diagram] = {}
        for a in layer:
            for g in gamma:
                prod = mul(a, g)
                key = left_cups(prod)
                old = new.get(key)
                if old is None:
                    new[key] = prod
                elif old != prod:
                    raise BuildConflict(
                        f"stratum {k}: key {key} reached by two different elements"
                    )
        expected = r_class_count_of_corank(n, 2 * k)
        if len(new) != expected:
            raise BuildConflict(
                f"stratum {k}: got {len(new)} classes, expected {expected}"
            )
        elements.update(new)
        layer = list(new.values())
    return CrossSection(n, elements, "R")


@dataclass
class VerificationReport:
    """Outcome of a cross-section check; empty report means success."""

    n: int
    kind: str
    missing_keys: list[PartialMatching] = field(default_factory=list)
    duplicate_keys: list[PartialMatching] = field(default_factory=list)
    closure_violations: list[tuple[Diagram, Diagram]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not (self.missing_keys or self.duplicate_keys or self.closure_violations)

    def summary(self) -> str:
        if self.ok:
            return f"OK: {self.kind}-cross-section of B_{self.n}"
        return (
            f"FAIL: missing={len(self.missing_keys)} "
            f"duplicated={len(self.duplicate_keys)} "
            f"closure_violations={len(self.closure_violations)}"
        )


def verify_cross_section(
    n: int,
    diagrams: Iterable[Diagram],
    kind: str = "R",
    full: bool = True,
    max_violations: int = 10,
) -> VerificationReport:
    """Check that the given set picks one element per class and is closed.

    full=True checks all |S|^2 products.  full=False only checks closure
    under the corank-2 members, which is equivalent whenever the set is
    generated by them (true for anything build_canonical produced, by
    construction), but is not a certificate for arbitrary input.
    """
    report = VerificationReport(n, kind)
    key_of = left_cups if kind == "R" else right_cups
    elements: dict[PartialMatching, Diagram] = {}
    members = set()
    for d in diagrams:
        key = key_of(d)
        if key in elements and elements[key] != d:
            report.duplicate_keys.append(key)
        elements[key] = d
        members.add(d)
    for key in partial_matchings(n):
        if key not in elements:
            report.missing_keys.append(key)

    pool = list(members)
    rights = pool if full else [d for d in pool if len(key_of(d)) == 1]
    for a in pool:
        for b in rights:
            prod = mul(a, b)
            if prod not in members:
                report.closure_violations.append((a, b))
                if len(report.closure_violations) >= max_violations:
                    return report
    return report


def is_canonical(cs: CrossSection) -> bool:
    """True if every corank-2k member carries the trailing right cups."""
    if cs.kind != "R":
        raise ValueError("canonical form is defined for R-kind sections")
    n = cs.n
    for key, d in cs.elements.items():
        k = len(key)
        need = tuple((n - 2 * t + 1, n - 2 * t + 2) for t in range(k, 0, -1))
        if right_cups(d) != need:
            return False
    return True


def extract_params(cs: CrossSection) -> ParamTable:
    """Read the parameter table back off a canonical cross-section."""
    if not is_canonical(cs):
        raise ValueError("parameters are only defined for canonical sections")
    n = cs.n
    gens = cs.generators()
    entries = {}
    for (i, j, l) in param_slots(n):
        entries[(i, j, l)] = tail_value(gens[(i, j)], l)
    return ParamTable(n, entries)


def phi_recursion(cs: CrossSection) -> CrossSection:
    """Project a canonical cross-section of B_n down to one of B_{n-2}.

    Left-multiplies every member by the corank-2 idempotent with cup
    {n-1, n} and restricts to the first n-2 strands.
    """
    n = cs.n
    if n <= 2:
        raise ValueError("need n > 2")
    pin = cs.get(((n - 1, n),))
    window = range(1, n - 1)
    elements: dict[PartialMatching, Diagram] = {}
    from .diagrams import restrict

    for d in cs:
        image = restrict(mul(pin, d), window)
        elements[left_cups(image)] = image
    return CrossSection(n - 2, elements, "R")


@dataclass
class PresentationReport:
    """Checked relations of the generator presentation."""

    absorption_violations: list[tuple[tuple[int, int], tuple[int, int]]]
    fiber_violations: list[PartialMatching]
    corank4_relations: list[tuple[tuple, tuple]]

    @property
    def ok(self) -> bool:
        return not (self.absorption_violations or self.fiber_violations)


def check_presentation(cs: CrossSection) -> PresentationReport:
    """Verify the defining relations on the corank-2 generators.

    (a) right multiplication by any generator with cup {i, n-1} or
        {i, n} is absorbed; (b) every corank-4 member factors in exactly
        two ways over Gamma_1 x Gamma_2, giving one relation pair each.
    """
    n = cs.n
    gens = cs.generators()
    absorbing = [(i, j) for (i, j) in gens if j >= n - 1]
    absorption = [
        (st, ij)
        for st in gens
        for ij in absorbing
        if mul(gens[st], gens[ij]) != gens[st]
    ]

    gamma2 = [(i, j) for (i, j) in gens if j <= n - 2]
    factorizations: dict[PartialMatching, list[tuple]] = {}
    for st in gens:
        for ij in gamma2:
            prod = mul(gens[st], gens[ij])
            key = left_cups(prod)
            if len(key) != 2 or prod != cs.elements.get(key):
                continue
            factorizations.setdefault(key, []).append((st, ij))
    fiber_violations = []
    relations = []
    for key in sorted(k for k in cs.elements if len(k) == 2):
        pairs = factorizations.get(key, [])
        if len(pairs) != 2:
            fiber_violations.append(key)
        else:
            relations.append(tuple(pairs))
    return PresentationReport(absorption, fiber_violations, relations)


def mult_map_fiber(cs: CrossSection, a: Diagram) -> int:
    """Count tuples in Gamma_1 x ... x Gamma_k multiplying to a (corank 2k)."""
    key = cs.key_of(a)
    if cs.elements.get(key) != a:
        raise ValueError("element does not belong to the cross-section")
    k = len(key)
    gens = cs.generators()
    if k == 0:
        return 1
    partial = [identity(cs.n)]
    for depth in range(1, k + 1):
        gamma = [gens[(i, j)] for (i, j) in gens if j <= cs.n - 2 * (depth - 1)]
        partial = [mul(p, g) for p in partial for g in gamma]
        # discard branches that can no longer reach a's left cups
        target = set(map(tuple, key))
        partial = [p for p in partial if set(map(tuple, left_cups(p))) <= target]
    return sum(1 for p in partial if p == a)
