"""Core arithmetic for Brauer diagrams.

A diagram on n strands is a perfect matching of the 2n points
{1, ..., n, 1', ..., n'}: n "left" points and n "right" points.
Composition glues the right points of the first diagram to the left
points of the second and traces the resulting paths; closed loops that
live entirely in the glued middle layer are counted separately and do
not belong to the product.

Internally a diagram is a flat involution on 0-based indices: index i
in [0, n) is the left point i+1, index n+i is the right point (i+1)'.
All text I/O is 1-based with apostrophes for right points.
"""
from __future__ import annotations

import itertools
import re
from typing import Iterable, Iterator, NamedTuple, Sequence


class Diagram:
    """A perfect matching on n left and n right points.

    Immutable and hashable.  Equality is equality of n and the matching;
    dead circles produced during composition are never part of identity.
    """

    __slots__ = ("n", "partner", "_hash")

    def __init__(self, n: int, partner: Iterable[int]):
        partner = tuple(partner)
        if n < 1 or len(partner) != 2 * n:
            raise ValueError("partner array must have length 2n")
        for x, p in enumerate(partner):
            if not 0 <= p < 2 * n or p == x or partner[p] != x:
                raise ValueError("partner array is not a fixed-point-free involution")
        self.n = n
        self.partner = partner
        self._hash = hash(partner)

    def __eq__(self, other):
        return (
            isinstance(other, Diagram)
            and self.n == other.n
            and self.partner == other.partner
        )

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Diagram({self.n}, {format_diagram(self)!r})"

    def blocks(self) -> list[tuple[int, int]]:
        """All blocks as 0-based index pairs (x, y) with x < y."""
        return [(x, p) for x, p in enumerate(self.partner) if x < p]


class CompositionResult(NamedTuple):
    product: Diagram
    circles: int


def identity(n: int) -> Diagram:
    return Diagram(n, [n + i for i in range(n)] + list(range(n)))


def compose(a: Diagram, b: Diagram) -> CompositionResult:
    """Compose a with b (a's right points glued to b's left points).

    Returns the product diagram together with the number of dead
    circles closed in the middle layer.
    """
    if a.n != b.n:
        raise ValueError(f"size mismatch: {a.n} != {b.n}")
    n = a.n
    pa, pb = a.partner, b.partner
    partner = [-1] * (2 * n)
    seen_mid = [False] * n  # middle point touched by a traced path

    for start in range(2 * n):
        if partner[start] >= 0:
            continue
        if start < n:
            cur = pa[start]
            from_a = True
        else:
            cur = pb[start]
            from_a = False
        # walk through the middle layer until we exit at an endpoint
        while True:
            if from_a:
                if cur < n:
                    end = cur  # left point of the product
                    break
                m = cur - n
                seen_mid[m] = True
                cur = pb[m]
                from_a = False
            else:
                if cur >= n:
                    end = cur  # right point of the product
                    break
                seen_mid[cur] = True
                cur = pa[n + cur]
                from_a = True
        partner[start] = end
        partner[end] = start

    circles = 0
    for m in range(n):
        if seen_mid[m]:
            continue
        c = m
        while not seen_mid[c]:
            seen_mid[c] = True
            c2 = pb[c]
            seen_mid[c2] = True
            c = pa[n + c2] - n
        circles += 1

    return CompositionResult(Diagram(n, partner), circles)


def mul(a: Diagram, b: Diagram) -> Diagram:
    """Product diagram, discarding the circle count."""
    return compose(a, b).product


def involution(a: Diagram) -> Diagram:
    """Mirror image: swaps the roles of primed and unprimed points."""
    n = a.n
    flip = lambda x: x + n if x < n else x - n
    partner = [0] * (2 * n)
    for x, p in enumerate(a.partner):
        partner[flip(x)] = flip(p)
    return Diagram(n, partner)


def rank(a: Diagram) -> int:
    """Number of lines, i.e. blocks joining a left and a right point."""
    n = a.n
    return sum(1 for x in range(n) if a.partner[x] >= n)


def corank(a: Diagram) -> int:
    return a.n - rank(a)


def idempotent_power(a: Diagram) -> Diagram:
    """The unique idempotent among the powers of a.

    Powers of a are eventually periodic; the cycle they enter contains
    exactly one idempotent.
    """
    seen = {}
    power = a
    k = 1
    while power not in seen:
        seen[power] = k
        power = mul(power, a)
        k += 1
    # power == a^k re-entered the cycle; cycle length divides k - seen[power]
    period = k - seen[power]
    # find the idempotent in the cycle: a^m with m ≡ 0 (mod period), m >= entry
    entry = seen[power]
    m = period
    while m < entry:
        m += period
    result = a
    for _ in range(m - 1):
        result = mul(result, a)
    return result


def stable_rank(a: Diagram) -> int:
    return rank(idempotent_power(a))


# --- permutations ---------------------------------------------------------
#
# Permutations are 0-based words: sigma is the tuple (sigma(0), ..., sigma(n-1)).
# Products are left-to-right, matching diagram composition:
# (sigma * tau)(x) = tau(sigma(x)).


def perm_identity(n: int) -> tuple[int, ...]:
    return tuple(range(n))


def perm_mul(sigma: Sequence[int], tau: Sequence[int]) -> tuple[int, ...]:
    return tuple(tau[sigma[x]] for x in range(len(sigma)))


def perm_inverse(sigma: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(sigma)
    for x, y in enumerate(sigma):
        inv[y] = x
    return tuple(inv)


def perm_from_cycles(n: int, cycles: Iterable[Sequence[int]]) -> tuple[int, ...]:
    """Build a permutation from 1-based cycles, e.g. [(1, 2), (4, 5)]."""
    image = list(range(n))
    for cycle in cycles:
        for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
            image[a - 1] = b - 1
    return tuple(image)


def perm_cycle_notation(sigma: Sequence[int]) -> str:
    """1-based disjoint-cycle string; fixed points omitted; 'id' if trivial."""
    seen = [False] * len(sigma)
    parts = []
    for i in range(len(sigma)):
        if seen[i] or sigma[i] == i:
            seen[i] = True
            continue
        cycle = []
        j = i
        while not seen[j]:
            seen[j] = True
            cycle.append(j + 1)
            j = sigma[j]
        parts.append("(" + " ".join(map(str, cycle)) + ")")
    return "".join(parts) if parts else "id"


def from_permutation(sigma: Sequence[int]) -> Diagram:
    """Embed a permutation as the diagram with lines {i, sigma(i)'}."""
    n = len(sigma)
    partner = [0] * (2 * n)
    for i in range(n):
        partner[i] = n + sigma[i]
        partner[n + sigma[i]] = i
    return Diagram(n, partner)


def conjugate_diagram(a: Diagram, sigma: Sequence[int]) -> Diagram:
    """sigma^{-1} * a * sigma, computed by relabelling both sides by sigma."""
    n = a.n
    if len(sigma) != n:
        raise ValueError(f"size mismatch: {len(sigma)} != {n}")
    partner = [0] * (2 * n)
    relab = list(sigma) + [n + s for s in sigma]
    for x, p in enumerate(a.partner):
        partner[relab[x]] = relab[p]
    return Diagram(n, partner)


# --- partial injections ---------------------------------------------------


class PartialInjection:
    """A partial injective map on {1..m}, the elements of IS_m."""

    __slots__ = ("m", "mapping")

    def __init__(self, m: int, mapping: dict[int, int]):
        if len(set(mapping.values())) != len(mapping):
            raise ValueError("mapping is not injective")
        for k, v in mapping.items():
            if not (1 <= k <= m and 1 <= v <= m):
                raise ValueError(f"point out of range: {k} -> {v}")
        self.m = m
        self.mapping = dict(mapping)

    def __eq__(self, other):
        return (
            isinstance(other, PartialInjection)
            and self.m == other.m
            and self.mapping == other.mapping
        )

    def __hash__(self):
        return hash((self.m, tuple(sorted(self.mapping.items()))))

    def __repr__(self):
        pairs = ", ".join(f"{k}->{v}" for k, v in sorted(self.mapping.items()))
        return f"PartialInjection({self.m}, {{{pairs}}})"

    @property
    def dom(self) -> set[int]:
        return set(self.mapping)

    @property
    def ran(self) -> set[int]:
        return set(self.mapping.values())

    def rank(self) -> int:
        return len(self.mapping)

    def mul(self, other: "PartialInjection") -> "PartialInjection":
        """self followed by other (left-to-right, like diagram composition)."""
        if self.m != other.m:
            raise ValueError("size mismatch")
        composed = {
            k: other.mapping[v]
            for k, v in self.mapping.items()
            if v in other.mapping
        }
        return PartialInjection(self.m, composed)

    @classmethod
    def identity(cls, m: int) -> "PartialInjection":
        return cls(m, {i: i for i in range(1, m + 1)})

    @classmethod
    def empty(cls, m: int) -> "PartialInjection":
        return cls(m, {})


def all_partial_injections(m: int) -> Iterator[PartialInjection]:
    """All elements of IS_m (there are sum_k C(m,k)^2 k! of them)."""
    points = list(range(1, m + 1))
    for k in range(m + 1):
        for dom in itertools.combinations(points, k):
            for ran in itertools.permutations(points, k):
                yield PartialInjection(m, dict(zip(dom, ran)))


def embed_is(sigma: PartialInjection, n: int) -> Diagram:
    """Embed sigma in IS_k into the diagram monoid on n >= 2k strands.

    Point i of IS_k corresponds to the strand pair (2i-1, 2i); strands
    above 2k carry straight lines.
    """
    k = sigma.m
    if n < 2 * k:
        raise ValueError(f"need n >= 2k, got n={n}, k={k}")
    partner = [-1] * (2 * n)

    def link(x, y):
        partner[x] = y
        partner[y] = x

    for i in range(2 * k, n):
        link(i, n + i)
    for i in range(1, k + 1):
        if i in sigma.mapping:
            j = sigma.mapping[i]
            link(2 * i - 1, n + 2 * j - 1)
            link(2 * i - 2, n + 2 * j - 2)
        else:
            link(2 * i - 2, 2 * i - 1)
    for j in range(1, k + 1):
        if j not in sigma.ran:
            link(n + 2 * j - 2, n + 2 * j - 1)
    return Diagram(n, partner)


# --- invariant subsets and restriction ------------------------------------


def is_invariant(a: Diagram, points: Iterable[int]) -> bool:
    """True if no block of a crosses the boundary of the 1-based set X."""
    n = a.n
    inside = set()
    for p in points:
        inside.add(p - 1)
        inside.add(n + p - 1)
    return all((a.partner[x] in inside) == (x in inside) for x in range(2 * n))


def restrict(a: Diagram, points: Iterable[int]) -> Diagram:
    """Restriction of a to an invariant subset X, as a diagram on |X| strands.

    Strands of the result are X in increasing order.
    """
    points = sorted(set(points))
    if not is_invariant(a, points):
        raise ValueError(f"subset {points} is not invariant")
    n, m = a.n, len(points)
    index = {p - 1: i for i, p in enumerate(points)}
    index.update({n + p - 1: m + i for i, p in enumerate(points)})
    partner = [0] * (2 * m)
    for old, new in index.items():
        partner[new] = index[a.partner[old]]
    return Diagram(m, partner)


# --- text format -----------------------------------------------------------

_POINT_RE = re.compile(r"^(\d+)('?)$")


def _parse_point(text: str, n: int) -> int:
    m = _POINT_RE.match(text)
    if not m:
        raise ValueError(f"bad point {text!r}")
    value = int(m.group(1))
    if not 1 <= value <= n:
        raise ValueError(f"point {text!r} out of range 1..{n}")
    return value - 1 + (n if m.group(2) else 0)


def parse_diagram(text: str, n: int | None = None) -> Diagram:
    """Parse the block list format, e.g. "{1,2},{3,1'},{4,2'},{3',4'}".

    If n is not given it is inferred as the largest point label.
    """
    text = re.sub(r"\s+", "", text)
    if not re.fullmatch(r"\{[^{}]*\}(,\{[^{}]*\})*", text):
        raise ValueError(f"malformed diagram text: {text!r}")
    raw = re.findall(r"\{([^{}]*)\}", text)
    pairs = []
    for block in raw:
        parts = block.split(",")
        if len(parts) != 2:
            raise ValueError(f"block {{{block}}} must contain exactly two points")
        pairs.append(parts)
    if n is None:
        n = max(int(_POINT_RE.match(p).group(1)) for block in pairs for p in block
                if _POINT_RE.match(p))
    partner = [-1] * (2 * n)
    for block in pairs:
        x, y = (_parse_point(p, n) for p in block)
        for z in (x, y):
            if partner[z] != -1:
                raise ValueError(f"point {_point_text(z, n)} used twice")
        if x == y:
            raise ValueError(f"block pairs {_point_text(x, n)} with itself")
        partner[x] = y
        partner[y] = x
    if -1 in partner:
        missing = _point_text(partner.index(-1), n)
        raise ValueError(f"point {missing} is unmatched")
    return Diagram(n, partner)


def _point_text(x: int, n: int) -> str:
    return f"{x + 1}" if x < n else f"{x - n + 1}'"


def format_diagram(a: Diagram) -> str:
    """Canonical text: blocks sorted by smaller point, 1..n before 1'..n'."""
    n = a.n
    blocks = sorted(a.blocks())
    return ",".join(
        "{%s,%s}" % (_point_text(x, n), _point_text(y, n)) for x, y in blocks
    )


def render_ascii(a: Diagram) -> str:
    """Chip-style picture: left pins, routed wires, right pins."""
    n = a.n
    left_cups = [(x, y) for x, y in a.blocks() if y < n]
    right_cups = [(x - n, y - n) for x, y in a.blocks() if x >= n]
    lines = [(x, y - n) for x, y in a.blocks() if x < n <= y]

    lwidth = 2 * len(left_cups) + 1
    rwidth = 2 * len(right_cups) + 1
    mwidth = 2 * len(lines) + 3
    grid = [[" "] * (lwidth + mwidth + rwidth) for _ in range(n)]

    def put(r, c, ch):
        old = grid[r][c]
        if {old, ch} == {"-", "|"} or old == "+":
            grid[r][c] = "+"
        elif old in " -":
            grid[r][c] = ch
        # never overwrite corners

    for depth, (x, y) in enumerate(sorted(left_cups)):
        col = lwidth - 2 - 2 * depth
        for c in range(col):
            put(x, c, "-")
            put(y, c, "-")
        put(x, col, ".")
        put(y, col, "'")
        for r in range(x + 1, y):
            put(r, col, "|")
    for depth, (x, y) in enumerate(sorted(right_cups)):
        col = lwidth + mwidth + 1 + 2 * depth
        for c in range(col + 1, lwidth + mwidth + rwidth):
            put(x, c, "-")
            put(y, c, "-")
        put(x, col, ".")
        put(y, col, "'")
        for r in range(x + 1, y):
            put(r, col, "|")
    for k, (x, y) in enumerate(sorted(lines)):
        col = lwidth + 1 + 2 * k
        for c in range(lwidth, col):
            put(x, c, "-")
        for c in range(col + 1, lwidth + mwidth):
            put(y, c, "-")
        if x == y:
            put(x, col, "-")
        else:
            put(min(x, y), col, "." if x < y else ".")
            put(max(x, y), col, "'")
            for r in range(min(x, y) + 1, max(x, y)):
                put(r, col, "|")
        # wires continue through the margins up to the pins
        for c in range(lwidth):
            put(x, c, "-")
        for c in range(lwidth + mwidth, lwidth + mwidth + rwidth):
            put(y, c, "-")

    label = max(2, len(str(n)))
    out = []
    for r in range(n):
        row = "".join(grid[r])
        out.append(f"{r + 1:>{label}} {row} {r + 1}'")
    return "\n".join(out)
