"""Simply-laced (ADE) root systems in the negative-definite convention.

Roots have square -2 and adjacent simple roots pair to +1.  Vectors are
integer tuples in the simple-root basis theta_1..theta_n of the ambient
system; node labels follow Bourbaki.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from . import intlin

__all__ = [
    "ADEType",
    "ClassificationError",
    "RootSystem",
    "RootSet",
    "SubRootSystem",
    "build_root_system",
    "cartan_gram",
    "pairing",
    "perp_roots",
    "simple_base",
    "irreducible_components",
    "classify_ade",
    "classify_gram",
    "reflect",
    "invariant_sublattice",
    "is_positive",
    "DEFAULT_MAX_RANK",
]

DEFAULT_MAX_RANK = 24

Vector = tuple


class ClassificationError(ValueError):
    """A Gram matrix or simple system that is not a connected ADE diagram."""

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True, order=True)
class ADEType:
    family: str
    rank: int

    def __post_init__(self):
        f, n = self.family, self.rank
        if f not in ("A", "D", "E"):
            raise ValueError(f"unknown ADE family {f!r}")
        if not isinstance(n, int) or n < 1:
            raise ValueError(f"rank must be a positive integer, got {n!r}")
        if f == "D" and n < 4:
            raise ValueError(f"D_n requires n >= 4, got D{n}")
        if f == "E" and n not in (6, 7, 8):
            raise ValueError(f"E_n requires n in 6..8, got E{n}")

    @classmethod
    def parse(cls, label: str) -> "ADEType":
        label = label.strip()
        return cls(label[:1].upper(), int(label[1:]))

    def __str__(self):
        return f"{self.family}{self.rank}"

    def root_count(self) -> int:
        n = self.rank
        if self.family == "A":
            return n * (n + 1)
        if self.family == "D":
            return 2 * n * (n - 1)
        return {6: 72, 7: 126, 8: 240}[n]


def dynkin_edges(ade: ADEType) -> list[tuple[int, int]]:
    """0-based edges of the Bourbaki-labelled Dynkin diagram."""
    n = ade.rank
    if ade.family == "A":
        return [(i, i + 1) for i in range(n - 1)]
    if ade.family == "D":
        # 1-2-...-(n-1), and n attached to n-2
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    # E: 1-3-4-...-n, and 2 attached to 4
    return [(0, 2)] + [(i, i + 1) for i in range(2, n - 1)] + [(1, 3)]


def cartan_gram(ade: ADEType) -> tuple[tuple[int, ...], ...]:
    """Negated Cartan matrix: -2 on the diagonal, +1 on Dynkin edges."""
    n = ade.rank
    g = [[-2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in dynkin_edges(ade):
        g[i][j] = g[j][i] = 1
    return tuple(tuple(r) for r in g)


def is_positive(v: Sequence) -> bool:
    """First nonzero coefficient is positive."""
    for x in v:
        if x:
            return x > 0
    return False


def _neg(v: Vector) -> Vector:
    return tuple(-x for x in v)


@dataclass(frozen=True)
class RootSystem:
    ade: ADEType
    gram: tuple[tuple[int, ...], ...]
    roots: tuple[Vector, ...]

    @property
    def rank(self) -> int:
        return self.ade.rank

    def simple_roots(self) -> list[Vector]:
        n = self.rank
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]

    def positive_roots(self) -> list[Vector]:
        return [r for r in self.roots if is_positive(r)]

    def pair(self, u, v):
        return intlin.bilinear(u, self.gram, v)

    def as_root_set(self) -> "RootSet":
        return RootSet(self, frozenset(self.roots))

    def whole(self) -> "SubRootSystem":
        """The system itself as a sub-root system of itself."""
        return SubRootSystem(
            ambient=self,
            simple_base=tuple(self.simple_roots()),
            ade=self.ade,
            members=frozenset(self.roots),
        )

    def __repr__(self):
        return f"RootSystem({self.ade}, {len(self.roots)} roots)"


_CACHE: dict[ADEType, RootSystem] = {}


def build_root_system(ade: ADEType | str, max_rank: int = DEFAULT_MAX_RANK) -> RootSystem:
    """All roots of ``ade``, grown level by level from the simple roots.

    Roots are sorted lexicographically on their coefficient vectors.
    """
    if isinstance(ade, str):
        ade = ADEType.parse(ade)
    if ade.rank > max_rank:
        raise ValueError(f"rank {ade.rank} exceeds configured cap {max_rank}")
    if ade in _CACHE:
        return _CACHE[ade]
    gram = cartan_gram(ade)
    n = ade.rank
    simple = [tuple(int(i == j) for j in range(n)) for i in range(n)]
    # simply laced, square -2: for a positive root r != theta_i,
    # r + theta_i is a root iff <r, theta_i> = 1
    found = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                if intlin.bilinear(r, gram, simple[i]) == 1:
                    s = tuple(x + (1 if j == i else 0) for j, x in enumerate(r))
                    if s not in found:
                        found.add(s)
                        nxt.append(s)
        frontier = nxt
    roots = found | {_neg(r) for r in found}
    rs = RootSystem(ade=ade, gram=gram, roots=tuple(sorted(roots)))
    _CACHE[ade] = rs
    return rs


def pairing(u: Sequence, v: Sequence, gram: Sequence[Sequence[int]]):
    """Bilinear form ``u^T gram v`` (no conjugation)."""
    return intlin.bilinear(u, gram, v)


@dataclass(frozen=True)
class RootSet:
    """A negation-closed subset of the roots of ``ambient``."""

    ambient: RootSystem
    members: frozenset

    def __post_init__(self):
        for r in self.members:
            if _neg(r) not in self.members:
                raise ValueError(f"root set not closed under negation at {r}")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(sorted(self.members))

    def __contains__(self, r):
        return tuple(r) in self.members

    def sorted(self) -> list[Vector]:
        return sorted(self.members)


@dataclass(frozen=True)
class SubRootSystem:
    ambient: RootSystem
    simple_base: tuple[Vector, ...]
    ade: ADEType
    members: frozenset = field(repr=False)

    @property
    def rank(self) -> int:
        return len(self.simple_base)

    def as_root_set(self) -> RootSet:
        return RootSet(self.ambient, self.members)

    def gram(self) -> list[list[int]]:
        g = self.ambient.gram
        return [[intlin.bilinear(a, g, b) for b in self.simple_base] for a in self.simple_base]

    def __str__(self):
        return f"{self.ade}@{list(self.simple_base)}"


def _members(source) -> tuple[RootSystem, frozenset]:
    if isinstance(source, RootSystem):
        return source, frozenset(source.roots)
    if isinstance(source, (RootSet, SubRootSystem)):
        return source.ambient, source.members
    raise TypeError(f"expected a RootSystem, RootSet or SubRootSystem, got {type(source).__name__}")


def perp_roots(source, v: Sequence) -> RootSet:
    """Roots of ``source`` annihilated by ``v`` under the ambient form."""
    ambient, members = _members(source)
    if len(v) != ambient.rank:
        raise ValueError(f"dimension mismatch: vector of length {len(v)} in rank {ambient.rank}")
    g = ambient.gram
    # <theta, v> = sum_j (theta^T g)_j v_j; precompute theta^T g once per root
    out = set()
    for r in members:
        if r in out:
            continue
        row = intlin.matvec(g, r)  # gram symmetric
        s = 0
        for a, x in zip(row, v):
            if a and x:
                s = x * a + s
        if not s:
            out.add(r)
            out.add(_neg(r))
    return RootSet(ambient, frozenset(out))


def simple_base(rs) -> list[Vector]:
    """Indecomposable positive members of a negation-closed root set."""
    _, members = _members(rs)
    # descending lexicographic: theta_1 before theta_2 before ...
    pos = sorted((r for r in members if is_positive(r)), reverse=True)
    pos_set = set(pos)
    base = []
    for r in pos:
        decomposable = False
        for a in pos:
            if a == r:
                continue
            b = tuple(x - y for x, y in zip(r, a))
            if b in pos_set:
                decomposable = True
                break
        if not decomposable:
            base.append(r)
    return base


def classify_ade(base: Sequence[Vector], gram: Sequence[Sequence[int]]) -> ADEType:
    """Dynkin type of a connected simple system."""
    g = [[intlin.bilinear(a, gram, b) for b in base] for a in base]
    return classify_gram(g)


def classify_gram(g: Sequence[Sequence[int]]) -> ADEType:
    """Recognise a negated ADE Cartan matrix (up to simultaneous permutation)."""
    n = len(g)
    if n == 0:
        raise ClassificationError("empty", "empty simple system")
    for i in range(n):
        if len(g[i]) != n:
            raise ClassificationError("not-square", "Gram matrix is not square")
        if g[i][i] != -2:
            raise ClassificationError("not-root", f"element {i} has square {g[i][i]}, expected -2")
        for j in range(n):
            if g[i][j] != g[j][i]:
                raise ClassificationError("not-symmetric", "Gram matrix is not symmetric")
            if i != j and g[i][j] not in (0, 1):
                raise ClassificationError(
                    "bad-pairing", f"elements {i},{j} pair to {g[i][j]}, expected 0 or 1"
                )
    adj = [[j for j in range(n) if j != i and g[i][j]] for i in range(n)]
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    if len(seen) != n:
        raise ClassificationError("disconnected", "Dynkin graph is disconnected")
    if sum(len(a) for a in adj) // 2 != n - 1:
        raise ClassificationError("cycle", "Dynkin graph contains a cycle")
    degrees = [len(a) for a in adj]
    if max(degrees, default=0) >= 4:
        raise ClassificationError("high-degree", "Dynkin graph has a vertex of degree >= 4")
    branch = [i for i in range(n) if degrees[i] == 3]
    if not branch:
        return ADEType("A", n)
    if len(branch) > 1:
        raise ClassificationError("two-branch", "Dynkin graph has two branch vertices")
    b = branch[0]
    arms = []
    for start in adj[b]:
        length, prev, cur = 1, b, start
        while True:
            nxt = [w for w in adj[cur] if w != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
            length += 1
        arms.append(length)
    arms.sort()
    if arms[0] == 1 and arms[1] == 1:
        return ADEType("D", n)
    if arms[0] == 1 and arms[1] == 2 and arms[2] in (2, 3, 4):
        return ADEType("E", n)
    raise ClassificationError("bad-arms", f"arm lengths {tuple(arms)} are not of ADE type")


def irreducible_components(rs) -> list[SubRootSystem]:
    """Split a negation-closed root set into irreducible sub-root systems.

    Components are the connected pieces of the Dynkin graph of
    :func:`simple_base`, ordered by their leading simple root in descending
    lexicographic order (so a component at theta_1 precedes one at theta_3).
    """
    ambient, members = _members(rs)
    base = simple_base(rs)
    g = ambient.gram
    n = len(base)
    adj = [[j for j in range(n) if j != i and intlin.bilinear(base[i], g, base[j])]
           for i in range(n)]
    comp_of = [-1] * n
    comps: list[list[int]] = []
    for s in range(n):
        if comp_of[s] >= 0:
            continue
        idx = len(comps)
        comp_of[s] = idx
        stack, block = [s], [s]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if comp_of[w] < 0:
                    comp_of[w] = idx
                    stack.append(w)
                    block.append(w)
        comps.append(sorted(block))
    # A member belongs to the component whose base elements carry its support
    # when written in the base (members are in the Z-span of the base).
    result = []
    for block in comps:
        b = tuple(base[i] for i in block)
        ade = classify_ade(b, g)
        result.append((b, ade))
    sub_members = _assign_members(members, [b for b, _ in result], g)
    out = [
        SubRootSystem(ambient=ambient, simple_base=b, ade=ade, members=frozenset(m))
        for (b, ade), m in zip(result, sub_members)
    ]
    out.sort(key=lambda c: c.simple_base[0], reverse=True)
    return out


def _assign_members(members, bases, g) -> list[set]:
    # A root of the full set lies in exactly one component span.  Decide by
    # pairing: a root of component C pairs to zero with every other component,
    # and is nonzero on at least one element of C (the form is nondegenerate).
    out = [set() for _ in bases]
    for r in members:
        hits = [k for k, b in enumerate(bases)
                if any(intlin.bilinear(r, g, x) for x in b)]
        if len(hits) != 1:
            raise AssertionError(f"root {r} does not lie in exactly one component")
        out[hits[0]].add(r)
    return out


def reflect(theta: Sequence, v: Sequence, gram: Sequence[Sequence[int]]):
    """Weyl reflection in ``theta``: ``v + <v, theta> theta`` (theta^2 = -2)."""
    c = intlin.bilinear(v, gram, theta)
    if not c:
        return tuple(v)
    return tuple(x + c * t if t else x for x, t in zip(v, theta))


def invariant_sublattice(rs, ambient_rank: int | None = None) -> list[Vector]:
    """Saturated Z-basis of the vectors pairing to zero with every member."""
    if isinstance(rs, (RootSystem, RootSet, SubRootSystem)):
        ambient, members = _members(rs)
        n = ambient.rank if ambient_rank is None else ambient_rank
        g = ambient.gram
    else:
        raise TypeError("expected a root set")
    rows = sorted({tuple(intlin.matvec(g, r)) for r in members if is_positive(r)})
    if not rows:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    return [tuple(v) for v in intlin.integer_kernel(rows, n)]


def root_span_rank(rs) -> int:
    _, members = _members(rs)
    return intlin.rank(list(members))
