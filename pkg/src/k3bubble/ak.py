"""The A_k branch-point model and its collision tree.

Branches ``b_0..b_k`` are the roots in ``z`` of ``xy = prod_j (z - b_j(t))``.
The theta-basis curve ``sum a_j theta_j`` corresponds to branches
``b = sum a_j (e_j - e_{j+1})``; branch indices are 0-based, theta indices
1-based (so theta_j joins branches j-1 and j).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exact import Poly
from .pbt import FamilyInput, PBTNode, PBTree, build_pbt
from .rootsys import ADEType, RootSystem, build_root_system

__all__ = [
    "BranchError",
    "BranchConfig",
    "DBSNode",
    "VersalCoefficients",
    "EquivalenceResult",
    "to_branches",
    "from_branches",
    "family_from_branches",
    "symmetrize",
    "build_dbs_tree",
    "check_equivalence",
    "root_indices",
    "random_branch_config",
    "run_random_suite",
]


class BranchError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code


@dataclass(frozen=True)
class BranchConfig:
    """``k + 1`` branch functions summing to zero."""

    branches: tuple[Poly, ...]

    def __post_init__(self):
        bs = tuple(Poly.coerce(b) for b in self.branches)
        object.__setattr__(self, "branches", bs)
        if len(bs) < 2:
            raise BranchError("too-few-branches", "need at least two branches")
        total = Poly()
        for b in bs:
            total = total + b
        if not total.is_zero():
            raise BranchError("nonzero-sum", f"branches must sum to zero, sum is {total}")

    @property
    def k(self) -> int:
        return len(self.branches) - 1

    @classmethod
    def recentered(cls, branches: Sequence) -> "BranchConfig":
        """Subtract the mean so the branches sum to zero."""
        bs = [Poly.coerce(b) for b in branches]
        mean = Poly()
        for b in bs:
            mean = mean + b
        mean = mean / len(bs)
        return cls(tuple(b - mean for b in bs))

    def validate(self) -> "BranchConfig":
        """Check that all branches vanish at 0 and are pairwise distinct."""
        for j, b in enumerate(self.branches):
            if b.coeff(0):
                raise BranchError("no-degeneration", f"branch {j} does not vanish at t=0")
        for j in range(len(self.branches)):
            for l in range(j + 1, len(self.branches)):
                if self.branches[j] == self.branches[l]:
                    raise BranchError("coincident-branches", f"branches {j} and {l} coincide")
        return self


@dataclass(frozen=True)
class VersalCoefficients:
    alphas: tuple[Poly, ...]

    def polynomial_in_z(self) -> tuple[Poly, ...]:
        """Coefficients of ``z^{k+1} + alpha_1 z^k + ... + alpha_{k+1}``, low degree first."""
        return tuple(reversed(self.alphas)) + (Poly.const(1),)


def _check_ak(system: RootSystem):
    if system.ade.family != "A":
        raise BranchError("not-type-a", f"branch model requires an A_k system, got {system.ade}")


def to_branches(zeta: Sequence[Poly], system: RootSystem | None = None) -> BranchConfig:
    """theta-coordinates ``a_1..a_k`` to branches ``(a_1, a_2 - a_1, ..., -a_k)``."""
    if system is not None:
        _check_ak(system)
        if len(zeta) != system.rank:
            raise BranchError("dimension", "curve length does not match the system rank")
    a = [Poly.coerce(z) for z in zeta]
    if not a:
        raise BranchError("dimension", "empty curve")
    b = [a[0]] + [a[j] - a[j - 1] for j in range(1, len(a))] + [-a[-1]]
    return BranchConfig(tuple(b))


def from_branches(b: BranchConfig | Sequence) -> tuple[Poly, ...]:
    """Partial sums ``a_j = b_0 + ... + b_{j-1}`` for j = 1..k."""
    if not isinstance(b, BranchConfig):
        b = BranchConfig(tuple(b))
    out = []
    acc = Poly()
    for x in b.branches[:-1]:
        acc = acc + x
        out.append(acc)
    return tuple(out)


def family_from_branches(b: BranchConfig) -> FamilyInput:
    system = build_root_system(ADEType("A", b.k))
    return FamilyInput(system, from_branches(b))


def symmetrize(b: BranchConfig) -> VersalCoefficients:
    """Expand ``prod_j (z - b_j)`` and return ``alpha_1..alpha_{k+1}``."""
    # coefficient list in z, highest degree first; entries are Poly in t
    prod = [Poly.const(1)]
    for x in b.branches:
        nxt = prod + [Poly()]
        for i, c in enumerate(prod):
            nxt[i + 1] = nxt[i + 1] - c * x
        prod = nxt
    return VersalCoefficients(tuple(prod[1:]))


@dataclass(frozen=True)
class DBSNode:
    """A collision class of branches; ``level`` is the order at which it splits."""

    indices: tuple[int, ...]
    level: int
    children: tuple["DBSNode", ...] = ()

    def walk(self):
        yield self
        for c in self.children:
            yield from c.walk()

    def size(self) -> int:
        return 1 + sum(c.size() for c in self.children)

    def signature(self):
        return (self.indices, tuple(sorted(c.signature() for c in self.children)))


def _ord_diff(b: Sequence[Poly], j: int, l: int):
    return (b[j] - b[l]).ord()


def _classes(indices, b, n) -> list[tuple[int, ...]]:
    # classes of f ~_n g  <=>  ord(f - g) >= n; transitive by the ultrametric property
    out: list[list[int]] = []
    for j in indices:
        for cls in out:
            if _ord_diff(b, cls[0], j) >= n:
                cls.append(j)
                break
        else:
            out.append([j])
    return [tuple(c) for c in out]


def _dbs(indices: tuple[int, ...], level: int, b) -> DBSNode:
    # descend while the class does not split (contract one-child chains)
    while True:
        classes = _classes(indices, b, level + 1)
        if len(classes) > 1:
            break
        level += 1
    kids = tuple(_dbs(c, level + 1, b) for c in classes if len(c) >= 2)
    return DBSNode(indices=indices, level=level, children=kids)


def build_dbs_tree(b: BranchConfig) -> DBSNode:
    """Collision tree of the branches under ``ord(f - g) >= n`` refinement.

    Singleton classes are not vertices, and a vertex whose refinement is the
    same class is contracted into its child.
    """
    b.validate()
    return _dbs(tuple(range(len(b.branches))), 0, b.branches)


def root_indices(root: Sequence[int]) -> tuple[int, ...]:
    """Branch indices touched by an A_k root given in the theta-basis.

    ``sum c_j theta_j`` has e-coefficients ``c_j - c_{j-1}``; for a root these
    are one +1 and one -1.
    """
    c = [0] + list(root) + [0]
    return tuple(i for i in range(len(c) - 1) if c[i + 1] - c[i])


def component_indices(comp) -> tuple[int, ...]:
    idx = set()
    for r in comp.members:
        idx.update(root_indices(r))
    return tuple(sorted(idx))


@dataclass(frozen=True)
class EquivalenceResult:
    isomorphic: bool
    mapping: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]
    mismatch: str | None = None

    def __bool__(self):
        return self.isomorphic


def check_equivalence(pbt: PBTree | PBTNode, dbs: DBSNode) -> EquivalenceResult:
    """Match a PBT over A_k against the collision tree of its branches.

    A PBT node over a sub-root system touching branch indices ``S`` is sent to
    the DBS vertex with index set ``S``.  Returns the vertex bijection as
    ``(pbt path, indices)`` pairs, or the first mismatched vertex.
    """
    root = pbt.root if isinstance(pbt, PBTree) else pbt
    mapping: list = []

    def visit(node: PBTNode, vertex: DBSNode, path: tuple[int, ...]) -> str | None:
        s = component_indices(node.subspace)
        if s != vertex.indices:
            return f"PBT node {list(path)} covers branches {list(s)}, DBS vertex has {list(vertex.indices)}"
        for sing, child in zip(node.singularities, node.children):
            want = ADEType("A", len(component_indices(sing)) - 1)
            if sing.ade != want:
                return f"PBT node {list(path)} singularity {sing.ade} does not match class size"
        pbt_kids = {component_indices(c.subspace): (i, c) for i, c in enumerate(node.children)}
        dbs_kids = {v.indices: v for v in vertex.children}
        if set(pbt_kids) != set(dbs_kids):
            return (
                f"PBT node {list(path)} children {sorted(map(list, pbt_kids))} "
                f"!= DBS children {sorted(map(list, dbs_kids))}"
            )
        mapping.append((path, vertex.indices))
        for key in sorted(pbt_kids):
            i, c = pbt_kids[key]
            err = visit(c, dbs_kids[key], path + (i,))
            if err:
                return err
        return None

    err = visit(root, dbs, ())
    if err:
        return EquivalenceResult(False, tuple(mapping), err)
    return EquivalenceResult(True, tuple(mapping))


# -- random suite ---------------------------------------------------------------

_POOL = (Fraction(1), Fraction(-1), Fraction(2), Fraction(1, 2), Fraction(-3, 2), Fraction(3))


def random_branch_config(rng: random.Random, max_k: int = 8, max_degree: int = 6) -> BranchConfig:
    """A random valid configuration with plenty of low-order collisions.

    Each new branch copies the jet of an existing branch up to a random order
    and then diverges, so collision classes nest nontrivially.  The result is
    recentered, which preserves all pairwise differences.
    """
    while True:
        k = rng.randint(1, max_k)
        branches: list[list] = []
        for _ in range(k + 1):
            coeffs = [Fraction(0)] * (max_degree + 1)
            if branches and rng.random() < 0.7:
                parent = rng.choice(branches)
                keep = rng.randint(1, max_degree)
                coeffs[:keep] = parent[:keep]
                start = keep
            else:
                start = 1
            for d in range(start, max_degree + 1):
                if rng.random() < 0.5:
                    coeffs[d] = rng.choice(_POOL)
            branches.append(coeffs)
        polys = [Poly(c) for c in branches]
        try:
            return BranchConfig.recentered(polys).validate()
        except BranchError:
            continue


def run_random_suite(n: int, seed: int, max_k: int = 8, max_degree: int = 6):
    """Yield ``(config, equivalence, odaka_ok)`` for ``n`` seeded random cases."""
    from .pbt import odaka_rescale

    rng = random.Random(seed)
    for _ in range(n):
        b = random_branch_config(rng, max_k, max_degree)
        fam = family_from_branches(b)
        tree = build_pbt(fam)
        eq = check_equivalence(tree, build_dbs_tree(b))
        _, types = odaka_rescale(fam)
        root_types = tuple(s.ade for s in tree.root.singularities)
        yield b, eq, types == root_types
